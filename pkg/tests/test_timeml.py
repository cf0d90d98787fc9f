import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings

from faults import FAULTS, base_document
from strategies import timeml_documents
from t2t3.model import (EventClass, FunctionInDocument, RelType, Span, TimeMLBuilder,
                        TimeMLDocument, TimexType)
from t2t3.timeml import (XML_HEADER, Code, InvalidDocument, TimeMLParseError, parse_timeml,
                         serialize, validate, violation_report)

NINETY_DAYS_TML = ('<TimeML>until <TIMEX3 tid="t31" type="DURATION" value="P90D" '
             'temporalFunction="false" functionInDocument="NONE">90 days</TIMEX3> '
             '<SIGNAL sid="s16">after</SIGNAL> their <EVENT eid="e32" class="OCCURRENCE" '
             'stem="issue">issue</EVENT> date.</TimeML>')


def _tuesday_after_party():
    text = "The Tuesday after the party"
    b = TimeMLBuilder(text)
    t = b.add_timex3(Span(4, 11), TimexType.DATE, "2012-03-20")
    s = b.add_signal(Span(12, 17))
    e = b.add_event(Span(22, 27))
    b.add_tlink(time_id=t.tid, related_event_id=e.eid, rel_type=RelType.AFTER, signal_id=s.sid)
    return b.build()


def test_empty_document():
    assert serialize(TimeMLDocument("")) == XML_HEADER + "<TimeML></TimeML>\n"


def test_escaping():
    out = serialize(TimeMLDocument("Q&A <now>"))
    assert "Q&amp;A &lt;now&gt;" in out
    assert parse_timeml(out).text == "Q&A <now>"


def test_tuesday_after_party_markup():
    out = serialize(_tuesday_after_party())
    assert out == (
        XML_HEADER + '<TimeML>The <TIMEX3 tid="t1" type="DATE" value="2012-03-20" '
        'temporalFunction="false" functionInDocument="NONE">Tuesday</TIMEX3> '
        '<SIGNAL sid="s1">after</SIGNAL> the <EVENT eid="e1" class="OCCURRENCE">party</EVENT>'
        '<TLINK lid="l1" timeID="t1" relType="AFTER" relatedEventID="e1" signalID="s1" />\n'
        '</TimeML>\n')
    ET.fromstring(out.split("\n", 1)[1])


def test_parse_ninety_days():
    doc = parse_timeml(NINETY_DAYS_TML)
    (t,), (s,), (e,) = doc.timex3s, doc.signals, doc.events
    assert (t.tid, t.type, t.value, t.temporal_function) == ("t31", TimexType.DURATION, "P90D",
                                                             False)
    assert t.span.slice(doc.text) == "90 days"
    assert (s.sid, s.span.slice(doc.text)) == ("s16", "after")
    assert (e.eid, e.event_class, e.stem, e.span.slice(doc.text)) == (
        "e32", EventClass.OCCURRENCE, "issue", "issue")
    assert doc.text == "until 90 days after their issue date."
    assert validate(doc) == []


def test_truncated_tag():
    with pytest.raises(TimeMLParseError) as err:
        parse_timeml("<TimeML>a <TIMEX3 tid=")
    assert err.value.code is Code.MALFORMED_XML
    assert err.value.line == 1


def test_tlink_tail_not_text():
    doc = parse_timeml('<TimeML>abc<TLINK lid="l1" timeID="t1" relatedToTime="t1"/>\n</TimeML>')
    assert doc.text == "abc"


def test_round_trip_example():
    doc = _tuesday_after_party()
    assert parse_timeml(serialize(doc)) == doc


def test_serialize_refuses_invalid():
    bad = FAULTS[Code.DUP_ID](base_document())
    with pytest.raises(InvalidDocument):
        serialize(bad)


def test_valid_converted_document():
    assert validate(base_document()) == []


def test_dangling_t99():
    v = validate(FAULTS[Code.DANGLING_REF](base_document()))
    assert [(x.code, x.element_id) for x in v] == [(Code.DANGLING_REF, "t99")]


def test_dup_t1():
    v = validate(FAULTS[Code.DUP_ID](base_document()))
    assert (Code.DUP_ID, "t1") in [(x.code, x.element_id) for x in v]


@pytest.mark.parametrize("code", list(Code))
def test_fault_catalogue(code):
    found = {v.code for v in validate(FAULTS[code](base_document()))}
    assert code in found


def test_violation_report_lines():
    v = validate(FAULTS[Code.DANGLING_REF](base_document()))
    assert violation_report(v).splitlines()[0].split("\t")[:2] == ["DANGLING_REF", "t99"]


def test_two_creation_times():
    b = TimeMLBuilder("ab cd")
    b.add_timex3(Span(0, 2), TimexType.DATE, "1", function_in_document=FunctionInDocument.CREATION_TIME)
    b.add_timex3(Span(3, 5), TimexType.DATE, "2", function_in_document=FunctionInDocument.CREATION_TIME)
    assert [v.code for v in validate(b.build())] == [Code.BAD_ATTR]


def test_invalid_enum_round_trips_as_raw():
    doc = parse_timeml('<TimeML><TIMEX3 tid="t1" type="WEEKDAY" value="x">a</TIMEX3></TimeML>')
    assert doc.timex3s[0].type == "WEEKDAY"
    assert [v.code for v in validate(doc)] == [Code.BAD_ATTR]


@settings(max_examples=200, deadline=None)
@given(timeml_documents())
def test_round_trip(doc):
    assert validate(doc) == []
    xml = serialize(doc)
    ET.fromstring(xml.encode("utf-8"))
    back = parse_timeml(xml)
    assert back == doc
