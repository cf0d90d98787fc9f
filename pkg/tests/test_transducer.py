import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import random_long_phrase, synth_document
from t2t3.ingest import parse_inline
from t2t3.lexicon import SignalLexicon, is_measure_word, tag
from t2t3.model import Document, RelType, Span, TimeMLBuilder, Timex2, TimexType
from t2t3.transducer import (ConversionConfig, ConversionReport, DegenerateSplit,
                             convert_document, infer_type, map_simple_timex, select_event_head,
                             transduce_nested, transduce_signalled, trim_long_timex,
                             value_relation)

LEX = SignalLexicon.default()
CFG = ConversionConfig()


def _whole(text, val):
    return Timex2(Span(0, len(text)), val)


def _texts(doc, elements):
    return [e.span.slice(doc.text) for e in elements]


@pytest.mark.parametrize("val, set_, expected", [
    ("P90D", False, TimexType.DURATION),
    ("1999-W23", False, TimexType.DATE),
    ("1998-10-02TEV", False, TimexType.TIME),
    ("FUTURE_REF", False, TimexType.DATE),
    ("PAST_REF", False, TimexType.DATE),
    ("PRESENT_REF", False, TimexType.DATE),
    ("PT2H", False, TimexType.DURATION),
    ("P1W", True, TimexType.SET),
    ("2005-02-23T10:49:00", False, TimexType.TIME),
    ("T14:00", False, TimexType.TIME),
    ("XXXX-WXX-2", False, TimexType.DATE),
    ("", False, TimexType.DATE),
])
def test_infer_type(val, set_, expected):
    assert infer_type(val, set_) is expected


def test_config_cutoff_bound():
    with pytest.raises(ValueError):
        ConversionConfig(trim_cutoff=1)


# ---------------------------------------------------------------- simple

def test_map_simple_date():
    b = TimeMLBuilder("Tuesday")
    t = map_simple_timex(_whole("Tuesday", "2012-03-20"), b)
    assert (t.type, t.value, t.temporal_function) == (TimexType.DATE, "2012-03-20", False)


def test_map_simple_future_ref():
    text = "the next month or so"
    t = map_simple_timex(Timex2(Span(0, len(text)), "FUTURE_REF", anchor_val="2005-02-23T10:49:00"),
                         TimeMLBuilder(text))
    assert (t.type, t.value, t.temporal_function) == (TimexType.DATE, "FUTURE_REF", True)
    assert t.anchor_time_id is None


def test_map_simple_anchor_resolves():
    b = TimeMLBuilder("x" * 20)
    first = map_simple_timex(Timex2(Span(0, 3), "2005-02-23"), b)
    second = map_simple_timex(Timex2(Span(5, 9), "P1D", anchor_val="2005-02-23"), b)
    assert second.anchor_time_id == first.tid


def test_map_simple_empty_value_warns():
    report = ConversionReport()
    t = map_simple_timex(_whole("then", ""), TimeMLBuilder("then"), report=report)
    assert (t.type, t.value) == (TimexType.DATE, "")
    assert [w.code for w in report.warnings] == ["EMPTY_VALUE"]


def test_map_simple_bad_mod_dropped():
    report = ConversionReport()
    t = map_simple_timex(Timex2(Span(0, 4), "2000", mod="NONSENSE"), TimeMLBuilder("2000"),
                         report=report)
    assert t.mod is None and report.warnings[0].code == "BAD_MOD"


# ---------------------------------------------------------------- signalled

def _signalled(text, val, cfg=CFG):
    b = TimeMLBuilder(text)
    res = transduce_signalled(_whole(text, val), b, cfg, LEX, text)
    return b.build(), res


def test_tuesday_after_the_party():
    doc, res = _signalled("The Tuesday after the party", "2012-03-20")
    assert res.timex3.span.slice(doc.text) == "Tuesday"
    assert (res.timex3.type, res.timex3.value) == (TimexType.DATE, "2012-03-20")
    assert res.signal.span.slice(doc.text) == "after"
    assert res.event.span.slice(doc.text) == "party"
    assert res.event.event_class.value == "OCCURRENCE"
    link = res.tlink
    assert (link.time_id, link.related_event_id, link.rel_type, link.signal_id) == (
        "t1", "e1", RelType.AFTER, "s1")


def test_thirty_years_since():
    doc, res = _signalled("the 30 years since Neil Armstrong walked on the moon", "P30Y")
    assert res.timex3.span.slice(doc.text) == "30 years"
    assert (res.timex3.type, res.timex3.value) == (TimexType.DURATION, "P30Y")
    assert res.signal.span.slice(doc.text) == "since"
    assert res.event.span.slice(doc.text) == "walked"


def test_ninety_days_after():
    doc, res = _signalled("90 days after their issue date", "P90D")
    assert _texts(doc, [res.timex3, res.signal, res.event]) == ["90 days", "after", "issue"]


def test_untyped_config():
    _, res = _signalled("The Tuesday after the party", "2012-03-20",
                        ConversionConfig(untyped_tlinks=True))
    assert res.tlink.rel_type is None


def test_timex_after_signal_inverts_relation():
    doc, res = _signalled("the election before Tuesday", "2012-03-20")
    assert res.timex3.span.slice(doc.text) == "Tuesday"
    assert res.event.span.slice(doc.text) == "election"
    # the timex follows the signal: the Tuesday is after the election
    assert res.tlink.rel_type is RelType.AFTER


def test_degenerate_split():
    with pytest.raises(DegenerateSplit):
        _signalled("after", "2000")
    with pytest.raises(DegenerateSplit):
        _signalled("early on", "2000")


@pytest.mark.parametrize("phrase, head", [
    ("Neil Armstrong walked on the moon", "walked"),
    ("delivery", "delivery"),
    ("the termination notice 's delivery", "delivery"),
    ("their issue date", "issue"),
])
def test_event_head(phrase, head):
    toks = tag(phrase)
    assert toks[select_event_head(toks)].surface == head


def test_event_head_pluggable():
    toks = tag("the big party")
    assert select_event_head(toks, parser=lambda ts: 1) == 1


# ---------------------------------------------------------------- nested

def _nested(markup, cfg=CFG):
    doc = parse_inline(markup)
    b = TimeMLBuilder(doc.text)
    report = ConversionReport()
    transduce_nested(doc.timexes[0], b, cfg, LEX, doc.text, report=report)
    return b.build(), report


def test_week_of_the_seventh():
    out, _ = _nested('<TIMEX2 VAL="1999-W23">the week of <TIMEX2 VAL="1999-06-07">the seventh'
                     '</TIMEX2></TIMEX2>')
    assert [(t.span.slice(out.text), t.value) for t in out.timex3s] == [
        ("the week", "1999-W23"), ("the seventh", "1999-06-07")]
    assert _texts(out, out.signals) == ["of"]
    (link,) = out.tlinks
    assert (link.time_id, link.related_to_time, link.rel_type, link.signal_id) == (
        "t2", "t1", RelType.IS_INCLUDED, "s1")


def test_week_of_seventh_until_eleventh():
    out, report = _nested('<TIMEX2 VAL="1999-W23">the week of <TIMEX2 VAL="1999-06-07">the '
                          'seventh</TIMEX2> until <TIMEX2 VAL="1999-06-11">the eleventh</TIMEX2> '
                          '</TIMEX2>')
    assert _texts(out, out.timex3s) == ["the week", "the seventh", "the eleventh"]
    assert _texts(out, out.signals) == ["of", "until"]
    assert len(out.tlinks) == 2
    assert out.tlinks[1].rel_type is RelType.BEFORE
    assert report.dropped == 0


def test_no_residue():
    out, report = _nested('<TIMEX2 VAL="1999-06">'
                          '<TIMEX2 VAL="1999-06-05">the fifth</TIMEX2></TIMEX2>')
    assert [t.value for t in out.timex3s] == ["1999-06-05"]
    assert out.signals == () and out.tlinks == ()
    assert [w.code for w in report.warnings] == ["NO_RESIDUE_CHUNK"]
    assert report.dropped == 1


def test_three_levels_drop_middle():
    out, report = _nested('<TIMEX2 VAL="2001">the spring of <TIMEX2 VAL="2001-06">'
                          '<TIMEX2 VAL="2001-06-07">the seventh</TIMEX2> of June</TIMEX2></TIMEX2>')
    assert {t.value for t in out.timex3s} <= {"2001", "2001-06-07"}
    assert "DROPPED_INNER" in [w.code for w in report.warnings]


@pytest.mark.parametrize("a, b, rel", [
    ("1999-06-07", "1999-W23", RelType.IS_INCLUDED),
    ("1999-W23", "1999-06-07", RelType.INCLUDES),
    ("1999-06-07", "1999-06-11", RelType.BEFORE),
    ("1999-06-11", "1999-06-07", RelType.AFTER),
    ("1999-06-07", "1999-06-07", RelType.SIMULTANEOUS),
    ("FUTURE_REF", "1999", None),
])
def test_value_relation(a, b, rel):
    assert value_relation(a, b) is rel


# ---------------------------------------------------------------- trimming

def _trim(text, cfg=CFG):
    return trim_long_timex(_whole(text, "X"), text, cfg).slice(text)


def test_trim_twenty_days_later():
    assert _trim("twenty days later than the termination notice's delivery") == "twenty days later"


def test_trim_below_cutoff_unchanged():
    assert _trim("the first five days after") == "the first five days after"


def test_trim_fiscal_year():
    out = _trim("in the very early part of last fiscal year")
    assert out == "last fiscal year"
    assert len(tag(out)) < 6 and any(is_measure_word(t.surface) for t in tag(out))


def test_trim_cutoff_configurable():
    out = _trim("twenty days later than the termination notice's delivery",
                ConversionConfig(trim_cutoff=3))
    assert out == "days later"


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_trim_bound(seed):
    phrase = random_long_phrase(random.Random(seed))
    out = _trim(phrase)
    assert len(tag(out)) < 6
    assert any(is_measure_word(t.surface) for t in tag(out))


# ---------------------------------------------------------------- documents

def test_convert_draining_evening():
    doc = parse_inline('The Yankees had just finished <TIMEX2 val="1998-10-02TEV">a draining '
                       'evening</TIMEX2> with a 4-0 decision over the Rangers')
    out, report = convert_document(doc)
    assert len(out.timex3s) == 1 and not out.events and not out.signals and not out.tlinks
    assert out.timex3s[0].type is TimexType.TIME
    assert report.paths == {"simple": 1}


def test_convert_tuesday_after_party():
    doc = parse_inline('<TIMEX2 VAL="2012-03-20">The Tuesday after the party</TIMEX2>')
    out, report = convert_document(doc)
    assert [len(out.timex3s), len(out.signals), len(out.events), len(out.tlinks)] == [1, 1, 1, 1]
    assert report.paths == {"signalled": 1}


def test_convert_empty():
    out, report = convert_document(Document(""))
    assert out.elements() == [] and out.tlinks == ()
    assert report.timex2_count == report.timex3_count == report.dropped == 0


def test_convert_degenerate_falls_back():
    doc = parse_inline('<TIMEX2 VAL="2000">early on</TIMEX2>')
    out, report = convert_document(doc)
    assert _texts(out, out.timex3s) == ["early on"]
    assert report.paths == {"simple": 1}
    assert "DEGENERATE_SPLIT" in [w.code for w in report.warnings]


def test_convert_long_goes_to_trim():
    doc = parse_inline('<TIMEX2 VAL="P20D">twenty days later than the termination notice\'s '
                       'delivery</TIMEX2>')
    out, report = convert_document(doc)
    assert _texts(out, out.timex3s) == ["twenty days later"]
    assert report.paths == {"trimmed": 1}


def test_convert_dct_is_creation_time():
    doc = parse_inline('<DATE_TIME><TIMEX2 VAL="2005-02-23">Feb 23</TIMEX2></DATE_TIME> '
                       '<TIMEX2 VAL="2005-02-24">tomorrow</TIMEX2>')
    out, _ = convert_document(doc)
    assert [t.function_in_document.value for t in out.timex3s] == ["CREATION_TIME", "NONE"]


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_conversion_invariants(seed):
    synth = synth_document(random.Random(seed))
    doc = parse_inline(synth.markup)
    out, report = convert_document(doc)
    vals = set(synth.vals)
    tops = doc.timexes
    # value preservation and span shrinkage
    for t in out.timex3s:
        assert t.value in vals
        assert any(top.span.contains(t.span) for top in tops)
    # dispatch totality
    assert sum(report.paths.values()) == len(tops)
    # count bounds
    assert len(out.timex3s) <= synth.timex2 + synth.nested_outers
    assert len(out.timex3s) >= synth.leaves - report.dropped
    assert report.timex2_count - report.timex3_count == report.dropped
    # signal support
    signals = {s.sid: s for s in out.signals}
    for link in out.tlinks:
        if link.signal_id:
            s = signals[link.signal_id]
            assert any(top.span.contains(s.span) for top in tops)
