"""Fault catalogue: one seeded mutation per violation code."""
from dataclasses import replace

from t2t3.model import Event, Span
from t2t3.timeml import Code


def base_document():
    from t2t3.ingest import parse_inline
    from t2t3.transducer import convert_document
    doc = parse_inline('before <TIMEX2 VAL="1999-W23">the week of <TIMEX2 VAL="1999-06-07">the '
                       'seventh</TIMEX2> until <TIMEX2 VAL="1999-06-11">the eleventh</TIMEX2> '
                       '</TIMEX2>, <TIMEX2 VAL="2012-03-20">the Tuesday after the party</TIMEX2>.')
    return convert_document(doc)[0]


def _dup_id(doc):
    t1, t2, *rest = doc.timex3s
    return replace(doc, timex3s=(t1, replace(t2, tid=t1.tid), *rest))


def _dangling(doc):
    link, *rest = doc.tlinks
    return replace(doc, tlinks=(replace(link, related_to_time="t99", related_event_id=None), *rest))


def _overlap(doc):
    t = doc.timex3s[0]
    clash = Event("e99", Span(t.span.start + 1, t.span.end + 2))
    return replace(doc, events=(*doc.events, clash))


def _bad_attr(doc):
    t, *rest = doc.timex3s
    return replace(doc, timex3s=(replace(t, type="WEEKDAY"), *rest))


def _malformed(doc):
    return replace(doc, text=doc.text[:3] + "\x00" + doc.text[4:])


def _empty_value(doc):
    t, *rest = doc.timex3s
    return replace(doc, timex3s=(replace(t, value=""), *rest))


FAULTS = {
    Code.DUP_ID: _dup_id,
    Code.DANGLING_REF: _dangling,
    Code.SPAN_OVERLAP: _overlap,
    Code.BAD_ATTR: _bad_attr,
    Code.MALFORMED_XML: _malformed,
    Code.EMPTY_VALUE: _empty_value,
}
