"""TimeML serialisation, parsing and consistency checking."""
from __future__ import annotations

import enum
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Optional

from .model import (TIMEX3_MODS, Event, EventClass, FunctionInDocument, RelType, Signal, Span,
                    TimeMLDocument, Timex3, TimexType, TLink)

XML_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'


class Code(str, enum.Enum):
    DUP_ID = "DUP_ID"
    DANGLING_REF = "DANGLING_REF"
    SPAN_OVERLAP = "SPAN_OVERLAP"
    BAD_ATTR = "BAD_ATTR"
    MALFORMED_XML = "MALFORMED_XML"
    EMPTY_VALUE = "EMPTY_VALUE"


@dataclass(frozen=True)
class Violation:
    code: Code
    element_id: str
    message: str

    def line(self) -> str:
        return f"{self.code.value}\t{self.element_id}\t{self.message}"


class InvalidDocument(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(v.line() for v in violations))
        self.violations = violations


class TimeMLParseError(ValueError):
    code = Code.MALFORMED_XML

    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")
        self.line = line
        self.column = column


# Characters XML 1.0 cannot carry at all.
_ILLEGAL_XML = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ud800-\udfff\ufffe\uffff]")
_ID_FORMS = {"timex3": r"t\d+", "event": r"e\d+", "signal": r"s\d+", "tlink": r"l\d+"}


def validate(doc: TimeMLDocument) -> list:
    """All consistency problems in ``doc``; an empty list means valid."""
    out = []

    def bad(code, ident, message):
        out.append(Violation(code, ident or "", message))

    if _ILLEGAL_XML.search(doc.text):
        pos = _ILLEGAL_XML.search(doc.text).start()
        bad(Code.MALFORMED_XML, "", f"text holds a character XML cannot encode at offset {pos}")

    groups = {
        "timex3": [(t.tid, t) for t in doc.timex3s],
        "event": [(e.eid, e) for e in doc.events],
        "signal": [(s.sid, s) for s in doc.signals],
        "tlink": [(l.lid, l) for l in doc.tlinks],
    }
    ids = {}
    for kind, items in groups.items():
        seen = set()
        for ident, element in items:
            if ident in seen:
                bad(Code.DUP_ID, ident, f"{kind} id {ident!r} used more than once")
            seen.add(ident)
            if not isinstance(ident, str) or not re.fullmatch(_ID_FORMS[kind], ident):
                bad(Code.BAD_ATTR, ident, f"{kind} id {ident!r} is not of the form {_ID_FORMS[kind]}")
        ids[kind] = seen

    for t in doc.timex3s:
        if not isinstance(t.type, TimexType):
            bad(Code.BAD_ATTR, t.tid, f"type {t.type!r} not in TimexType")
        if not isinstance(t.function_in_document, FunctionInDocument):
            bad(Code.BAD_ATTR, t.tid, f"functionInDocument {t.function_in_document!r} invalid")
        if t.mod is not None and t.mod not in TIMEX3_MODS:
            bad(Code.BAD_ATTR, t.tid, f"mod {t.mod!r} invalid")
        if not isinstance(t.temporal_function, bool):
            bad(Code.BAD_ATTR, t.tid, "temporalFunction must be boolean")
        if not isinstance(t.value, str) or not t.value:
            bad(Code.EMPTY_VALUE, t.tid, "TIMEX3 has no value")
        elif _ILLEGAL_XML.search(t.value):
            bad(Code.MALFORMED_XML, t.tid, "value holds a character XML cannot encode")
        if t.anchor_time_id is not None and t.anchor_time_id not in ids["timex3"]:
            bad(Code.DANGLING_REF, t.anchor_time_id, f"anchorTimeID of {t.tid} does not resolve")
    creation = [t.tid for t in doc.timex3s if t.function_in_document is FunctionInDocument.CREATION_TIME]
    if len(creation) > 1:
        bad(Code.BAD_ATTR, creation[1], "more than one CREATION_TIME timex")

    for e in doc.events:
        if not isinstance(e.event_class, EventClass):
            bad(Code.BAD_ATTR, e.eid, f"class {e.event_class!r} invalid")
        if e.stem is not None and _ILLEGAL_XML.search(e.stem):
            bad(Code.MALFORMED_XML, e.eid, "stem holds a character XML cannot encode")

    for link in doc.tlinks:
        sources = [x for x in (link.time_id, link.event_id) if x is not None]
        targets = [x for x in (link.related_to_time, link.related_event_id) if x is not None]
        if len(sources) != 1 or len(targets) != 1:
            bad(Code.BAD_ATTR, link.lid, "TLINK needs exactly one source and one target")
        if link.rel_type is not None and not isinstance(link.rel_type, RelType):
            bad(Code.BAD_ATTR, link.lid, f"relType {link.rel_type!r} invalid")
        for ref, kind in ((link.time_id, "timex3"), (link.related_to_time, "timex3"),
                          (link.event_id, "event"), (link.related_event_id, "event"),
                          (link.signal_id, "signal")):
            if ref is not None and ref not in ids[kind]:
                bad(Code.DANGLING_REF, ref, f"{link.lid} refers to missing {kind} {ref!r}")

    inline = sorted(((e.span, _ident(e)) for e in (*doc.timex3s, *doc.events, *doc.signals)),
                    key=lambda p: (p[0].start, p[0].end))
    for span, ident in inline:
        if span.end > len(doc.text):
            bad(Code.BAD_ATTR, ident, f"span {span.start}-{span.end} outside text")
        elif span.start == span.end:
            bad(Code.BAD_ATTR, ident, "empty span")
    for (a, ia), (b, ib) in zip(inline, inline[1:]):
        if a.overlaps(b) or (a == b):
            bad(Code.SPAN_OVERLAP, ib, f"{ib} overlaps {ia}")
    return out


def _ident(element) -> str:
    for attr in ("tid", "eid", "sid", "lid"):
        if hasattr(element, attr):
            return getattr(element, attr)
    raise TypeError(element)


def _esc_text(text: str) -> str:
    # a bare CR would be folded into LF by any XML reader
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
            .replace("\r", "&#13;"))


def _esc_attr(value: str) -> str:
    return _esc_text(value).replace('"', "&quot;").replace("\n", "&#10;").replace("\t", "&#9;")


def _attrs(pairs) -> str:
    return "".join(f' {name}="{_esc_attr(value)}"' for name, value in pairs if value is not None)


def _bool(flag: bool) -> str:
    return "true" if flag else "false"


def _open_tag(element) -> str:
    if isinstance(element, Timex3):
        return "<TIMEX3" + _attrs([
            ("tid", element.tid), ("type", element.type.value), ("value", element.value),
            ("mod", element.mod), ("temporalFunction", _bool(element.temporal_function)),
            ("functionInDocument", element.function_in_document.value),
            ("anchorTimeID", element.anchor_time_id),
        ]) + ">"
    if isinstance(element, Event):
        return "<EVENT" + _attrs([("eid", element.eid), ("class", element.event_class.value),
                                  ("stem", element.stem)]) + ">"
    return "<SIGNAL" + _attrs([("sid", element.sid)]) + ">"


_CLOSE = {Timex3: "</TIMEX3>", Event: "</EVENT>", Signal: "</SIGNAL>"}


def _tlink_tag(link: TLink) -> str:
    return "<TLINK" + _attrs([
        ("lid", link.lid), ("timeID", link.time_id), ("eventID", link.event_id),
        ("relType", link.rel_type.value if link.rel_type is not None else None),
        ("relatedToTime", link.related_to_time), ("relatedEventID", link.related_event_id),
        ("signalID", link.signal_id),
    ]) + " />"


def serialize(doc: TimeMLDocument) -> str:
    """TimeML XML for ``doc``. Refuses documents with violations."""
    violations = validate(doc)
    if violations:
        raise InvalidDocument(violations)
    parts = [XML_HEADER, "<TimeML>"]
    pos = 0
    for element in doc.elements():
        parts.append(_esc_text(doc.text[pos:element.span.start]))
        parts.append(_open_tag(element))
        parts.append(_esc_text(element.span.slice(doc.text)))
        parts.append(_CLOSE[type(element)])
        pos = element.span.end
    parts.append(_esc_text(doc.text[pos:]))
    for link in doc.tlinks:
        parts.append(_tlink_tag(link))
        parts.append("\n")
    parts.append("</TimeML>\n")
    return "".join(parts)


# Elements whose following text is not part of the document text.
_NON_TEXT = frozenset({"TLINK", "SLINK", "ALINK", "MAKEINSTANCE"})


def _enum(enum_cls, value):
    try:
        return enum_cls(value)
    except ValueError:
        # keep the raw string so validate() can report it
        return value


def _flag(value: Optional[str]):
    if value is None:
        return False
    if value.lower() in ("true", "false"):
        return value.lower() == "true"
    return value


def parse_timeml(xml: str, doc_id: str = "") -> TimeMLDocument:
    """Read TimeML markup back into a :class:`TimeMLDocument`.

    Text is every character node under the root except what follows a link
    or MAKEINSTANCE element. Unknown elements keep their text but are
    otherwise ignored.
    """
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as exc:
        line, column = exc.position
        raise TimeMLParseError(f"malformed XML: {exc}", line, column) from None

    pieces = []
    offset = 0
    timex3s, events, signals, tlinks = [], [], [], []

    def add(text):
        nonlocal offset
        if text:
            pieces.append(text)
            offset += len(text)

    def visit(node):
        tag = node.tag
        start = offset
        add(node.text)
        for child in node:
            visit(child)
            if child.tag not in _NON_TEXT:
                add(child.tail)
        a = node.attrib
        span = Span(start, offset)
        if tag == "TIMEX3":
            timex3s.append(Timex3(
                a.get("tid"), span, _enum(TimexType, a.get("type")), a.get("value", ""),
                mod=a.get("mod"), temporal_function=_flag(a.get("temporalFunction")),
                function_in_document=_enum(FunctionInDocument,
                                           a.get("functionInDocument", "NONE")),
                anchor_time_id=a.get("anchorTimeID")))
        elif tag == "EVENT":
            events.append(Event(a.get("eid"), span,
                                _enum(EventClass, a.get("class", "OCCURRENCE")),
                                a.get("stem")))
        elif tag == "SIGNAL":
            signals.append(Signal(a.get("sid"), span))
        elif tag == "TLINK":
            rel = a.get("relType")
            tlinks.append(TLink(
                a.get("lid"), time_id=a.get("timeID"),
                event_id=a.get("eventID") or a.get("eventInstanceID"),
                related_to_time=a.get("relatedToTime"),
                related_event_id=a.get("relatedEventID") or a.get("relatedToEventInstance")
                or a.get("relatedToEvent"),
                rel_type=_enum(RelType, rel) if rel else None,
                signal_id=a.get("signalID")))

    visit(root)
    return TimeMLDocument("".join(pieces), tuple(timex3s), tuple(events), tuple(signals),
                          tuple(tlinks), doc_id)


def violation_report(violations) -> str:
    return "".join(v.line() + "\n" for v in violations)
