"""Document and annotation data model shared by every stage of the converter.

Offsets are Unicode code point indices into the owning document text,
half-open ``[start, end)``.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True, order=True)
class Span:
    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.start > self.end:
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    def __len__(self):
        return self.end - self.start

    def contains(self, other: "Span") -> bool:
        return self.start <= other.start and other.end <= self.end

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end

    def shift(self, offset: int) -> "Span":
        return Span(self.start + offset, self.end + offset)

    def slice(self, text: str) -> str:
        return text[self.start:self.end]


class AnchorDir(str, enum.Enum):
    BEFORE = "BEFORE"
    AFTER = "AFTER"
    AS_OF = "AS_OF"
    STARTING = "STARTING"
    ENDING = "ENDING"


class TimexType(str, enum.Enum):
    DATE = "DATE"
    TIME = "TIME"
    DURATION = "DURATION"
    SET = "SET"


class FunctionInDocument(str, enum.Enum):
    CREATION_TIME = "CREATION_TIME"
    NONE = "NONE"


class EventClass(str, enum.Enum):
    OCCURRENCE = "OCCURRENCE"
    PERCEPTION = "PERCEPTION"
    REPORTING = "REPORTING"
    ASPECTUAL = "ASPECTUAL"
    STATE = "STATE"
    I_STATE = "I_STATE"
    I_ACTION = "I_ACTION"


class RelType(str, enum.Enum):
    BEFORE = "BEFORE"
    AFTER = "AFTER"
    INCLUDES = "INCLUDES"
    IS_INCLUDED = "IS_INCLUDED"
    DURING = "DURING"
    DURING_INV = "DURING_INV"
    SIMULTANEOUS = "SIMULTANEOUS"
    IAFTER = "IAFTER"
    IBEFORE = "IBEFORE"
    IDENTITY = "IDENTITY"
    BEGINS = "BEGINS"
    ENDS = "ENDS"
    BEGUN_BY = "BEGUN_BY"
    ENDED_BY = "ENDED_BY"


TIMEX3_MODS = frozenset({
    "BEFORE", "AFTER", "ON_OR_BEFORE", "ON_OR_AFTER", "LESS_THAN",
    "MORE_THAN", "EQUAL_OR_LESS", "EQUAL_OR_MORE", "START", "MID", "END",
    "APPROX",
})


@dataclass(frozen=True)
class Timex2:
    """One TIMEX2 annotation, possibly with embedded children.

    Children must lie inside the parent span (an equal span is allowed) and
    must not overlap each other. ``extra`` keeps attributes we do not
    interpret; it is never written out.
    """

    span: Span
    val: str = ""
    set: bool = False
    mod: Optional[str] = None
    anchor_val: Optional[str] = None
    anchor_dir: Optional[AnchorDir] = None
    children: tuple = ()
    source_id: Optional[str] = None
    extra: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(sorted(self.children, key=lambda c: c.span)))
        prev = None
        for child in self.children:
            if not self.span.contains(child.span):
                raise ValueError(f"child {child.span} not inside parent {self.span}")
            if prev is not None and prev.span.overlaps(child.span):
                raise ValueError(f"sibling spans {prev.span} and {child.span} overlap")
            prev = child

    def walk(self):
        """Yield this node and all descendants, pre-order."""
        yield self
        for child in self.children:
            yield from child.walk()

    def leaves(self):
        if not self.children:
            yield self
            return
        for child in self.children:
            yield from child.leaves()


@dataclass(frozen=True)
class Document:
    text: str
    timexes: tuple = ()
    doc_id: str = ""
    dct: Optional[str] = None
    # span of the TIMEX2 the creation time was read from, if any
    dct_span: Optional[Span] = None

    def __post_init__(self):
        object.__setattr__(self, "timexes", tuple(sorted(self.timexes, key=lambda t: t.span)))
        prev = None
        for timex in self.timexes:
            for node in timex.walk():
                if node.span.end > len(self.text):
                    raise ValueError(f"span {node.span} exceeds text length {len(self.text)}")
            if prev is not None and prev.span.overlaps(timex.span):
                raise ValueError(f"top-level spans {prev.span} and {timex.span} overlap")
            prev = timex

    def all_timexes(self):
        for timex in self.timexes:
            yield from timex.walk()


@dataclass(frozen=True)
class Timex3:
    tid: str
    span: Span
    type: TimexType
    value: str
    mod: Optional[str] = None
    temporal_function: bool = False
    function_in_document: FunctionInDocument = FunctionInDocument.NONE
    anchor_time_id: Optional[str] = None


@dataclass(frozen=True)
class Event:
    eid: str
    span: Span
    event_class: EventClass = EventClass.OCCURRENCE
    stem: Optional[str] = None


@dataclass(frozen=True)
class Signal:
    sid: str
    span: Span


@dataclass(frozen=True)
class TLink:
    lid: str
    time_id: Optional[str] = None
    event_id: Optional[str] = None
    related_to_time: Optional[str] = None
    related_event_id: Optional[str] = None
    rel_type: Optional[RelType] = None
    signal_id: Optional[str] = None


def _id_key(ident):
    m = re.match(r"^[a-z]+(\d+)$", ident or "")
    return (0, int(m.group(1)), ident) if m else (1, 0, ident or "")


@dataclass(frozen=True)
class TimeMLDocument:
    """Converted document. Construction is permissive on purpose; use
    :func:`t2t3.timeml.validate` to check consistency.

    Element collections are stored in a canonical order (spans for inline
    elements, numeric id for links) so structural equality is order-free.
    """

    text: str
    timex3s: tuple = ()
    events: tuple = ()
    signals: tuple = ()
    tlinks: tuple = ()
    doc_id: str = field(default="", compare=False)

    def __post_init__(self):
        for name in ("timex3s", "events", "signals"):
            items = getattr(self, name)
            object.__setattr__(self, name, tuple(sorted(items, key=lambda e: (e.span, _id_key(_ident(e))))))
        object.__setattr__(self, "tlinks", tuple(sorted(self.tlinks, key=lambda l: _id_key(l.lid))))

    def elements(self):
        """All inline elements (TIMEX3, EVENT, SIGNAL) in span order."""
        return sorted((*self.timex3s, *self.events, *self.signals), key=lambda e: e.span)


ID_PREFIX = {Timex3: "t", Event: "e", Signal: "s", TLink: "l"}


def _ident(element):
    if isinstance(element, Timex3):
        return element.tid
    if isinstance(element, Event):
        return element.eid
    if isinstance(element, Signal):
        return element.sid
    return element.lid


def element_id(element) -> str:
    return _ident(element)


def next_id(element_class, document) -> str:
    """Return the next unused id for ``element_class`` (Timex3, Event, Signal
    or TLink) in ``document``; ids grow monotonically per class."""
    prefix = ID_PREFIX[element_class]
    pool = {
        Timex3: document.timex3s, Event: document.events,
        Signal: document.signals, TLink: document.tlinks,
    }[element_class]
    highest = 0
    for element in pool:
        m = re.match(rf"^{prefix}(\d+)$", _ident(element))
        if m:
            highest = max(highest, int(m.group(1)))
    return f"{prefix}{highest + 1}"


class TimeMLBuilder:
    """Accumulates elements for one document and hands out fresh ids."""

    def __init__(self, text: str, doc_id: str = ""):
        self.text = text
        self.doc_id = doc_id
        self.timex3s: list = []
        self.events: list = []
        self.signals: list = []
        self.tlinks: list = []
        self._counters = {cls: 0 for cls in ID_PREFIX}

    def new_id(self, element_class) -> str:
        self._counters[element_class] += 1
        return f"{ID_PREFIX[element_class]}{self._counters[element_class]}"

    def add_timex3(self, span: Span, type: TimexType, value: str, **attrs) -> Timex3:
        timex = Timex3(self.new_id(Timex3), span, type, value, **attrs)
        self.timex3s.append(timex)
        return timex

    def add_event(self, span: Span, **attrs) -> Event:
        event = Event(self.new_id(Event), span, **attrs)
        self.events.append(event)
        return event

    def add_signal(self, span: Span) -> Signal:
        signal = Signal(self.new_id(Signal), span)
        self.signals.append(signal)
        return signal

    def add_tlink(self, **attrs) -> TLink:
        link = TLink(self.new_id(TLink), **attrs)
        self.tlinks.append(link)
        return link

    def find_timex_by_value(self, value: str) -> Optional[Timex3]:
        for timex in self.timex3s:
            if timex.value == value:
                return timex
        return None

    def build(self) -> TimeMLDocument:
        return TimeMLDocument(self.text, tuple(self.timex3s), tuple(self.events),
                              tuple(self.signals), tuple(self.tlinks), self.doc_id)
