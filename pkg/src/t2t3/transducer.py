"""TIMEX2 to TimeML conversion.

Every top-level TIMEX2 of a document goes down exactly one path:

* nested   -- it has embedded TIMEX2 children;
* signalled -- it contains a temporal signal joining a timex and an event;
* trimmed  -- it is long (``trim_cutoff`` tokens or more);
* simple   -- anything else, copied across as one TIMEX3.
"""
from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta
from typing import Callable, NamedTuple, Optional, Sequence

from .lexicon import (PosTag, SignalLexicon, TagCache, TaggedToken, find_all_signals,
                      find_signal, is_measure_word, tag)
from .model import (TIMEX3_MODS, Document, FunctionInDocument, RelType, Span, TimeMLBuilder,
                    Timex2, Timex3, TimexType)

log = logging.getLogger(__name__)

REF_VALUES = frozenset({"FUTURE_REF", "PAST_REF", "PRESENT_REF"})

DEFAULT_SIGNAL_RELATIONS = {
    "after": RelType.AFTER,
    "before": RelType.BEFORE,
    "since": RelType.AFTER,
    "until": RelType.BEFORE,
    "till": RelType.BEFORE,
    "following": RelType.AFTER,
    "prior to": RelType.BEFORE,
    "during": RelType.IS_INCLUDED,
    "throughout": RelType.IS_INCLUDED,
    "in": RelType.IS_INCLUDED,
    "of": RelType.IS_INCLUDED,
    "from": RelType.BEGUN_BY,
}

# stripped from the edges of a signalled split's timex chunk
EDGE_WORDS = frozenset({"a", "an", "the", "in", "on", "at", "by", "for", "of", "to"})

_CONTAINMENT = frozenset({RelType.IS_INCLUDED, RelType.INCLUDES, RelType.DURING,
                          RelType.DURING_INV})
_INVERSE = {
    RelType.BEFORE: RelType.AFTER, RelType.AFTER: RelType.BEFORE,
    RelType.IBEFORE: RelType.IAFTER, RelType.IAFTER: RelType.IBEFORE,
    RelType.INCLUDES: RelType.IS_INCLUDED, RelType.IS_INCLUDED: RelType.INCLUDES,
    RelType.DURING: RelType.DURING_INV, RelType.DURING_INV: RelType.DURING,
    RelType.BEGINS: RelType.BEGUN_BY, RelType.BEGUN_BY: RelType.BEGINS,
    RelType.ENDS: RelType.ENDED_BY, RelType.ENDED_BY: RelType.ENDS,
    RelType.SIMULTANEOUS: RelType.SIMULTANEOUS, RelType.IDENTITY: RelType.IDENTITY,
}


class TransductionError(Exception):
    pass


class DegenerateSplit(TransductionError):
    """The signal split leaves no usable timex/event pair."""


@dataclass
class ConversionConfig:
    trim_cutoff: int = 6
    signal_relation_map: dict = field(default_factory=lambda: dict(DEFAULT_SIGNAL_RELATIONS))
    # keep TLINKs whose type cannot be decided (untyped) rather than omitting them
    leave_ambiguous_untyped: bool = True
    # emit every TLINK untyped
    untyped_tlinks: bool = False
    # extra co-ordinators recognised only inside nested timexes
    nested_coordinators: tuple = ("of",)

    def __post_init__(self):
        if self.trim_cutoff < 2:
            raise ValueError("trim_cutoff must be at least 2")
        self.signal_relation_map = {
            k.lower(): (RelType(v) if v is not None else None)
            for k, v in self.signal_relation_map.items()
        }


@dataclass(frozen=True)
class ConversionWarning:
    code: str
    span: Span
    message: str
    # TIMEX2 annotations lost because of this event
    dropped: int = 0


@dataclass
class ConversionReport:
    doc_id: str = ""
    paths: Counter = field(default_factory=Counter)
    warnings: list = field(default_factory=list)
    timex2_count: int = 0
    timex3_count: int = 0

    @property
    def dropped(self) -> int:
        return sum(w.dropped for w in self.warnings)

    def warn(self, code, span, message, dropped=0):
        log.debug("%s %s %s: %s", self.doc_id, code, span, message)
        self.warnings.append(ConversionWarning(code, span, message, dropped))

    def to_dict(self) -> dict:
        return {
            "paths": dict(sorted(self.paths.items())),
            "timex2": self.timex2_count,
            "timex3": self.timex3_count,
            "dropped": self.dropped,
            "warnings": [
                {"code": w.code, "start": w.span.start, "end": w.span.end,
                 "message": w.message, "dropped": w.dropped}
                for w in self.warnings
            ],
        }


class Chunk(NamedTuple):
    tokens: tuple
    span: Span
    kind: str  # PRE_SIGNAL, SIGNAL, POST_SIGNAL or PLAIN


def _chunk(tokens, kind) -> Chunk:
    tokens = tuple(tokens)
    return Chunk(tokens, Span(tokens[0].span.start, tokens[-1].span.end), kind)


_DURATION = re.compile(r"^P(?:[\dX.]|T[\dX])")
_TIME = re.compile(r"(?:^|[\dX])T(?:[\dX]|MO|AF|EV|NI|MI|DT)|^\d{1,2}:\d{2}")


def infer_type(val: str, set_: bool = False) -> TimexType:
    if set_:
        return TimexType.SET
    if _DURATION.match(val):
        return TimexType.DURATION
    if _TIME.search(val):
        return TimexType.TIME
    return TimexType.DATE


def map_simple_timex(t2: Timex2, doc: TimeMLBuilder, span: Optional[Span] = None,
                     report: Optional[ConversionReport] = None,
                     creation_time: bool = False) -> Timex3:
    """Copy ``t2`` across as a single TIMEX3 over ``span`` (default: its own)."""
    span = span or t2.span
    if not t2.val and report is not None:
        report.warn("EMPTY_VALUE", t2.span, "TIMEX2 has no VAL")
    mod = t2.mod
    if mod is not None and mod not in TIMEX3_MODS:
        if report is not None:
            report.warn("BAD_MOD", t2.span, f"MOD {mod!r} has no TIMEX3 equivalent; dropped")
        mod = None
    anchor_id = None
    temporal_function = t2.val in REF_VALUES
    if t2.anchor_val is not None or t2.anchor_dir is not None:
        temporal_function = True
        anchor = doc.find_timex_by_value(t2.anchor_val) if t2.anchor_val else None
        anchor_id = anchor.tid if anchor is not None else None
    function = FunctionInDocument.NONE
    if creation_time:
        function = FunctionInDocument.CREATION_TIME
        temporal_function = False
        anchor_id = None
    return doc.add_timex3(span, infer_type(t2.val, t2.set), t2.val, mod=mod,
                          temporal_function=temporal_function,
                          function_in_document=function, anchor_time_id=anchor_id)


def _is_content(token: TaggedToken) -> bool:
    return token.tag in (PosTag.NOUN, PosTag.VERB, PosTag.ADJ, PosTag.ADV, PosTag.NUM)


def _is_punct(token: TaggedToken) -> bool:
    return not any(ch.isalnum() for ch in token.surface)


def _strip_edges(tokens: Sequence[TaggedToken], drop) -> tuple:
    i, j = 0, len(tokens)
    while i < j and drop(tokens[i]):
        i += 1
    while j > i and drop(tokens[j - 1]):
        j -= 1
    return tuple(tokens[i:j]) if i < j else tuple(tokens)


def _has_measure(tokens) -> bool:
    return any(is_measure_word(t.surface) for t in tokens)


_TEMPORAL_NOUNS = frozenset({"date", "time", "times", "period", "moment", "era", "age"})


def heuristic_head(tokens: Sequence[TaggedToken]) -> int:
    """Stand-in dependency root: leftmost finite verb, else the rightmost
    noun that is not itself a time word, else the rightmost noun, else the
    last token."""
    for i, t in enumerate(tokens):
        if t.tag is PosTag.VERB and not t.surface.lower().endswith("ing"):
            return i
    fallback_noun = None
    for i in range(len(tokens) - 1, -1, -1):
        t = tokens[i]
        if t.tag is PosTag.NOUN:
            word = t.surface.lower()
            if not is_measure_word(word) and word not in _TEMPORAL_NOUNS:
                return i
            if fallback_noun is None:
                fallback_noun = i
    for i in range(len(tokens) - 1, -1, -1):
        if tokens[i].tag is PosTag.VERB:
            return i
    if fallback_noun is not None:
        return fallback_noun
    return len(tokens) - 1


DependencyOracle = Callable[[Sequence[TaggedToken]], int]


def select_event_head(chunk, parser: Optional[DependencyOracle] = None) -> int:
    tokens = chunk.tokens if isinstance(chunk, Chunk) else chunk
    if not tokens:
        raise ValueError("empty chunk")
    return (parser or heuristic_head)(tokens)


class SignalledResult(NamedTuple):
    timex3: Timex3
    signal: object
    event: object
    tlink: object


def _phrase_tokens(t2: Timex2, text: str, cache: Optional[TagCache]):
    return tag(t2.span.slice(text), cache, offset=t2.span.start)


def _link_type(rel, cfg: ConversionConfig):
    if cfg.untyped_tlinks:
        return None
    return rel


def split_on_signal(tokens, lexicon: SignalLexicon):
    """Up to three contiguous chunks around the preferred signal."""
    match = find_signal(tokens, lexicon)
    if match is None:
        return None, []
    chunks = []
    if match.first > 0:
        chunks.append(_chunk(tokens[:match.first], "PRE_SIGNAL"))
    chunks.append(_chunk(tokens[match.first:match.stop], "SIGNAL"))
    if match.stop < len(tokens):
        chunks.append(_chunk(tokens[match.stop:], "POST_SIGNAL"))
    return match, chunks


def transduce_signalled(t2: Timex2, doc: TimeMLBuilder, cfg: ConversionConfig,
                        lexicon: SignalLexicon, text: str, cache: Optional[TagCache] = None,
                        parser: Optional[DependencyOracle] = None,
                        report: Optional[ConversionReport] = None) -> SignalledResult:
    """Unpack an event-based TIMEX2 into TIMEX3 + SIGNAL + EVENT + TLINK.

    Raises :class:`DegenerateSplit` (before emitting anything) when the
    signal does not separate a timex chunk from an event chunk.
    """
    if t2.children:
        raise ValueError("signalled path needs a TIMEX2 without children")
    tokens = _phrase_tokens(t2, text, cache)
    match, chunks = split_on_signal(tokens, lexicon)
    if match is None:
        raise ValueError("no signal in TIMEX2")
    sides = [c for c in chunks if c.kind != "SIGNAL"]
    if len(sides) < 2:
        raise DegenerateSplit(f"signal {match.entry.text!r} has nothing on one side")

    def stripped(chunk):
        return _strip_edges(chunk.tokens,
                            lambda t: t.surface.lower() in EDGE_WORDS or _is_punct(t))

    measured = [c for c in sides if _has_measure(c.tokens)]
    if measured:
        timex_chunk = min(measured, key=lambda c: len(stripped(c)))
    else:
        timex_chunk = sides[0]
    event_chunk = sides[1] if timex_chunk is sides[0] else sides[0]
    head = event_chunk.tokens[select_event_head(event_chunk, parser)]
    if not _is_content(head) or is_measure_word(head.surface):
        raise DegenerateSplit(f"no event word in {event_chunk.span.slice(text)!r}")

    timex_tokens = stripped(timex_chunk)
    timex_span = Span(timex_tokens[0].span.start, timex_tokens[-1].span.end)
    rel = cfg.signal_relation_map.get(match.entry.text)
    if rel is not None and timex_chunk.kind == "POST_SIGNAL":
        rel = _INVERSE.get(rel)
    rel = _link_type(rel, cfg)

    timex3 = map_simple_timex(t2, doc, timex_span, report)
    signal = doc.add_signal(match.span)
    event = doc.add_event(head.span)
    tlink = None
    if rel is not None or cfg.leave_ambiguous_untyped:
        tlink = doc.add_tlink(time_id=timex3.tid, related_event_id=event.eid, rel_type=rel,
                              signal_id=signal.sid)
    return SignalledResult(timex3, signal, event, tlink)


# ---------------------------------------------------------------- values

_PARTS_OF_DAY = {"MO": (0, 12), "MI": (11, 13), "AF": (12, 18), "EV": (18, 24),
                 "NI": (21, 24), "DT": (8, 18)}
_SEASONS = {"SP": (3, 6), "SU": (6, 9), "FA": (9, 12), "WI": (12, 15)}


def _add_months(year, month, n):
    index = year * 12 + (month - 1) + n
    return datetime(index // 12, index % 12 + 1, 1)


def value_interval(value: str):
    """Calendar interval ``(start, end)`` of an ISO-like timex value, or
    ``None`` when the value is not an anchored calendar expression."""
    try:
        return _interval(value)
    except ValueError:
        return None


def _interval(value: str):
    m = re.fullmatch(r"(\d{4})-(\d{2})-(\d{2})(?:T(.+))?", value)
    if m:
        day = datetime(int(m.group(1)), int(m.group(2)), int(m.group(3)))
        clock = m.group(4)
        if clock is None:
            return day, day + timedelta(days=1)
        if clock in _PARTS_OF_DAY:
            lo, hi = _PARTS_OF_DAY[clock]
            return day + timedelta(hours=lo), day + timedelta(hours=hi)
        t = re.fullmatch(r"(\d{2})(?::?(\d{2})(?::?(\d{2}))?)?", clock)
        if not t:
            return None
        start = day + timedelta(hours=int(t.group(1)), minutes=int(t.group(2) or 0),
                                seconds=int(t.group(3) or 0))
        unit = (timedelta(seconds=1) if t.group(3) else
                timedelta(minutes=1) if t.group(2) else timedelta(hours=1))
        return start, start + unit
    m = re.fullmatch(r"(\d{4})-W(\d{2})(?:-(\d|WE))?", value)
    if m:
        year, week, day_part = int(m.group(1)), int(m.group(2)), m.group(3)
        monday = datetime.combine(date.fromisocalendar(year, week, 1), datetime.min.time())
        if day_part is None:
            return monday, monday + timedelta(days=7)
        if day_part == "WE":
            return monday + timedelta(days=5), monday + timedelta(days=7)
        start = monday + timedelta(days=int(day_part) - 1)
        return start, start + timedelta(days=1)
    m = re.fullmatch(r"(\d{4})-(\d{2})", value)
    if m:
        year, month = int(m.group(1)), int(m.group(2))
        if not 1 <= month <= 12:
            return None
        return datetime(year, month, 1), _add_months(year, month, 1)
    m = re.fullmatch(r"(\d{4})-(Q[1-4]|H[12]|SP|SU|FA|WI)", value)
    if m:
        year, part = int(m.group(1)), m.group(2)
        if part[0] == "Q":
            first = 3 * (int(part[1]) - 1) + 1
            return datetime(year, first, 1), _add_months(year, first, 3)
        if part[0] == "H":
            first = 6 * (int(part[1]) - 1) + 1
            return datetime(year, first, 1), _add_months(year, first, 6)
        lo, hi = _SEASONS[part]
        return datetime(year, lo, 1), _add_months(year, lo, hi - lo)
    m = re.fullmatch(r"(\d{2,4})", value)
    if m:
        digits = m.group(1)
        scale = 10 ** (4 - len(digits))
        first = int(digits) * scale
        if first < 1:
            return None
        last = first + scale
        return datetime(first, 1, 1), (datetime(last, 1, 1) if last <= 9999 else datetime.max)
    return None


def value_relation(a: str, b: str) -> Optional[RelType]:
    """Relation of value ``a`` to value ``b`` judged from their calendar
    intervals; ``None`` if either is unanchored or they partly overlap."""
    ia, ib = value_interval(a), value_interval(b)
    if ia is None or ib is None:
        return None
    (a0, a1), (b0, b1) = ia, ib
    if (a0, a1) == (b0, b1):
        return RelType.SIMULTANEOUS
    if a0 <= b0 and b1 <= a1:
        return RelType.INCLUDES
    if b0 <= a0 and a1 <= b1:
        return RelType.IS_INCLUDED
    if a1 <= b0:
        return RelType.BEFORE
    if b1 <= a0:
        return RelType.AFTER
    return None


def _combine(value_rel, signal_rel):
    """Reconcile the value clue with the signal's suggested relation."""
    if signal_rel is None:
        return value_rel
    if signal_rel in _CONTAINMENT:
        return value_rel if value_rel in (RelType.INCLUDES, RelType.IS_INCLUDED) else None
    if value_rel is None:
        return signal_rel
    if value_rel == signal_rel:
        return value_rel
    return None


# ---------------------------------------------------------------- nested

def transduce_nested(t2: Timex2, doc: TimeMLBuilder, cfg: ConversionConfig,
                     lexicon: SignalLexicon, text: str, cache: Optional[TagCache] = None,
                     report: Optional[ConversionReport] = None) -> list:
    """Unpack a TIMEX2 with embedded children.

    Leaves become TIMEX3s, co-ordinating phrases between them become
    SIGNALs, the best remaining chunk carries the outer VAL, and adjacent
    TIMEX3s are linked. Returns the emitted elements.
    """
    if not t2.children:
        raise ValueError("nested path needs a TIMEX2 with children")
    report = report if report is not None else ConversionReport()
    leaves = list(t2.leaves())
    leaf_ids = {id(leaf) for leaf in leaves}
    for node in t2.walk():
        if node is not t2 and id(node) not in leaf_ids:
            report.warn("DROPPED_INNER", node.span,
                        f"intermediate TIMEX2 VAL={node.val!r} has no TIMEX3 counterpart",
                        dropped=1)

    tokens = _phrase_tokens(t2, text, cache)
    runs, current = [], []
    for token in tokens:
        if any(token.span.overlaps(leaf.span) for leaf in leaves):
            if current:
                runs.append(current)
            current = []
        else:
            current.append(token)
    if current:
        runs.append(current)

    signal_spans, chunks = [], []
    for run in runs:
        matches = find_all_signals(run, lexicon, cfg.nested_coordinators)
        signal_spans.extend((m.span, m.entry.text) for m in matches)
        cut = 0
        for m in matches + [None]:
            stop = m.first if m is not None else len(run)
            if stop > cut:
                chunks.append(run[cut:stop])
            if m is not None:
                cut = m.stop

    candidates = []
    for piece in chunks:
        piece = _strip_edges(piece, lambda t: t.tag is PosTag.PREP or _is_punct(t))
        if any(_is_content(t) for t in piece):
            candidates.append(piece)
    outer_span = None
    if candidates:
        best = min(candidates, key=lambda c: (not _has_measure(c), c[0].span.start))
        outer_span = Span(best[0].span.start, best[-1].span.end)
    else:
        report.warn("NO_RESIDUE_CHUNK", t2.span,
                    f"no chunk left for outer VAL={t2.val!r}; dropped", dropped=1)

    pending = [(leaf.span, leaf) for leaf in leaves]
    if outer_span is not None:
        pending.append((outer_span, t2))
    pending.sort(key=lambda p: p[0])
    timexes = [map_simple_timex(source, doc, span, report) for span, source in pending]
    signals = [(doc.add_signal(span), phrase) for span, phrase in signal_spans]

    links = []
    for a, b in zip(timexes, timexes[1:]):
        between = [(s, p) for s, p in signals if a.span.end <= s.span.start and s.span.end <= b.span.start]
        signal, phrase = between[0] if between else (None, None)
        signal_rel = cfg.signal_relation_map.get(phrase) if phrase else None
        rel = _link_type(_combine(value_relation(a.value, b.value), signal_rel), cfg)
        if rel is None and not cfg.leave_ambiguous_untyped:
            continue
        source, target = (b, a) if rel is RelType.INCLUDES else (a, b)
        if rel is RelType.INCLUDES:
            rel = RelType.IS_INCLUDED
        links.append(doc.add_tlink(time_id=source.tid, related_to_time=target.tid, rel_type=rel,
                                   signal_id=signal.sid if signal else None))
    return [*timexes, *(s for s, _ in signals), *links]


# ---------------------------------------------------------------- trimming

@dataclass(frozen=True)
class Constituent:
    first: int
    stop: int
    children: tuple = ()

    def __len__(self):
        return self.stop - self.first


ConstituentOracle = Callable[[Sequence[TaggedToken]], Constituent]

_CHUNK_BREAKERS = frozenset({PosTag.PREP, PosTag.OTHER})


def chunk_parse(tokens: Sequence[TaggedToken]) -> Constituent:
    """Two-level shallow parse: the root spans every token; its children are
    chunks split at prepositions, conjunctions and punctuation (each a chunk
    of its own), possessive markers and finite verbs (each opening a chunk).
    Every multi-token chunk also holds its first word and its right-hand
    sub-phrase, recursively, as a right-branching phrase would."""
    spans = []
    start = 0
    for i, t in enumerate(tokens):
        if t.tag in _CHUNK_BREAKERS:
            if i > start:
                spans.append((start, i))
            spans.append((i, i + 1))
            start = i + 1
        elif t.tag is PosTag.POSS or (t.tag is PosTag.VERB and i > start):
            if i > start:
                spans.append((start, i))
            start = i
    if start < len(tokens):
        spans.append((start, len(tokens)))

    def nbar(first, stop):
        if stop - first <= 1:
            return ()
        return (Constituent(first, first + 1), Constituent(first + 1, stop, nbar(first + 1, stop)))

    return Constituent(0, len(tokens), tuple(Constituent(a, b, nbar(a, b)) for a, b in spans))


def _constituents(node: Constituent):
    yield node
    for child in node.children:
        yield from _constituents(child)


def trim_long_timex(t2: Timex2, text: str, cfg: Optional[ConversionConfig] = None,
                    parser: Optional[ConstituentOracle] = None,
                    cache: Optional[TagCache] = None) -> Span:
    """Reduce a long TIMEX2 to its timex-bearing constituent.

    Picks the largest constituent shorter than ``cfg.trim_cutoff`` tokens
    that holds a measure word, leftmost among equals. Without a measure
    word, the leftmost top-level chunk under the cutoff wins. Spans of
    fewer than ``trim_cutoff`` tokens come back unchanged.
    """
    cfg = cfg or ConversionConfig()
    tokens = _phrase_tokens(t2, text, cache)
    if len(tokens) < cfg.trim_cutoff:
        return t2.span
    root = (parser or chunk_parse)(tokens)
    short = [c for c in _constituents(root) if 0 < len(c) < cfg.trim_cutoff]

    def has_measure(c):
        return _has_measure(tokens[c.first:c.stop])

    def has_content(c):
        return any(_is_content(t) for t in tokens[c.first:c.stop])

    measured = [c for c in short if has_measure(c)]
    if measured:
        best = min(measured, key=lambda c: (-len(c), c.first))
    else:
        top = [c for c in root.children if 0 < len(c) < cfg.trim_cutoff and has_content(c)]
        pool = top or [c for c in short if has_content(c)] or short
        best = min(pool, key=lambda c: (c.first, -len(c)))
    return Span(tokens[best.first].span.start, tokens[best.stop - 1].span.end)


# ---------------------------------------------------------------- documents

def _count_nodes(t2: Timex2) -> int:
    return sum(1 for _ in t2.walk())


def convert_document(doc: Document, cfg: Optional[ConversionConfig] = None,
                     lexicon: Optional[SignalLexicon] = None,
                     cache: Optional[TagCache] = None,
                     dependency: Optional[DependencyOracle] = None,
                     constituency: Optional[ConstituentOracle] = None):
    """Convert one document; returns ``(TimeMLDocument, ConversionReport)``."""
    cfg = cfg or ConversionConfig()
    lexicon = lexicon if lexicon is not None else SignalLexicon.default()
    builder = TimeMLBuilder(doc.text, doc.doc_id)
    report = ConversionReport(doc.doc_id)
    text = doc.text

    for t2 in doc.timexes:
        nodes = _count_nodes(t2)
        report.timex2_count += nodes
        tokens = _phrase_tokens(t2, text, cache)
        if not tokens:
            report.paths["simple"] += 1
            report.warn("EMPTY_TIMEX", t2.span, "TIMEX2 covers no tokens; dropped", dropped=nodes)
            continue
        if t2.children:
            report.paths["nested"] += 1
            transduce_nested(t2, builder, cfg, lexicon, text, cache, report)
            continue
        if find_signal(tokens, lexicon) is not None:
            try:
                transduce_signalled(t2, builder, cfg, lexicon, text, cache, dependency, report)
            except TransductionError as exc:
                report.warn("DEGENERATE_SPLIT", t2.span, str(exc))
            else:
                report.paths["signalled"] += 1
                continue
        if len(tokens) >= cfg.trim_cutoff:
            report.paths["trimmed"] += 1
            span = trim_long_timex(t2, text, cfg, constituency, cache)
            map_simple_timex(t2, builder, span, report)
            continue
        report.paths["simple"] += 1
        map_simple_timex(t2, builder, None, report,
                         creation_time=doc.dct_span is not None and t2.span == doc.dct_span)

    report.timex3_count = len(builder.timex3s)
    return builder.build(), report
