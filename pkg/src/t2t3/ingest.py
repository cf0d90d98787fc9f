"""Read TIMEX2 corpora into :class:`~t2t3.model.Document` objects.

Two source layouts are supported: inline SGML-ish markup with ``<TIMEX2>``
tags, and ACE-style standoff (APF XML) paired with the raw source text.
"""
from __future__ import annotations

import codecs
import html
import logging
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional

from .model import AnchorDir, Document, Span, Timex2

log = logging.getLogger(__name__)


class IngestError(Exception):
    """Base class for source-reading failures."""


class EmptyInput(IngestError):
    pass


class MalformedMarkup(IngestError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class SpanConflict(IngestError):
    pass


class SpanMismatch(IngestError):
    pass


# Elements whose TIMEX2 gives the document creation time.
DATELINE_TAGS = frozenset({"DATE_TIME", "DATETIME", "DATELINE", "DATE", "DCT"})
DOCID_TAGS = frozenset({"DOCNO", "DOCID"})

_XML_ENTITIES = frozenset({"lt", "gt", "amp", "quot", "apos"})
_ENTITY = re.compile(r"&(#[0-9]+|#[xX][0-9a-fA-F]+|[A-Za-z][A-Za-z0-9]*);")
# C0 controls other than tab/newline/CR, plus U+FFFE/U+FFFF; none survive XML.
_BAD_CHARS = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ufffe\uffff]")
_UTF8_MULTIBYTE = re.compile(
    rb"[\xc2-\xdf][\x80-\xbf]|[\xe0-\xef][\x80-\xbf]{2}|[\xf0-\xf4][\x80-\xbf]{3}")
_HIGH_C1 = re.compile(rb"[\x80-\x9f]")


def _decode(raw: bytes, declared: Optional[str]) -> str:
    if declared:
        try:
            return raw.decode(declared)
        except (LookupError, UnicodeDecodeError):
            log.debug("declared encoding %r failed, falling back", declared)
    if raw.startswith(codecs.BOM_UTF8):
        return raw[len(codecs.BOM_UTF8):].decode("utf-8", errors="ignore")
    if raw.startswith((codecs.BOM_UTF16_LE, codecs.BOM_UTF16_BE)):
        return raw.decode("utf-16", errors="ignore")
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError:
        pass
    # Not clean UTF-8. Bytes that look like Latin-1 letters and no real
    # multi-byte sequences -> Latin-1; otherwise UTF-8 with bad bytes dropped.
    if not _UTF8_MULTIBYTE.search(raw) and not _HIGH_C1.search(raw):
        return raw.decode("latin-1")
    return raw.decode("utf-8", errors="ignore")


def _resolve_entity(match: re.Match) -> str:
    name = match.group(1)
    if name in _XML_ENTITIES:
        return match.group(0)
    resolved = html.unescape(match.group(0))
    if resolved == match.group(0) or _BAD_CHARS.search(resolved):
        return ""
    # keep markup-significant characters escaped for the tag scanner
    return resolved.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def normalize_encoding(raw: bytes, declared: Optional[str] = None) -> str:
    """Decode ``raw`` to text, dropping undecodable bytes.

    Tries the declared encoding, then a BOM, then UTF-8, then Latin-1.
    Character entities are resolved where known and deleted otherwise; the
    five XML entities are kept so markup stays parseable.
    """
    if not raw:
        raise EmptyInput("no input bytes")
    text = _decode(raw, declared)
    text = _ENTITY.sub(_resolve_entity, text)
    return _BAD_CHARS.sub("", text)


_TAG = re.compile(
    r"<!--.*?-->"
    r"|<!\[CDATA\[.*?\]\]>"
    r"|<[?!][^>]*>"
    r"|<(?P<close>/)?(?P<name>[A-Za-z_][\w:.-]*)(?P<attrs>(?:\s+[^<>]*?)?)\s*(?P<empty>/)?>",
    re.DOTALL,
)
_ATTR = re.compile(r"""([A-Za-z_][\w:.-]*)\s*(?:=\s*("[^"]*"|'[^']*'|[^\s"'>/]+))?""")


def _parse_attrs(raw: str) -> dict:
    attrs = {}
    for m in _ATTR.finditer(raw):
        value = m.group(2) or ""
        if value[:1] in "\"'" and len(value) >= 2:
            value = value[1:-1]
        attrs[m.group(1).upper()] = html.unescape(value)
    return attrs


def _timex_fields(attrs: dict) -> dict:
    attrs = dict(attrs)
    anchor_dir = attrs.pop("ANCHOR_DIR", None)
    if anchor_dir:
        try:
            anchor_dir = AnchorDir(anchor_dir.upper())
        except ValueError:
            log.warning("unknown ANCHOR_DIR %r dropped", anchor_dir)
            attrs["ANCHOR_DIR"] = anchor_dir
            anchor_dir = None
    return dict(
        val=attrs.pop("VAL", "") or "",
        set=attrs.pop("SET", "").upper() in ("YES", "TRUE", "1"),
        mod=attrs.pop("MOD", None) or None,
        anchor_val=attrs.pop("ANCHOR_VAL", None) or None,
        anchor_dir=anchor_dir or None,
        source_id=attrs.pop("ID", None),
        extra=attrs,
    )


@dataclass
class _Open:
    name: str
    start: int
    attrs: dict
    # innermost TIMEX2 open when this element was opened
    parent: Optional["_Open"] = None
    children: list = field(default_factory=list)


def _scan(markup: str):
    """Strip tags from ``markup``.

    Returns the plain text, the TIMEX2 forest, and ``(TAGNAME, Span)`` for
    every other closed element (used for date lines and doc ids).
    Unclosed non-TIMEX2 elements are tolerated; an element that is closed
    across a TIMEX2 boundary is an error.
    """
    out = []
    length = 0
    timex_stack: list[_Open] = []
    other_stack: list[_Open] = []
    forest = []
    regions = []
    pos = 0
    for m in _TAG.finditer(markup):
        chunk = html.unescape(markup[pos:m.start()])
        out.append(chunk)
        length += len(chunk)
        pos = m.end()
        name = m.group("name")
        if name is None or m.group("empty"):
            continue
        upper = name.upper()
        parent = timex_stack[-1] if timex_stack else None
        if upper == "TIMEX2":
            if not m.group("close"):
                timex_stack.append(_Open(upper, length, _parse_attrs(m.group("attrs"))))
                continue
            if not timex_stack:
                raise MalformedMarkup("unmatched </TIMEX2>", m.start())
            node = timex_stack.pop()
            try:
                timex = Timex2(Span(node.start, length), children=tuple(node.children),
                               **_timex_fields(node.attrs))
            except ValueError as exc:
                raise MalformedMarkup(str(exc), m.start()) from exc
            (timex_stack[-1].children if timex_stack else forest).append(timex)
        elif not m.group("close"):
            other_stack.append(_Open(upper, length, {}, parent))
        else:
            for i in range(len(other_stack) - 1, -1, -1):
                opened = other_stack[i]
                if opened.name != upper:
                    continue
                if opened.parent is not parent:
                    raise MalformedMarkup(f"</{upper}> crosses a TIMEX2 boundary", m.start())
                regions.append((upper, Span(opened.start, length)))
                del other_stack[i:]
                break
    if timex_stack:
        raise MalformedMarkup("unclosed <TIMEX2>", len(markup))
    out.append(html.unescape(markup[pos:]))
    return "".join(out), forest, regions


def _dct_from(forest, regions):
    lines = [span for name, span in regions if name in DATELINE_TAGS]
    for timex in forest:
        if any(line.contains(timex.span) for line in lines) and timex.val:
            return timex.val, timex.span
    return None, None


def _doc_id_from(text, regions):
    for name, span in regions:
        if name in DOCID_TAGS:
            ident = span.slice(text).strip()
            if ident:
                return ident
    return ""


def parse_inline(markup: str, doc_id: Optional[str] = None, dct: Optional[str] = None) -> Document:
    """Parse inline TIMEX2 markup into a Document.

    All tags are removed from the text; TIMEX2 nesting becomes the forest.
    A ``dct`` argument is used only when no date-line TIMEX2 is found.
    """
    text, forest, regions = _scan(markup)
    found_dct, dct_span = _dct_from(forest, regions)
    if doc_id is None:
        doc_id = _doc_id_from(text, regions)
    return Document(text, tuple(forest), doc_id, found_dct or dct, dct_span)


def strip_markup(markup: str):
    """Plain text of ``markup`` plus ``(TAGNAME, Span)`` element regions."""
    text, _forest, regions = _scan(markup)
    return text, regions


@dataclass(frozen=True)
class StandoffRecord:
    record_id: str
    val: str = ""
    set: bool = False
    mod: Optional[str] = None
    anchor_val: Optional[str] = None
    anchor_dir: Optional[AnchorDir] = None
    mentions: tuple = ()
    mention_ids: tuple = ()
    # charseq text of each mention when the source file gave it
    mention_texts: tuple = ()
    extra: dict = field(default_factory=dict, compare=False, hash=False)


def parse_apf(xml_text: str) -> list:
    """Read ``timex2`` records from an ACE APF file.

    APF ``charseq`` END offsets are inclusive; they become exclusive here.
    """
    root = ET.fromstring(xml_text)
    records = []
    for node in root.iter():
        if node.tag.lower() != "timex2":
            continue
        fields = _timex_fields({k.upper(): v for k, v in node.attrib.items()})
        record_id = fields.pop("source_id") or ""
        spans, ids, texts = [], [], []
        for mention in node:
            if mention.tag.lower() != "timex2_mention":
                continue
            charseq = mention.find("./extent/charseq")
            if charseq is None:
                continue
            start = int(charseq.get("START"))
            end = int(charseq.get("END")) + 1
            spans.append(Span(start, end))
            ids.append(mention.get("ID"))
            texts.append(charseq.text)
        records.append(StandoffRecord(record_id, mentions=tuple(spans), mention_ids=tuple(ids),
                                      mention_texts=tuple(texts), **fields))
    return records


def merge_standoff(source: str, records, doc_id: str = "", dct: Optional[str] = None,
                   regions=()) -> Document:
    """Merge standoff timex records into ``source`` as a TIMEX2 forest.

    Each mention becomes one Timex2 carrying its record's attributes.
    Mentions that contain one another nest; partial overlaps raise
    :class:`SpanConflict`.
    """
    flat = []
    for record in records:
        for i, span in enumerate(record.mentions):
            if span.end > len(source):
                raise SpanMismatch(f"mention {span} of {record.record_id} exceeds source length")
            texts = record.mention_texts
            if i < len(texts) and texts[i] is not None and texts[i] != span.slice(source):
                raise SpanMismatch(
                    f"mention {span} of {record.record_id}: expected {texts[i]!r}, "
                    f"source has {span.slice(source)!r}")
            ids = record.mention_ids
            flat.append((span, record, ids[i] if i < len(ids) else None))
    flat.sort(key=lambda item: (item[0].start, -item[0].end))

    # nodes: [span, record, mention_id, children]
    roots = []
    stack = []
    for span, record, mention_id in flat:
        while stack and not stack[-1][0].contains(span):
            top = stack.pop()
            if top[0].overlaps(span):
                raise SpanConflict(f"mentions {top[0]} and {span} partially overlap")
        node = [span, record, mention_id, []]
        (stack[-1][3] if stack else roots).append(node)
        stack.append(node)

    def freeze(node):
        span, record, mention_id, children = node
        return Timex2(span, record.val, record.set, record.mod, record.anchor_val,
                      record.anchor_dir, tuple(freeze(c) for c in children),
                      mention_id or record.record_id, dict(record.extra))

    forest = [freeze(node) for node in roots]
    found_dct, dct_span = _dct_from(forest, regions)
    return Document(source, tuple(forest), doc_id, found_dct or dct, dct_span)
