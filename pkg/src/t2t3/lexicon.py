"""Signal lexicon, temporal measure words, and part-of-speech tagging.

The default tagger is a small closed-class + suffix rule tagger. Any
callable mapping a list of words to a list of :class:`PosTag` can replace
it; :class:`TagCache` memoises tagging per exact phrase string.
"""
from __future__ import annotations

import enum
import re
import threading
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, NamedTuple, Optional, Sequence

from .model import Span


class PosTag(str, enum.Enum):
    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    PREP = "PREP"
    DET = "DET"
    NUM = "NUM"
    POSS = "POSS"
    OTHER = "OTHER"


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    tag: PosTag
    span: Span


@dataclass(frozen=True)
class SignalEntry:
    phrase: tuple
    monosemous: bool
    signal_likelihood: int

    @property
    def text(self) -> str:
        return " ".join(self.phrase)


class SignalMatch(NamedTuple):
    span: Span
    entry: SignalEntry
    # token index range [first, stop) of the match
    first: int
    stop: int


class SignalLexicon:
    def __init__(self, entries: Sequence[SignalEntry] = ()):
        self.entries: dict = {}
        for entry in entries:
            if entry.phrase in self.entries:
                raise ValueError(f"duplicate signal phrase {entry.text!r}")
            self.entries[entry.phrase] = entry
        self._by_first: dict = {}
        for entry in self.entries.values():
            self._by_first.setdefault(entry.phrase[0], []).append(entry)

    def __contains__(self, phrase) -> bool:
        if isinstance(phrase, str):
            phrase = tuple(phrase.lower().split())
        return phrase in self.entries

    def __len__(self):
        return len(self.entries)

    def get(self, phrase: str) -> Optional[SignalEntry]:
        return self.entries.get(tuple(phrase.lower().split()))

    def starting_with(self, word: str):
        return self._by_first.get(word, ())

    @classmethod
    def parse(cls, text: str) -> "SignalLexicon":
        entries = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3 or parts[1] not in ("monosemous", "polysemous"):
                raise ValueError(f"bad signal lexicon line {lineno}: {line!r}")
            phrase = tuple(parts[0].lower().split())
            entries.append(SignalEntry(phrase, parts[1] == "monosemous", int(parts[2])))
        return cls(entries)

    @classmethod
    def load(cls, path) -> "SignalLexicon":
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    @classmethod
    def default(cls) -> "SignalLexicon":
        data = resources.files("t2t3").joinpath("data/signals.tsv").read_text(encoding="utf-8")
        return cls.parse(data)


def find_signal(tokens: Sequence[TaggedToken], lexicon: SignalLexicon) -> Optional[SignalMatch]:
    """Pick the single best signal phrase occurring in ``tokens``.

    Monosemous entries beat polysemous ones, then lower rank wins, then the
    leftmost occurrence.
    """
    words = [t.surface.lower() for t in tokens]
    best = None
    best_key = None
    for i, word in enumerate(words):
        for entry in lexicon.starting_with(word):
            n = len(entry.phrase)
            if tuple(words[i:i + n]) != entry.phrase:
                continue
            key = (not entry.monosemous, entry.signal_likelihood, i)
            if best_key is None or key < best_key:
                best_key = key
                best = SignalMatch(Span(tokens[i].span.start, tokens[i + n - 1].span.end),
                                   entry, i, i + n)
    return best


def find_all_signals(tokens: Sequence[TaggedToken], lexicon: SignalLexicon, extra=()):
    """Every non-overlapping signal occurrence, scanning left to right and
    preferring the longest phrase at each position."""
    words = [t.surface.lower() for t in tokens]
    extra_entries = [SignalEntry(tuple(p.split()), False, 10 ** 6) for p in extra]
    found = []
    i = 0
    while i < len(words):
        options = [e for e in (*lexicon.starting_with(words[i]), *extra_entries)
                   if tuple(words[i:i + len(e.phrase)]) == e.phrase]
        if not options:
            i += 1
            continue
        entry = max(options, key=lambda e: len(e.phrase))
        n = len(entry.phrase)
        found.append(SignalMatch(Span(tokens[i].span.start, tokens[i + n - 1].span.end),
                                 entry, i, i + n))
        i += n
    return found


MEASURE_WORDS = frozenset("""
    second minute hour day week fortnight month quarter year decade century
    millennium morning afternoon evening night midnight noon weekend weekday
    season spring summer autumn fall winter today tonight tomorrow yesterday
    monday tuesday wednesday thursday friday saturday sunday
    january february march april june july august september october november
    december
""".split())

_IRREGULAR_PLURALS = {
    "millennia": "millennium",
    "millenia": "millennium",
    "millenniums": "millennium",
    "centuries": "century",
}


def _singular(word: str) -> str:
    if word in _IRREGULAR_PLURALS:
        return _IRREGULAR_PLURALS[word]
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith("s") and not word.endswith("ss"):
        return word[:-1]
    return word


def is_measure_word(token: str) -> bool:
    word = token.lower()
    return word in MEASURE_WORDS or _singular(word) in MEASURE_WORDS


_TOKEN = re.compile(
    r"['’]s\b"
    r"|\d+(?:[.,:/]\d+)*(?:st|nd|rd|th|s)?"
    r"|\w+(?:-\w+)*"
    r"|[^\w\s]"
)


def tokenize(phrase: str) -> list:
    """Word tokens of ``phrase`` as ``(surface, Span)`` pairs."""
    return [(m.group(), Span(m.start(), m.end())) for m in _TOKEN.finditer(phrase)]


_CLOSED = {}
for _tag, _words in {
    PosTag.DET: "a an the this that these those every each some any no another "
                "their his her its our my your whose",
    PosTag.PREP: "about above across after against along amid among around as at before "
                 "behind below beneath beside besides between beyond by despite down during "
                 "except for from in inside into like near of off on onto out outside over "
                 "per since than through throughout till to toward towards under until "
                 "unlike up upon via with within without following",
    PosTag.OTHER: "i you he she it we they me him us them who which what there "
                  "and or but nor because while when whereas if although though",
    PosTag.VERB: "is are was were be been being am has have had do does did will would "
                 "shall should can could may might must",
    PosTag.NUM: "zero one two three four five six seven eight nine ten eleven twelve "
                "thirteen fourteen fifteen sixteen seventeen eighteen nineteen twenty "
                "thirty forty fifty sixty seventy eighty ninety hundred thousand million "
                "billion dozen",
    PosTag.ADV: "later earlier ago soon now then recently again still just only also even "
                "very not never ever already afterwards afterward once twice almost nearly "
                "approximately roughly too here",
    PosTag.ADJ: "next last early late previous past recent current coming few several many "
                "much more most less same other fiscal prior former latter new old whole "
                "entire final initial upcoming daily weekly monthly yearly annual quarterly "
                "nightly first third fourth fifth sixth seventh eighth ninth tenth eleventh "
                "twelfth thirteenth fourteenth fifteenth sixteenth seventeenth eighteenth "
                "nineteenth twentieth thirtieth",
}.items():
    for _w in _words.split():
        _CLOSED[_w] = _tag

_NOT_ING_VERBS = frozenset(
    "morning evening spring thing nothing something anything everything king ring "
    "string wedding building ceiling beijing".split())
_NOT_ED_VERBS = frozenset("hundred indeed need speed seed bed red shed wed feed breed creed greed".split())
_NOT_LY_ADVS = frozenset("july family holy reply supply italy ally fly rely apply".split())


def rule_tags(words: Sequence[str]) -> list:
    """Default tagger: closed classes first, then suffix heuristics, then NOUN."""
    tags = []
    for word in words:
        low = word.lower()
        if low in ("'s", "’s", "'", "’"):
            tags.append(PosTag.POSS)
        elif low in _CLOSED:
            tags.append(_CLOSED[low])
        elif low[:1].isdigit():
            tags.append(PosTag.ADJ if re.fullmatch(r"\d+(st|nd|rd|th)", low) else PosTag.NUM)
        elif not any(ch.isalnum() for ch in low):
            tags.append(PosTag.OTHER)
        elif low.endswith("ly") and len(low) > 3 and low not in _NOT_LY_ADVS:
            tags.append(PosTag.ADV)
        elif low.endswith("ing") and len(low) > 4 and low not in _NOT_ING_VERBS:
            tags.append(PosTag.VERB)
        elif low.endswith("ed") and len(low) > 4 and low not in _NOT_ED_VERBS:
            tags.append(PosTag.VERB)
        else:
            tags.append(PosTag.NOUN)
    return tags


Tagger = Callable[[Sequence[str]], list]


def _tag_with(phrase: str, tagger: Tagger) -> tuple:
    pieces = tokenize(phrase)
    tags = tagger([surface for surface, _ in pieces])
    return tuple(TaggedToken(surface, PosTag(t), span) for (surface, span), t in zip(pieces, tags))


class TagCache:
    """Phrase-keyed memo of tagger output. Safe to share between threads."""

    def __init__(self, tagger: Tagger = rule_tags):
        self.tagger = tagger
        self._store: dict = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def __len__(self):
        return len(self._store)

    def lookup(self, phrase: str) -> tuple:
        with self._lock:
            cached = self._store.get(phrase)
            if cached is not None:
                self.hits += 1
                return cached
        result = _tag_with(phrase, self.tagger)
        with self._lock:
            # first writer wins so every caller sees one value per phrase
            cached = self._store.setdefault(phrase, result)
            if cached is result:
                self.misses += 1
            else:
                self.hits += 1
        return cached


def tag(phrase: str, cache: Optional[TagCache] = None, offset: int = 0) -> list:
    """Tag ``phrase``; token spans are shifted by ``offset``."""
    tokens = cache.lookup(phrase) if cache is not None else _tag_with(phrase, rule_tags)
    if offset:
        return [TaggedToken(t.surface, t.tag, t.span.shift(offset)) for t in tokens]
    return list(tokens)
