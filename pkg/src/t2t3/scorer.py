"""Timex extent scoring: strict entity match and token overlap.

Both regimes micro-average: per-document true/false positive counts are
pooled before precision, recall and F1 are computed. A zero denominator
gives 0.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable

from .model import TimeMLDocument


class TextMismatch(ValueError):
    pass


class Regime(str, enum.Enum):
    ENTITY_STRICT = "ENTITY_STRICT"
    TOKEN = "TOKEN"


@dataclass(frozen=True)
class Counts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __add__(self, other: "Counts") -> "Counts":
        return Counts(self.tp + other.tp, self.fp + other.fp, self.fn + other.fn)


@dataclass(frozen=True)
class ScoreReport:
    regime: Regime
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int

    @classmethod
    def from_counts(cls, regime: Regime, counts: Counts) -> "ScoreReport":
        p = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else 0.0
        r = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else 0.0
        f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
        return cls(regime, p, r, f1, counts.tp, counts.fp, counts.fn)

    def tsv(self) -> str:
        return (f"{self.regime.value}\t{self.precision:.4f}\t{self.recall:.4f}\t{self.f1:.4f}"
                f"\t{self.tp}\t{self.fp}\t{self.fn}")


def _check_text(gold: TimeMLDocument, sys: TimeMLDocument):
    if gold.text != sys.text:
        raise TextMismatch(f"gold and system texts differ ({gold.doc_id or '?'})")


def entity_counts(gold: TimeMLDocument, sys: TimeMLDocument) -> Counts:
    _check_text(gold, sys)
    g = {t.span for t in gold.timex3s}
    s = {t.span for t in sys.timex3s}
    return Counts(len(g & s), len(s - g), len(g - s))


def token_counts(gold: TimeMLDocument, sys: TimeMLDocument) -> Counts:
    """Whitespace tokens count as inside a timex if they overlap its span."""
    _check_text(gold, sys)
    g_spans = sorted(t.span for t in gold.timex3s)
    s_spans = sorted(t.span for t in sys.timex3s)
    tp = fp = fn = 0
    for m in re.finditer(r"\S+", gold.text):
        start, end = m.span()
        in_g = any(sp.start < end and start < sp.end for sp in g_spans)
        in_s = any(sp.start < end and start < sp.end for sp in s_spans)
        tp += in_g and in_s
        fp += in_s and not in_g
        fn += in_g and not in_s
    return Counts(tp, fp, fn)


_COUNTERS = {Regime.ENTITY_STRICT: entity_counts, Regime.TOKEN: token_counts}


def score_entity(gold: TimeMLDocument, sys: TimeMLDocument) -> ScoreReport:
    return ScoreReport.from_counts(Regime.ENTITY_STRICT, entity_counts(gold, sys))


def score_token(gold: TimeMLDocument, sys: TimeMLDocument) -> ScoreReport:
    return ScoreReport.from_counts(Regime.TOKEN, token_counts(gold, sys))


def score_corpus(pairs: Iterable, regime: Regime) -> ScoreReport:
    total = Counts()
    for gold, sys in pairs:
        total = total + _COUNTERS[regime](gold, sys)
    return ScoreReport.from_counts(regime, total)


def format_table(reports) -> str:
    rows = [("regime", "P", "R", "F1", "tp", "fp", "fn")]
    for r in reports:
        rows.append((r.regime.value, f"{r.precision:.4f}", f"{r.recall:.4f}", f"{r.f1:.4f}",
                     str(r.tp), str(r.fp), str(r.fn)))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) if i == 0 else cell.rjust(w)
                       for i, (cell, w) in enumerate(zip(row, widths)))
             for row in rows]
    return "\n".join(lines) + "\n"
