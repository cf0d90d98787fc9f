"""Convert TIMEX2-annotated corpora to TimeML (TIMEX3, EVENT, SIGNAL, TLINK)."""
from .ingest import merge_standoff, normalize_encoding, parse_apf, parse_inline
from .lexicon import SignalLexicon, TagCache, find_signal, is_measure_word, tag
from .model import (Document, Event, Signal, Span, TimeMLDocument, Timex2, Timex3, TimexType,
                    TLink, next_id)
from .scorer import score_corpus, score_entity, score_token
from .timeml import parse_timeml, serialize, validate
from .transducer import ConversionConfig, convert_document, infer_type

__version__ = "0.1.0"

__all__ = [
    "ConversionConfig", "Document", "Event", "Signal", "SignalLexicon", "Span", "TLink",
    "TagCache", "TimeMLDocument", "Timex2", "Timex3", "TimexType", "convert_document",
    "find_signal", "infer_type", "is_measure_word", "merge_standoff", "next_id",
    "normalize_encoding", "parse_apf", "parse_inline", "parse_timeml", "score_corpus",
    "score_entity", "score_token", "serialize", "tag", "validate",
]
