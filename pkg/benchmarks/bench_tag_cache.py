"""Time phrase tagging over a synthetic corpus with and without the cache.

    python3 benchmarks/bench_tag_cache.py [--docs N] [--repeat R]
"""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from corpus import synth_corpus  # noqa: E402
from t2t3.ingest import parse_inline  # noqa: E402
from t2t3.lexicon import TagCache, tag  # noqa: E402


def phrases(n_docs):
    out = []
    for synth in synth_corpus(n_docs, seed=11):
        doc = parse_inline(synth.markup)
        out += [t.span.slice(doc.text) for t in doc.all_timexes()]
    return out


def run(items, cache):
    start = time.perf_counter()
    for p in items:
        tag(p, cache)
    return time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--docs", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    items = phrases(args.docs)
    plain = min(run(items, None) for _ in range(args.repeat))
    cached = []
    for _ in range(args.repeat):
        cache = TagCache()
        cached.append(run(items, cache))
    best = min(cached)
    print(f"phrases={len(items)} distinct={len(cache)} hit_rate={cache.hits / len(items):.3f}")
    print(f"uncached={plain * 1e3:.1f}ms cached={best * 1e3:.1f}ms speedup={plain / best:.1f}x")


if __name__ == "__main__":
    main()
