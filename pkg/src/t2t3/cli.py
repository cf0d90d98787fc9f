"""Command-line front end: ``t2t3 convert|stats|score|validate``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .ingest import IngestError, merge_standoff, normalize_encoding, parse_apf, parse_inline, strip_markup
from .lexicon import SignalLexicon, TagCache
from .model import TimexType
from .scorer import Regime, TextMismatch, format_table, score_corpus
from .timeml import TimeMLParseError, parse_timeml, serialize, validate, violation_report
from .transducer import ConversionConfig, convert_document

log = logging.getLogger("t2t3")

APF_SUFFIX = ".apf.xml"

# per-process state for conversion workers
_worker = {}


def _init_worker(cfg_kwargs, lexicon_path, dct, encoding):
    _worker["cfg"] = ConversionConfig(**cfg_kwargs)
    _worker["lexicon"] = (SignalLexicon.load(lexicon_path) if lexicon_path
                          else SignalLexicon.default())
    _worker["cache"] = TagCache()
    _worker["dct"] = dct
    _worker["encoding"] = encoding


def _read_document(job):
    fmt, doc_id, source, annotations = job
    raw = Path(source).read_bytes()
    text = normalize_encoding(raw, _worker["encoding"])
    if fmt == "inline":
        return parse_inline(text, doc_id=doc_id, dct=_worker["dct"])
    plain, regions = strip_markup(text)
    apf = normalize_encoding(Path(annotations).read_bytes())
    return merge_standoff(plain, parse_apf(apf), doc_id, _worker["dct"], regions)


def _convert_one(job):
    """Convert one source; returns ``(record, tml_text, violations_text)``."""
    fmt, doc_id, source, annotations = job
    record = {"doc_id": doc_id, "source": str(source)}
    if annotations:
        record["annotations"] = str(annotations)
    try:
        doc = _read_document(job)
    except (IngestError, OSError, ValueError) as exc:
        record.update(status="failed", reason=f"{type(exc).__name__}: {exc}")
        return record, None, None
    tml, report = convert_document(doc, _worker["cfg"], _worker["lexicon"], _worker["cache"])
    record.update(report.to_dict())
    record["elements"] = {"timex3": len(tml.timex3s), "event": len(tml.events),
                          "signal": len(tml.signals), "tlink": len(tml.tlinks)}
    violations = validate(tml)
    if violations:
        record.update(status="failed", reason=f"validation: {len(violations)} violation(s)",
                      violations=[v.line() for v in violations])
        return record, None, violation_report(violations)
    record.update(status="converted", output=f"{doc_id}.tml")
    return record, serialize(tml), None


def _files(paths):
    for path in map(Path, paths):
        if path.is_dir():
            yield from sorted(p for p in path.iterdir() if p.is_file() and not p.name.startswith("."))
        else:
            yield path


def _jobs(paths, fmt):
    jobs = []
    for path in _files(paths):
        if fmt == "inline":
            jobs.append((fmt, path.name.rsplit(".", 1)[0] if "." in path.name else path.name,
                         str(path), None))
        elif path.name.endswith(APF_SUFFIX):
            doc_id = path.name[:-len(APF_SUFFIX)]
            jobs.append((fmt, doc_id, str(path.with_name(doc_id + ".sgm")), str(path)))
    return jobs


def cmd_convert(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg_kwargs = {"trim_cutoff": args.trim_cutoff, "untyped_tlinks": args.untyped_tlinks}
    init = (cfg_kwargs, args.signal_lexicon, args.dct, args.encoding)
    jobs = _jobs(args.inputs, args.format)

    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs, initializer=_init_worker, initargs=init) as pool:
            results = list(pool.map(_convert_one, jobs, chunksize=4))
    else:
        _init_worker(*init)
        results = [_convert_one(job) for job in jobs]

    seen = set()
    totals = Counter()
    with open(out / "manifest.jsonl", "w", encoding="utf-8", newline="\n") as manifest:
        for record, tml, violations in results:
            if record["doc_id"] in seen:
                record = {k: record[k] for k in ("doc_id", "source")}
                record.update(status="failed", reason="duplicate document id")
                tml = violations = None
            seen.add(record["doc_id"])
            if tml is not None:
                (out / record["output"]).write_text(tml, encoding="utf-8", newline="\n")
            if violations is not None:
                (out / f"{record['doc_id']}.violations").write_text(violations, encoding="utf-8",
                                                                    newline="\n")
            totals["documents"] += 1
            totals[record["status"]] += 1
            for key in ("timex2", "timex3", "dropped"):
                totals[key] += record.get(key, 0)
            manifest.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")
    summary = dict(sorted(totals.items()))
    (out / "summary.json").write_text(json.dumps(summary, sort_keys=True, indent=2) + "\n",
                                      encoding="utf-8")
    print(" ".join(f"{k}={v}" for k, v in summary.items()))
    return 1 if totals["failed"] else 0


def _tml_files(path):
    path = Path(path)
    if path.is_dir():
        return sorted(p for p in path.iterdir() if p.suffix == ".tml")
    return [path]


def _load_tml(path):
    return parse_timeml(Path(path).read_text(encoding="utf-8"), doc_id=Path(path).stem)


STATS_COLUMNS = (("DATE", TimexType.DATE), ("DUR.", TimexType.DURATION),
                 ("TIME", TimexType.TIME), ("SET", TimexType.SET))


def cmd_stats(args) -> int:
    rows = []
    failures = 0
    for corpus in args.corpora:
        counts = Counter()
        for path in _tml_files(corpus):
            try:
                doc = _load_tml(path)
            except (TimeMLParseError, OSError, UnicodeDecodeError) as exc:
                failures += 1
                print(f"{path}: {exc}", file=sys.stderr)
                continue
            counts.update(t.type for t in doc.timex3s)
        rows.append((Path(corpus).name or str(corpus), [counts[t] for _, t in STATS_COLUMNS]))
    total = [sum(col) for col in zip(*(r[1] for r in rows))] if rows else [0] * 4
    rows.append(("Total", total))
    header = ["Corpus", *(name for name, _ in STATS_COLUMNS)]
    table = [header] + [[name, *map(str, nums)] for name, nums in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    for r in table:
        print("  ".join(c.ljust(w) if i == 0 else c.rjust(w)
                        for i, (c, w) in enumerate(zip(r, widths))))
    return 1 if failures else 0


def cmd_score(args) -> int:
    gold = {p.name: p for p in _tml_files(args.gold)}
    system = {p.name: p for p in _tml_files(args.system)}
    for name in sorted(gold.keys() ^ system.keys()):
        side = "system" if name in gold else "gold"
        print(f"unpaired: {name} (no {side} file); skipped", file=sys.stderr)
    pairs = []
    for name in sorted(gold.keys() & system.keys()):
        try:
            g, s = _load_tml(gold[name]), _load_tml(system[name])
        except (TimeMLParseError, OSError) as exc:
            print(f"{name}: {exc}; skipped", file=sys.stderr)
            continue
        if g.text != s.text:
            print(f"{name}: {TextMismatch.__name__}; skipped", file=sys.stderr)
            continue
        pairs.append((g, s))
    regimes = {"entity": [Regime.ENTITY_STRICT], "token": [Regime.TOKEN],
               "both": [Regime.ENTITY_STRICT, Regime.TOKEN]}[args.regime]
    reports = [score_corpus(pairs, regime) for regime in regimes]
    if args.tsv:
        for r in reports:
            print(r.tsv())
    else:
        sys.stdout.write(format_table(reports))
    return 0


def cmd_validate(args) -> int:
    bad = 0
    for path in _files(args.inputs):
        try:
            violations = validate(_load_tml(path))
        except TimeMLParseError as exc:
            print(f"{path}\tMALFORMED_XML\t\t{exc}")
            bad += 1
            continue
        for v in violations:
            print(f"{path}\t{v.line()}")
        bad += bool(violations)
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="t2t3", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    conv = sub.add_parser("convert", help="convert TIMEX2 sources to TimeML")
    conv.add_argument("inputs", nargs="+", help="source files or directories")
    conv.add_argument("--format", choices=("inline", "standoff"), default="inline")
    conv.add_argument("--out", required=True, help="output directory")
    conv.add_argument("--dct", help="document creation time when the source has none")
    conv.add_argument("--trim-cutoff", type=int, default=6)
    conv.add_argument("--signal-lexicon", help="signal lexicon TSV file")
    conv.add_argument("--untyped-tlinks", action="store_true")
    conv.add_argument("--jobs", type=int, default=1)
    conv.add_argument("--encoding", help="declared source encoding")
    conv.set_defaults(func=cmd_convert)

    stats = sub.add_parser("stats", help="TIMEX3 type counts per corpus directory")
    stats.add_argument("corpora", nargs="*", help="directories of .tml files")
    stats.set_defaults(func=cmd_stats)

    score = sub.add_parser("score", help="score system .tml files against gold")
    score.add_argument("gold")
    score.add_argument("system")
    score.add_argument("--regime", choices=("entity", "token", "both"), default="both")
    score.add_argument("--tsv", action="store_true", help="tab-separated output")
    score.set_defaults(func=cmd_score)

    val = sub.add_parser("validate", help="check .tml files for consistency")
    val.add_argument("inputs", nargs="+")
    val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "convert":
        if args.trim_cutoff < 2:
            parser.error("--trim-cutoff must be at least 2")
        if args.jobs < 1:
            parser.error("--jobs must be at least 1")
        if args.signal_lexicon:
            try:
                SignalLexicon.load(args.signal_lexicon)
            except (OSError, ValueError) as exc:
                parser.error(f"--signal-lexicon: {exc}")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
