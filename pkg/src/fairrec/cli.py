"""Command-line interface.

Subcommands::

    fairrec ingest    --authors A.csv --papers P.csv --venues V.csv --out DIR
    fairrec select    --data DIR --algorithm overall --weights boolean --n 351 --out DIR
    fairrec evaluate  --data DIR --selection selection.json [--baseline-venue V] --out DIR
    fairrec evaluate  --replay tables.json --out DIR
    fairrec synth     --authors 800 --papers 600 --seed 7 --out DIR
    fairrec report    RUN_DIR/report.json ...

Exit codes: 0 success, 2 parse or validation failure, 3 pool smaller than
N, 4 unusable baseline (empty, unknown, or without protected authors on
some feature), 5 invalid synthetic spec.  Results go to
files and stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import ingest
from .errors import EmptySelection, FairrecError, InvalidSpec, PoolTooSmall, ZeroBaselineFeature
from .metrics import EvaluationReport, evaluate, evaluate_vectors, write_report
from .parity import Counting, ParityVector
from .pipeline import build_pool
from .profiling import FEATURES, RankSplit, WeightMode
from .selection import Algorithm, ParityRule, SelectionRequest, select
from .synth import DEFAULT_BASE_RATES, DEFAULT_IMPACT_FACTORS, SyntheticSpec, generate

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_POOL = 3
EXIT_BASELINE = 4
EXIT_SPEC = 5


class CommandError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _err(msg):
    print(f"fairrec: {msg}", file=sys.stderr)


def _dump_json(obj, path: Path):
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _tables(args):
    try:
        return ingest.load_reference_tables(args.tables)
    except (OSError, ValueError, KeyError) as exc:
        raise CommandError(f"reference tables: {exc}", EXIT_INPUT) from exc


def _load(args, tables):
    try:
        return ingest.load_dataset_dir(args.data, tables)
    except OSError as exc:
        raise CommandError(str(exc), EXIT_INPUT) from exc
    except ingest.InvalidDataset as exc:
        for d in exc.diagnostics:
            _err(str(d))
        raise CommandError(f"{len(exc.diagnostics)} validation error(s)", EXIT_INPUT) from exc
    except FairrecError as exc:
        raise CommandError(str(exc), EXIT_INPUT) from exc


def _floats(text, n=None, name="value"):
    try:
        values = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise CommandError(f"{name}: expected comma-separated numbers, got {text!r}", EXIT_SPEC) from None
    if n is not None and len(values) != n:
        raise CommandError(f"{name}: expected {n} values, got {len(values)}", EXIT_SPEC)
    return values


def _ints(text, n, name):
    values = _floats(text, n, name)
    if any(not v.is_integer() for v in values):
        raise CommandError(f"{name}: expected integers, got {text!r}", EXIT_SPEC)
    return tuple(int(v) for v in values)


# -- ingest ----------------------------------------------------------------

def cmd_ingest(args) -> int:
    tables = _tables(args)
    try:
        dataset = ingest.load_dataset(args.authors, args.papers, args.venues, tables)
    except OSError as exc:
        raise CommandError(str(exc), EXIT_INPUT) from exc
    except ingest.InvalidDataset as exc:
        for d in exc.diagnostics:
            _err(str(d))
        raise CommandError(f"{len(exc.diagnostics)} validation error(s)", EXIT_INPUT) from exc
    except FairrecError as exc:
        raise CommandError(str(exc), EXIT_INPUT) from exc
    ingest.write_dataset(dataset, args.out)
    a, p, v = dataset.counts
    print(json.dumps({"authors": a, "papers": p, "venues": v}, sort_keys=True))
    return EXIT_OK


# -- select ----------------------------------------------------------------

def _composition(dataset, selected):
    total = len(selected)
    counts = {}
    for pid in selected:
        vid = dataset.papers[pid].venue_id
        counts[vid] = counts.get(vid, 0) + 1
    venues = sorted(dataset.venues.values(), key=lambda v: (-v.impact_factor, v.venue_id))
    return [
        {"venue_id": v.venue_id, "count": counts.get(v.venue_id, 0),
         "percent": round(100.0 * counts.get(v.venue_id, 0) / total, 2)}
        for v in venues
    ]


def cmd_select(args) -> int:
    tables = _tables(args)
    dataset = _load(args, tables)
    n = args.n
    if n is None:
        n = len(dataset.papers_in_venue(dataset.top_venue()))
    try:
        request = SelectionRequest(
            n_papers=n,
            mode=WeightMode(args.weights),
            algorithm=Algorithm(args.algorithm),
            parity_rule=ParityRule(args.parity_rule),
            counting=Counting(args.counting),
        )
        pool = build_pool(dataset, tables, request.mode, RankSplit(args.rank_split))
        result = select(pool.papers, request, pool.parity, pool.authors)
    except PoolTooSmall as exc:
        raise CommandError(str(exc), EXIT_POOL) from exc
    except FairrecError as exc:
        raise CommandError(str(exc), EXIT_INPUT) from exc

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    doc = result.to_dict()
    doc["rank_split"] = args.rank_split
    doc["pool_parity"] = dict(zip(ParityVector._fields, pool.parity))
    doc["composition"] = _composition(dataset, result.selected)
    sources = result.source_counts()
    doc["sources"] = {k: sources[k] for k in sorted(sources)}
    _dump_json(doc, out / "selection.json")
    with (out / "composition.csv").open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["venue_id", "count", "percent"])
        for row in doc["composition"]:
            w.writerow([row["venue_id"], row["count"], f"{row['percent']:.2f}"])
        w.writerow(["total", len(result.selected), "100.00"])
    with (out / "sources.csv").open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["source", "count", "percent"])
        for k, c in doc["sources"].items():
            w.writerow([k, c, f"{100.0 * c / len(result.selected):.2f}"])
    print(json.dumps({"selected": len(result.selected), "sources": doc["sources"]}, sort_keys=True))
    return EXIT_OK


# -- evaluate --------------------------------------------------------------

def _vector(value, name):
    if isinstance(value, dict):
        keys = ParityVector._fields if ParityVector._fields[0] in value else FEATURES
        try:
            value = [value[k] for k in keys]
        except KeyError as exc:
            raise CommandError(f"{name}: missing component {exc}", EXIT_INPUT) from None
    if len(value) != 5:
        raise CommandError(f"{name}: expected five components", EXIT_INPUT)
    return tuple(float(x) for x in value)


def _replay(args) -> int:
    try:
        doc = json.loads(Path(args.replay).read_text())
    except (OSError, ValueError) as exc:
        raise CommandError(f"replay file: {exc}", EXIT_INPUT) from exc
    if "baseline" not in doc:
        raise CommandError("replay file has no baseline", EXIT_BASELINE)
    baseline = _vector(doc["baseline"], "baseline")
    pool = _vector(doc["pool"], "pool")
    candidates = doc.get("candidates")
    if candidates is None:
        candidates = {"candidate": {k: doc[k] for k in doc if k not in ("baseline", "pool")}}
        candidates["candidate"]["participation"] = doc["candidate"]
    out = Path(args.out)
    summary = []
    try:
        for name in sorted(candidates):
            c = candidates[name]
            if "utility_savings" in c:
                u_cand, u_base = float(c["utility_savings"]), 100.0
            else:
                u_cand, u_base = float(c["u_candidate"]), float(c["u_baseline"])
            report = evaluate_vectors(_vector(c["participation"], name), baseline, pool, u_cand, u_base)
            write_report(report, out / name if len(candidates) > 1 else out)
            summary.append((name, report))
    except FairrecError as exc:
        raise CommandError(str(exc), EXIT_INPUT) from exc
    if len(candidates) > 1:
        _write_summary(summary, out / "summary.csv")
    _print_summary(summary)
    return EXIT_OK


def _baseline_ids(args, dataset):
    if args.baseline_papers:
        try:
            lines = Path(args.baseline_papers).read_text().split()
        except OSError as exc:
            raise CommandError(str(exc), EXIT_BASELINE) from exc
        ids = [x for x in lines if x]
        unknown = [x for x in ids if x not in dataset.papers]
        if unknown:
            raise CommandError(f"baseline lists unknown papers: {', '.join(unknown[:5])}", EXIT_BASELINE)
        return ids
    venue = args.baseline_venue or dataset.top_venue()
    if venue not in dataset.venues:
        raise CommandError(f"unknown baseline venue {venue!r}", EXIT_BASELINE)
    return [p.paper_id for p in dataset.papers_in_venue(venue)]


def cmd_evaluate(args) -> int:
    if args.replay:
        return _replay(args)
    if not args.data or not args.selection:
        raise CommandError("evaluate needs --data and --selection (or --replay)", EXIT_INPUT)
    tables = _tables(args)
    dataset = _load(args, tables)
    try:
        sel = json.loads(Path(args.selection).read_text())
        candidate_ids = [row["paper_id"] for row in sel["selected"]]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CommandError(f"selection file: {exc}", EXIT_INPUT) from exc
    unknown = [x for x in candidate_ids if x not in dataset.papers]
    if unknown:
        raise CommandError(f"selection lists unknown papers: {', '.join(unknown[:5])}", EXIT_INPUT)
    baseline_ids = _baseline_ids(args, dataset)
    if not baseline_ids:
        raise CommandError("baseline is empty", EXIT_BASELINE)
    split = RankSplit(sel.get("rank_split", args.rank_split))
    try:
        pool = build_pool(dataset, tables, WeightMode.BOOLEAN, split)
        report = evaluate(
            [dataset.papers[p] for p in candidate_ids],
            [dataset.papers[p] for p in baseline_ids],
            pool.authors, pool.parity, Counting(args.counting),
        )
    except (EmptySelection, ZeroBaselineFeature) as exc:
        raise CommandError(str(exc), EXIT_BASELINE) from exc
    except FairrecError as exc:
        raise CommandError(str(exc), EXIT_INPUT) from exc
    write_report(report, args.out)
    _print_summary([(Path(args.selection).stem, report)])
    return EXIT_OK


# -- report ----------------------------------------------------------------

_SUMMARY_COLUMNS = ("run", "diversity_gain", "utility_savings", "f_diversity",
                    "demographic_similarity", "f_parity")


def _summary_rows(summary):
    for name, r in summary:
        yield [name, f"{r.diversity_gain:.2f}", f"{r.utility_savings:.2f}", f"{r.f_diversity:.2f}",
               f"{r.demographic_similarity:.2f}", f"{r.f_parity:.2f}"]


def _write_summary(summary, path: Path):
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(_SUMMARY_COLUMNS)
        w.writerows(_summary_rows(summary))


def _print_summary(summary):
    rows = [list(_SUMMARY_COLUMNS)] + list(_summary_rows(summary))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        print("  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(r, widths))))


def cmd_report(args) -> int:
    summary = []
    for path in args.reports:
        path = Path(path)
        if path.is_dir():
            path = path / "report.json"
        try:
            report = EvaluationReport.from_dict(json.loads(path.read_text()))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise CommandError(f"{path}: {exc}", EXIT_INPUT) from exc
        summary.append((path.parent.name or str(path), report))
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        _write_summary(summary, out)
    _print_summary(summary)
    return EXIT_OK


# -- synth -----------------------------------------------------------------

def cmd_synth(args) -> int:
    spec = SyntheticSpec(
        n_authors=args.authors,
        n_papers=args.papers,
        authors_per_paper=_ints(args.authors_per_paper, 2, "--authors-per-paper"),
        base_rates=_floats(args.rates, 5, "--rates"),
        impact_factors=_floats(args.impact_factors, None, "--impact-factors"),
        h_index_range=_ints(args.h_index, 2, "--h-index"),
        seed=args.seed,
        venue_shares=_floats(args.venue_shares, None, "--venue-shares") if args.venue_shares else None,
    )
    try:
        dataset = generate(spec, _tables(args))
    except InvalidSpec as exc:
        raise CommandError(str(exc), EXIT_SPEC) from exc
    ingest.write_dataset(dataset, args.out)
    a, p, v = dataset.counts
    print(json.dumps({"authors": a, "papers": p, "venues": v, "seed": args.seed}, sort_keys=True))
    return EXIT_OK


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fairrec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, data=True):
        p.add_argument("--tables", help="reference tables JSON (default: bundled)")
        p.add_argument("--rank-split", choices=[s.value for s in RankSplit], default="median")
        p.add_argument("--counting", choices=[c.value for c in Counting], default="unique",
                       help="count authors once per selection or once per paper")
        if data:
            p.add_argument("--data", help="directory holding authors.csv, papers.csv, venues.csv")

    p = sub.add_parser("ingest", help="validate raw files and write a clean dataset")
    p.add_argument("--authors", required=True)
    p.add_argument("--papers", required=True)
    p.add_argument("--venues", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--tables")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("select", help="choose N papers with a fair selection algorithm")
    common(p)
    p.add_argument("--algorithm", choices=[a.value for a in Algorithm], default="overall")
    p.add_argument("--weights", choices=[m.value for m in WeightMode], default="boolean")
    p.add_argument("--n", type=int, help="papers to select (default: size of the top venue)")
    p.add_argument("--parity-rule", choices=[r.value for r in ParityRule], default="projected")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("evaluate", help="score a selection against a baseline")
    common(p)
    p.add_argument("--selection", help="selection.json written by 'select'")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--baseline-venue", help="venue whose papers form the baseline (default: top venue)")
    g.add_argument("--baseline-papers", help="file of baseline paper ids, whitespace separated")
    p.add_argument("--replay", help="JSON of participation vectors and utilities to score directly")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", help="generate a seeded synthetic dataset")
    p.add_argument("--authors", type=int, default=120)
    p.add_argument("--papers", type=int, default=60)
    p.add_argument("--authors-per-paper", default="1,4")
    p.add_argument("--rates", default=",".join(str(r) for r in DEFAULT_BASE_RATES),
                   help="protected base rates: gender,ethnicity,career,university,geo")
    p.add_argument("--impact-factors", default=",".join(str(f) for f in DEFAULT_IMPACT_FACTORS))
    p.add_argument("--venue-shares", help="relative share of papers per venue")
    p.add_argument("--h-index", default="0,60", help="inclusive h-index range lo,hi")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tables")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("report", help="tabulate one or more evaluation reports")
    p.add_argument("reports", nargs="+", help="report.json files or directories holding one")
    p.add_argument("--out", help="also write the table as CSV")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        _err(str(exc))
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
