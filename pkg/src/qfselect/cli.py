"""Command-line front end: run experiments, brute-force oracles, reports.

Exit codes: 0 on success, 1 for runtime failures (bad data, evaluator
trouble, corrupt records), 2 for usage errors (argparse handles most of
those; cross-flag validation raises ValueError which maps to 2).
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import sys
import time
from pathlib import Path

import numpy as np

from .classifier import EvaluatorSpec, make_evaluator
from .dataset import Dataset, load_csv, stratified_split
from .errors import OracleLimitError, QfselectError, RecordError
from .evolution import EvolutionConfig, MutationConfig, evolve
from .masks import index_to_mask
from .objective import predicted_total_evaluations
from .records import (
    OracleRecord,
    RunRecord,
    read_run_record,
    write_json,
    write_oracle_record,
    write_run_record,
)

ORACLE_MAX_FEATURES = 20


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _fraction(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must be in (0, 1), got {value}")
    return value


def _probability(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in [0, 1], got {value}")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {value}")
    return value


def _add_data_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--data", required=True, help="CSV file with a header row")
    sub.add_argument(
        "--label",
        default="0",
        help="label column, by header name or 0-based index (default: 0)",
    )
    sub.add_argument(
        "--test-fraction",
        type=_fraction,
        default=0.2,
        help="held-out fraction for the stratified split (default: 0.2)",
    )


def _add_evaluator_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--evaluator",
        choices=("linear-svm", "nearest-centroid", "external"),
        default="linear-svm",
        help="mask-scoring backend (default: linear-svm)",
    )
    sub.add_argument(
        "--external-cmd",
        default=None,
        help="command line for --evaluator external",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfselect",
        description="Feature selection by evolving sampled quantum circuits.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run seeded evolution experiments")
    _add_data_flags(run)
    _add_evaluator_flags(run)
    run.add_argument("--generations", type=_positive_int, default=12)
    run.add_argument("--shots", type=_positive_int, default=64)
    run.add_argument("--mu", type=_positive_int, default=1)
    run.add_argument("--lambda", dest="lambda_", type=_positive_int, default=6)
    run.add_argument("--seed", type=_nonnegative_int, default=0)
    run.add_argument(
        "--repeat",
        type=_positive_int,
        default=1,
        help="independent runs with seeds seed, seed+1, ... (default: 1)",
    )
    run.add_argument("--p-insert", type=_probability, default=0.5)
    run.add_argument("--p-modify", type=_probability, default=0.3)
    run.add_argument("--p-delete", type=_probability, default=0.1)
    run.add_argument("--p-swap", type=_probability, default=0.1)
    run.add_argument(
        "--sigma",
        type=_positive_float,
        default=MutationConfig().sigma_modify,
        help="stddev of the angle-modify step in radians (default: pi/10)",
    )
    run.add_argument(
        "--out", default="runs", help="directory for record files (default: runs)"
    )
    run.set_defaults(func=cmd_run)

    oracle = commands.add_parser(
        "oracle", help="evaluate every mask exhaustively (n <= 20)"
    )
    _add_data_flags(oracle)
    _add_evaluator_flags(oracle)
    oracle.add_argument("--seed", type=_nonnegative_int, default=0)
    oracle.add_argument(
        "--out", default="oracle.json", help="output file (default: oracle.json)"
    )
    oracle.set_defaults(func=cmd_oracle)

    report = commands.add_parser("report", help="summarize run records as CSV")
    report.add_argument("records", nargs="+", help="RunRecord JSON files")
    report.set_defaults(func=cmd_report)

    return parser


def _dataset_digest(path: str | Path) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _evaluator_config(spec: EvaluatorSpec) -> dict:
    return {
        "kind": spec.kind,
        "C": spec.C,
        "epochs": spec.epochs,
        "external_cmd": spec.external_cmd,
        "timeout": spec.timeout,
    }


def _dataset_config(args, data: Dataset, split_seed: int) -> dict:
    return {
        "path": str(args.data),
        "label": str(args.label),
        "digest": _dataset_digest(args.data),
        "rows": data.n_rows,
        "n_features": data.n_features,
        "classes": data.n_classes,
        "test_fraction": args.test_fraction,
        "split_seed": split_seed,
    }


def _make_spec(args) -> EvaluatorSpec:
    return EvaluatorSpec(kind=args.evaluator, external_cmd=args.external_cmd)


def cmd_run(args) -> int:
    mutation = MutationConfig(
        p_insert=args.p_insert,
        p_modify=args.p_modify,
        p_delete=args.p_delete,
        p_swap=args.p_swap,
        sigma_modify=args.sigma,
    )
    spec = _make_spec(args)

    data = load_csv(args.data, args.label)
    split = stratified_split(data, args.test_fraction, seed=args.seed)
    context = {
        "evaluator": _evaluator_config(spec),
        "dataset": _dataset_config(args, data, split_seed=args.seed),
    }

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    started = time.perf_counter()
    records: list[RunRecord] = []
    paths: list[Path] = []
    evaluator = make_evaluator(spec, split)
    try:
        for i in range(args.repeat):
            config = EvolutionConfig(
                n=data.n_features,
                mu=args.mu,
                lambda_=args.lambda_,
                generations=args.generations,
                shots=args.shots,
                seed=args.seed + i,
                mutation=mutation,
            )
            record = evolve(config, evaluator)
            record = dataclasses.replace(record, config={**record.config, **context})
            path = out_dir / f"record-{i:03d}.json"
            write_run_record(record, path)
            records.append(record)
            paths.append(path)
    finally:
        evaluator.close()
    elapsed = time.perf_counter() - started

    aggregate = _aggregate(records, paths)
    aggregate["wall_clock_seconds"] = elapsed
    write_json(aggregate, out_dir / "aggregate.json")

    best = max(r.generations[-1].best_accuracy for r in records)
    print(f"wrote {len(records)} record(s) + aggregate.json to {out_dir}")
    print(f"best accuracy over all repeats: {best!r} in {elapsed:.2f} s")
    return 0


def _aggregate(records: list[RunRecord], paths: list[Path]) -> dict:
    best_accuracy = np.array(
        [[e.best_accuracy for e in r.generations] for r in records]
    )
    best_fitness = np.array([[e.best_fitness for e in r.generations] for r in records])
    support = np.array([[e.support for e in r.generations] for r in records])
    return {
        "format_version": 1,
        "records": [p.name for p in paths],
        "dataset_digest": records[0].config["dataset"]["digest"],
        "mean_best_accuracy": best_accuracy.mean(axis=0).tolist(),
        "std_best_accuracy": best_accuracy.std(axis=0).tolist(),
        "mean_best_fitness": best_fitness.mean(axis=0).tolist(),
        "mean_support": support.mean(axis=0).tolist(),
        "mean_empirical_auc": float(
            np.mean([r.totals["empirical_auc"] for r in records])
        ),
        "predicted_evaluations": records[0].totals["predicted_evaluations"],
    }


def cmd_oracle(args) -> int:
    spec = _make_spec(args)
    data = load_csv(args.data, args.label)
    n = data.n_features
    if n > ORACLE_MAX_FEATURES:
        raise OracleLimitError(
            f"refusing to enumerate 2^{n} masks; the oracle is capped at "
            f"n <= {ORACLE_MAX_FEATURES}"
        )
    split = stratified_split(data, args.test_fraction, seed=args.seed)

    entries: list[dict] = []
    best_mask = None
    best_accuracy = -1.0
    evaluator = make_evaluator(spec, split)
    try:
        for index in range(2**n):
            mask = index_to_mask(index, n)
            accuracy = evaluator(mask)
            entries.append({"mask": mask, "accuracy": accuracy})
            if accuracy > best_accuracy:
                best_accuracy = accuracy
                best_mask = mask
    finally:
        evaluator.close()

    record = OracleRecord(
        config={
            "n": n,
            "evaluator": _evaluator_config(spec),
            "dataset": _dataset_config(args, data, split_seed=args.seed),
        },
        entries=entries,
        best_mask=best_mask,
        best_accuracy=best_accuracy,
    )
    write_oracle_record(record, args.out)
    print(f"wrote {len(entries)} mask evaluations to {args.out}")
    print(f"best mask {best_mask} accuracy {best_accuracy!r}")
    return 0


def cmd_report(args) -> int:
    records = [read_run_record(path) for path in args.records]

    digests = {r.config["dataset"]["digest"] for r in records}
    if len(digests) > 1:
        raise RecordError(f"records mix different datasets: {sorted(digests)}")
    lengths = {len(r.generations) for r in records}
    if len(lengths) > 1:
        raise RecordError(f"records disagree on generation count: {sorted(lengths)}")

    best_accuracy = np.array(
        [[e.best_accuracy for e in r.generations] for r in records]
    )
    support = np.array([[e.support for e in r.generations] for r in records])
    cumulative = np.cumsum(
        [[e.new_evaluations for e in r.generations] for r in records], axis=1
    )

    print("# per-generation")
    print(
        "generation,mean_best_accuracy,std_best_accuracy,"
        "mean_support,mean_cumulative_new_evaluations"
    )
    for g in range(best_accuracy.shape[1]):
        print(
            f"{g},{float(best_accuracy[:, g].mean())!r},{float(best_accuracy[:, g].std())!r},"
            f"{float(support[:, g].mean())!r},{float(cumulative[:, g].mean())!r}"
        )

    best_index = int(
        np.argmax([r.generations[-1].best_accuracy for r in records])
    )
    chosen = records[best_index]
    print()
    print(f"# final distribution ({Path(args.records[best_index]).name})")
    print("mask,probability,accuracy")
    for row in chosen.final_distribution:
        print(f"{row['mask']},{row['probability']!r},{row['accuracy']!r}")

    config = chosen.config
    predicted = predicted_total_evaluations(config["shots"], config["generations"])
    mean_auc = float(np.mean([r.totals["empirical_auc"] for r in records]))
    mean_cache = float(np.mean([r.totals["cache_size"] for r in records]))
    print()
    print("# evaluations")
    print(f"predicted m*K/2 = {predicted!r}")
    print(f"empirical AUC mean = {mean_auc!r} ({mean_auc / predicted:.3f}x predicted)")
    print(f"distinct masks evaluated, mean = {mean_cache!r}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QfselectError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        # Config construction rejected a flag combination argparse let through.
        print(f"usage error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
