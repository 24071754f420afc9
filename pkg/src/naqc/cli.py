"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad arguments,
3 I/O failure, 4 no threshold crossing.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import oracle, verify
from .coherence import CoherenceMeasure, batch_complementarity_sums
from .quantum import random_bloch_vectors, singlet
from .scenario import NaqcResult, ScenarioConfig, search_max_alices, sequential_naqc

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NO_CROSSING = 4

MAX_CHAIN = 4


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".12g")


@dataclass(frozen=True)
class RunRecord:
    lambdas: tuple[float, ...]
    value: float
    bound: float
    violated: bool

    @classmethod
    def from_result(cls, result: NaqcResult) -> "RunRecord":
        return cls(result.config.lambdas, result.value, result.bound, result.violated)

    def csv_row(self) -> list[str]:
        return [fmt(x) for x in self.lambdas] + [fmt(self.value), fmt(self.bound), str(self.violated).lower()]

    def as_json(self) -> dict:
        return {
            "lambdas": [float(fmt(x)) for x in self.lambdas],
            "value": float(fmt(self.value)),
            "bound": float(fmt(self.bound)),
            "violated": self.violated,
        }


def csv_header(n: int) -> list[str]:
    return [f"lambda{k}" for k in range(1, n + 1)] + ["value", "bound", "violated"]


def render(records: Sequence[RunRecord], output_format: str) -> str:
    if output_format == "json":
        return json.dumps([r.as_json() for r in records], indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(len(records[0].lambdas) if records else 1))
    writer.writerows(r.csv_row() for r in records)
    return buf.getvalue()


def parse_records(text: str) -> list[RunRecord]:
    """Read back a CSV emitted by ``sweep``/``compute``."""
    rows = list(csv.reader(io.StringIO(text)))
    n = len(rows[0]) - 3
    return [RunRecord(tuple(float(x) for x in row[:n]), float(row[n]), float(row[n + 1]), row[n + 2] == "true")
            for row in rows[1:]]


def parse_measure(name: str) -> CoherenceMeasure:
    try:
        return CoherenceMeasure.parse(name)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_chain(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid sharpness chain {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty sharpness chain")
    return values


def parse_range(text: str) -> tuple[float, float, float]:
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must be lo:hi:step, got {text!r}") from None
    if not (0.0 < lo <= hi <= 1.0) or step <= 0.0:
        raise argparse.ArgumentTypeError(f"range {text!r} must satisfy 0 < lo <= hi <= 1 and step > 0")
    return lo, hi, step


def range_values(lo: float, hi: float, step: float) -> list[float]:
    n = int(np.floor((hi - lo) / step + 1e-9))
    return [round(lo + k * step, 12) for k in range(n + 1)]


def _config(lambdas, measure) -> ScenarioConfig:
    if len(lambdas) > MAX_CHAIN:
        raise UsageError(f"chain length {len(lambdas)} exceeds {MAX_CHAIN}")
    try:
        return ScenarioConfig.of(lambdas, measure)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_compute(args) -> int:
    config = _config(args.chain, args.measure)
    record = RunRecord.from_result(sequential_naqc(singlet(), config))
    sys.stdout.write(render([record], args.format))
    return EXIT_OK


def sweep_records(measure: CoherenceMeasure, ranges: Sequence[tuple[float, float, float]]) -> list[RunRecord]:
    """One record per grid point, in lexicographic grid order."""
    axes = [range_values(*r) for r in ranges]
    for k, values in enumerate(axes[:-1], start=1):
        if values[-1] >= 1.0:
            raise UsageError(f"predecessor lambda{k} range must stay below 1")
    state = singlet()
    return [RunRecord.from_result(sequential_naqc(state, _config(point, measure)))
            for point in itertools.product(*axes)]


def cmd_sweep(args) -> int:
    if not args.range:
        raise UsageError("sweep needs at least one --range")
    records = sweep_records(args.measure, args.range)
    text = render(records, args.format)
    try:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(records)} rows to {args.out}")
    return EXIT_OK


def cmd_threshold(args) -> int:
    preds = tuple(args.chain or ())
    if len(preds) != args.alice - 1:
        raise UsageError(f"Alice^{args.alice} needs {args.alice - 1} predecessor sharpness values via --chain")
    _config(preds + (1.0,), args.measure)
    try:
        report = oracle.simulated_threshold(args.measure, preds)
    except oracle.NoCrossingError:
        print(f"error: the NAQC value of Alice^{args.alice} never crosses the "
              f"{args.measure.value} bound {fmt(args.measure.bound)} for lambda in (0, 1]", file=sys.stderr)
        return EXIT_NO_CROSSING
    line = f"{args.measure.value},alice{report.which_alice},{report.threshold:.9f}"
    if report.closed_form:
        line += f",{report.closed_form}"
    print(line)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = verify.run_all()
    for check in checks:
        print(verify.format_check(check))
    oracle_devs = [c.max_deviation for c in checks if c.max_deviation is not None]
    print(f"max oracle deviation: {max(oracle_devs):.3e}")
    for line in verify.sensitivity_report():
        print(f"info  {line}")
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def cmd_max_alices(args) -> int:
    found = search_max_alices(args.measure, args.step)
    print(f"{args.measure.value}: {found.count}")
    if found.count >= 2:
        print("witness: " + ",".join(f"{x:.9f}" for x in found.witness))
    return EXIT_OK


def cmd_complementarity_sample(args) -> int:
    rng = np.random.default_rng(args.seed)
    bloch = random_bloch_vectors(rng, args.samples)
    sums = batch_complementarity_sums(bloch, args.measure)
    bound = args.measure.bound
    print("measure,samples,seed,max_sum,bound,exceeding")
    print(f"{args.measure.value},{args.samples},{args.seed},{fmt(sums.max())},{fmt(bound)},{int(np.sum(sums > bound + 1e-9))}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="naqc", description="Sequential sharing of nonlocal advantage of quantum coherence.")
    sub = parser.add_subparsers(dest="command", required=True)

    def measure_arg(p):
        p.add_argument("--measure", type=parse_measure, required=True, help="l1, relent or skew")

    p = sub.add_parser("compute", help="NAQC value of the last Alice in a sharpness chain")
    measure_arg(p)
    p.add_argument("--chain", type=parse_chain, required=True, help="comma-separated lambda_1,...,lambda_n")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("sweep", help="grid sweep over sharpness chains")
    measure_arg(p)
    p.add_argument("--range", type=parse_range, action="append", help="lo:hi:step, once per Alice")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="sharpness at which an Alice starts to violate")
    measure_arg(p)
    p.add_argument("--alice", type=int, default=1)
    p.add_argument("--chain", type=parse_chain, help="fixed predecessor sharpness values")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("verify", help="run the oracle-vs-simulation checks")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("max-alices", help="largest number of Alices sharing NAQC")
    measure_arg(p)
    p.add_argument("--step", type=float, default=0.01)
    p.set_defaults(func=cmd_max_alices)

    p = sub.add_parser("complementarity-sample", help="sample random qubit states against the complementarity bound")
    measure_arg(p)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_complementarity_sample)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
