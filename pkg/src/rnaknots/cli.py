"""Command-line front end.

    rnaknots count  --k 4 --lambda 4 --n-max 15 --method series
    rnaknots gamma  --k 4..8 --lambda 4
    rnaknots ratio  --k 4 --n-min 50 --n-max 150
    rnaknots verify --n-max 10
    rnaknots oracle --k 3 --lambda 4 --n-max 12

Exit codes: 0 ok, 1 verification mismatch, 2 usage error, 3 unsupported
parameter, 4 precision/solver failure, 5 cache error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from . import __version__
from .asymptotics import PrecisionError, SolverError, ratio_diagnostic, solve_gamma
from .cache import CacheError, TableCache
from .structures import METHODS, UnsupportedParameterError, auto_method, count_table
from .verify import run_all

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_NUMERIC, EXIT_CACHE = range(6)
COMMANDS = ("count", "gamma", "ratio", "verify", "oracle")

log = logging.getLogger("rnaknots")


class UsageError(ValueError):
    pass


@dataclass
class JobSpec:
    command: str
    ks: list[int] = field(default_factory=lambda: [4])
    lambda_min: int = 4
    n_max: int = 15
    n_min: int = 1
    method: str = "auto"
    order: Optional[int] = None
    precision_digits: int = 60
    step: int = 10
    format: str = "csv"
    cache_dir: Optional[str] = None
    use_cache: bool = True
    timing: bool = True

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not self.ks or min(self.ks) < 2:
            raise UsageError("k must be >= 2")
        if self.lambda_min not in (1, 2, 3, 4):
            raise UsageError("--lambda must be 1, 2, 3 or 4")
        if self.n_max < 0 or self.n_min < 0:
            raise UsageError("--n-max/--n-min must be nonnegative")
        if self.method not in METHODS + ("auto",):
            raise UsageError(f"--method must be one of {', '.join(METHODS)}")
        if self.format not in ("csv", "json"):
            raise UsageError("--format must be csv or json")
        if self.precision_digits < 5:
            raise UsageError("--precision-digits must be >= 5")
        if self.command == "gamma" and self.lambda_min == 1:
            raise UsageError("gamma needs --lambda 2, 3 or 4")
        if self.command == "ratio" and self.n_min < 1:
            raise UsageError("ratio needs --n-min >= 1")

    def echo(self) -> dict:
        d = asdict(self)
        for key in ("format", "cache_dir", "use_cache", "timing"):
            d.pop(key)
        return d


def parse_k(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --k value {text!r}; use 4, 4,5 or 4..8") from None


# -- execution ----------------------------------------------------------------

def _counts(job: JobSpec, k: int, method: str, cache: Optional[TableCache]) -> list[int]:
    order = job.order if job.order is not None else job.n_max + 4
    key = (k, job.lambda_min, method, order)
    if cache is not None:
        hit = cache.get(*key)
        if hit is not None and len(hit) > job.n_max:
            return hit[: job.n_max + 1]
    values = list(count_table(k, job.lambda_min, job.n_max, method, order).values)
    if cache is not None:
        cache.put(*key, values)
    return values


def execute(job: JobSpec) -> tuple[dict, int]:
    """Run a job; returns (envelope, exit status)."""
    job.validate()
    started = time.perf_counter()
    cache = TableCache(job.cache_dir) if job.use_cache else None
    results: list[dict] = []
    status = EXIT_OK
    provenance = {"method": job.method, "order": None, "precision_digits": None}

    if job.command in ("count", "oracle"):
        methods = {}
        for k in job.ks:
            method = "oracle" if job.command == "oracle" else job.method
            if method == "auto":
                method = auto_method(k, job.lambda_min)
            methods[k] = method
            values = _counts(job, k, method, cache)
            for n, v in enumerate(values):
                results.append({"n": n, "k": k, "count": str(v)})
        results.sort(key=lambda r: (r["n"], r["k"]))
        provenance["method"] = ",".join(sorted(set(methods.values())))
        if "series" in methods.values():
            provenance["order"] = job.order if job.order is not None else job.n_max + 4
    elif job.command == "gamma":
        for k in job.ks:
            report = solve_gamma(k, job.lambda_min, digits=job.precision_digits)
            row = report.as_row()
            row["k"] = k
            results.append(row)
        provenance.update(method="bisection+newton", precision_digits=job.precision_digits)
    elif job.command == "ratio":
        for k in job.ks:
            diag = ratio_diagnostic(k, range(job.n_min, job.n_max + 1),
                                    precision_digits=job.precision_digits, step=job.step)
            for n, r in diag.rows():
                results.append({"n": n, "k": k, "ratio": r})
        results.sort(key=lambda r: (r["n"], r["k"]))
        provenance.update(method="inclusion-exclusion", precision_digits=job.precision_digits)
    elif job.command == "verify":
        for suite in run_all(job.n_max):
            results.append({
                "suite": suite.name, "passed": suite.passed, "detail": suite.detail,
                "first_divergence": suite.first_divergence,
            })
            if not suite.passed:
                status = EXIT_MISMATCH
        provenance["method"] = "all"

    envelope = {
        "version": __version__,
        "job": job.echo(),
        "results": results,
        "provenance": provenance,
        "timing_ms": round((time.perf_counter() - started) * 1000) if job.timing else None,
    }
    return envelope, status


# -- output -------------------------------------------------------------------

CSV_COLUMNS = {
    "count": ["n", "count"],
    "oracle": ["n", "count"],
    "gamma": ["k", "gamma_inverse", "rho", "exponent", "residual"],
    "ratio": ["n", "ratio"],
    "verify": ["suite", "passed", "detail", "first_divergence"],
}


def render(envelope: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    job = envelope["job"]
    columns = list(CSV_COLUMNS[job["command"]])
    if job["command"] in ("count", "oracle", "ratio") and len(job["ks"]) > 1:
        columns.insert(1, "k")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in envelope["results"]:
        writer.writerow(["" if row.get(c) is None else row[c] for c in columns])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rnaknots", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--k", default="4", help="crossing bound: 4, 4,5 or 4..8")
        p.add_argument("--lambda", dest="lambda_min", type=int, default=4,
                       help="minimum arc length (1-4)")
        default_n = {"ratio": 150, "verify": 12}.get(name, 15)
        p.add_argument("--n-max", type=int, default=default_n)
        p.add_argument("--n-min", type=int, default=50 if name == "ratio" else 1)
        p.add_argument("--step", type=int, default=10, help="lag for ratio relative changes")
        p.add_argument("--method", default="auto", choices=METHODS + ("auto",))
        p.add_argument("--order", type=int, default=None, help="series order (default n_max+4)")
        p.add_argument("--precision-digits", type=int, default=60)
        p.add_argument("--format", default="csv", choices=("csv", "json"))
        p.add_argument("--out", default=None, help="write output here instead of stdout")
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--no-cache", action="store_true")
        p.add_argument("--no-timing", action="store_true", help="emit timing_ms as null")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        job = JobSpec(
            command=args.command, ks=parse_k(args.k), lambda_min=args.lambda_min,
            n_max=args.n_max, n_min=args.n_min, method=args.method, order=args.order,
            precision_digits=args.precision_digits, step=args.step, format=args.format,
            cache_dir=args.cache_dir, use_cache=not args.no_cache, timing=not args.no_timing,
        )
        envelope, status = execute(job)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedParameterError as exc:
        print(f"unsupported parameter: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (PrecisionError, SolverError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except CacheError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_CACHE

    text = render(envelope, job.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if job.command == "verify":
        passed = sum(r["passed"] for r in envelope["results"])
        print(f"{passed}/{len(envelope['results'])} suites passed", file=sys.stderr)
        for r in envelope["results"]:
            if not r["passed"]:
                print(f"first divergence in {r['suite']}: {r['first_divergence']}", file=sys.stderr)
                break
    return status


if __name__ == "__main__":
    sys.exit(main())
