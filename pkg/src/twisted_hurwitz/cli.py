"""Command-line front end.

Enumeration cost grows like (2n(n-1))^m words, so n > 5 or m > 7 needs
``--force``.  Exit codes: 0 success, 1 verification failure, 2 usage or input
error, 3 overflow or bounds.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .constellation import (
    MalformedConstellationError,
    build_constellation,
    export_graph,
    extract_matchings,
    import_structured,
)
from .factorization import (
    CountOverflowError,
    FactorizationCount,
    TranspositionSeq,
    count_by_cycle_type,
    enumerate_factorizations,
)
from .matching_seq import (
    InvalidMatchingSeq,
    MatchingSeq,
    StructuralError,
    enumerate_matching_seqs,
    p_map,
    p_preimages,
    validate_matching_seq,
)
from .perm_core import NotationError, Partition, parse_partition, partitions
from .verification import run_verification

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BOUNDS = 0, 1, 2, 3
CAP_N, CAP_M = 5, 7
VERIFY_CAP_N, VERIFY_CAP_M = 4, 5
TABLE_HEADER = ["n", "m", "lambda", "raw_count", "hurwitz_num", "hurwitz_den", "matching_count"]


class UsageError(Exception):
    pass


class BoundsError(Exception):
    pass


def table_row(n: int, m: int, lam: Partition, *, workers: int = 1, counts: dict | None = None) -> dict:
    if counts is None:
        counts = count_by_cycle_type(m, n, workers=workers)
    fc = FactorizationCount(counts[lam], n)
    matching = sum(1 for _ in enumerate_matching_seqs(m, lam))
    return {
        "n": n,
        "m": m,
        "lambda": str(lam),
        "raw_count": fc.raw_count,
        "hurwitz_num": fc.value.numerator,
        "hurwitz_den": fc.value.denominator,
        "matching_count": matching,
    }


def _csv_text(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TABLE_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _check_bounds(args, n: int, m: int, cap_n: int = CAP_N, cap_m: int = CAP_M) -> None:
    if args.force:
        return
    if n > cap_n or m > cap_m:
        raise BoundsError(f"n={n}, m={m} exceeds the safety cap n <= {cap_n}, m <= {cap_m}; pass --force")


def _lambda_for(args) -> Partition:
    if args.lam is None:
        if args.n is None:
            raise UsageError("--lambda or --n is required")
        return Partition([1] * args.n)
    lam = parse_partition(args.lam)
    if args.n is not None and lam.weight != args.n:
        raise UsageError(f"lambda {lam} is not a partition of n = {args.n}")
    return lam


def _m_for(args) -> int:
    if args.m is None:
        raise UsageError("--m is required")
    if args.m < 0:
        raise UsageError("--m must be nonnegative")
    return args.m


def _input_lines(args) -> list[tuple[int, str]]:
    if args.input and args.input != "-":
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return [(i, line) for i, line in enumerate(text.splitlines(), start=1) if line.strip()]


# -- commands ---------------------------------------------------------------


def cmd_count(args) -> str:
    lam = _lambda_for(args)
    m = _m_for(args)
    _check_bounds(args, lam.weight, m)
    row = table_row(lam.weight, m, lam, workers=args.workers)
    fmt = args.format or "json"
    if fmt == "csv":
        return _csv_text([row])
    if fmt != "json":
        raise UsageError(f"count supports json or csv, not {fmt}")
    record = {
        "raw": row["raw_count"],
        "hurwitz": {"num": row["hurwitz_num"], "den": row["hurwitz_den"]},
        "matching": row["matching_count"],
    }
    return json.dumps(record, separators=(",", ":")) + "\n"


def cmd_enumerate(args) -> str:
    lam = _lambda_for(args)
    m = _m_for(args)
    _check_bounds(args, lam.weight, m)
    return "".join(f"{ts}\n" for ts in enumerate_factorizations(m, lam, workers=args.workers))


def cmd_pmap(args) -> str:
    out = []
    for line_no, line in _input_lines(args):
        ts = TranspositionSeq.parse(line, args.n, line_no)
        out.append(p_map(ts).to_json() + "\n")
    return "".join(out)


def cmd_preimages(args) -> str:
    out = []
    for line_no, line in _input_lines(args):
        ms = MatchingSeq.from_json(line, line_no)
        report = validate_matching_seq(ms, ms.profile)
        if not report.ok:
            raise InvalidMatchingSeq(f"line {line_no}: violates {'; '.join(report.failures())}")
        out.extend(f"{ts}\n" for ts in p_preimages(ms))
    return "".join(out)


def cmd_build(args) -> str:
    fmt = "dot" if args.dot else (args.format or "json")
    if fmt not in ("dot", "json"):
        raise UsageError(f"build supports dot or json, not {fmt}")
    out = []
    for line_no, line in _input_lines(args):
        ms = MatchingSeq.from_json(line, line_no)
        if ms.m < 2:
            raise InvalidMatchingSeq("m ≥ 2 required")
        report = validate_matching_seq(ms, ms.profile)
        if not report.ok:
            raise InvalidMatchingSeq(f"line {line_no}: violates {'; '.join(report.failures())}")
        c = build_constellation(ms)
        text = export_graph(c, "dot" if fmt == "dot" else "structured")
        out.append(text if text.endswith("\n") else text + "\n")
    return "".join(out)


def cmd_extract(args) -> str:
    return "".join(
        extract_matchings(import_structured(line)).to_json() + "\n" for _, line in _input_lines(args)
    )


def cmd_verify(args) -> tuple[str, int]:
    n_max = args.n_max if args.n_max is not None else 3
    m_max = args.m_max if args.m_max is not None else 4
    _check_bounds(args, n_max, m_max, VERIFY_CAP_N, VERIFY_CAP_M)
    report = run_verification(n_max, m_max, workers=args.workers, fault=args.inject_fault)
    if args.format == "json":
        text = json.dumps(report.to_record(), indent=2, sort_keys=True) + "\n"
    else:
        text = report.to_text()
    return text, EXIT_OK if report.passed else EXIT_VERIFY


def cmd_table(args) -> str:
    n_max = args.n_max if args.n_max is not None else 3
    m_max = args.m_max if args.m_max is not None else 4
    _check_bounds(args, n_max, m_max)
    rows = []
    for n in range(1, n_max + 1):
        for m in range(m_max + 1):
            counts = count_by_cycle_type(m, n, workers=args.workers)
            for lam in partitions(n):
                row = table_row(n, m, lam, counts=counts)
                if row["raw_count"] != 2**m * row["matching_count"]:
                    raise RuntimeError(f"row {row} breaks raw_count = 2^m * matching_count")
                rows.append(row)
    if args.format == "json":
        return json.dumps(rows, indent=2) + "\n"
    return _csv_text(rows)


COMMANDS = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "pmap": cmd_pmap,
    "preimages": cmd_preimages,
    "build": cmd_build,
    "extract": cmd_extract,
    "verify": cmd_verify,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="ground-set size")
    common.add_argument("--m", type=int, help="number of transpositions")
    common.add_argument("--lambda", dest="lam", help='partition, "2,1,1" or "2^1 1^2"')
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=["json", "csv", "dot", "text"])
    common.add_argument("--workers", type=int, default=1, help="processes for enumeration shards")
    common.add_argument("--force", action="store_true", help="lift the safety caps")
    common.add_argument("--input", help="input file for pmap/preimages/build/extract (default stdin)")

    parser = argparse.ArgumentParser(prog="twisted-hurwitz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("count", "enumerate", "pmap", "preimages", "extract"):
        sub.add_parser(name, parents=[common])
    build = sub.add_parser("build", parents=[common])
    build.add_argument("--dot", action="store_true", help="same as --format dot")
    for name in ("verify", "table"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--n-max", type=int)
        p.add_argument("--m-max", type=int)
        if name == "verify":
            p.add_argument("--inject-fault", choices=["flip-delta"], help=argparse.SUPPRESS)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be at least 1")
    code = EXIT_OK
    try:
        result = COMMANDS[args.command](args)
        if isinstance(result, tuple):
            result, code = result
    except (BoundsError, CountOverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDS
    except (UsageError, NotationError, StructuralError, InvalidMatchingSeq,
            MalformedConstellationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(result)
    else:
        sys.stdout.write(result)
    return code


if __name__ == "__main__":
    sys.exit(main())
