"""Command-line front end.

Exit codes: 0 success, 1 usage or precondition error, 2 malformed input,
3 a verification counterexample (or failed internal self-check).
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

import numpy as np

from .construct import TRACE_COLUMNS, LinearOffset, build_chain, extend, extend_with_offset, seed_bent
from .core import (
    BooleanFunction,
    algebraic_degree,
    anf_to_truth_table,
    format_truth_table,
    hamming_weight,
    parse_anf,
    parse_hex,
    parse_truth_table,
)
from .errors import ConsistencyError, DomainError, FormatError, PreconditionError
from .oracle import (
    all_bent_functions,
    compare_algorithm1,
    compare_algorithm2,
    enumerate_bent,
    naive_nonlinearity,
    naive_nonlinearity_batch,
    naive_walsh_batch,
)
from .restricted import CSV_COLUMNS, report_row, restricted_balance, verify_parity_balance_theorem
from .walsh import fwht, is_bent_spectrum, nonlinearity_from_spectrum, signed, walsh_spectrum

EXIT_OK, EXIT_USAGE, EXIT_FORMAT, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3

SUITES = ("walsh", "nonlinearity", "theorem4", "algorithms", "all")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("input", nargs="?", help="truth-table file ('n=<int>' header + hex), '-' for stdin")
    src.add_argument("--hex", help="inline truth table hex (needs --n)")
    src.add_argument("--anf", help="inline ANF, e.g. 'x1*x2 + x3 + 1'")
    p.add_argument("--n", type=int, help="variable count for --hex / --anf")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bentparity", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="weight, degree, spectrum summary and weight-class balance")
    _add_source(p)

    p = sub.add_parser(
        "extend",
        help="extend a bent seed two variables at a time",
        description="Trace CSV columns: " + ", ".join(TRACE_COLUMNS),
    )
    _add_source(p)
    p.add_argument("--target-n", type=int, required=True)
    p.add_argument("--offset", action="append", metavar="HEXBITS",
                   help="packed (a0, a_bar, a_s) vector for one step, a0 in bit 0; repeat once per step")
    p.add_argument("--output", "-o", help="write the final truth table here instead of stdout")
    p.add_argument("--trace", help="write the construction trace as CSV")

    p = sub.add_parser(
        "verify",
        help="oracle and theorem checks",
        description="CSV columns (one row per counterexample function): " + ", ".join(CSV_COLUMNS),
    )
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--sampled", action="store_true", help="sample instead of enumerating")
    p.add_argument("--samples", type=int, help="sample count (default 100, or 10000 for theorem4)")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--threads", type=int)
    p.add_argument("--csv")

    p = sub.add_parser(
        "enumerate",
        help="scan every truth table for n in {2, 4}",
        description="CSV columns (one row per bent function): " + ", ".join(CSV_COLUMNS),
    )
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--threads", type=int)
    p.add_argument("--csv")

    p = sub.add_parser("seed", help="random Maiorana-McFarland bent function")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--output", "-o")
    return parser


# ------------------------------------------------------------------ helpers


def load_function(args) -> BooleanFunction:
    if args.hex is not None:
        if args.n is None:
            raise UsageError("--hex needs --n")
        return parse_hex(args.hex.strip(), args.n, line=1)
    if args.anf is not None:
        return anf_to_truth_table(parse_anf(args.anf, args.n))
    if args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    f = parse_truth_table(text)
    if args.n is not None and args.n != f.n:
        raise FormatError(f"file header says n={f.n} but --n {args.n} was given", 1)
    return f


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_csv(path: str, columns, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(columns))
        writer.writeheader()
        writer.writerows(rows)


# ----------------------------------------------------------------- commands


def cmd_analyze(args) -> int:
    f = load_function(args)
    spec = walsh_spectrum(f)
    rep = restricted_balance(f)
    nl = nonlinearity_from_spectrum(spec)
    bent = is_bent_spectrum(spec)
    lines = [
        f"n={f.n}",
        f"wH={hamming_weight(f)}",
        f"degree={algebraic_degree(f)}",
        f"max_abs_walsh={spec.max_abs()}",
        f"Nl={nl}",
        f"bent={str(bent).lower()}",
        f"zeros_even={rep.zeros_even}",
        f"ones_even={rep.ones_even}",
        f"zeros_odd={rep.zeros_odd}",
        f"ones_odd={rep.ones_odd}",
        f"balanced_even={str(rep.balanced_even).lower()}",
        f"balanced_odd={str(rep.balanced_odd).lower()}",
    ]
    print("\n".join(lines))
    return EXIT_OK


def cmd_extend(args) -> int:
    seed = load_function(args)
    target = args.target_n
    if target % 2 or target <= seed.n:
        raise UsageError(f"--target-n must be even and greater than the seed's n={seed.n}")
    steps = (target - seed.n) // 2
    offsets = None
    if args.offset:
        if len(args.offset) != steps:
            raise UsageError(f"{steps} extension steps need {steps} --offset values, got {len(args.offset)}")
        offsets = []
        for i, text in enumerate(args.offset):
            try:
                b = int(text, 16)
            except ValueError:
                raise UsageError(f"--offset {text!r} is not hex") from None
            try:
                offsets.append(LinearOffset.unpack(b, seed.n + 2 * i))
            except DomainError as exc:
                raise UsageError(f"--offset {text}: {exc}") from None
    trace = build_chain(seed, target, offsets)
    _write_text(args.output, format_truth_table(trace.final))
    if args.trace:
        _write_csv(args.trace, TRACE_COLUMNS, trace.csv_rows())
    for st in trace.steps:
        print(f"step n={st.n} offset={st.offset or '-'} bent={str(st.bent).lower()} "
              f"balanced={st.balanced_class} Nl={st.nonlinearity}", file=sys.stderr)
    return EXIT_OK


def _random_tables(n: int, count: int, rng) -> np.ndarray:
    return rng.integers(0, 2, size=(count, 1 << n), dtype=np.uint8)


def _suite_walsh(n, samples, rng):
    if n <= 4:
        ids = np.arange(1 << (1 << n), dtype=np.int64)
        tables = ((ids[:, None] >> np.arange(1 << n)) & 1).astype(np.uint8)
    else:
        if n > 12:
            raise UsageError("walsh suite supports n <= 12")
        tables = _random_tables(n, samples, rng)
    naive = naive_walsh_batch(tables, n)
    fast = fwht(signed(tables))
    bad = np.flatnonzero(np.any(fast != naive, axis=1))
    return len(tables), [BooleanFunction.from_bits(tables[i]) for i in bad]


def _suite_nonlinearity(n, samples, rng):
    if n <= 4:
        ids = np.arange(1 << (1 << n), dtype=np.int64)
        tables = ((ids[:, None] >> np.arange(1 << n)) & 1).astype(np.uint8)
    else:
        if n > 12:
            raise UsageError("nonlinearity suite supports n <= 12")
        tables = _random_tables(n, samples, rng)
    if n <= 8:
        naive = naive_nonlinearity_batch(tables, n)
    else:
        naive = np.array([naive_nonlinearity(BooleanFunction.from_bits(t)) for t in tables])
    spec = np.abs(fwht(signed(tables))).max(axis=1)
    fast = (1 << (n - 1)) - spec // 2
    bad = np.flatnonzero(fast != naive)
    return len(tables), [BooleanFunction.from_bits(tables[i]) for i in bad]


def _suite_algorithms(n, threads):
    if n not in (2, 4):
        raise UsageError("algorithms suite needs n in {2, 4} (all bent seeds are enumerated)")
    bad = []
    checked = 0
    for g in all_bent_functions(n, threads):
        checked += 1
        if compare_algorithm1(g):
            bad.append(extend(g))
        for b in range(1 << (n + 2)):
            off = LinearOffset.unpack(b, n)
            checked += 1
            if compare_algorithm2(g, off):
                bad.append(extend_with_offset(g, off))
    return checked, bad


def cmd_verify(args) -> int:
    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    suites = ("walsh", "nonlinearity", "theorem4", "algorithms") if args.suite == "all" else (args.suite,)
    if "theorem4" in suites and n > 4 and not args.sampled:
        raise UsageError(f"exhaustive theorem4 is limited to n <= 4; use --sampled for n={n}")
    rng = np.random.default_rng(args.rng_seed)
    failures = []
    total_bad = 0
    for suite in suites:
        start = time.perf_counter()
        if suite == "walsh":
            checked, bad = _suite_walsh(n, args.samples or 100, rng)
        elif suite == "nonlinearity":
            checked, bad = _suite_nonlinearity(n, args.samples or 100, rng)
        elif suite == "theorem4":
            summary = verify_parity_balance_theorem(
                n, samples=args.samples or 10_000, rng_seed=args.rng_seed,
                sampled=args.sampled, threads=args.threads,
            )
            checked = summary.total_functions
            bad = [BooleanFunction.from_int(t, n) for t in summary.counterexamples]
            for line in summary.lines()[2:]:
                print(f"  {line}")
        else:
            checked, bad = _suite_algorithms(n, args.threads)
        elapsed = time.perf_counter() - start
        status = "PASS" if not bad else "FAIL"
        print(f"{status} suite={suite} n={n} checked={checked} counterexamples={len(bad)} "
              f"seconds={elapsed:.2f}")
        failures.extend(bad)
        total_bad += len(bad)
    if args.csv:
        _write_csv(args.csv, CSV_COLUMNS, [report_row(f) for f in failures])
    return EXIT_OK if total_bad == 0 else EXIT_COUNTEREXAMPLE


def cmd_enumerate(args) -> int:
    if args.n not in (2, 4):
        raise UsageError(
            f"exhaustive enumeration supports n in {{2, 4}}; for n={args.n} use "
            f"'verify --suite theorem4 --sampled --n {args.n}'"
        )
    summary = enumerate_bent(args.n, threads=args.threads)
    print("\n".join(summary.lines()))
    if args.csv:
        rows = [report_row(f) for f in all_bent_functions(args.n, args.threads)]
        _write_csv(args.csv, CSV_COLUMNS, rows)
    return EXIT_OK if summary.ok else EXIT_COUNTEREXAMPLE


def cmd_seed(args) -> int:
    if args.n % 2 or not 2 <= args.n <= 16:
        raise UsageError("--n must be even and in [2, 16]")
    f = seed_bent(args.n, args.rng_seed)
    _write_text(args.output, format_truth_table(f))
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "extend": cmd_extend,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "seed": cmd_seed,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"bentparity {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FormatError as exc:
        print(f"bentparity {args.command}: format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (PreconditionError, DomainError) as exc:
        print(f"bentparity {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"bentparity {args.command}: internal check failed: {exc}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE


if __name__ == "__main__":
    sys.exit(main())
