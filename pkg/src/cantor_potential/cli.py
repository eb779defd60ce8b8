"""Command-line front end.

Exit status: 0 on success, 1 when a checked property fails, 2 for malformed
or out-of-range input.
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import formats
from .capacity import (
    CapacityError,
    capacity,
    capacity_lp_oracle,
    certify_realizer,
    cf_test_check,
    realizing_measure,
)
from .enumeration import check_sandwich, dynamic_weight
from .kernel import KernelError
from .lp import LPError
from .measure import MeasureError, energy, mutual_energy, potential, riesz_energy
from .rational import format_ext, parse_rational
from .verify import SUITES, run_suite
from .words import parse_point


class UsageError(Exception):
    pass


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cantor-potential",
        description="Exact f-energy, f-capacity and dynamic-weight computations on Cantor space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def kernel_arg(p):
        p.add_argument("--kernel", required=True, help="kernel file (JSON)")

    def shift_arg(p):
        p.add_argument("--shift", type=_nonneg_int, default=0, help="kernel shift k (default 0)")

    p = sub.add_parser("capacity", help="exact capacity of a clopen set")
    kernel_arg(p)
    p.add_argument("--set", required=True, help="word file, one word per line")
    shift_arg(p)
    p.add_argument("--oracle", action="store_true", help="also solve the LP oracle and compare")

    p = sub.add_parser("realize", help="write the capacity-realizing measure")
    kernel_arg(p)
    p.add_argument("--set", required=True)
    shift_arg(p)
    p.add_argument("--out", required=True, help="output measure file (JSON)")

    p = sub.add_parser("energy", help="f-energy of a measure")
    kernel_arg(p)
    p.add_argument("--measure", required=True)

    p = sub.add_parser("potential", help="f-potential of a measure at an eventually periodic point")
    kernel_arg(p)
    p.add_argument("--measure", required=True)
    p.add_argument("--point", required=True, help="HEAD:PERIOD, e.g. 01:10 or :0")
    shift_arg(p)

    p = sub.add_parser("mutual", help="mutual f-energy of two measures")
    kernel_arg(p)
    p.add_argument("--measure", required=True)
    p.add_argument("--measure2", required=True)

    p = sub.add_parser("riesz-energy", help="Riesz energy for ratio r = 2^s")
    p.add_argument("--ratio", required=True, help="rational r with 1 < r < b")
    p.add_argument("--measure", required=True)

    p = sub.add_parser("enumerate", help="replay the dynamic weight over an enumeration")
    kernel_arg(p)
    p.add_argument("--order", required=True, help="enumeration file, one word per line")
    p.add_argument("--trace", required=True, help="output CSV trace")
    shift_arg(p)
    p.add_argument("--check", action="store_true", help="verify sandwich and potential bound")

    p = sub.add_parser("cftest", help="check C_f(U_n) <= 2^-n over numbered level files")
    kernel_arg(p)
    p.add_argument("--levels", required=True, help="directory holding 0.txt, 1.txt, ...")

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", default="all", choices=("all",) + SUITES)
    return parser


def _measure_for(kernel, path):
    mu = formats.load_measure(path)
    if mu.alphabet != kernel.alphabet:
        raise UsageError(
            f"{path}: measure alphabet {mu.alphabet} differs from kernel alphabet {kernel.alphabet}"
        )
    return mu


def _level_files(directory: str) -> list[Path]:
    root = Path(directory)
    if not root.is_dir():
        raise UsageError(f"{directory}: not a directory")
    numbered = {}
    for path in root.iterdir():
        m = re.fullmatch(r"(\d+)(\.\w+)?", path.name)
        if m and path.is_file():
            n = int(m.group(1))
            if n in numbered:
                raise UsageError(f"{directory}: two files for level {n}")
            numbered[n] = path
    if not numbered:
        raise UsageError(f"{directory}: no numbered level files")
    missing = [n for n in range(max(numbered) + 1) if n not in numbered]
    if missing:
        raise UsageError(f"{directory}: missing level {missing[0]}")
    return [numbered[n] for n in range(len(numbered))]


def _run(args, out) -> int:
    cmd = args.command
    if cmd == "verify":
        results = run_suite(args.suite, on_result=lambda r: print(r.line(), file=out, flush=True))
        return 0 if all(r.ok for r in results) else 1

    if cmd == "riesz-energy":
        try:
            r = parse_rational(args.ratio)
        except ValueError as exc:
            raise UsageError(f"--ratio: {exc}") from None
        print(format_ext(riesz_energy(formats.load_measure(args.measure), r)), file=out)
        return 0

    kernel = formats.load_kernel(args.kernel)
    b = kernel.alphabet

    if cmd == "capacity":
        S = formats.load_set(args.set, b)
        value = capacity(kernel, S, args.shift)
        print(format_ext(value), file=out)
        if args.oracle:
            oracle = capacity_lp_oracle(kernel, S, args.shift)
            same = oracle == value
            print(f"oracle {format_ext(oracle)}: {'PASS' if same else 'FAIL'}", file=out)
            return 0 if same else 1
        return 0

    if cmd == "realize":
        S = formats.load_set(args.set, b)
        res = realizing_measure(kernel, S, args.shift)
        formats.save_measure(res.realizer, args.out)
        cert = certify_realizer(kernel, S, res.realizer, res.value, args.shift)
        print(format_ext(res.value), file=out)
        for line in cert.lines():
            print(line, file=out)
        return 0 if cert.ok else 1

    if cmd == "energy":
        print(format_ext(energy(kernel, _measure_for(kernel, args.measure))), file=out)
        return 0

    if cmd == "potential":
        mu = _measure_for(kernel, args.measure)
        try:
            x = parse_point(args.point, b)
        except ValueError as exc:
            raise UsageError(f"--point: {exc}") from None
        print(format_ext(potential(kernel, mu, x, args.shift)), file=out)
        return 0

    if cmd == "mutual":
        mu = _measure_for(kernel, args.measure)
        nu = _measure_for(kernel, args.measure2)
        print(format_ext(mutual_energy(kernel, mu, nu)), file=out)
        return 0

    if cmd == "enumerate":
        enum = formats.load_enumeration(args.order, b)
        trace = dynamic_weight(kernel, enum, args.shift)
        status = 0
        verdict = "PASS" if trace.sandwich_holds else "FAIL"
        lines = []
        if args.check:
            report = check_sandwich(kernel, enum, args.shift)
            lines = report.lines()
            verdict = "PASS" if report.ok else "FAIL"
            status = 0 if report.ok else 1
        Path(args.trace).write_text(trace.to_csv(verdict), encoding="utf-8")
        print(f"ww {format_ext(trace.ww)}", file=out)
        print(f"capacity {format_ext(trace.capacity_value)}", file=out)
        print(f"bound_A {format_ext(trace.bound_constant)}", file=out)
        for line in lines:
            print(line, file=out)
        print(f"verdict {verdict}", file=out)
        return status

    if cmd == "cftest":
        levels = [formats.load_set(p, b) for p in _level_files(args.levels)]
        report = cf_test_check(kernel, levels)
        for line in report.lines():
            print(line, file=out)
        print(f"verdict {'PASS' if report.passed else 'FAIL'}", file=out)
        return 0 if report.passed else 1

    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args, out)
    except (
        formats.FormatError,
        UsageError,
        KernelError,
        MeasureError,
        CapacityError,
        LPError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

