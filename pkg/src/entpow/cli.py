"""Command-line interface: parameter sweeps, time averages, single-operator
entangling power, and the text format for operator files.

Exit codes: 0 success, 2 invalid configuration or unreadable/non-unitary
input, 3 numeric failure (including cross-method disagreement).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from ._kernels import HAVE_NUMBA
from .core import (
    entangling_power,
    entangling_power_permutation_oracle,
    monte_carlo_ep,
    time_average_ep,
)
from .linalg import BipartiteOperator
from .models import (
    heisenberg_ep_time_average,
    heisenberg_period,
    heisenberg_qubit_qudit_ep_analytic,
    ising_ep_analytic,
    ising_ep_time_average,
    ising_evolution,
    isotropic_energies,
    su2_evolution,
)
from .spin import SpinSystem

CSV_HEADER = "param,ep_analytic,ep_matrix,ep_mc,ep_mc_stderr,ep_oracle"
METHODS = ("analytic", "matrix", "mc", "oracle")


# ---------------------------------------------------------------------------
# Operator files: first line "d1 d2", then d1*d2 rows of d1*d2 entries
# written like 0.5-0.5j, row-major in the composite index convention.


def format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def write_operator_file(path, op: BipartiteOperator) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(f"{op.d1} {op.d2}\n")
        for row in op.mat:
            fh.write(" ".join(format_complex(z) for z in row) + "\n")


def read_operator_file(path, unitarity_tol: float = 1e-8) -> BipartiteOperator:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError(f"{path}: first line must be 'd1 d2'")
        try:
            d1, d2 = int(header[0]), int(header[1])
        except ValueError:
            raise ValueError(f"{path}: first line must be 'd1 d2'") from None
        entries = []
        for line in fh:
            tokens = line.split()
            if not tokens:
                continue
            try:
                entries.append([complex(tok) for tok in tokens])
            except ValueError:
                raise ValueError(f"{path}: unparseable entry on line {len(entries) + 2}") from None
    n = d1 * d2
    if len(entries) != n or any(len(row) != n for row in entries):
        raise ValueError(f"{path}: expected {n} rows of {n} entries")
    return BipartiteOperator.unitary(np.array(entries), d1, d2, tol=unitarity_tol)


# ---------------------------------------------------------------------------
# helpers


def _fmt(x) -> str:
    return repr(float(x))


def _parse_methods(raw: str, allowed=METHODS) -> list[str]:
    methods = [m.strip() for m in raw.split(",") if m.strip()]
    if not methods:
        raise ValueError("at least one method must be selected")
    for m in methods:
        if m not in allowed:
            raise ValueError(f"unknown method {m!r} (choose from {', '.join(allowed)})")
    return methods


def _set_threads(threads) -> None:
    if threads is None:
        return
    if threads < 1:
        raise ValueError("--threads must be positive")
    if HAVE_NUMBA:
        import numba

        numba.set_num_threads(min(threads, numba.config.NUMBA_NUM_THREADS))


def _row_seed(seed: int, index: int) -> int:
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return int(seq.generate_state(1, np.uint64)[0])


class _ModelSweep:
    """Grid-point evaluators for one sweep configuration."""

    def __init__(self, args):
        self.model = args.model
        self.tol = args.unitarity_tol
        if self.model == "generic":
            if not args.operator:
                raise ValueError("--operator FILE is required for --model generic")
            self.fixed_op = read_operator_file(args.operator, args.unitarity_tol)
            self.d1, self.d2 = self.fixed_op.d1, self.fixed_op.d2
        else:
            self.fixed_op = None
            self.d1, self.d2 = args.d1, args.d2
            if self.d1 < 1 or self.d2 < 1:
                raise ValueError("--d1 and --d2 must be positive")
            self.s1 = SpinSystem.from_dim(self.d1)
            self.s2 = SpinSystem.from_dim(self.d2)
            if self.model == "heisenberg":
                if self.d1 > self.d2:
                    raise ValueError("heisenberg model expects --d1 <= --d2")
                self.energies = isotropic_energies(self.s1, self.s2)

    def operator(self, param: float) -> BipartiteOperator:
        if self.fixed_op is not None:
            return self.fixed_op
        if self.model == "ising":
            return ising_evolution(self.s1, self.s2, param)
        return su2_evolution(self.s1, self.s2, self.energies, param)

    def analytic(self, param: float) -> float:
        if self.model == "ising":
            return ising_ep_analytic(self.s1, self.s2, param)
        if self.model == "heisenberg" and self.d1 == 2:
            return heisenberg_qubit_qudit_ep_analytic(self.s2, param)
        raise ValueError("analytic method is only available for ising or heisenberg with d1=2")


def cmd_sweep(args) -> int:
    methods = _parse_methods(args.methods)
    if args.steps < 1:
        raise ValueError("--steps must be at least 1")
    if args.end < args.start:
        raise ValueError("--to must be >= --from")
    if args.mc_samples < 2:
        raise ValueError("--mc-samples must be at least 2")
    sweep = _ModelSweep(args)
    if "analytic" in methods:
        sweep.analytic(args.start)  # fail fast on unsupported model/dims
    if "oracle" in methods and sweep.d1 * sweep.d2 > 16:
        raise ValueError("oracle method is limited to d1*d2 <= 16")

    grid = np.linspace(args.start, args.end, args.steps)
    lines = [CSV_HEADER]
    for idx, param in enumerate(grid):
        cells = {name: "" for name in ("ep_analytic", "ep_matrix", "ep_mc",
                                       "ep_mc_stderr", "ep_oracle")}
        op = None
        if any(m in methods for m in ("matrix", "mc", "oracle")):
            op = sweep.operator(float(param))
        if "analytic" in methods:
            cells["ep_analytic"] = _fmt(sweep.analytic(float(param)))
        if "matrix" in methods:
            cells["ep_matrix"] = _fmt(entangling_power(op, unitarity_tol=args.unitarity_tol))
        if "mc" in methods:
            est = monte_carlo_ep(op, args.mc_samples, _row_seed(args.seed, idx),
                                 unitarity_tol=args.unitarity_tol)
            cells["ep_mc"] = _fmt(est.mean)
            cells["ep_mc_stderr"] = _fmt(est.std_error)
        if "oracle" in methods:
            cells["ep_oracle"] = _fmt(
                entangling_power_permutation_oracle(op, unitarity_tol=args.unitarity_tol))
        lines.append(",".join([_fmt(param), cells["ep_analytic"], cells["ep_matrix"],
                               cells["ep_mc"], cells["ep_mc_stderr"], cells["ep_oracle"]]))
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_time_average(args) -> int:
    d1, d2 = args.d1, args.d2
    if d1 < 1 or d2 < 1:
        raise ValueError("--d1 and --d2 must be positive")
    s1 = SpinSystem.from_dim(d1)
    s2 = SpinSystem.from_dim(d2)
    if args.model == "ising":
        closed = ising_ep_time_average(s1, s2)
        curve = lambda th: ising_ep_analytic(s1, s2, th)  # noqa: E731
        period = 2 * np.pi
    else:
        if d1 != 2:
            raise ValueError("heisenberg time average needs --d1 2 (closed form is qubit-qudit)")
        closed = heisenberg_ep_time_average(s2)
        curve = lambda t: heisenberg_qubit_qudit_ep_analytic(s2, t)  # noqa: E731
        period = heisenberg_period(s2)
    print(_fmt(closed))
    if args.numeric:
        numeric = time_average_ep(curve, period=period, steps=4096)
        print(f"numeric={_fmt(numeric)}")
        print(f"abs_diff={_fmt(abs(numeric - closed))}")
    return 0


def cmd_ep(args) -> int:
    methods = _parse_methods(args.methods, allowed=("matrix", "mc", "oracle"))
    op = read_operator_file(args.operator, args.unitarity_tol)
    ep_matrix = entangling_power(op, unitarity_tol=args.unitarity_tol)
    print(f"ep_matrix={_fmt(ep_matrix)}")
    status = 0
    if "mc" in methods:
        if args.mc_samples < 2:
            raise ValueError("--mc-samples must be at least 2")
        est = monte_carlo_ep(op, args.mc_samples, args.seed, unitarity_tol=args.unitarity_tol)
        print(f"ep_mc={_fmt(est.mean)}")
        print(f"ep_mc_stderr={_fmt(est.std_error)}")
        # the 1e-10 floor keeps exact cases (stderr 0) from tripping on roundoff
        if abs(est.mean - ep_matrix) > 5 * est.std_error + 1e-10:
            print(f"disagreement: |ep_mc - ep_matrix| = {abs(est.mean - ep_matrix):.3e} "
                  f"> 5 * stderr", file=sys.stderr)
            status = 3
    if "oracle" in methods:
        ep_oracle = entangling_power_permutation_oracle(op, unitarity_tol=args.unitarity_tol)
        print(f"ep_oracle={_fmt(ep_oracle)}")
        if abs(ep_oracle - ep_matrix) > 1e-9:
            print(f"disagreement: |ep_oracle - ep_matrix| = {abs(ep_oracle - ep_matrix):.3e} "
                  f"> 1e-9", file=sys.stderr)
            status = 3
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="entpow",
        description="Entangling power of bipartite unitaries "
                    "(realignment + partial transposition).")
    ap.add_argument("--version", action="version", version=f"entpow {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser(
        "sweep", help="sweep a model parameter and emit CSV "
                      "(columns: " + CSV_HEADER + ")")
    sweep.add_argument("--model", choices=("ising", "heisenberg", "generic"), required=True)
    sweep.add_argument("--d1", type=int, default=2, help="first factor dimension")
    sweep.add_argument("--d2", type=int, default=2, help="second factor dimension")
    sweep.add_argument("--operator", help="operator file (required for --model generic)")
    sweep.add_argument("--from", dest="start", type=float, default=0.0,
                       help="sweep start (theta for ising, t for heisenberg)")
    sweep.add_argument("--to", dest="end", type=float, default=0.0, help="sweep end")
    sweep.add_argument("--steps", type=int, default=1, help="number of grid points")
    sweep.add_argument("--methods", default="matrix",
                       help="comma list of analytic,matrix,mc,oracle")
    sweep.add_argument("--mc-samples", type=int, default=10_000)
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--out", help="output CSV path (default: stdout)")
    sweep.add_argument("--threads", type=int, help="kernel thread count")
    sweep.add_argument("--unitarity-tol", type=float, default=1e-8)
    sweep.set_defaults(func=cmd_sweep)

    tavg = sub.add_parser("time-average", help="closed-form time-averaged entangling power")
    tavg.add_argument("--model", choices=("ising", "heisenberg"), required=True)
    tavg.add_argument("--d1", type=int, default=2)
    tavg.add_argument("--d2", type=int, default=2)
    tavg.add_argument("--numeric", action="store_true",
                      help="also print the exact-period quadrature value and the difference")
    tavg.set_defaults(func=cmd_time_average)

    ep = sub.add_parser("ep", help="entangling power of an operator file")
    ep.add_argument("operator", help="operator file path")
    ep.add_argument("--methods", default="matrix",
                    help="comma list of matrix,mc,oracle; disagreement exits 3")
    ep.add_argument("--mc-samples", type=int, default=10_000)
    ep.add_argument("--seed", type=int, default=0)
    ep.add_argument("--threads", type=int, help="kernel thread count")
    ep.add_argument("--unitarity-tol", type=float, default=1e-8)
    ep.set_defaults(func=cmd_ep)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _set_threads(getattr(args, "threads", None))
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
