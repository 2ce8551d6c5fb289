"""Command-line front end: capacity sweeps, chain evaluation and the property suite."""
from __future__ import annotations

import argparse
import csv
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager

import numpy as np

from . import capacity as cap
from . import chain
from . import verify

OPTIMIZE_STEPS = 2000
OPTIMIZE_WINDOW = 10.0  # in units of n / J_ref

AD_HEADER = ("eta", "Q", "C_E", "Q_E", "C1", "p_Q", "p_CE", "p_C1")
T_HEADER = ("eta1", "eta2", "Q", "C_E", "C1_lower", "ad_upper_Q", "ad_upper_CE")
CHAIN_HEADER = {
    1: ("n", "k", "t", "eta", "Q", "C_E", "C1"),
    2: ("n", "k", "t", "eta1", "eta2", "eta3", "Q", "C_E", "C1_lower"),
}


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """Shortest round-trip decimal, capped at 10 significant digits."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if x == 0.0:
        return "0"
    short = repr(x)
    capped = format(x, ".10g")
    return short if float(capped) == x and len(short) <= len(capped) else capped


def grid(lo: float, hi: float, step: float) -> list[float]:
    """Inclusive grid lo, lo+step, ..., hi; the endpoint is snapped onto hi."""
    for name, v in (("min", lo), ("max", hi), ("step", step)):
        if not math.isfinite(v):
            raise UsageError(f"grid {name} must be finite, got {v!r}")
    if lo > hi:
        raise UsageError(f"grid min {lo!r} exceeds max {hi!r}")
    if lo == hi:
        return [lo]
    if step <= 0.0:
        raise UsageError(f"grid step must be positive, got {step!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    points = [lo + i * step for i in range(count)]
    points = [round(p, 12) for p in points]
    if hi - points[-1] > 1e-9:
        points.append(hi)
    else:
        points[-1] = hi
    return points


def _unit(values, name):
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise UsageError(f"{name} values must lie in [0, 1], got {v!r}")


def _map(func, items, jobs: int) -> list:
    # executor.map keeps input order, so output rows follow the grid
    if jobs <= 1 or len(items) <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (4 * jobs))))


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
        return
    try:
        handle = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc
    with handle:
        yield handle


def write_csv(path, header, rows) -> None:
    with _output(path) as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(x) for x in row])


# -- rows ----------------------------------------------------------------------

def ad_row(eta: float) -> tuple:
    q = cap.quantum_capacity_ad(eta)
    ce = cap.ea_capacity_ad(eta)
    c1 = cap.classical_capacity_c1_ad(eta)
    p_q = q.argmax_p if eta >= 0.5 else None
    return (eta, q.value, ce.value, ce.value / 2.0, c1.value, p_q, ce.argmax_p, c1.argmax_p)


def t_row(pair: tuple[float, float]) -> tuple:
    eta1, eta2 = pair
    return (eta1, eta2,
            cap.quantum_capacity_t(eta1, eta2).value,
            cap.ea_capacity_t(eta1, eta2).value,
            cap.classical_capacity_c1_lower_t(eta1, eta2).value,
            cap.quantum_capacity_ad(1.0 - eta2).value,
            cap.ea_capacity_ad(1.0 - eta2).value)


def chain_row(spec: chain.ChainSpec, profile: chain.InputProfile, t: float) -> tuple:
    if profile.sector == 1:
        eta = chain.channel_params_one_excitation(spec, profile, t).eta
        return (spec.n, spec.k, t, eta,
                cap.quantum_capacity_ad(eta).value,
                cap.ea_capacity_ad(eta).value,
                cap.classical_capacity_c1_ad(eta).value)
    info = chain.analyze_two_excitation(spec, profile, t)
    e1, e2 = info.eta1, info.eta2
    return (spec.n, spec.k, t, e1, e2, info.eta3,
            cap.quantum_capacity_t(e1, e2).value,
            cap.ea_capacity_t(e1, e2).value,
            cap.classical_capacity_c1_lower_t(e1, e2).value)


# -- commands ------------------------------------------------------------------

def cmd_ad_sweep(args) -> int:
    etas = grid(args.eta_min, args.eta_max, args.eta_step)
    _unit(etas, "eta")
    write_csv(args.out, AD_HEADER, _map(ad_row, etas, args.jobs))
    return 0


def _float_list(text: str, name: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"{name}: {exc}") from exc
    if not values:
        raise UsageError(f"{name} needs at least one value")
    return values


def cmd_t_sweep(args) -> int:
    eta1s = _float_list(args.eta1, "--eta1")
    _unit(eta1s, "eta1")
    pairs = [(e1, e2) for e1 in eta1s for e2 in grid(0.0, 1.0 - e1, args.eta2_step)]
    write_csv(args.out, T_HEADER, _map(t_row, pairs, args.jobs))
    return 0


def parse_profile(text: str, sector: int, k: int) -> chain.InputProfile:
    if text.strip().lower() == "uniform":
        try:
            return chain.InputProfile.uniform(sector, k)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    try:
        coeffs = [complex(tok.strip().replace(" ", "")) for tok in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad profile coefficient: {exc}") from exc
    expected = len(chain.sector_labels(k, sector))
    if len(coeffs) != expected:
        raise UsageError(f"profile has {len(coeffs)} coefficients, sector {sector} "
                         f"with k={k} needs {expected}")
    if not any(coeffs):
        raise UsageError("profile coefficients are all zero")
    return chain.InputProfile.normalized(sector, coeffs)


def cmd_chain(args) -> int:
    if args.spec is None:
        raise UsageError("chain needs --spec")
    try:
        spec = chain.ChainSpec.load(args.spec)
    except OSError as exc:
        raise UsageError(f"cannot read {args.spec}: {exc.strerror}") from exc
    except ValueError as exc:
        raise UsageError(f"invalid chain spec: {exc}") from exc
    profile = parse_profile(args.profile, args.sector, spec.k)
    if args.time == "optimize":
        t_max = args.t_max if args.t_max is not None else OPTIMIZE_WINDOW * spec.n / spec.j_ref
        if not (math.isfinite(t_max) and t_max > 0.0):
            raise UsageError(f"--t-max must be positive, got {t_max!r}")
        t, _ = chain.eta_max_over_time(spec, profile, t_max, OPTIMIZE_STEPS)
    else:
        try:
            t = float(args.time)
        except ValueError as exc:
            raise UsageError(f"--time must be a number or 'optimize', got {args.time!r}") from exc
        if not math.isfinite(t):
            raise UsageError(f"--time must be finite, got {args.time!r}")
    write_csv(args.out, CHAIN_HEADER[args.sector], [chain_row(spec, profile, t)])
    return 0


def cmd_verify(args) -> int:
    results = verify.run_checks(tol_scale=args.tol_scale)
    with _output(args.out) as handle:
        handle.write(verify.report(results))
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spincap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--out", default="-", help="output path (default: stdout)")
        return p

    p = add("ad-sweep", cmd_ad_sweep, "amplitude damping capacities over an eta grid")
    p.add_argument("--eta-min", type=float, default=0.0)
    p.add_argument("--eta-max", type=float, default=1.0)
    p.add_argument("--eta-step", type=float, default=0.01)
    p.add_argument("--jobs", type=int, default=1)

    p = add("t-sweep", cmd_t_sweep, "T-channel capacities over eta2 for fixed eta1 values")
    p.add_argument("--eta1", default="0.2,0.4,0.6,0.8", help="comma-separated eta1 values")
    p.add_argument("--eta2-step", type=float, default=0.01)
    p.add_argument("--jobs", type=int, default=1)

    p = add("chain", cmd_chain, "channel parameters and capacities of a spin chain")
    p.add_argument("--spec", help="chain spec JSON file")
    p.add_argument("--profile", default="uniform",
                   help="'uniform' or comma-separated complex coefficients")
    p.add_argument("--time", default="optimize", help="evolution time or 'optimize'")
    p.add_argument("--sector", type=int, choices=(1, 2), default=1)
    p.add_argument("--t-max", type=float, default=None,
                   help="upper end of the 'optimize' window (default 10 n / J_ref)")

    p = add("verify", cmd_verify, "run the property suite")
    p.add_argument("--tol-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"spincap: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
