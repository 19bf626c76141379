"""Command-line tables for the limit-order random-walk engines.

Subcommands: ``dist``, ``cost``, ``variance``, ``fillprob``, ``simulate``,
``verify``. Output is CSV (default) or JSON on stdout or ``--out``; ``--plot``
additionally renders a matplotlib figure of the same table.

Exit codes: 0 success, 1 invalid arguments, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .asymptotics import fill_prob_asymptotic, fill_prob_time, variance_approx
from .execution_analytics import (
    execution_stats,
    fill_prob_exact,
    fill_prob_tail,
    variance_components,
    variance_exact,
    variance_regrouped,
)
from .mc_sim import ENUMERATION_MAX_N, enumerate_distribution, enumerate_stats, simulate
from .walk_prob import (
    Kernel,
    check_scenario,
    endpoint_prob,
    execution_distribution,
    no_touch_prob,
    reachable_levels,
    touch_prob,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISMATCH = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rational(x) -> Optional[str]:
    if x is None:
        return None
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return fmt_float(x)


def fmt_float(x) -> str:
    return format(float(x), ".17g")


def _pair(row: dict, name: str, value) -> None:
    row[name] = rational(value)
    row[name + "_f"] = None if value is None else float(value)


# ---------------------------------------------------------------- tables


def dist_table(n: int, k: int, engine: str = "auto") -> List[dict]:
    law = execution_distribution(n, k, engine)
    rows = []
    for r in reachable_levels(n):
        if r <= -k:
            continue
        row = {"kind": "endpoint", "price": r}
        _pair(row, "p_endpoint", endpoint_prob(n, r, law.engine))
        _pair(row, "p_touch", touch_prob(n, r, k, law.engine))
        _pair(row, "p_no_touch", no_touch_prob(n, r, k, law.engine))
        _pair(row, "mass", law.cleanup[r])
        rows.append(row)
    row = {"kind": "passive", "price": -k}
    for name in ("p_endpoint", "p_touch", "p_no_touch"):
        _pair(row, name, None)
    _pair(row, "mass", law.passive_mass)
    rows.append(row)
    return rows


def cost_table(n: int, k_max: int, engine: str = "auto") -> List[dict]:
    rows = []
    for k in range(k_max + 1):
        stats = execution_stats(n, k, engine)
        row = {"k": k}
        _pair(row, "delta_no_touch", stats.cost_no_touch)
        _pair(row, "delta_touch", stats.cost_touch)
        _pair(row, "net_gain", stats.mean_gain)
        rows.append(row)
    return rows


def variance_table(n: int, k_max: int, engine: str = "auto") -> List[dict]:
    rows = []
    for k in range(k_max + 1):
        exact = variance_exact(n, k, engine)
        rows.append(
            {
                "k": k,
                "sigma2_exact": float(exact),
                "sigma2_exact_rational": rational(exact),
                "sigma2_approx_capped": variance_approx(n, k, clamp=False),
                "sigma2_approx": variance_approx(n, k),
            }
        )
    return rows


def fillprob_tree_table(n: int, ks, parity_bump: bool = False, engine: str = "auto") -> List[dict]:
    rows = []
    for k in ks:
        m = n + 1 if parity_bump and k > 0 and (n - k) % 2 == 0 else n
        row = {"n": m, "k": k}
        _pair(row, "p_exact", fill_prob_exact(m, k, engine))
        row["p_tail_f"] = float(fill_prob_tail(m, k, engine))
        row["p_erf"] = fill_prob_asymptotic(k, m)
        rows.append(row)
    return rows


def fillprob_time_table(k_abs: float, sigma: float, tau: float) -> List[dict]:
    return [{"k_abs": k_abs, "sigma": sigma, "tau": tau, "p_erf": fill_prob_time(k_abs, sigma, tau)}]


def simulate_table(n: int, k: int, paths: int, seed: int, workers: int = 1) -> List[dict]:
    rep = simulate(n, k, paths, seed, workers)
    exact = execution_stats(n, k)
    return [
        {
            "n": n,
            "k": k,
            "paths": rep.paths,
            "seed": rep.seed,
            "mean_gain_hat": rep.mean_gain_hat,
            "se_mean": rep.se_mean,
            "variance_hat": rep.variance_hat,
            "se_variance": rep.se_variance,
            "fill_prob_hat": rep.fill_prob_hat,
            "se_fill": rep.se_fill,
            "mean_gain_exact": float(exact.mean_gain),
            "variance_exact": float(exact.variance),
            "fill_prob_exact": float(exact.fill_probability),
        }
    ]


class VerificationMismatch(Exception):
    def __init__(self, n, k, field, expected, got):
        super().__init__(f"mismatch at n={n} k={k} field={field}: expected {expected}, got {got}")
        self.n, self.k, self.field = n, k, field


def verify_table(n_max: int) -> List[dict]:
    """Exact engine against exhaustive enumeration for every ``n <= n_max`` and ``k <= n``.

    Raises :class:`VerificationMismatch` on the first disagreement.
    """
    rows = []
    for n in range(1, n_max + 1):
        for k in range(n + 1):
            exact = execution_stats(n, k, "exact")
            oracle = enumerate_stats(n, k)
            for name, want in oracle.as_dict().items():
                got = getattr(exact, name)
                if got != want:
                    raise VerificationMismatch(n, k, name, want, got)
            if exact.mean_gain != 0:
                raise VerificationMismatch(n, k, "mean_gain", 0, exact.mean_gain)
            if k == 0:
                continue
            forms = {
                "variance_regrouped": variance_regrouped(n, k, "exact"),
                "variance_components": sum(variance_components(n, k, "exact")),
            }
            for name, got in forms.items():
                if got != exact.variance:
                    raise VerificationMismatch(n, k, name, exact.variance, got)
            law = execution_distribution(n, k, "exact")
            if law.atoms() != enumerate_distribution(n, k):
                raise VerificationMismatch(n, k, "distribution", enumerate_distribution(n, k), law.atoms())
        rows.append({"n": n, "cases": n + 1, "paths": 1 << n, "status": "ok"})
    return rows


# ---------------------------------------------------------------- output


def render(rows: List[dict], fmt: str, meta: dict) -> str:
    if fmt == "json":
        return json.dumps({"meta": meta, "rows": rows}, indent=2) + "\n"
    buf = io.StringIO()
    fields = list(rows[0]) if rows else []
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow(
            "" if v is None else fmt_float(v) if isinstance(v, float) else str(v)
            for v in (row[f] for f in fields)
        )
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="limitwalk", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, plot=True):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", metavar="PATH", help="write the table here instead of stdout")
        if plot:
            sp.add_argument("--plot", metavar="PATH", help="also render a figure (png, pdf, svg)")

    sp = sub.add_parser("dist", help="execution-price law for one limit level")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    common(sp)

    sp = sub.add_parser("cost", help="expected clean-up and passive cost, net gain, k = 0..k_max")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k-max", type=int)
    common(sp)

    sp = sub.add_parser("variance", help="exact and approximate outcome variance, k = 0..k_max")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k-max", type=int)
    common(sp)

    sp = sub.add_parser("fillprob", help="passive fill probability, exact and erf form")
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--k-max", type=int)
    sp.add_argument("--k-abs", type=float)
    sp.add_argument("--sigma", type=float)
    sp.add_argument("--tau", type=float, default=1.0)
    sp.add_argument("--parity-bump", action="store_true",
                    help="use n + 1 whenever n and k share parity")
    common(sp)

    sp = sub.add_parser("simulate", help="Monte Carlo estimates with standard errors")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--paths", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    common(sp, plot=False)

    sp = sub.add_parser("verify", help="exact engine vs exhaustive enumeration for n <= n_max")
    sp.add_argument("--n-max", type=int, default=16)
    common(sp, plot=False)
    return p


def _run(args) -> tuple:
    """Validate, compute and return ``(rows, meta, plotter)``."""
    cmd = args.command
    meta = {"n": getattr(args, "n", None), "k": None, "engine": "exact", "tool_version": __version__}
    plotter = None

    if cmd == "dist":
        check_scenario(args.n, args.k)
        if args.k == 0:
            raise ValueError("k must be >= 1 for dist; k = 0 executes immediately")
        meta["k"] = args.k
        meta["engine"] = Kernel(args.n).engine
        rows = dist_table(args.n, args.k)
        from .plotting import plot_distribution

        plotter = lambda path: plot_distribution(rows, args.n, args.k, path)

    elif cmd in ("cost", "variance"):
        k_max = args.n if args.k_max is None else args.k_max
        check_scenario(args.n, k_max)
        meta["k"] = k_max
        meta["engine"] = Kernel(args.n).engine
        if cmd == "cost":
            rows = cost_table(args.n, k_max)
            from .plotting import plot_cost

            plotter = lambda path: plot_cost(rows, path)
        else:
            rows = variance_table(args.n, k_max)
            from .plotting import plot_variance

            plotter = lambda path: plot_variance(rows, args.n, path)

    elif cmd == "fillprob":
        if args.k_abs is not None or args.sigma is not None:
            if args.k_abs is None or args.sigma is None:
                raise ValueError("the time form needs both --k-abs and --sigma")
            if args.n is not None or args.k is not None or args.k_max is not None:
                raise ValueError("--k-abs/--sigma cannot be combined with --n/--k/--k-max")
            if not args.sigma > 0 or not args.tau > 0 or args.k_abs < 0:
                raise ValueError("need sigma > 0, tau > 0 and k_abs >= 0")
            meta.update(n=None, k=args.k_abs, engine="erf")
            rows = fillprob_time_table(args.k_abs, args.sigma, args.tau)
        else:
            if args.n is None or (args.k is None) == (args.k_max is None):
                raise ValueError("give --n with exactly one of --k or --k-max, or --k-abs with --sigma")
            top = args.k if args.k is not None else args.k_max
            check_scenario(args.n, top)
            ks = [args.k] if args.k is not None else list(range(args.k_max + 1))
            meta["k"] = top
            meta["engine"] = Kernel(args.n + (1 if args.parity_bump else 0)).engine
            rows = fillprob_tree_table(args.n, ks, args.parity_bump)
        from .plotting import plot_fillprob

        plotter = lambda path: plot_fillprob(rows, path)

    elif cmd == "simulate":
        check_scenario(args.n, args.k)
        if args.k == 0:
            raise ValueError("k must be >= 1 for simulate; k = 0 fills deterministically")
        if args.paths < 1 or args.workers < 1:
            raise ValueError("--paths and --workers must be positive")
        if not 0 <= args.seed < 2**64:
            raise ValueError("--seed must be an unsigned 64-bit integer")
        meta.update(k=args.k, engine="montecarlo", paths=args.paths, seed=args.seed)
        rows = simulate_table(args.n, args.k, args.paths, args.seed, args.workers)

    elif cmd == "verify":
        if not 1 <= args.n_max <= ENUMERATION_MAX_N:
            raise ValueError(f"--n-max must be in [1, {ENUMERATION_MAX_N}]")
        meta.update(n=args.n_max, engine="enumeration")
        rows = verify_table(args.n_max)

    return rows, meta, plotter


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "plot", None) and not args.plot.lower().endswith((".png", ".pdf", ".svg")):
            raise ValueError("--plot path must end in .png, .pdf or .svg")
        rows, meta, plotter = _run(args)
    except (UsageError, ValueError) as exc:
        print(f"limitwalk: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except VerificationMismatch as exc:
        print(f"limitwalk: {exc}", file=sys.stderr)
        return EXIT_MISMATCH

    text = render(rows, args.format, meta)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if getattr(args, "plot", None) and plotter is not None:
        plotter(args.plot)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
