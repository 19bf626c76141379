"""Figures rendered next to the CLI tables. Uses the non-interactive Agg backend."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

RC = {
    "figure.figsize": (6.4, 4.0),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "font.size": 10,
    "legend.frameon": False,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
    # fixed metadata keeps output files reproducible
    "svg.hashsalt": "limitwalk",
}


def _save(fig, path):
    fig.savefig(path, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)


def plot_distribution(rows, n, k, path):
    """Execution-price law: clean-up masses as bars, passive fill as a spike, free endpoint law dashed."""
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        end = [row for row in rows if row["kind"] == "endpoint"]
        atom = [row for row in rows if row["kind"] == "passive"]
        ax.bar([row["price"] for row in end], [row["mass_f"] for row in end],
               width=0.8, color="C0", label="aggressive clean-up")
        ax.bar([row["price"] for row in atom], [row["mass_f"] for row in atom],
               width=0.8, color="C3", label=f"passive fill at -{k}")
        ax.plot([row["price"] for row in end], [row["p_endpoint_f"] for row in end],
                "k--", lw=1, label="final price law")
        ax.set_xlabel("execution price (ticks from start)")
        ax.set_ylabel("probability")
        ax.set_title(f"n = {n}, k = {k}")
        ax.legend()
        _save(fig, path)


def plot_variance(rows, n, path):
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ks = [row["k"] for row in rows]
        ax.plot(ks, [row["sigma2_exact"] for row in rows], "o-", label="exact")
        ax.plot(ks, [row["sigma2_approx"] for row in rows], "s--", label="approximation, capped at n")
        ax.axhline(n, color="grey", lw=0.8)
        ax.set_xlabel("limit level k (ticks)")
        ax.set_ylabel("variance of outcome (ticks$^2$)")
        ax.set_title(f"n = {n}")
        ax.legend()
        _save(fig, path)


def plot_cost(rows, path):
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        ks = [row["k"] for row in rows]
        ax.plot(ks, [row["delta_no_touch_f"] for row in rows], "o-", label="clean-up cost")
        ax.plot(ks, [row["delta_touch_f"] for row in rows], "s-", label="passive fills")
        ax.plot(ks, [row["net_gain_f"] for row in rows], "k^-", label="net gain")
        ax.set_xlabel("limit level k (ticks)")
        ax.set_ylabel("expected price contribution (ticks)")
        ax.legend()
        _save(fig, path)


def plot_fillprob(rows, path):
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        if "p_exact_f" in rows[0]:
            xs = [row["k"] for row in rows]
            ax.plot(xs, [row["p_exact_f"] for row in rows], "o", label="exact")
            ax.set_xlabel("limit level k (ticks)")
        else:
            xs = [row["k_abs"] for row in rows]
            ax.set_xlabel("limit distance (price units)")
        ax.plot(xs, [row["p_erf"] for row in rows], "-", label="erf limit")
        ax.set_ylabel("passive fill probability")
        ax.set_ylim(0, 1.02)
        ax.legend()
        _save(fig, path)
