"""Figure rendering for sweep and threshold reports.

Figures are written straight to files (Agg backend, no display); the CSV
or JSON output stays the primary artifact and the figure mirrors it.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from fractions import Fraction  # noqa: E402


def _as_float(value) -> float:
    return float(Fraction(str(value)))


def _float_or_none(value) -> float | None:
    try:
        return _as_float(value)
    except (TypeError, ValueError, ZeroDivisionError):
        return None


def render_sweep_figure(rows: list[dict], path: str) -> None:
    """Clamped bounds (and p_hat when simulated) against the swept axis."""
    ns = sorted({int(r["n"]) for r in rows})
    ps = sorted({_as_float(r["p"]) for r in rows})
    sweep_n = len(ns) > 1 or len(ps) == 1
    xkey = "n" if sweep_n else "p"
    groups = ps if sweep_n else ns
    gkey = "p" if sweep_n else "n"

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for group in groups:
        sub = [r for r in rows if _as_float(r[gkey]) == float(group)]
        sub.sort(key=lambda r: _as_float(r[xkey]))
        xs = [_as_float(r[xkey]) for r in sub]
        label = f"{gkey}={group}"
        ax.plot(xs, [float(r["lower"]) for r in sub], marker="o", label=f"lower, {label}")
        ax.plot(xs, [float(r["upper"]) for r in sub], marker="s", label=f"upper, {label}")
        phats = [_float_or_none(r.get("p_hat")) for r in sub]
        if any(v is not None for v in phats):
            ax.plot(xs, phats, marker="x", linestyle="--", label=f"estimate, {label}")
    ax.set_xlabel(xkey)
    ax.set_ylabel("P(diameter within target)")
    ax.set_ylim(-0.05, 1.05)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_threshold_figure(rows: list[dict], path: str) -> None:
    """Bounds and estimates along an n-grid at a fixed threshold constant."""
    rows = sorted(rows, key=lambda r: int(r["n"]))
    xs = [int(r["n"]) for r in rows]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(xs, [float(r["lower"]) for r in rows], marker="o", label="theorem lower")
    ax.plot(xs, [float(r["upper"]) for r in rows], marker="s", label="theorem upper")
    phats = [_float_or_none(r.get("p_hat")) for r in rows]
    if any(v is not None for v in phats):
        los = [_float_or_none(r.get("wilson_lo")) for r in rows]
        his = [_float_or_none(r.get("wilson_hi")) for r in rows]
        err_lo = [p - l for p, l in zip(phats, los)]
        err_hi = [h - p for p, h in zip(phats, his)]
        ax.errorbar(xs, phats, yerr=[err_lo, err_hi], fmt="x--", capsize=3,
                    label="Monte Carlo estimate")
    for key, style in (("asymptote_lower", ":"), ("asymptote_upper", "-.")):
        val = _float_or_none(rows[0].get(key))
        if val is not None:
            ax.axhline(val, linestyle=style, color="gray",
                       label=key.replace("_", " "))
    c = rows[0].get("c", "")
    ax.set_xlabel("n")
    ax.set_ylabel("P(diameter within target)")
    ax.set_title(f"threshold constant c = {c}")
    ax.set_ylim(-0.05, 1.05)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
