"""Figures written next to table and resurgence reports."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

_RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "legend.fontsize": 8,
    "figure.dpi": 100,
    "savefig.dpi": 150,
}

# PNG metadata carries the matplotlib version by default; drop it so reruns match
_META = {"Software": None}


def _parse_fraction(text: Optional[str]) -> Optional[Fraction]:
    return Fraction(text) if text else None


def containment_figure(case: dict, path: str | Path) -> Path:
    """Heat map of ``I^(m) ⊆ I^r`` over the grid, with the certified ratio line."""
    rows = case["table"]
    m_max = max((row[0] for row in rows), default=0)
    r_max = max((row[1] for row in rows), default=0)
    grid = np.zeros((max(m_max, 1), max(r_max, 1)))
    for m, r, contained, _ in rows:
        grid[m - 1, r - 1] = 1.0 if contained else 0.0
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.2, 3.6))
        ax.imshow(
            grid.T,
            origin="lower",
            cmap=ListedColormap(["#d95f02", "#1b9e77"]),
            vmin=0,
            vmax=1,
            extent=(0.5, m_max + 0.5, 0.5, r_max + 0.5),
            aspect="auto",
        )
        rho = _parse_fraction(case.get("certified_rho"))
        lower = _parse_fraction(case.get("empirical_lower"))
        ms = np.linspace(0.5, m_max + 0.5, 50)
        if rho is not None:
            ax.plot(ms, ms / float(rho), "k--", lw=1, label=f"m/r = {rho}")
        if lower is not None:
            ax.plot(ms, ms / float(lower), "k:", lw=1, label=f"m/r = {lower} (grid)")
        ax.set_xlim(0.5, m_max + 0.5)
        ax.set_ylim(0.5, r_max + 0.5)
        ax.set_xlabel("symbolic exponent m")
        ax.set_ylabel("ordinary exponent r")
        mults = case.get("scheme", {}).get("mults", [])
        label = " + ".join(f"{k}P{i}" for i, k in mults) or "empty"
        ax.set_title(f"containment for {label}")
        if rho is not None or lower is not None:
            ax.legend(loc="upper left", frameon=False)
        fig.tight_layout()
        out = Path(path)
        fig.savefig(out, metadata=_META)
        plt.close(fig)
    return out


def waldschmidt_figure(seq: Sequence, limit: Optional[Fraction], path: str | Path) -> Path:
    """``alpha(I^(m))/m`` against m, with the closed-form limit when known."""
    ms = [m for m, _ in seq]
    vals = [float(q) for _, q in seq]
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(4.2, 3.0))
        ax.plot(ms, vals, "o-", ms=3, lw=1)
        if limit is not None:
            ax.axhline(float(limit), color="k", ls="--", lw=1, label=f"limit {limit}")
            ax.legend(frameon=False)
        ax.set_xlabel("m")
        ax.set_ylabel("alpha(I^(m)) / m")
        fig.tight_layout()
        out = Path(path)
        fig.savefig(out, metadata=_META)
        plt.close(fig)
    return out
