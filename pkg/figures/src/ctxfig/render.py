"""Multi-panel figure rendering from ctxgeom CSV tables.

All rendering is deterministic: a fixed style, a fixed SVG hash salt, and
no embedded timestamps, so identical input files produce byte-identical
image payloads.
"""

from __future__ import annotations

import warnings
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .io import Table, read_fig1, read_fig2a, read_fig2b, read_ncycle

# Constant for the asymptote line in the cycle-scan panel; purely cosmetic,
# the value itself comes from the data pipeline.
CYCLE_ASYMPTOTE = 37.9702

STYLE = {
    "figure.figsize": (9.0, 3.0),
    "figure.dpi": 100,
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.4,
    "lines.markersize": 4.5,
    "svg.hashsalt": "ctxfig",
    "svg.fonttype": "path",  # embed glyphs as paths: self-contained SVG
}

_NO_DATE = {"Date": None}


def _save(fig, out_path: str | Path, fmt: str, dpi: int) -> Path:
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    kwargs = {"format": fmt, "dpi": dpi}
    if fmt == "svg":
        kwargs["metadata"] = _NO_DATE
    fig.savefig(out_path, **kwargs)
    plt.close(fig)
    return out_path


def _vline(ax, x, label=None):
    ax.axvline(x, linestyle=":", color="0.35", linewidth=1.0, label=label)


def render_fig1(fig1_csv: str | Path, out_path: str | Path, fmt: str = "svg", dpi: int = 150) -> Path:
    """Three witness panels against the mixing weight, with the threshold line.

    Panel 1: correlator vs p with the horizontal bound at -3; panel 2:
    contextual fraction; panel 3: entropic inequality value with its zero
    line. A dotted vertical line marks the threshold from the metadata.
    """
    table = read_fig1(fig1_csv)
    p_star = float(table.metadata["p_star"])
    p = table.column("p")
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 3, constrained_layout=True)
        panels = (
            ("chi", r"correlator $\chi$", -3.0),
            ("cf", "contextual fraction", None),
            ("bc_max_bits", "entropic value [bits]", 0.0),
        )
        for ax, (col, label, bound) in zip(axes, panels):
            ax.plot(p, table.column(col), marker="o", color="C0")
            if bound is not None:
                ax.axhline(bound, linestyle="--", color="C3", linewidth=1.0)
            _vline(ax, p_star)
            ax.set_xlabel("$p$")
            ax.set_ylabel(label)
        return _save(fig, out_path, fmt, dpi)


def render_fig2(
    fig2a_csv: str | Path,
    fig2b_csv: str | Path,
    out_path: str | Path,
    fmt: str = "svg",
    dpi: int = 150,
) -> Path:
    """Commutator-witness sweep panel plus a bar panel over named states.

    Panel (a) marks the sweep endpoints: open circle at s = 0, filled at
    the final s. If the state table has no rows, only panel (a) is drawn
    and a warning is emitted.
    """
    sweep = read_fig2a(fig2a_csv)
    states = read_fig2b(fig2b_csv)
    s = sweep.column("s")
    d = sweep.column("D_total")
    with plt.rc_context(STYLE):
        if states.rows:
            fig, (ax_a, ax_b) = plt.subplots(
                1, 2, figsize=(8.0, 3.2), constrained_layout=True
            )
        else:
            warnings.warn("state table is empty; rendering the sweep panel only")
            fig, ax_a = plt.subplots(figsize=(4.5, 3.2), constrained_layout=True)
        ax_a.plot(s, d, color="C0")
        if s:
            ax_a.plot([s[0]], [d[0]], marker="o", markerfacecolor="white", color="C0")
            ax_a.plot([s[-1]], [d[-1]], marker="o", color="C0")
        ax_a.set_xlabel("$s$")
        ax_a.set_ylabel("$D$")
        if states.rows:
            names = states.text_column("state")
            ax_b.bar(range(len(names)), states.column("D_total"), color="C0")
            ax_b.set_xticks(range(len(names)), names, rotation=45, ha="right")
            ax_b.set_ylabel("$D$")
        return _save(fig, out_path, fmt, dpi)


def render_ncycle(ncycle_csv: str | Path, out_path: str | Path, fmt: str = "svg", dpi: int = 150) -> Path:
    """Scaled per-context bit count against the cycle length, with asymptote."""
    table = read_ncycle(ncycle_csv)
    n = table.column("n")
    y = table.column("n2_s2_per_context")
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 3.2), constrained_layout=True)
        ax.plot(n, y, marker="o", color="C0")
        ax.axhline(CYCLE_ASYMPTOTE, linestyle="--", color="C3", linewidth=1.0)
        ax.set_xlabel("$n$")
        ax.set_ylabel(r"$n^2 \cdot$ bits per context")
        return _save(fig, out_path, fmt, dpi)


def chi_crosses_threshold_near_marker(fig1_csv: str | Path) -> bool:
    """True if the correlator crosses -3 within one grid step of the marker.

    Diagnostic used by the test suite; reads only the rendered table.
    """
    table = read_fig1(fig1_csv)
    p_star = float(table.metadata["p_star"])
    p = table.column("p")
    chi = table.column("chi")
    for k in range(len(p) - 1):
        if (chi[k] + 3.0) * (chi[k + 1] + 3.0) <= 0.0:
            step = p[k + 1] - p[k]
            if min(abs(p[k] - p_star), abs(p[k + 1] - p_star)) <= step + 1e-12:
                return True
    return False
