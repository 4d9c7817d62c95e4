"""Figure rendering for reports: Newton polygons with their lattice points,
and moduli rank-stabilization traces.  Uses the Agg backend; figures render
to files next to the JSON/text output."""

from __future__ import annotations

from .exactlin.polygon import LatticePolygon
from .reports import ModuliReport


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_polygon(polygon: LatticePolygon, path, title: str | None = None):
    """Polygon outline with boundary and interior lattice points marked."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    verts = list(polygon.vertices)
    xs = [p[0] for p in verts] + [verts[0][0]]
    ys = [p[1] for p in verts] + [verts[0][1]]
    ax.plot(xs, ys, "-", color="#1f77b4", lw=1.5, zorder=2)
    ax.plot([p[0] for p in verts], [p[1] for p in verts], "o", color="#1f77b4", ms=6, zorder=3)
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    inner = []
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            if polygon.contains_strictly((x, y)):
                inner.append((x, y))
    if inner:
        ax.plot(
            [p[0] for p in inner],
            [p[1] for p in inner],
            "s",
            color="#d62728",
            ms=4,
            zorder=3,
            label=f"interior ({len(inner)})",
        )
        ax.legend(loc="upper right", fontsize=8)
    ax.set_xticks(range(x0, x1 + 1))
    ax.set_yticks(range(y0, y1 + 1))
    ax.grid(True, lw=0.3, alpha=0.5)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_moduli_trace(report: ModuliReport, path):
    """Step plot of dim_inv and dim_leaf against the word-length bound."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 3.2))
    lens = [t["len"] for t in report.trace]
    ax.step(lens, [t["dim_inv"] for t in report.trace], where="post", label="dim inv", lw=1.5)
    ax.step(lens, [t["dim_leaf"] for t in report.trace], where="post", label="dim leaf", lw=1.5)
    ax.set_xlabel("word length bound")
    ax.set_ylabel("exact rank")
    ax.set_xticks(lens)
    ax.set_title(f"rank stabilization, N = {report.n}", fontsize=10)
    ax.legend(fontsize=8)
    ax.grid(True, lw=0.3, alpha=0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
