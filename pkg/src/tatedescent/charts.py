"""Bigraded charts and spectral-sequence pages, with text and SVG rendering.

Charts are drawn in Adams orientation: the horizontal coordinate is the stem
``t - s`` and the vertical coordinate is ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional
from xml.sax.saxutils import escape


@dataclass
class BigradedChart:
    """Dimensions indexed by (s, t), zero entries omitted."""

    dims: dict[tuple[int, int], int]
    sigma: Optional[tuple[int, int]] = None
    tau: Optional[tuple[int, int]] = None
    title: str = ""
    labels: dict[tuple[int, int], list[str]] = field(default_factory=dict)

    def __post_init__(self):
        self.dims = {k: v for k, v in sorted(self.dims.items()) if v}

    def dim(self, s: int, t: int) -> int:
        return self.dims.get((s, t), 0)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.dim(*key)

    def total(self) -> int:
        return sum(self.dims.values())

    def restrict(self, sigma=None, tau=None) -> "BigradedChart":
        def ok(s, t):
            return ((sigma is None or sigma[0] <= s <= sigma[1])
                    and (tau is None or tau[0] <= t <= tau[1]))

        return BigradedChart({k: v for k, v in self.dims.items() if ok(*k)},
                             sigma or self.sigma, tau or self.tau, self.title,
                             {k: v for k, v in self.labels.items() if ok(*k)})

    def stems(self) -> dict[tuple[int, int], int]:
        """Re-keyed by (stem, s)."""
        return {(t - s, s): d for (s, t), d in self.dims.items()}

    def to_text(self) -> str:
        return render_text(self.stems(), self.title, xlabel="t-s", ylabel="s")

    def to_svg(self, labels: bool = False) -> str:
        lab = {}
        if labels:
            lab = {(t - s, s): v for (s, t), v in self.labels.items()}
        return render_svg(self.stems(), self.title, lab)

    def to_records(self) -> list[str]:
        """One 's t dim' line per nonzero entry; stable machine-readable form."""
        out = []
        for (s, t), d in self.dims.items():
            line = f"{s} {t} {d}"
            if (s, t) in self.labels:
                line += " " + ",".join(self.labels[(s, t)])
            out.append(line)
        return out


@dataclass
class SSPage:
    """A page of a trigraded spectral sequence, keyed by (n, s, t).

    ``n`` is the filtration (descent) degree, ``(s, t)`` the bidegree of the
    underlying Ext groups.
    """

    r: int
    dims: dict[tuple[int, int, int], int]
    title: str = ""
    window: dict = field(default_factory=dict)

    def __post_init__(self):
        self.dims = {k: v for k, v in sorted(self.dims.items()) if v}

    def dim(self, n: int, s: int, t: int) -> int:
        return self.dims.get((n, s, t), 0)

    def total(self) -> int:
        return sum(self.dims.values())

    def sheet(self, n: int) -> BigradedChart:
        return BigradedChart({(s, t): d for (nn, s, t), d in self.dims.items() if nn == n},
                             title=f"{self.title} n={n}")

    def filtrations(self) -> list[int]:
        return sorted({k[0] for k in self.dims})

    def to_text(self) -> str:
        parts = [f"# E_{self.r} {self.title}".rstrip()]
        for n in self.filtrations():
            parts.append(render_text(self.sheet(n).stems(), f"n = {n}", "t-s", "s"))
        return "\n".join(parts)

    def to_records(self) -> list[str]:
        return [f"{n} {s} {t} {d}" for (n, s, t), d in self.dims.items()]


def render_text(grid: dict[tuple[int, int], int], title: str = "",
                xlabel: str = "x", ylabel: str = "y") -> str:
    """ASCII grid: rows are y (top = largest), columns are x; '.' marks zero."""
    lines = []
    if title:
        lines.append(f"# {title}")
    if not grid:
        lines.append("(empty)")
        return "\n".join(lines) + "\n"
    xs = [x for x, _ in grid]
    ys = [y for _, y in grid]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    width = max(3, max(len(str(v)) for v in grid.values()) + 1, len(str(x0)) + 1, len(str(x1)) + 1)
    lab = max(len(str(y0)), len(str(y1)), len(ylabel))
    for y in range(y1, y0 - 1, -1):
        cells = []
        for x in range(x0, x1 + 1):
            v = grid.get((x, y), 0)
            cells.append((str(v) if v else ".").rjust(width))
        lines.append(str(y).rjust(lab) + " |" + "".join(cells))
    lines.append(" " * lab + " +" + "-" * (width * (x1 - x0 + 1)))
    lines.append(ylabel.rjust(lab) + "  " + "".join(str(x).rjust(width) for x in range(x0, x1 + 1)))
    lines.append(" " * lab + "  " + xlabel.rjust(width * (x1 - x0 + 1)))
    return "\n".join(lines) + "\n"


def render_svg(grid: dict[tuple[int, int], int], title: str = "",
               labels: Optional[dict[tuple[int, int], list[str]]] = None, unit: int = 30) -> str:
    """Deterministic SVG: one unit square per bidegree, stacked dots for dim > 1."""
    labels = labels or {}
    if grid:
        xs = [x for x, _ in grid]
        ys = [y for _, y in grid]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    else:
        x0 = x1 = y0 = y1 = 0
    margin = 40
    w = (x1 - x0 + 1) * unit + 2 * margin
    h = (y1 - y0 + 1) * unit + 2 * margin

    def px(x):
        return margin + (x - x0) * unit

    def py(y):
        return margin + (y1 - y) * unit

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<title>{escape(title)}</title>',
        '<g stroke="#ddd" stroke-width="1" fill="none">',
    ]
    for x in range(x0, x1 + 1):
        for y in range(y0, y1 + 1):
            out.append(f'<rect x="{px(x)}" y="{py(y)}" width="{unit}" height="{unit}"/>')
    out.append("</g>")
    out.append('<g font-family="monospace" font-size="9" fill="#444">')
    for x in range(x0, x1 + 1):
        out.append(f'<text x="{px(x) + unit // 2}" y="{h - margin // 2}" '
                   f'text-anchor="middle">{x}</text>')
    for y in range(y0, y1 + 1):
        out.append(f'<text x="{margin // 2}" y="{py(y) + unit // 2 + 3}" '
                   f'text-anchor="middle">{y}</text>')
    out.append("</g>")
    out.append('<g fill="black">')
    for (x, y), d in sorted(grid.items()):
        step = unit / (d + 1)
        cx = px(x) + unit / 2
        for k in range(d):
            cy = py(y) + unit - step * (k + 1)
            out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{min(3.0, step / 3):.2f}"/>')
    out.append("</g>")
    if labels:
        out.append('<g font-family="serif" font-size="7" fill="#036">')
        for (x, y), names in sorted(labels.items()):
            out.append(f'<text x="{px(x) + 2}" y="{py(y) + 8}">{escape(",".join(names))}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
