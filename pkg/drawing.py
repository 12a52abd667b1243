"""
SVG drawings of the marked strip and of quiver windows.

Rendering goes through matplotlib's Agg backend. A fixed hash salt and an empty
date keep the output byte-identical across runs and processes.
"""

import io
from typing import Iterable, Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from homext import GeomSegment, crossing_heights  # noqa: E402
from logging_config import get_logger  # noqa: E402
from picard import ModelContext  # noqa: E402
from quiver import QuiverWindow  # noqa: E402
from strip import OrbitClass, Segment, orbit_translates  # noqa: E402

STYLE = {
    "boundary": "#1e293b",
    "point": "#1e293b",
    "midline": "#64748b",
    "overlay": "#2563eb",
    "orbit": "#ea580c",
    "crossing": "#dc2626",
    "arrow": "#475569",
}

# points per inch; figure sizes are given in SVG user units
_PT = 72.0


class DiagramRenderer:
    """Deterministic SVG drawings of the marked strip and of quiver windows"""

    def __init__(self, scale: int = 40, strip_height: int = 80) -> None:
        self.scale = scale
        self.strip_height = strip_height
        self.logger = get_logger(__name__)

    def _to_svg(self, fig) -> str:
        buf = io.StringIO()
        with plt.rc_context({"svg.hashsalt": "wpl", "svg.fonttype": "none"}):
            fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
        return buf.getvalue()

    def render_strip(
        self,
        ctx: ModelContext,
        x_min: int,
        x_max: int,
        overlays: Iterable[Segment] = (),
        orbit_of: Optional[Segment] = None,
    ) -> str:
        """The strip between x_min and x_max with segments drawn on top"""
        overlays = list(overlays)
        n = ctx.n
        span = x_max - x_min + 1
        fig = plt.figure(figsize=(span * self.scale / _PT, self.strip_height * 1.25 / _PT))
        ax = fig.add_axes([0, 0, 1, 1])
        ax.set_xlim(x_min - 0.5, x_max + 0.5)
        ax.set_ylim(-0.125, 1.125)
        ax.axis("off")

        for y in (0, 1):
            ax.plot([x_min - 0.5, x_max + 0.5], [y, y], color=STYLE["boundary"], linewidth=1)
        marked = list(range(x_min, x_max + 1))
        ax.scatter(marked, [0] * span, s=10, color=STYLE["point"], zorder=3)
        ax.scatter(marked, [1] * span, s=10, color=STYLE["point"], zorder=3)

        midline = [k * n / 2 for k in range(2 * x_min // n - 1, 2 * x_max // n + 2) if x_min <= k * n / 2 <= x_max]
        ax.scatter(
            midline,
            [0.5] * len(midline),
            s=14,
            facecolors="white",
            edgecolors=STYLE["midline"],
            zorder=3,
        )

        if orbit_of is not None:
            orbit = OrbitClass.of(orbit_of)
            reach = (abs(x_min) + abs(x_max) + abs(orbit.rep.i) + abs(orbit.rep.j)) // n + 2
            for u, v in orbit_translates(orbit.rep, -reach, reach):
                if max(u, v) >= x_min and min(u, v) <= x_max:
                    ax.plot([u, v], [0, 1], color=STYLE["orbit"], linewidth=0.8, linestyle="--")

        for s in overlays:
            g = GeomSegment.of(s)
            (x0, y0), (x1, y1) = g.endpoints
            ax.plot([float(x0), float(x1)], [float(y0), float(y1)], color=STYLE["overlay"], linewidth=1.5)

        if overlays and orbit_of is not None:
            a = overlays[0]
            g = GeomSegment.of(a)
            points = [g.point_at(y) for y in crossing_heights(a, OrbitClass.of(orbit_of))]
            if points:
                ax.scatter(
                    [float(x) for x, _ in points],
                    [float(y) for _, y in points],
                    marker="x",
                    s=30,
                    color=STYLE["crossing"],
                    zorder=4,
                )
            self.logger.debug(f"marked {len(points)} crossings of {a} with the orbit of {orbit_of}")

        return self._to_svg(fig)

    def render_quiver(self, win: QuiverWindow) -> str:
        """Vertex (s, row) sits at (2s + row, row); value-2 vertices are filled"""
        n = win.n
        width = 2 * (win.s_max - win.s_min) + n + 2
        half = self.scale / 2
        fig = plt.figure(figsize=(width * half / _PT, (n + 2) * half / _PT))
        ax = fig.add_axes([0, 0, 1, 1])
        ax.set_xlim(2 * win.s_min - 1, 2 * win.s_max + n + 1)
        ax.set_ylim(-1, n + 1)
        ax.axis("off")

        def place(v):
            return (2 * v.s + v.row, v.row)

        for arrow in win.arrows:
            ax.annotate(
                "",
                xy=place(arrow.target),
                xytext=place(arrow.source),
                arrowprops={
                    "arrowstyle": "->",
                    "color": STYLE["arrow"],
                    "lw": 0.8,
                    "shrinkA": 5,
                    "shrinkB": 5,
                },
            )
            if arrow.value != (1, 1):
                (x0, y0), (x1, y1) = place(arrow.source), place(arrow.target)
                ax.text(
                    (x0 + x1) / 2,
                    (y0 + y1) / 2,
                    f"({arrow.value[0]},{arrow.value[1]})",
                    fontsize=5,
                    color=STYLE["arrow"],
                    ha="center",
                    va="center",
                )

        for v in win.vertices:
            x, y = place(v)
            if v.valuation == 2:
                ax.scatter([x], [y], s=18, color=STYLE["point"], zorder=3)
            else:
                ax.scatter([x], [y], s=18, facecolors="white", edgecolors=STYLE["point"], zorder=3)

        self.logger.debug(f"drew {len(win.vertices)} vertices and {len(win.arrows)} arrows")
        return self._to_svg(fig)
