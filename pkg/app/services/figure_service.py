"""Image-domain data for f(z) = (4/3) W(-z)/(-z) at lambda = 1, mu = 5/2, and g = 1/f.

W(-z)/(-z) is the reduced first normalized series evaluated at -z, so f is
(sin(2 sqrt z) - 2 sqrt z cos(2 sqrt z)) / (2 z sqrt z) without any branch
choice.
"""
import csv
import io
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from app.models.function_kind import FunctionKind
from app.repositories.claim_repository import REMARK_PARAMS
from app.schemas.params import WrightParams
from app.services.coefficient_stream import get_stream
from app.services.report_service import format_float

logger = logging.getLogger(__name__)

# curve (f or g) trails so the plain point columns stay a fixed prefix
FIGURE_CSV_FIELDS = ["re_z", "im_z", "re_f", "im_f", "tail_bound", "curve"]
FIGURE_RADII = (0.25, 0.5, 0.75, 1.0)
REFERENCE_LINES = ((2.0 / 3.0, "2/3"), (0.5, "1/2"))
REMARK_SCALE = 4.0 / 3.0

SVG_SIZE = 480
SVG_MARGIN = 24
CURVE_COLORS = {"f": "#1f5fbf", "g": "#bf3f1f"}


@dataclass(frozen=True)
class FigureSample:
    curve: str
    z: complex
    value: complex
    tail_bound: float


class FigureService:
    @property
    def stream(self):
        lam, mu = REMARK_PARAMS
        return get_stream(FunctionKind.NORM_FIRST, WrightParams(lam=lam, mu=mu))

    def ring(self, radius: float, points: int) -> np.ndarray:
        k = np.arange(points)
        unit = np.exp(2j * np.pi * k / points)
        unit[0] = 1.0 + 0.0j
        return radius * unit

    def samples(self, boundary_points: int, radii: Sequence[float] = FIGURE_RADII) -> List[FigureSample]:
        """f samples for every ring, then g samples at identical z."""
        zs = np.concatenate([self.ring(r, boundary_points) for r in sorted(radii)])
        reduced, estimate = self.stream.evaluate_many(-zs, reduced=True)
        f = REMARK_SCALE * reduced
        f_tail = REMARK_SCALE * estimate.bound
        g = 1.0 / f
        abs_f = np.abs(f)
        # |1/(f + e) - 1/f| <= |e| / (|f| (|f| - |e|))
        g_tail = f_tail / (abs_f * (abs_f - f_tail))

        rows = [FigureSample("f", complex(z), complex(v), f_tail) for z, v in zip(zs, f)]
        rows += [FigureSample("g", complex(z), complex(v), float(t)) for z, v, t in zip(zs, g, g_tail)]
        logger.debug(f"Figure data: {len(rows)} samples over radii {sorted(radii)}")
        return rows

    def to_csv(self, rows: Sequence[FigureSample]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(FIGURE_CSV_FIELDS)
        for row in rows:
            writer.writerow([
                format_float(row.z.real),
                format_float(row.z.imag),
                format_float(row.value.real),
                format_float(row.value.imag),
                format_float(row.tail_bound),
                row.curve,
            ])
        return buffer.getvalue()

    def to_svg(self, rows: Sequence[FigureSample]) -> str:
        values = np.array([row.value for row in rows])
        re_lo = min(float(values.real.min()), min(level for level, _ in REFERENCE_LINES))
        re_hi = float(values.real.max())
        im_lo, im_hi = float(values.imag.min()), float(values.imag.max())
        span = max(re_hi - re_lo, im_hi - im_lo) or 1.0
        scale = (SVG_SIZE - 2 * SVG_MARGIN) / span

        def project(w: complex) -> Tuple[float, float]:
            return SVG_MARGIN + (w.real - re_lo) * scale, SVG_MARGIN + (im_hi - w.imag) * scale

        lines = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
            f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
            f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>',
        ]
        for level, label in REFERENCE_LINES:
            x, _ = project(complex(level, 0.0))
            lines.append(
                f'<line x1="{x:.4f}" y1="0" x2="{x:.4f}" y2="{SVG_SIZE}" '
                f'stroke="#777777" stroke-dasharray="4 3" stroke-width="1"/>'
            )
            lines.append(f'<text x="{x + 3:.4f}" y="14" font-size="11">Re = {label}</text>')

        # one closed polyline per (curve, radius) ring
        rings = {}
        for row in rows:
            rings.setdefault((row.curve, round(abs(row.z), 12)), []).append(row.value)
        for (curve, radius), ring in rings.items():
            ring = ring + ring[:1]
            points = " ".join(f"{x:.4f},{y:.4f}" for x, y in map(project, ring))
            width = 1.5 if radius == 1.0 else 0.75
            lines.append(
                f'<polyline fill="none" stroke="{CURVE_COLORS[curve]}" stroke-width="{width}" '
                f'points="{points}"><title>{curve} |z|={radius!r}</title></polyline>'
            )
        lines.append("</svg>")
        return "\n".join(lines) + "\n"


figure_service = FigureService()
