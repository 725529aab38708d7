"""CSV and SVG rendering of region boundaries."""
import csv
import io
import re
from pathlib import Path
from typing import List

from radembed.services.region import BoundaryExport, Polyline

COLORS = {
    "lower": "#1f77b4",
    "upper": "#d62728",
    "vertical": "#2ca02c",
}


def _slug(label: str) -> str:
    ascii_label = (
        label.replace("α₁", "alpha1")
        .replace("α₂", "alpha2")
        .replace("α₃", "alpha3")
        .replace("max{1,2β}", "floor")
        .replace("q_**", "qss")
        .replace("q_*", "qs")
    )
    return re.sub(r"[^A-Za-z0-9]+", "_", ascii_label).strip("_") or "curve"


def polyline_csv(curve: Polyline) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["alpha", "q", "label"])
    for alpha, q in curve.points:
        writer.writerow([repr(alpha), repr(q), curve.label])
    return buffer.getvalue()


def write_csv(export: BoundaryExport, out_dir: Path) -> List[Path]:
    """One CSV per curve, file names suffixed with the case tag."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tag = export.spec.case_tag.value
    written = []
    for index, curve in enumerate(export.curves):
        path = out_dir / f"boundary_{index:02d}_{curve.kind}_{_slug(curve.label)}_{tag}.csv"
        path.write_text(polyline_csv(curve), encoding="utf-8")
        written.append(path)
    return written


def render_svg(export: BoundaryExport, width: int = 640, height: int = 480) -> str:
    """Self-contained SVG 1.1 sketch of the region boundary."""
    a_lo, a_hi = export.alpha_range
    q_lo, q_hi = export.q_window
    pad = 40

    def sx(alpha: float) -> float:
        return pad + (alpha - a_lo) / (a_hi - a_lo) * (width - 2 * pad)

    def sy(q: float) -> float:
        q = min(max(q, q_lo), q_hi)
        return height - pad - (q - q_lo) / (q_hi - q_lo) * (height - 2 * pad)

    spec = export.spec
    title = f"A(beta={spec.beta}, gamma={spec.gamma}), N={spec.n.n} [{spec.case_tag.value}]"

    svg = []
    svg.append('<?xml version="1.0" encoding="UTF-8"?>')
    svg.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">'
    )
    svg.append('  <style>')
    svg.append('    .axis { stroke: #333333; stroke-width: 1; }')
    svg.append('    .curve { fill: none; stroke-width: 2; }')
    svg.append('    .label { font-family: sans-serif; font-size: 12px; fill: #333; }')
    svg.append('  </style>')
    svg.append(f'  <text class="label" x="{pad}" y="{pad / 2}">{title}</text>')
    svg.append(f'  <line class="axis" x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" />')
    svg.append(f'  <line class="axis" x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" />')
    svg.append(f'  <text class="label" x="{width - pad}" y="{height - pad / 3}">alpha</text>')
    svg.append(f'  <text class="label" x="{pad / 4}" y="{pad}">q</text>')

    for curve in export.curves:
        if len(curve.points) < 2:
            continue
        pts = " ".join(f"{sx(a):.2f},{sy(q):.2f}" for a, q in curve.points)
        color = COLORS.get(curve.kind, "#666")
        svg.append(f'  <polyline class="curve" stroke="{color}" points="{pts}" />')
        a_mid, q_mid = curve.points[len(curve.points) // 2]
        svg.append(f'  <text class="label" x="{sx(a_mid) + 4:.2f}" y="{sy(q_mid) - 4:.2f}">{curve.label}</text>')

    svg.append('</svg>')
    return "\n".join(svg)


def write_svg(export: BoundaryExport, out_path: Path) -> Path:
    out_path = Path(out_path)
    if out_path.suffix != ".svg":
        out_path = out_path / f"region_{export.spec.case_tag.value}.svg"
    else:
        out_path = out_path.with_name(f"{out_path.stem}_{export.spec.case_tag.value}.svg")
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(render_svg(export), encoding="utf-8")
    return out_path
