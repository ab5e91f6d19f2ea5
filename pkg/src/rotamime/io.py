"""CSV, JSON and SVG artifacts."""
import csv
import io
import json
from fractions import Fraction

import numpy as np

from .bifurcation import PeriodicWindow, ScanRecord, ScanResult
from .conditions import critical_points, critical_threshold
from .maps import KernelFamily, MapSpec

CSV_HEADER = ("a", "seed", "sample_index", "x", "period")


def _num(x: float) -> str:
    return format(x, ".17g")


def scan_csv(result: ScanResult) -> str:
    """One row per attractor sample; marker records contribute no rows."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in result.records:
        period = "" if rec.detected_period is None else str(rec.detected_period)
        for i, x in enumerate(rec.attractor_points):
            w.writerow((repr(rec.a), rec.seed_id, i, _num(x), period))
    return buf.getvalue()


def read_scan_csv(text: str, b_exact: Fraction, kernel: str = "eos") -> ScanResult:
    rows = {}
    for row in csv.DictReader(io.StringIO(text)):
        key = (float(row["a"]), row["seed"])
        pts, _ = rows.setdefault(key, ([], row["period"]))
        pts.append(float(row["x"]))
    records = [
        ScanRecord(a, seed, tuple(pts), int(period) if period else None)
        for (a, seed), (pts, period) in sorted(rows.items())
    ]
    return ScanResult(b_exact, kernel, records)


def windows_json(windows) -> str:
    return json.dumps([w.to_dict() for w in windows], indent=2)


def read_windows_json(text: str) -> list:
    return [PeriodicWindow.from_dict(d) for d in json.loads(text)]


def dumps(obj) -> str:
    return json.dumps(obj.to_dict(), indent=2)


def bifurcation_svg(result: ScanResult, width: int = 900, height: int = 560,
                    margin: int = 50) -> str:
    """Scatter of (a, x) with the critical points y-(a), y+(a) drawn in red.

    Samples are snapped to the pixel grid and de-duplicated.
    """
    b = float(result.b_exact)
    pts = [(r.a, x) for r in result.records for x in r.attractor_points]
    a_vals = sorted({r.a for r in result.records})
    a_lo, a_hi = (a_vals[0], a_vals[-1]) if a_vals else (0.0, 1.0)
    if a_hi <= a_lo:
        a_hi = a_lo + 1.0
    y_lo, y_hi = b - 1.0 - 0.02, b + 0.02
    pw, ph = width - 2 * margin, height - 2 * margin

    def px(a):
        return margin + (a - a_lo) / (a_hi - a_lo) * pw

    def py(y):
        return margin + (y_hi - y) / (y_hi - y_lo) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin}" y="{margin}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    cells = sorted({(int(round(px(a))), int(round(py(x)))) for a, x in pts if y_lo <= x <= y_hi})
    out.append('<g fill="black">')
    out.extend(f'<rect x="{cx}" y="{cy}" width="1" height="1"/>' for cx, cy in cells)
    out.append("</g>")

    thr = critical_threshold(result.kernel_tag)
    live = [a for a in a_vals if a > thr]
    if live:
        curves = {"minus": [], "plus": []}
        for a in np.linspace(live[0], live[-1], min(400, 4 * len(live))):
            cp = critical_points(MapSpec(KernelFamily(result.kernel_tag, float(a)), result.b_exact))
            curves["minus"].append(f"{px(a):.2f},{py(cp.y_minus):.2f}")
            curves["plus"].append(f"{px(a):.2f},{py(cp.y_plus):.2f}")
        for pts_str in curves.values():
            out.append(f'<polyline fill="none" stroke="red" stroke-width="1" points="{" ".join(pts_str)}"/>')

    out.append(f'<text x="{margin}" y="{height - 15}" font-size="12">a = {a_lo:g} .. {a_hi:g}, '
               f'b = {result.b_exact.numerator}/{result.b_exact.denominator}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
