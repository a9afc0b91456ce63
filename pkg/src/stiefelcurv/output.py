"""CSV, JSON and SVG serialization of experiment records.

All writers are byte-deterministic: fixed column order, shortest round-trip
float formatting, LF line endings and no timestamps.
"""
from __future__ import annotations

import io
import json
import math
from pathlib import Path

from .errors import UsageError

FORMATS = ("csv", "json", "svg")

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _columns(records) -> tuple[list, list, bool]:
    first = records[0]
    coords, values = list(first.coords), list(first.values)
    for r in records:
        if list(r.coords) != coords or list(r.values) != values:
            raise UsageError("records have inconsistent columns")
    return coords, values, any(r.seed is not None for r in records)


def to_csv(records) -> str:
    coords, values, seeded = _columns(records)
    header = coords + values + (["seed", "trials"] if seeded else [])
    buf = io.StringIO(newline="")
    buf.write(",".join(header) + "\n")
    for r in records:
        row = [r.coords[c] for c in coords] + [r.values[v] for v in values]
        if seeded:
            row += [r.seed, r.trials]
        buf.write(",".join("" if x is None else _fmt(x) for x in row) + "\n")
    return buf.getvalue()


def to_json(records) -> str:
    payload = {"records": [r.to_dict() for r in records]}
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


# ---------------------------------------------------------------- svg

_W, _H, _M = 640, 400, 60


def _ticks(lo: float, hi: float, k: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (k - 1) for i in range(k)]


def _num(v: float) -> str:
    return f"{v:.6g}"


def _axes(out: list, xlab: str, ylab: str, xr, yr, sx, sy, logx=False, logy=False) -> None:
    x0, y0, x1, y1 = _M, _H - _M, _W - _M // 2, _M // 2
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>')
    out.append(f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>')
    for t in _ticks(*xr):
        px = sx(t)
        label = _num(10 ** t) if logx else _num(t)
        out.append(f'<text x="{px:.2f}" y="{y0 + 16}" font-size="10" text-anchor="middle">{label}</text>')
    for t in _ticks(*yr):
        py = sy(t)
        label = _num(10 ** t) if logy else _num(t)
        out.append(f'<text x="{x0 - 6}" y="{py + 3:.2f}" font-size="10" text-anchor="end">{label}</text>')
    out.append(f'<text x="{(x0 + x1) / 2:.1f}" y="{_H - 12}" font-size="12" text-anchor="middle">{xlab}</text>')
    out.append(f'<text x="14" y="{(y0 + y1) / 2:.1f}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 14 {(y0 + y1) / 2:.1f})">{ylab}</text>')


def _scale(lo: float, hi: float, a: float, b: float):
    span = hi - lo or 1.0
    return lambda v: a + (v - lo) / span * (b - a)


def _line_svg(records, xkey: str, log: bool) -> list:
    keys = [k for k, v in records[0].values.items() if isinstance(v, float)]
    xs = [float(r.coords[xkey]) for r in records]
    ys = {k: [float(r.values[k]) for r in records] for k in keys}
    if log:
        if min(xs) <= 0 or any(v <= 0 for k in keys for v in ys[k]):
            raise UsageError("log-log plot needs positive data")
        xs = [math.log10(v) for v in xs]
        ys = {k: [math.log10(v) for v in vs] for k, vs in ys.items()}
    allv = [v for vs in ys.values() for v in vs]
    xr, yr = (min(xs), max(xs)), (min(allv), max(allv))
    sx = _scale(*xr, _M, _W - _M // 2)
    sy = _scale(*yr, _H - _M, _M // 2)
    out = []
    _axes(out, xkey, "sectional curvature", xr, yr, sx, sy, log, log)
    for i, k in enumerate(keys):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys[k]))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        out.append(f'<text x="{_W - _M // 2 - 4}" y="{_M // 2 + 14 * (i + 1)}" font-size="11" '
                   f'text-anchor="end" fill="{color}">{k}</text>')
    return out


def _colour(t: float) -> str:
    # blue (low) to yellow (high)
    t = min(max(t, 0.0), 1.0)
    r, g, b = int(40 + 215 * t), int(60 + 170 * t), int(160 - 120 * t)
    return f"#{r:02x}{g:02x}{b:02x}"


def _heat_svg(records) -> list:
    keys = list(records[0].values)
    us = sorted({r.coords["u"] for r in records})
    vs = sorted({r.coords["v"] for r in records})
    panel = (_W - _M) // max(len(keys), 1)
    side = min(panel - 20, _H - 2 * _M)
    cu, cv = side / len(us), side / len(vs)
    ui = {u: i for i, u in enumerate(us)}
    vi = {v: j for j, v in enumerate(vs)}
    out = []
    for k_i, key in enumerate(keys):
        vals = [float(r.values[key]) for r in records]
        lo, hi = min(vals), max(vals)
        ox, oy = _M // 2 + k_i * panel, _M
        out.append(f'<text x="{ox + side / 2:.1f}" y="{oy - 10}" font-size="12" text-anchor="middle">'
                   f'{key} [{_num(lo)}, {_num(hi)}]</text>')
        for r, val in zip(records, vals):
            t = (val - lo) / (hi - lo) if hi > lo else 0.5
            x = ox + ui[r.coords["u"]] * cu
            y = oy + side - (vi[r.coords["v"]] + 1) * cv
            out.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{cu:.2f}" height="{cv:.2f}" fill="{_colour(t)}"/>')
        out.append(f'<text x="{ox + side / 2:.1f}" y="{oy + side + 18:.1f}" font-size="12" text-anchor="middle">u</text>')
        out.append(f'<text x="{ox - 8}" y="{oy + side / 2:.1f}" font-size="12" text-anchor="end">v</text>')
    return out


def to_svg(records) -> str:
    exp = records[0].experiment
    if exp == "exp3_surface":
        body = _heat_svg(records)
    elif exp == "exp2":
        body = _line_svg(records, "p", log=True)
    else:
        xkey = {"exp1": "step", "exp3_mix": "u", "conjecture": "n"}.get(exp, next(iter(records[0].coords)))
        body = _line_svg(records, xkey, log=False)
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
            f'viewBox="0 0 {_W} {_H}">')
    title = f'<text x="{_W / 2:.0f}" y="16" font-size="13" text-anchor="middle">{exp}</text>'
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', title, *body, "</svg>"]) + "\n"


_RENDER = {"csv": to_csv, "json": to_json, "svg": to_svg}


def render(records, fmt: str) -> str:
    records = list(records)
    if not records:
        raise UsageError("no records to emit")
    if fmt not in _RENDER:
        raise UsageError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    return _RENDER[fmt](records)


def emit(records, fmt: str, path) -> Path:
    """Write ``records`` to ``path`` in ``fmt``; OSError propagates."""
    text = render(records, fmt)
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path
