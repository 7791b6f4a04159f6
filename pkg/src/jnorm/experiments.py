"""Finite-truncation sweeps of ||x||_2 / ||x||_e with CSV and SVG output."""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

from .core import Sequence, as_evector, e_norm_sq, james_norm_sq, l2_norm_sq
from .errors import PreconditionError
from .rational import fmt

KINDS = ("plateau", "alternating", "random_rational", "decay")
CSV_COLUMNS = ("n", "e_norm_sq", "l2_sq", "james_sq", "ratio_l2_over_e")


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    seed: int = 0


@dataclass(frozen=True)
class SweepRow:
    n: int
    e_norm_sq: Fraction
    l2_sq: Fraction
    james_sq: Fraction

    @property
    def ratio_l2_over_e(self) -> float | None:
        if self.e_norm_sq == 0:
            return None
        return math.sqrt(self.l2_sq / self.e_norm_sq)


def generate(spec: GeneratorSpec) -> Sequence:
    if spec.n < 0:
        raise PreconditionError("n must be >= 0")
    n = spec.n
    if spec.kind == "plateau":
        vals = [Fraction(1)] * n
    elif spec.kind == "alternating":
        vals = [Fraction((-1) ** i) for i in range(n)]
    elif spec.kind == "decay":
        vals = [Fraction(1, i) for i in range(1, n + 1)]
    elif spec.kind == "random_rational":
        rng = random.Random(f"{spec.seed}:{n}")
        vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
    else:
        raise PreconditionError(f"unknown sequence kind {spec.kind!r}; choose from {', '.join(KINDS)}")
    return Sequence(tuple(vals))


def dichotomy_sweep(e, kind: str, n_max: int, seed: int = 0) -> list[SweepRow]:
    e = as_evector(e)
    if n_max < 1:
        raise PreconditionError("n_max must be >= 1")
    rows = []
    for n in range(1, n_max + 1):
        x = generate(GeneratorSpec(kind, n, seed))
        rows.append(SweepRow(n, e_norm_sq(e, x), l2_norm_sq(x), james_norm_sq(x)))
    return rows


def emit_csv(rows) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        ratio = r.ratio_l2_over_e
        w.writerow([r.n, fmt(r.e_norm_sq), fmt(r.l2_sq), fmt(r.james_sq),
                    "" if ratio is None else repr(ratio)])
    return buf.getvalue().encode("utf-8")


def emit_svg(rows, title: str = "l2 / e-norm ratio", width: int = 640, height: int = 400) -> bytes:
    pts = [(r.n, r.ratio_l2_over_e) for r in rows if r.ratio_l2_over_e is not None]
    if not pts:
        raise PreconditionError("cannot plot an empty sweep")
    margin = 56
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = 0.0, max(ys) * 1.05 or 1.0
    if x_hi == x_lo:
        x_hi = x_lo + 1

    def sx(v):
        return margin + (v - x_lo) / (x_hi - x_lo) * (width - 2 * margin)

    def sy(v):
        return height - margin - (v - y_lo) / (y_hi - y_lo) * (height - 2 * margin)

    poly = " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in pts)
    base_y, left_x = height - margin, margin
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="24" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15">{escape(title)}</text>',
        f'<line x1="{left_x}" y1="{base_y}" x2="{width - margin}" y2="{base_y}" stroke="black"/>',
        f'<line x1="{left_x}" y1="{base_y}" x2="{left_x}" y2="{margin}" stroke="black"/>',
        f'<text x="{width / 2:.0f}" y="{height - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">n (support length)</text>',
        f'<text x="16" y="{height / 2:.0f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="13" transform="rotate(-90 16 {height / 2:.0f})">||x||_2 / ||x||_e</text>',
    ]
    for v in (x_lo, x_hi):
        out.append(f'<text x="{sx(v):.2f}" y="{base_y + 16}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{v}</text>')
    for v in (y_lo, y_hi):
        out.append(f'<text x="{left_x - 6}" y="{sy(v) + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{v:.3g}</text>')
    out.append(f'<polyline fill="none" stroke="#1f77b4" stroke-width="2" points="{poly}"/>')
    out.append("</svg>\n")
    return "\n".join(out).encode("utf-8")
