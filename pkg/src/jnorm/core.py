"""Sequences, d-sets and the e-variation norm.

All quantities are exact rationals.  Norms are reported squared so they
stay in Q; square roots are only taken when printing ratios.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

from .errors import DimensionError, OracleScopeError, PreconditionError
from .rational import parse_vector

DEFAULT_BRUTE_CAP = 14


@dataclass(frozen=True)
class EVector:
    """Defining vector e = (e_1, ..., e_d) with e_1 != 0."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", parse_vector(self.coords))
        if not self.coords:
            raise PreconditionError("e must have at least one coordinate")
        if self.coords[0] == 0:
            raise PreconditionError("e_1 must be nonzero")

    @property
    def d(self) -> int:
        return len(self.coords)

    @property
    def total(self) -> Fraction:
        return sum(self.coords, Fraction(0))

    @property
    def partial_sums(self) -> tuple[Fraction, ...]:
        out, acc = [], Fraction(0)
        for c in self.coords:
            acc += c
            out.append(acc)
        return tuple(out)

    @property
    def norm2_sq(self) -> Fraction:
        return sum((c * c for c in self.coords), Fraction(0))

    @property
    def sum_zero(self) -> bool:
        return self.total == 0

    def nonzero_part(self) -> EVector:
        return EVector(tuple(c for c in self.coords if c != 0))

    def scaled(self, lam) -> EVector:
        lam = Fraction(lam)
        return EVector(tuple(lam * c for c in self.coords))

    def __len__(self):
        return self.d


def u_vector(d: int) -> EVector:
    """The (d+1)-vector (1, -1, 0, ..., 0); u_vector(1) is the James vector."""
    if d < 1:
        raise PreconditionError("u_d needs d >= 1")
    return EVector((Fraction(1), Fraction(-1)) + (Fraction(0),) * (d - 1))


@dataclass(frozen=True)
class Sequence:
    """Finite-support sequence x(1..n), zero beyond n."""

    values: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "values", parse_vector(self.values))

    @property
    def support_length(self) -> int:
        return len(self.values)

    def __getitem__(self, m: int) -> Fraction:
        # 1-based; zero outside the stored support
        if 1 <= m <= len(self.values):
            return self.values[m - 1]
        return Fraction(0)

    def __len__(self):
        return len(self.values)

    def __add__(self, other: Sequence) -> Sequence:
        n = max(len(self), len(other))
        return Sequence(tuple(self[m] + other[m] for m in range(1, n + 1)))

    def scaled(self, lam) -> Sequence:
        lam = Fraction(lam)
        return Sequence(tuple(lam * v for v in self.values))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


@dataclass(frozen=True)
class DSet:
    """Strictly increasing index set split into consecutive blocks of size block_size."""

    indices: tuple[int, ...]
    block_size: int

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if self.block_size < 1:
            raise DimensionError("block size must be positive")
        if len(idx) % self.block_size:
            raise DimensionError(
                f"{len(idx)} indices do not split into blocks of {self.block_size}")
        if any(i < 1 for i in idx):
            raise PreconditionError("indices are 1-based naturals")
        if any(a >= b for a, b in zip(idx, idx[1:])):
            raise PreconditionError("indices must be strictly increasing")

    @property
    def k(self) -> int:
        return len(self.indices) // self.block_size

    def components(self) -> list[tuple[int, ...]]:
        s = self.block_size
        return [self.indices[i:i + s] for i in range(0, len(self.indices), s)]


def as_evector(e) -> EVector:
    return e if isinstance(e, EVector) else EVector(tuple(e))


def as_sequence(x) -> Sequence:
    return x if isinstance(x, Sequence) else Sequence(tuple(x))


def brute_cap() -> int:
    raw = os.environ.get("JNORM_BRUTE_CAP")
    return int(raw) if raw else DEFAULT_BRUTE_CAP


def scalar_product(a, b) -> Fraction:
    a, b = parse_vector(a), parse_vector(b)
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum((p * q for p, q in zip(a, b)), Fraction(0))


def variation_sq(e, x, omega: DSet) -> Fraction:
    """Squared (e, omega)-variation: sum over components of (e * x(omega; i))^2."""
    e, x = as_evector(e), as_sequence(x)
    if omega.block_size != e.d:
        raise DimensionError(f"d-set block size {omega.block_size} != d = {e.d}")
    total = Fraction(0)
    for comp in omega.components():
        s = scalar_product(e.coords, [x[m] for m in comp])
        total += s * s
    return total


def padded_horizon(e, x) -> int:
    """Index bound n*d beyond which d-sets cannot increase the supremum."""
    return as_sequence(x).support_length * as_evector(e).d


def l2_norm_sq(x) -> Fraction:
    return sum((v * v for v in as_sequence(x).values), Fraction(0))


def _integerise(values) -> tuple[list[int], int]:
    den = lcm(*(v.denominator for v in values)) if values else 1
    return [int(v * den) for v in values], den


def _block_tables(coef: list[int], xs: list[int], a: int, horizon: int):
    """Max/min of the linear form over increasing tuples inside [a, b], for every b.

    Returns hi, lo with hi[c][b] the best value using the first c coefficients
    on indices in [a, b] (None when fewer than c slots exist).
    """
    d = len(coef)
    width = horizon + 1
    hi = [[None] * width for _ in range(d + 1)]
    lo = [[None] * width for _ in range(d + 1)]
    cur_hi = [0] + [None] * d
    cur_lo = [0] + [None] * d
    for b in range(a, horizon + 1):
        xb = xs[b]
        for c in range(min(d, b - a + 1), 0, -1):
            prev_hi, prev_lo = cur_hi[c - 1], cur_lo[c - 1]
            term = coef[c - 1] * xb
            t1, t2 = prev_hi + term, prev_lo + term
            cand_hi, cand_lo = (t1, t2) if t1 >= t2 else (t2, t1)
            if cur_hi[c] is None:
                cur_hi[c], cur_lo[c] = cand_hi, cand_lo
            else:
                if cand_hi > cur_hi[c]:
                    cur_hi[c] = cand_hi
                if cand_lo < cur_lo[c]:
                    cur_lo[c] = cand_lo
        for c in range(d + 1):
            hi[c][b] = cur_hi[c]
            lo[c][b] = cur_lo[c]
    return hi, lo


def _trace_block(coef, xs, a, b, hi, lo, want_hi: bool) -> list[int]:
    d = len(coef)
    picked = []
    c, target = d, (hi if want_hi else lo)[d][b]
    while c > 0:
        # skip b when the same value is reachable without it
        tab = hi if want_hi else lo
        if b - 1 >= a and tab[c][b - 1] is not None and tab[c][b - 1] == target:
            b -= 1
            continue
        term = coef[c - 1] * xs[b]
        rest = target - term
        if c - 1 == 0:
            want_hi_next = want_hi
        elif hi[c - 1][b - 1] == rest:
            want_hi_next = True
        else:
            want_hi_next = False
        picked.append(b)
        want_hi, c, b, target = want_hi_next, c - 1, b - 1, rest
    return sorted(picked)


def _norm_dp(e: EVector, x: Sequence, horizon: int, witness: bool):
    d, n = e.d, x.support_length
    if horizon < 0:
        raise PreconditionError("horizon must be nonnegative")
    coef, e_den = _integerise(list(e.coords))
    vals, x_den = _integerise(list(x.values))
    xs = [0] * (horizon + 1)
    for m in range(1, min(n, horizon) + 1):
        xs[m] = vals[m - 1]
    scale = Fraction(1, (e_den * x_den) ** 2)

    # A block starting past the support sees only zeros, so starts a <= n suffice.
    starts = range(1, min(n, horizon) + 1)
    tables = {}
    for a in starts:
        tables[a] = _block_tables(coef, xs, a, horizon)

    best = [0] * (horizon + 1)
    choice: list[tuple[int, bool] | None] = [None] * (horizon + 1)
    for m in range(1, horizon + 1):
        best[m] = best[m - 1]
        choice[m] = None
        for a in starts:
            if m - a + 1 < d:
                break
            hi, lo = tables[a]
            h, l = hi[d][m], lo[d][m]
            use_hi = h * h >= l * l
            w = h * h if use_hi else l * l
            cand = best[a - 1] + w
            if cand > best[m]:
                best[m] = cand
                choice[m] = (a, use_hi)
    value = best[horizon] * scale
    if not witness:
        return value, None

    picked: list[int] = []
    m = horizon
    while m > 0:
        ch = choice[m]
        if ch is None:
            m -= 1
            continue
        a, use_hi = ch
        hi, lo = tables[a]
        picked = _trace_block(coef, xs, a, m, hi, lo, use_hi) + picked
        m = a - 1
    return value, DSet(tuple(picked), d)


def e_norm_sq(e, x, horizon: int | None = None) -> Fraction:
    """Squared e-variation norm: the maximum of variation_sq over all d-sets.

    Blocks of a d-set occupy disjoint index intervals, so the maximum splits
    at block boundaries: best(m) = max(best(m-1), best(a-1) + W(a, m)) where
    W(a, m) is the largest squared linear form over d-tuples in [a, m].
    """
    e, x = as_evector(e), as_sequence(x)
    if horizon is None:
        horizon = padded_horizon(e, x)
    return _norm_dp(e, x, horizon, witness=False)[0]


def e_norm_witness(e, x, horizon: int | None = None) -> tuple[Fraction, DSet]:
    """Like e_norm_sq, also returning a d-set attaining the maximum."""
    e, x = as_evector(e), as_sequence(x)
    if horizon is None:
        horizon = padded_horizon(e, x)
    return _norm_dp(e, x, horizon, witness=True)


def e_norm_sq_bruteforce(e, x, cap: int | None = None) -> Fraction:
    """Exhaustive maximum over every d-set inside the padded horizon."""
    e, x = as_evector(e), as_sequence(x)
    cap = brute_cap() if cap is None else cap
    horizon = padded_horizon(e, x)
    if horizon > cap:
        raise OracleScopeError(f"horizon {horizon} exceeds brute-force cap {cap}")
    d = e.d
    vals = [x[m] for m in range(horizon + 1)]
    best = Fraction(0)
    for size in range(d, horizon + 1, d):
        for idx in combinations(range(1, horizon + 1), size):
            total = Fraction(0)
            for j in range(0, size, d):
                s = sum((c * vals[i] for c, i in zip(e.coords, idx[j:j + d])), Fraction(0))
                total += s * s
            if total > best:
                best = total
    return best


def james_norm_sq(x) -> Fraction:
    """Squared J(1,-1) norm: supremum over disjoint ordered pairs of squared differences."""
    return e_norm_sq(u_vector(1), x)


def james_chain_norm_sq(x) -> Fraction:
    """Squared chained James norm: sup over p_1 < ... < p_m of sum (x(p_i) - x(p_{i+1}))^2.

    Equivalent to james_norm_sq: pair <= chain <= 2 * pair.
    """
    x = as_sequence(x)
    n = x.support_length
    # one zero-tail index represents the whole tail
    pts = [x[m] for m in range(1, n + 2)] if n else []
    best_end = []
    for m, v in enumerate(pts):
        g = Fraction(0)
        for j in range(m):
            diff = v - pts[j]
            cand = best_end[j] + diff * diff
            if cand > g:
                g = cand
        best_end.append(g)
    return max(best_end, default=Fraction(0))
