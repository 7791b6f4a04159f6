"""Embedding constants between J(e), l2 and the James space, with exact checks.

Every check compares squared norms, so each inequality is decided in Q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import combinations

from .core import (
    DSet, EVector, Sequence, as_evector, as_sequence, e_norm_sq, e_norm_witness,
    james_chain_norm_sq, l2_norm_sq, u_vector, variation_sq,
)
from .dispersal import TwoSet, class_bound, decompose_dispersed, extend_to_block_set, validate_decomposition
from .errors import DimensionError, PreconditionError, RegimeError
from .linalg import det_oracle, linprog_exact
from .rational import fmt

HILBERT = "Hilbert"
JAMES = "James"


@dataclass
class BoundCertificate:
    """One embedding inequality  lhs^2 <= constant_sq * rhs^2  and its sampled evidence."""

    lemma_id: str
    constant_sq: Fraction
    lhs: str
    rhs: str
    regime: str
    samples_checked: int = 0
    samples_passed: int = 0
    witness_of_tightness: Sequence | None = None

    @property
    def ok(self) -> bool:
        return self.samples_passed == self.samples_checked

    def to_json(self) -> dict:
        out = {
            "lemma": self.lemma_id,
            "constant_sq": fmt(self.constant_sq),
            "samples": self.samples_checked,
            "passed": self.samples_passed,
            "regime": self.regime,
            "inequality": f"{self.lhs}^2 <= constant_sq * {self.rhs}^2",
        }
        if self.witness_of_tightness is not None:
            out["witness"] = [fmt(v) for v in self.witness_of_tightness.values]
        return out


@dataclass
class Classification:
    verdict: str
    upper: BoundCertificate
    lower: BoundCertificate
    e: EVector = field(repr=False, default=None)

    def to_json(self) -> dict:
        return {
            "e": [fmt(c) for c in self.e.coords] if self.e is not None else None,
            "verdict": self.verdict,
            "sum": fmt(self.e.total) if self.e is not None else None,
            "upper": self.upper.to_json(),
            "lower": self.lower.to_json(),
        }


def _require_hilbert(e: EVector):
    if e.sum_zero:
        raise RegimeError("sum of e is zero: the insertion matrix is singular (James regime)")


def _require_james(e: EVector):
    if not e.sum_zero:
        raise RegimeError("sum of e is nonzero: this bound belongs to the James regime")


# -- l2 side ---------------------------------------------------------------

def lemma7_constant_sq(e) -> Fraction:
    return as_evector(e).norm2_sq


def check_lemma7(e, x, *, norm: Fraction | None = None) -> bool:
    """||x||_e^2 <= ||e||_2^2 ||x||_2^2."""
    e, x = as_evector(e), as_sequence(x)
    norm = e_norm_sq(e, x) if norm is None else norm
    return norm <= lemma7_constant_sq(e) * l2_norm_sq(x)


def insertion_matrix(e) -> list[list[Fraction]]:
    """(d+1)x(d+1) matrix whose row i is e with a zero inserted at column i."""
    coords = list(as_evector(e).coords)
    size = len(coords) + 1
    return [coords[:i] + [Fraction(0)] + coords[i:] for i in range(size)]


def det_closed_form(e) -> Fraction:
    """(-1)^d * prod(e) * sum(e)."""
    e = as_evector(e)
    prod = Fraction(1)
    for c in e.coords:
        prod *= c
    return (-1) ** e.d * prod * e.total


def det_printed_form(e) -> Fraction:
    """(-1)^d * prod(e)^2, the value as originally displayed; wrong for d >= 2."""
    e = as_evector(e)
    prod = Fraction(1)
    for c in e.coords:
        prod *= c
    return (-1) ** e.d * prod * prod


def chebyshev_minimax(e) -> tuple[Fraction, list[Fraction]]:
    """min over y with y_1 = 1 of ||L y||_inf for the insertion matrix L of e.

    Solved as the LP  min t  s.t.  -t <= (L y)_i <= t  with y_j = p_j - q_j free.
    Zero coordinates must already be removed.  Returns (C, y).
    """
    e = as_evector(e)
    if any(c == 0 for c in e.coords):
        raise PreconditionError("remove zero coordinates before the minimax LP")
    L = insertion_matrix(e)
    free = e.d  # y_2 .. y_{d+1}
    n_vars = 2 * free + 1
    A_ub, b_ub = [], []
    for row in L:
        tail = row[1:]
        plus = list(tail) + [-v for v in tail] + [Fraction(-1)]
        minus = [-v for v in tail] + list(tail) + [Fraction(-1)]
        A_ub += [plus, minus]
        b_ub += [-row[0], row[0]]
    c = [Fraction(0)] * (n_vars - 1) + [Fraction(1)]
    opt, sol = linprog_exact(c, A_ub, b_ub)
    y = [Fraction(1)] + [sol[j] - sol[free + j] for j in range(free)]
    return opt, y


def lemma9_constant(e) -> Fraction:
    """Largest C with: every (x_1..x_{d'+1}) has a d'-subtuple where |e' . x| >= C |x_1|.

    e' is e with its zero coordinates dropped and d' its length.
    """
    e = as_evector(e)
    _require_hilbert(e)
    return _minimax_cached(e.nonzero_part())


@lru_cache(maxsize=256)
def _minimax_cached(e: EVector) -> Fraction:
    return chebyshev_minimax(e)[0]


def check_lemma9(e, x, C) -> bool:
    """Some increasing d'-tuple from {1..d'+1} gives |sum e'_i x(n(i))| >= C |x(1)|."""
    ep = as_evector(e).nonzero_part()
    x = [Fraction(v) for v in x]
    if len(x) != ep.d + 1:
        raise DimensionError(f"expected {ep.d + 1} values, got {len(x)}")
    target = Fraction(C) * abs(x[0])
    for idx in combinations(range(ep.d + 1), ep.d):
        if abs(sum((c * x[i] for c, i in zip(ep.coords, idx)), Fraction(0))) >= target:
            return True
    return False


def lemma10_window(e) -> int:
    """Width of the disjoint windows used to bound x(start)^2 by one block.

    Each window holds d'+1 sample points spaced so that the zero coordinates of
    e fit after any chosen point; with no zero coordinates this is d+1.
    """
    e = as_evector(e)
    gaps, run = [], 0
    for c in e.coords[1:]:
        if c == 0:
            run += 1
        else:
            gaps.append(run)
            run = 0
    gaps.append(run)
    spacing = max(gaps)
    return (e.nonzero_part().d + 1) * (spacing + 1)


def lemma10_lower_bound_sq(e) -> Fraction:
    """Constant K with ||x||_2^2 <= K ||x||_e^2, namely window / C^2.

    For a residue class of window starts, the windows are disjoint and ordered,
    so the blocks picked inside them form one d-set whose variation is at least
    C^2 times the sum of x(start)^2.  Summing over the window-many residues
    covers every index once.
    """
    e = as_evector(e)
    _require_hilbert(e)
    C = lemma9_constant(e)
    return Fraction(lemma10_window(e)) / (C * C)


def check_lemma10(e, x, *, norm: Fraction | None = None) -> bool:
    e, x = as_evector(e), as_sequence(x)
    _require_hilbert(e)
    norm = e_norm_sq(e, x) if norm is None else norm
    return l2_norm_sq(x) <= lemma10_lower_bound_sq(e) * norm


# -- James side ------------------------------------------------------------

def lemma11_constant_sq(e) -> Fraction:
    """C^2 (d-1) with C the largest |e_1 + ... + e_i|, i < d."""
    e = as_evector(e)
    _require_james(e)
    if e.d < 2:
        raise PreconditionError("the James regime needs d >= 2")
    C = max(abs(s) for s in e.partial_sums[:-1])
    return C * C * (e.d - 1)


def check_lemma11(e, x, *, norm: Fraction | None = None) -> bool:
    """||x||_e^2 <= C^2 (d-1) * chained James norm^2.

    The telescoped block bound sums consecutive differences along the whole
    d-set, which is a chain, so the chained norm is the right comparison.
    """
    e, x = as_evector(e), as_sequence(x)
    _require_james(e)
    norm = e_norm_sq(e, x) if norm is None else norm
    return norm <= lemma11_constant_sq(e) * james_chain_norm_sq(x)


def lemma12_constant_sq(e) -> Fraction:
    e = as_evector(e)
    return Fraction(4) / (e.coords[0] ** 2)


def check_lemma12(e, x, *, norm: Fraction | None = None, explain: bool = False):
    """||x||_{u_d}^2 <= (4 / e_1^2) ||x||_e^2.

    Also replays the argument on the maximising (d+1)-set: dropping the first
    or second element of every block gives two d-sets whose e-values differ by
    e_1 (x(n2) - x(n1)) per block.
    """
    e, x = as_evector(e), as_sequence(x)
    norm = e_norm_sq(e, x) if norm is None else norm
    ud_norm, omega = e_norm_witness(u_vector(e.d), x)
    ok = ud_norm <= lemma12_constant_sq(e) * norm
    if omega.k:
        comps = omega.components()
        first = [i for comp in comps for i in comp[1:]]
        second = [i for comp in comps for i in (comp[0],) + comp[2:]]
        v1 = variation_sq(e, x, DSet(tuple(first), e.d))
        v2 = variation_sq(e, x, DSet(tuple(second), e.d))
        ok = ok and ud_norm * e.coords[0] ** 2 <= 2 * (v1 + v2) and max(v1, v2) <= norm
    return ok


def lemma13_constant_sq(d: int) -> Fraction:
    return Fraction(class_bound(d))


def check_lemma13(d: int, x, *, ud_norm: Fraction | None = None) -> bool:
    """||x||_{u_1}^2 <= (floor(d/2) + 2) ||x||_{u_d}^2, replaying the decomposition.

    The optimal 2-set for the James norm is split into d-dispersed classes;
    each class extends to a (d+1)-set with the same u_d-variation, so the James
    norm is at most (number of classes) times the u_d norm.
    """
    if d < 1:
        raise PreconditionError("d must be >= 1")
    x = as_sequence(x)
    ud = u_vector(d)
    ud_norm = e_norm_sq(ud, x) if ud_norm is None else ud_norm
    j_norm, omega = e_norm_witness(u_vector(1), x)
    two = TwoSet.from_dset(omega)
    dec = decompose_dispersed(two, d)
    if not validate_decomposition(two, dec):
        return False
    pieces = []
    for cls in dec.classes:
        nabla = extend_to_block_set(cls, d)
        piece = variation_sq(ud, x, nabla)
        if piece != variation_sq(u_vector(1), x, cls.as_dset()) or piece > ud_norm:
            return False
        pieces.append(piece)
    if sum(pieces, Fraction(0)) != j_norm:
        return False
    return j_norm <= dec.m * ud_norm and j_norm <= lemma13_constant_sq(d) * ud_norm


def james_lower_constant_sq(e) -> Fraction:
    """||x||_{u_1}^2 <= (floor(d/2)+2) * 4/e_1^2 * ||x||_e^2 (u_d step composed with the u_1 step)."""
    e = as_evector(e)
    return lemma13_constant_sq(e.d) * lemma12_constant_sq(e)


# -- sampling and classification ------------------------------------------

def random_rational(rng: random.Random, num: int = 9, den: int = 9) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_sequence(rng: random.Random, max_support: int = 8) -> Sequence:
    n = rng.randint(0, max_support)
    return Sequence(tuple(random_rational(rng) for _ in range(n)))


def regime_checks(e, x) -> dict[str, bool]:
    """Run every check belonging to the regime of e on one sequence."""
    e, x = as_evector(e), as_sequence(x)
    norm = e_norm_sq(e, x)
    if e.sum_zero:
        ud_norm = e_norm_sq(u_vector(e.d), x)
        ok12 = check_lemma12(e, x, norm=norm)
        ok13 = check_lemma13(e.d, x, ud_norm=ud_norm)
        composed = e_norm_sq(u_vector(1), x) <= james_lower_constant_sq(e) * norm
        return {
            "L11": check_lemma11(e, x, norm=norm),
            "L12": ok12,
            "L13": ok13,
            "L12+L13": composed,
        }
    return {"L7": check_lemma7(e, x, norm=norm), "L10": check_lemma10(e, x, norm=norm)}


def classify(e, samples: int = 100, seed: int = 0, max_support: int = 6) -> Classification:
    """Hilbert when sum(e) != 0, James when sum(e) == 0, with sampled certificates."""
    e = as_evector(e)
    rng = random.Random(seed)
    if e.sum_zero:
        upper = BoundCertificate("L11", lemma11_constant_sq(e), "||x||_e", "||x||_J,chain", JAMES)
        lower = BoundCertificate("L12+L13", james_lower_constant_sq(e), "||x||_J", "||x||_e", JAMES)
        keys = ("L11", "L12+L13")
        verdict = JAMES
    else:
        upper = BoundCertificate("L7", lemma7_constant_sq(e), "||x||_e", "||x||_2", HILBERT)
        lower = BoundCertificate("L10", lemma10_lower_bound_sq(e), "||x||_2", "||x||_e", HILBERT)
        keys = ("L7", "L10")
        verdict = HILBERT
    for _ in range(samples):
        x = random_sequence(rng, max_support)
        res = regime_checks(e, x)
        passed = all(res.values())
        for cert, key in zip((upper, lower), keys):
            cert.samples_checked += 1
            if res[key] and passed:
                cert.samples_passed += 1
    return Classification(verdict, upper, lower, e)


def lemma_certificate(lemma: int, e) -> BoundCertificate:
    e = as_evector(e)
    regime = JAMES if e.sum_zero else HILBERT
    if lemma == 7:
        return BoundCertificate("L7", lemma7_constant_sq(e), "||x||_e", "||x||_2", regime)
    if lemma == 9:
        C = lemma9_constant(e)
        return BoundCertificate("L9", C * C, "|e.x(block)|", "|x(1)|", regime)
    if lemma == 10:
        return BoundCertificate("L10", lemma10_lower_bound_sq(e), "||x||_2", "||x||_e", regime)
    if lemma == 11:
        return BoundCertificate("L11", lemma11_constant_sq(e), "||x||_e", "||x||_J,chain", regime)
    if lemma == 12:
        return BoundCertificate("L12", lemma12_constant_sq(e), "||x||_u_d", "||x||_e", regime)
    if lemma == 13:
        return BoundCertificate("L13", lemma13_constant_sq(e.d), "||x||_J", "||x||_u_d", regime)
    raise PreconditionError(f"no constant for lemma {lemma}")


__all__ = [
    "BoundCertificate", "Classification", "HILBERT", "JAMES", "det_oracle",
    "check_lemma7", "check_lemma9", "check_lemma10", "check_lemma11", "check_lemma12",
    "check_lemma13", "chebyshev_minimax", "classify", "det_closed_form", "det_printed_form",
    "insertion_matrix", "james_lower_constant_sq", "lemma7_constant_sq", "lemma9_constant",
    "lemma10_lower_bound_sq", "lemma10_window", "lemma11_constant_sq", "lemma12_constant_sq",
    "lemma13_constant_sq", "lemma_certificate", "random_sequence", "regime_checks",
]
