"""Exit criteria.  Each test prints one PASS/FAIL line (collected in the terminal summary)."""

import math
import random
import time
from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest

from jnorm.bounds import (
    HILBERT, JAMES, check_lemma9, check_lemma11, check_lemma12, check_lemma13, classify,
    det_closed_form, det_printed_form, insertion_matrix, lemma7_constant_sq, lemma9_constant,
    lemma10_lower_bound_sq,
)
from jnorm.core import (
    Sequence, e_norm_sq, e_norm_sq_bruteforce, l2_norm_sq, u_vector, variation_sq,
)
from jnorm.dispersal import (
    TwoSet, class_bound, decompose_dispersed, extend_to_block_set, validate_decomposition,
)
from jnorm.experiments import dichotomy_sweep
from jnorm.linalg import det_oracle

SEED = 20240601


def rat(rng, num=9, den=9):
    return F(rng.randint(-num, num), rng.randint(1, den))


def nonzero_rat(rng, num=9, den=9):
    return F(rng.choice([k for k in range(-num, num + 1) if k]), rng.randint(1, den))


def random_sequence(rng, max_support):
    return Sequence(tuple(rat(rng) for _ in range(rng.randint(0, max_support))))


def hilbert_e(rng, max_d):
    while True:
        e = [nonzero_rat(rng) for _ in range(rng.randint(1, max_d))]
        if sum(e) != 0:
            return e


def james_e(rng, max_d):
    d = rng.randint(2, max_d)
    head = [nonzero_rat(rng)] + [rat(rng) for _ in range(d - 2)]
    return head + [-sum(head)]


def test_c1_oracle_equivalence(report):
    start = time.perf_counter()
    vectors = {
        1: [(F(1),), (F(-3, 2),)],
        2: [(F(1), F(-1)), (F(1), F(1)), (F(2), F(-1, 3))],
        3: [(F(1), F(-2), F(1)), (F(1), F(1), F(1)), (F(2), F(0), F(-1))],
    }
    mismatches, exhaustive = 0, 0
    for d, es in vectors.items():
        for n in range(0, 5):
            for x in product(range(-2, 3), repeat=n):
                for e in es:
                    exhaustive += 1
                    mismatches += e_norm_sq(e, x) != e_norm_sq_bruteforce(e, x)
    rng = random.Random(SEED)
    for _ in range(10_000):
        d = rng.randint(1, 3)
        e = [nonzero_rat(rng)] + [rat(rng) for _ in range(d - 1)]
        x = random_sequence(rng, 9 // d)
        mismatches += e_norm_sq(e, x) != e_norm_sq_bruteforce(e, x)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed < 300
    report("C1 oracle equivalence", ok,
           f"{exhaustive} exhaustive + 10000 random, {mismatches} mismatches, {elapsed:.1f}s")
    assert ok


def test_c2_determinant(report):
    rng = random.Random(SEED + 2)
    bad = 0
    for _ in range(500):
        e = [nonzero_rat(rng)] + [rat(rng) for _ in range(rng.randint(0, 5))]
        bad += det_oracle(insertion_matrix(e)) != det_closed_form(e)
    oracle_12 = det_oracle(insertion_matrix([1, 2]))
    printed_fails = oracle_12 == 6 and det_printed_form([1, 2]) == 4
    ok = bad == 0 and printed_fails
    report("C2 determinant closed form", ok,
           f"500 random e, {bad} mismatches; printed form at (1,2): 4 vs oracle {oracle_12}")
    assert ok


def _grid_minimax_11(step=1e-3, lo=-2.0, hi=2.0):
    grid = np.arange(lo, hi + step / 2, step)
    best = math.inf
    for a in grid:
        vals = np.maximum(np.maximum(np.abs(a + grid), np.abs(1 + grid)), abs(1 + a))
        best = min(best, float(vals.min()))
    return best


def test_c3_lemma9_constant(report):
    c11, c2 = lemma9_constant([1, 1]), lemma9_constant([2])
    grid = _grid_minimax_11()
    rng = random.Random(SEED + 3)
    failures = 0
    for _ in range(20):
        e = hilbert_e(rng, 5)
        if rng.random() < 0.3:
            e.insert(rng.randint(1, len(e)), F(0))
        C = lemma9_constant(e)
        width = sum(1 for c in e if c != 0) + 1
        for _ in range(10_000):
            failures += not check_lemma9(e, [rat(rng) for _ in range(width)], C)
    ok = c11 == F(2, 3) and abs(grid - 2 / 3) <= 1e-3 and c2 == 2 and failures == 0
    report("C3 Lemma 9 constant", ok,
           f"C(1,1)={c11}, grid={grid:.6f}, C(2)={c2}, {failures} failures over 20x10^4 tuples")
    assert ok


def test_c4_hilbert_certificate(report):
    start = time.perf_counter()
    rng = random.Random(SEED + 4)
    upper_bad = lower_bad = 0
    for _ in range(20):
        e = hilbert_e(rng, 4)
        U = lemma7_constant_sq(e)
        K = F(len(e) + 1) / lemma9_constant(e) ** 2
        assert lemma10_lower_bound_sq(e) == K
        for _ in range(1000):
            x = random_sequence(rng, 8)
            norm, l2 = e_norm_sq(e, x), l2_norm_sq(x)
            upper_bad += not norm <= U * l2
            lower_bad += not l2 <= K * norm
    elapsed = time.perf_counter() - start
    ok = upper_bad == 0 and lower_bad == 0 and elapsed < 600
    report("C4 Hilbert two-sided certificate", ok,
           f"upper fails {upper_bad}, lower fails {lower_bad}, {elapsed:.1f}s")
    assert ok


def test_c5_james_certificate(report):
    rng = random.Random(SEED + 5)
    bad = {"L11": 0, "L12": 0, "L13": 0}
    for _ in range(20):
        e = james_e(rng, 5)
        d = len(e)
        for _ in range(1000):
            x = random_sequence(rng, 8)
            norm = e_norm_sq(e, x)
            bad["L11"] += not check_lemma11(e, x, norm=norm)
            bad["L12"] += not check_lemma12(e, x, norm=norm)
            bad["L13"] += not check_lemma13(d, x)
    ok = not any(bad.values())
    report("C5 James certificate (Lemmas 11-13)", ok, f"failures {bad}")
    assert ok


def test_c6_sublemma(report):
    rng = random.Random(SEED + 6)
    invalid = over = 0
    for _ in range(10_000):
        k = rng.randint(1, 40)
        omega = TwoSet.from_flat(sorted(rng.sample(range(1, 501), 2 * k)))
        d = rng.randint(1, 8)
        dec = decompose_dispersed(omega, d)
        invalid += not validate_decomposition(omega, dec)
        over += dec.m > class_bound(d)
    broken = 0
    for _ in range(1000):
        d = rng.randint(1, 8)
        omega = TwoSet.from_flat(sorted(rng.sample(range(1, 120), 2 * rng.randint(1, 10))))
        delta = rng.choice(decompose_dispersed(omega, d).classes)
        x = [rat(rng) for _ in range(rng.randint(0, 130))]
        broken += variation_sq(u_vector(1), x, delta.as_dset()) != variation_sq(
            u_vector(d), x, extend_to_block_set(delta, d))
    ok = invalid == over == broken == 0
    report("C6 dispersed decomposition", ok,
           f"invalid {invalid}, over bound {over}, conservation breaks {broken}")
    assert ok


def test_c7_dichotomy_sweep(report):
    james_rows = dichotomy_sweep([1, -1], "plateau", 30)
    james_ok = all(r.e_norm_sq == 1 and r.l2_sq == r.n
                   and abs(r.ratio_l2_over_e - math.sqrt(r.n)) <= 1e-9 for r in james_rows)
    hilbert_rows = dichotomy_sweep([1, 1], "plateau", 30)
    hilbert_ok = all(r.l2_sq <= F(27, 4) * r.e_norm_sq for r in hilbert_rows)
    ok = james_ok and hilbert_ok
    worst = max(r.l2_sq / r.e_norm_sq for r in hilbert_rows)
    report("C7 dichotomy sweep", ok,
           f"(1,-1) plateau ratio = sqrt(n) for n<=30: {james_ok}; (1,1) max ratio^2 {worst} <= 27/4")
    assert ok


@pytest.mark.parametrize("e,verdict", [
    ([1], HILBERT), ([1, 2, 3], HILBERT), ([2], HILBERT),
    ([1, -1], JAMES), ([2, -1, -1], JAMES), ([1, 1, -2], JAMES),
])
def test_c8_classification(report, e, verdict):
    c = classify(e, samples=200, seed=SEED)
    ok = (c.verdict == verdict and c.upper.ok and c.lower.ok
          and c.upper.samples_checked == c.lower.samples_checked == 200)
    report(f"C8 classify {tuple(e)}", ok,
           f"{c.verdict}; {c.upper.lemma_id} {c.upper.samples_passed}/200, "
           f"{c.lower.lemma_id} {c.lower.samples_passed}/200")
    assert ok
