import math
from fractions import Fraction as F

import pytest

from jnorm.bounds import lemma7_constant_sq, lemma10_lower_bound_sq, lemma11_constant_sq
from jnorm.core import e_norm_sq_bruteforce, james_norm_sq
from jnorm.errors import PreconditionError
from jnorm.experiments import (
    GeneratorSpec, SweepRow, dichotomy_sweep, emit_csv, emit_svg, generate,
)


def test_generators():
    assert generate(GeneratorSpec("plateau", 3)).values == (1, 1, 1)
    assert generate(GeneratorSpec("alternating", 2)).values == (1, -1)
    assert generate(GeneratorSpec("decay", 2)).values == (1, F(1, 2))
    a = generate(GeneratorSpec("random_rational", 6, seed=3))
    assert a == generate(GeneratorSpec("random_rational", 6, seed=3))
    assert all(-9 <= v * v.denominator <= 9 for v in a.values)
    assert generate(GeneratorSpec("plateau", 0)).values == ()
    with pytest.raises(PreconditionError):
        generate(GeneratorSpec("sawtooth", 3))


def test_james_plateau_sweep_matches_oracle():
    rows = dichotomy_sweep([1, -1], "plateau", 6)
    for r in rows:
        x = generate(GeneratorSpec("plateau", r.n))
        assert r.e_norm_sq == e_norm_sq_bruteforce([1, -1], x) == 1
        assert r.l2_sq == r.n
    ratios = [r.ratio_l2_over_e for r in dichotomy_sweep([1, -1], "plateau", 8)]
    assert ratios == sorted(ratios) and len(set(ratios)) == 8


@pytest.mark.parametrize("kind", ["plateau", "alternating", "random_rational", "decay"])
def test_d1_ratio_is_one(kind):
    assert all(r.ratio_l2_over_e == 1.0 for r in dichotomy_sweep([1], kind, 6))


@pytest.mark.parametrize("e", [[1, 1], [1, 2, 3], [2, -1]])
@pytest.mark.parametrize("kind", ["plateau", "alternating", "random_rational", "decay"])
def test_hilbert_regime_bounds(e, kind):
    K, U = lemma10_lower_bound_sq(e), lemma7_constant_sq(e)
    for r in dichotomy_sweep(e, kind, 7):
        assert r.l2_sq <= K * r.e_norm_sq and r.e_norm_sq <= U * r.l2_sq


@pytest.mark.parametrize("e", [[1, -1], [2, -1, -1], [1, 1, -2], [1, -2, 1]])
def test_james_regime_divergence_witness(e):
    c = lemma11_constant_sq(e)
    for r in dichotomy_sweep(e, "plateau", 10):
        assert r.james_sq == 1
        assert r.e_norm_sq <= c
        assert r.ratio_l2_over_e >= math.sqrt(r.n) / math.sqrt(c) - 1e-12
    for n in range(1, 7):
        assert james_norm_sq(generate(GeneratorSpec("plateau", n))) == e_norm_sq_bruteforce(
            [1, -1], [1] * n) == 1


def test_emit_csv():
    assert emit_csv([SweepRow(1, F(1), F(1), F(1))]) == (
        b"n,e_norm_sq,l2_sq,james_sq,ratio_l2_over_e\n1,1,1,1,1.0\n")
    assert emit_csv([]) == b"n,e_norm_sq,l2_sq,james_sq,ratio_l2_over_e\n"
    rows = dichotomy_sweep([1, 1], "decay", 3)
    text = emit_csv(rows).decode()
    assert text.splitlines()[2].split(",")[2] == "5/4"
    assert emit_csv(rows) == emit_csv(dichotomy_sweep([1, 1], "decay", 3))


def test_emit_svg():
    svg = emit_svg(dichotomy_sweep([1, -1], "plateau", 8)).decode()
    assert svg.startswith("<svg") and svg.count("<polyline") == 1
    assert "n (support length)" in svg and "||x||_2 / ||x||_e" in svg
    with pytest.raises(PreconditionError):
        emit_svg([])
