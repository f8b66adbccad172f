import cmath
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qcl.errors import ArgumentError
from qcl.genfunc import (
    extremal_genfunc_approx,
    gen_function,
    gen_function_at,
    normalized_schur,
    stability_check,
    torus_eval,
    torus_scaling,
)
from qcl.gtgraph import signatures, zero
from qcl.measures import LevelMeasure, check_coherence, project_down, pullback_measure
from qcl.scalar import LaurentPoly, laurent_eval
from qcl.weights import WeightScheme

QS = [F(1, 2), F(2, 3), F(3, 5)]


@pytest.mark.parametrize("q", QS)
def test_genfunc_examples(q):
    assert gen_function(LevelMeasure.delta((1,)), q) == LaurentPoly.variable(0, 1)
    assert gen_function(LevelMeasure.delta((0,)), q) == LaurentPoly.constant(1, 1)
    z1, z2 = LaurentPoly.variable(0, 2), LaurentPoly.variable(1, 2)
    assert gen_function(LevelMeasure.delta((1, 0)), q) == (z1 + z2 * q**-2) / (1 + q**-2)


def test_torus_scaling():
    assert torus_scaling(3, F(1, 2)) == [1, 4, 16]


@pytest.mark.parametrize("q", QS)
def test_normalized_at_one(q):
    for nu in (nu for n in range(1, 4) for nu in signatures(n, -2, 2)):
        assert laurent_eval(normalized_schur(nu, q), [1] * nu.level) == 1


def test_pointwise_matches_expansion():
    q = F(2, 3)
    m = LevelMeasure(3, {(2, 0, -1): F(1, 2), (1, 1, 0): F(1, 4), (0, 0, 0): F(1, 4)})
    pts = [F(3), F(-1, 2), F(5, 7)]
    assert gen_function_at(m, q, pts) == laurent_eval(gen_function(m, q), pts)
    with pytest.raises(ArgumentError):
        gen_function_at(m, q, pts[:2])


@pytest.mark.parametrize("q", QS)
def test_stability_examples(q):
    s = WeightScheme.schur(q)
    top = LevelMeasure.delta((1, 0))
    assert stability_check(pullback_measure(s, (1, 0), 1), top, q)
    assert stability_check(LevelMeasure.delta(zero(2)), LevelMeasure.delta(zero(3)), q)
    assert not stability_check(LevelMeasure.delta((1,)), top, q)
    with pytest.raises(ArgumentError):
        stability_check(top, top, q)


def test_stability_agrees_with_coherence_on_deltas():
    q = F(2, 3)
    s = WeightScheme.schur(q)
    for n in (1, 2):
        for mu in signatures(n, -1, 1):
            for nu in signatures(n + 1, -1, 1):
                a, b = LevelMeasure.delta(mu), LevelMeasure.delta(nu)
                assert stability_check(a, b, q) == bool(check_coherence(a, b, s))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_stability_agrees_with_coherence_on_mixtures(seed, perturb):
    q = F(1, 2)
    s = WeightScheme.schur(q)
    rng = np.random.default_rng(seed)
    tops = list(signatures(3, -1, 1))
    picks = rng.choice(len(tops), size=3, replace=False)
    raw = [int(rng.integers(1, 6)) for _ in picks]
    top = LevelMeasure(3, {tops[int(i)]: F(r, sum(raw)) for i, r in zip(picks, raw)})
    low = project_down(s, top)
    if perturb:
        atoms = dict(low.atoms)
        a = low.support[0]
        b = next(x for x in signatures(2, -1, 1) if x != a)
        atoms[a] -= atoms[a] / 3
        atoms[b] = atoms.get(b, 0) + low.atoms[a] / 3
        low = LevelMeasure(2, atoms)
    c = bool(check_coherence(low, top, s))
    assert c == (not perturb)
    assert stability_check(low, top, q) == c


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9))
def test_linearity(a, b):
    q = F(3, 5)
    m1, m2 = LevelMeasure.delta((2, 0, -1)), LevelMeasure(3, {(1, 1, 0): F(1, 2), (0, 0, 0): F(1, 2)})
    c = F(a, a + b)
    mix = LevelMeasure.mixture([(c, m1), (1 - c, m2)])
    assert gen_function(mix, q) == gen_function(m1, q) * c + gen_function(m2, q) * (1 - c)


@pytest.mark.parametrize("q", QS)
def test_extremal_examples(q):
    z = F(7, 3)
    assert extremal_genfunc_approx([zero(n) for n in range(1, 8)], q, 1, [z]) == [1] * 7
    assert extremal_genfunc_approx([(1,) * n for n in range(1, 8)], q, 1, [z]) == [z] * 7


def test_extremal_hook_chain_table():
    # s_(1,0,...) is the elementary e_1, so the ratio is 1 + (z - 1)/S_L with S_L = sum_i 4^(i-1) at q = 1/2
    seq = extremal_genfunc_approx([(1,) + (0,) * (n - 1) for n in range(2, 9)], F(1, 2), 1, [2])
    assert seq == [1 + F(3, 4**L - 1) for L in range(2, 9)]
    assert all(a > b > 1 for a, b in zip(seq, seq[1:]))


def test_extremal_errors():
    with pytest.raises(ArgumentError):
        extremal_genfunc_approx([(1,)], F(1, 2), 2, [1, 1])
    with pytest.raises(ArgumentError):
        extremal_genfunc_approx([(1, 0)], F(1, 2), 2, [1])


def test_torus_values_bounded():
    q = F(1, 2)
    phi = gen_function(LevelMeasure(2, {(1, 0): F(1, 2), (2, -1): F(1, 2)}), q)
    assert abs(torus_eval(phi, [0.0, 0.0]) - 1) < 1e-12
    for k in range(12):
        a = 2 * cmath.pi * k / 12
        assert abs(torus_eval(phi, [a, -a])) <= 1 + 1e-12
    with pytest.raises(ArgumentError):
        torus_eval(phi, [0.0])
