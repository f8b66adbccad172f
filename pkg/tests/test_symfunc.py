import random
from fractions import Fraction as F

import pytest
import sympy as sp

from oracles import macdonald_P
from qcl.errors import ArgumentError, DomainError
from qcl.gtgraph import ROOT, Signature, predecessors, signatures
from qcl.symfunc import (
    macdonald_principal,
    macdonald_psi,
    principal_point,
    schur_branch_expand,
    schur_eval,
    schur_polynomial,
)
from qcl.scalar import laurent_eval
from qcl.weights import WeightScheme, weighted_dim

q = F(1, 2)


def test_schur_examples():
    assert schur_eval((1, 0), [2, 3]) == 5
    assert schur_eval((0, 0, 0), [F(1, 3), 7, -2]) == 1
    assert schur_eval((1, 1), [q, 1 / q]) == 1


def test_schur_negative_part_at_zero():
    with pytest.raises(DomainError):
        schur_eval((1, -1), [0, 2])
    assert schur_eval((1, 0), [0, 2]) == 2


def test_repeated_coordinates_fall_back_to_branching():
    # s_(1,0,0)(1,1,1) = 3, s_(2,0)(1,1) = 3
    assert schur_eval((1, 0, 0), [1, 1, 1]) == 3
    assert schur_eval((2, 0), [1, 1]) == 3
    with pytest.raises(DomainError):
        schur_eval((2, 0), [1, 1], method="det")


def test_det_and_branch_routes_agree():
    rnd = random.Random(2024)
    for _ in range(200):
        n = rnd.randint(1, 4)
        nu = sorted((rnd.randint(-2, 3) for _ in range(n)), reverse=True)
        pts = set()
        while len(pts) < n:
            pts.add(F(rnd.choice([-1, 1]) * rnd.randint(1, 9), rnd.randint(1, 5)))
        pts = list(pts)
        assert schur_eval(nu, pts, "det") == schur_eval(nu, pts, "branch")


def test_translation_covariance():
    rnd = random.Random(7)
    for _ in range(50):
        n = rnd.randint(1, 4)
        nu = Signature(sorted((rnd.randint(-2, 2) for _ in range(n)), reverse=True))
        pts = [F(rnd.randint(1, 9), rnd.randint(1, 5)) for _ in range(n)]
        c = rnd.randint(-2, 2)
        prod = F(1)
        for p in pts:
            prod *= p
        assert schur_eval(nu.shift(c), pts) == prod**c * schur_eval(nu, pts)


def test_branch_expand_examples():
    c = F(3, 7)
    assert schur_branch_expand((1, 0), c) == {Signature((1,)): 1, Signature((0,)): c}
    assert schur_branch_expand((1, 1), c) == {Signature((1,)): c}
    assert schur_branch_expand((0,), c) == {ROOT: 1}


def test_schur_polynomial_matches_evaluation():
    for nu in [(2, 1, 0), (1, 0, -1), (2, 2), (3, 1, 0, -1)]:
        poly = schur_polynomial(nu)
        pts = [F(k + 2, k + 1) for k in range(len(nu))]
        assert laurent_eval(poly, pts) == schur_eval(nu, pts)


def test_psi_examples():
    assert macdonald_psi((1,), (1, 1), F(1, 3), F(1, 2)) == 1
    assert macdonald_psi((0,), (1, 0), F(1, 3), F(1, 2)) == 1
    qq, t = F(1, 3), F(1, 2)
    assert macdonald_psi((1,), (2, 0), qq, t) == (1 + qq) * (1 - t) / (1 - qq * t)
    with pytest.raises(ArgumentError):
        macdonald_psi((2,), (1, 0), qq, t)


def test_psi_schur_degeneration():
    for nu in [nu for n in range(2, 5) for nu in signatures(n, -2, 2)]:
        for mu in predecessors(nu):
            assert macdonald_psi(mu, nu, F(2, 5), F(2, 5)) == 1


def test_psi_shift_invariance():
    for nu in signatures(3, -1, 2):
        for mu in predecessors(nu):
            a = macdonald_psi(mu, nu, F(1, 3), F(3, 4))
            assert a == macdonald_psi(mu.shift(3), nu.shift(3), F(1, 3), F(3, 4))


ORACLE_QT = (F(2, 7), F(3, 5))
ORACLE_CASES = [(2, (1,)), (2, (2,)), (2, (2, 1)), (2, (3, 1)), (2, (3,)), (3, (2, 1)), (3, (1, 1)), (3, (2,)), (3, (3, 1)), (3, (2, 2, 1))]


@pytest.mark.parametrize("n,lam", ORACLE_CASES)
def test_psi_reproduces_macdonald_branching(n, lam):
    qq, t = ORACLE_QT
    big, xs = macdonald_P(lam, n, qq, t)
    nu = Signature(lam + (0,) * (n - len(lam)))
    rhs = 0
    for mu in predecessors(nu):
        small, ys = macdonald_P(tuple(mu), n - 1, qq, t)
        small = small.subs(dict(zip(ys, xs[:-1])), simultaneous=True)
        psi = macdonald_psi(mu, nu, qq, t)
        rhs += sp.Rational(psi.numerator, psi.denominator) * xs[-1] ** (nu.size - mu.size) * small
    assert sp.expand(big - rhs) == 0


@pytest.mark.parametrize("n,lam", ORACLE_CASES)
def test_principal_formula_against_polynomial(n, lam):
    qq, t = F(2, 7), F(3, 5)
    T = t * t
    poly, xs = macdonald_P(lam, n, qq, T)
    point = principal_point(n, t)
    value = poly.subs({x: sp.Rational(p.numerator, p.denominator) for x, p in zip(xs, point)}, simultaneous=True)
    nu = lam + (0,) * (n - len(lam))
    assert sp.Rational(value) == sp.Rational(str(macdonald_principal(nu, qq, t)))


def test_principal_examples():
    t = F(2, 3)
    assert macdonald_principal((0, 0, 0), F(1, 3), t) == 1
    assert macdonald_principal((1, 0), t * t, t) == t + 1 / t
    assert macdonald_principal((1, 1), t * t, t) == 1


def test_principal_matches_weighted_dim():
    for qq, t in [(F(1, 3), F(1, 2)), (F(3, 4), F(2, 5))]:
        scheme = WeightScheme.macdonald(qq, t)
        for n in range(1, 5):
            for nu in signatures(n, -2, 2):
                assert macdonald_principal(nu, qq, t) == weighted_dim(scheme, nu)
