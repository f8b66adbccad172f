"""Generating functions of level measures and their torus restrictions.

For a measure ``P_N`` on level-``N`` signatures,

    Phi(z_1..z_N) = sum_nu P_N(nu) s_nu(z_1, q^-2 z_2, ..., q^-2(N-1) z_N) / s_nu(1, q^-2, ..., q^-2(N-1)),

i.e. the Schur generating function evaluated on the shifted torus
``x_i = q^-2(i-1) z_i``.  A family ``P_1, P_2, ...`` is coherent iff setting
the last variable of ``Phi^(N+1)`` to 1 returns ``Phi^(N)``.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ArgumentError
from .gtgraph import as_signature
from .measures import LevelMeasure
from .scalar import LaurentPoly, Scalar, laurent_substitute_last, to_scalar
from .symfunc import schur_eval, schur_polynomial


def torus_scaling(level: int, q) -> list[Scalar]:
    """``(1, q^-2, ..., q^-2(N-1))``."""
    q = to_scalar(q)
    return [q ** (-2 * i) for i in range(level)]


def normalized_schur(nu, q) -> LaurentPoly:
    """``s_nu(z_1, q^-2 z_2, ...) / s_nu(1, q^-2, ...)`` as a Laurent polynomial in ``z``."""
    nu = as_signature(nu)
    scale = torus_scaling(nu.level, q)
    return schur_polynomial(nu).scale_variables(scale) / schur_eval(nu, scale)


def gen_function(measure: LevelMeasure, q) -> LaurentPoly:
    """Exact ``Phi^(N)`` of ``measure`` (level at most 5)."""
    out = LaurentPoly({}, measure.level)
    for nu in measure.support:
        out = out + normalized_schur(nu, q) * measure.atoms[nu]
    return out


def gen_function_at(measure: LevelMeasure, q, point: Sequence) -> Scalar:
    """Pointwise ``Phi^(N)(point)`` without monomial expansion; any level."""
    point = [to_scalar(z) for z in point]
    if len(point) != measure.level:
        raise ArgumentError(f"point needs {measure.level} coordinates")
    scale = torus_scaling(measure.level, q)
    x = [s * z for s, z in zip(scale, point)]
    return sum(
        (measure.atoms[nu] * schur_eval(nu, x) / schur_eval(nu, scale) for nu in measure.support),
        Fraction(0),
    )


def stability_check(p_n: LevelMeasure, p_n1: LevelMeasure, q) -> bool:
    """``Phi^(N+1)(z_1..z_N, 1) == Phi^(N)(z_1..z_N)`` coefficientwise."""
    if p_n1.level != p_n.level + 1:
        raise ArgumentError(f"levels {p_n.level} and {p_n1.level} are not consecutive")
    restricted = laurent_substitute_last(gen_function(p_n1, q), 1)
    return restricted.is_close(gen_function(p_n, q))


def extremal_genfunc_approx(chain: Iterable, q, n: int, eval_point: Sequence) -> list[Scalar]:
    """Level-``L`` approximants of the limiting torus function at ``(z_1..z_n, 1, 1, ...)``.

    Entry ``L`` is ``s_nu(L)(z_1, q^-2 z_2, ..., q^-2(n-1) z_n, q^-2n, ..., q^-2(L-1)) / s_nu(L)(1, ..., q^-2(L-1))``.
    """
    z = [to_scalar(v) for v in eval_point]
    if len(z) != n:
        raise ArgumentError(f"eval_point needs {n} coordinates")
    out = []
    for nu in chain:
        nu = as_signature(nu)
        if nu.level < n:
            raise ArgumentError(f"{nu!r} sits below level {n}")
        scale = torus_scaling(nu.level, q)
        x = [s * zi for s, zi in zip(scale, z)] + scale[n:]
        out.append(schur_eval(nu, x) / schur_eval(nu, scale))
    return out


def torus_eval(poly: LaurentPoly, angles: Sequence[float]) -> complex:
    """Float evaluation at ``z_j = exp(i angles[j])`` on the unit torus."""
    if len(angles) != poly.nvars:
        raise ArgumentError("one angle per variable")
    z = [cmath.exp(1j * a) for a in angles]
    total = 0j
    for exps, c in poly.terms.items():
        term = complex(float(c))
        for zi, k in zip(z, exps):
            term *= zi**k
        total += term
    return total
