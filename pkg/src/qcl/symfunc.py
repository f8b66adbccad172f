"""Rational Schur functions, their principal specializations and Macdonald
branching coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import ArgumentError, DomainError, ResourceError
from .gtgraph import ROOT, Signature, as_signature, interlaces, predecessors, count_paths, enumerate_paths
from .scalar import LaurentPoly, Scalar, det, to_scalar

EXPANSION_CAP = 10**5
MAX_EXPANSION_LEVEL = 5


def schur_eval(nu, point: Sequence, method: str = "auto") -> Scalar:
    """Value of the rational Schur function ``s_nu`` at ``point``.

    ``method`` is ``"det"`` (bialternant quotient, needs pairwise distinct
    coordinates), ``"branch"`` (one-variable branching recursion) or
    ``"auto"``, which takes the determinant whenever it is defined.
    Negative parts are handled through ``s_nu = (x_1...x_N)^c s_{nu - c}``
    with ``c = nu_N``.
    """
    nu = as_signature(nu)
    x = [to_scalar(v) for v in point]
    n = nu.level
    if len(x) != n:
        raise ArgumentError(f"point has {len(x)} coordinates, signature has level {n}")
    if n == 0:
        return Fraction(1)
    c = nu[-1]
    if c < 0 and any(v == 0 for v in x):
        raise DomainError(f"s_{nu!r} has negative parts and is undefined at a zero coordinate")
    lam = nu.shift(-c)
    prod = Fraction(1)
    for v in x:
        prod *= v
    if method == "auto":
        method = "det" if len(set(x)) == n else "branch"
    if method == "det":
        value = _schur_det(lam, x)
    elif method == "branch":
        value = _schur_branch(lam, x, {})
    else:
        raise ArgumentError(f"unknown method {method!r}")
    return value * prod**c


def _schur_det(lam: Signature, x: list) -> Scalar:
    n = len(x)
    vander = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            vander *= x[i] - x[j]
    if vander == 0:
        raise DomainError("determinant route needs pairwise distinct coordinates")
    num = det([[xi ** (lam[j] + n - 1 - j) for j in range(n)] for xi in x])
    return num / vander


def _schur_branch(nu: Signature, x: list, memo: dict) -> Scalar:
    n = nu.level
    if n == 0:
        return Fraction(1)
    hit = memo.get(nu)
    if hit is not None:
        return hit
    last = x[n - 1]
    total = Fraction(0)
    for mu, coeff in schur_branch_expand(nu, last).items():
        total += coeff * _schur_branch(mu, x, memo)
    memo[nu] = total
    return total


def schur_branch_expand(nu, last) -> dict[Signature, Scalar]:
    """Coefficients ``mu -> last^(|nu| - |mu|)`` of one branching step."""
    nu = as_signature(nu)
    last = to_scalar(last)
    if last == 0:
        raise DomainError("branching variable must be nonzero")
    return {mu: last ** (nu.size - mu.size) for mu in predecessors(nu)}


def schur_polynomial(nu, cap: int = EXPANSION_CAP) -> LaurentPoly:
    """Monomial expansion of ``s_nu(z_1..z_N)`` as a sum over Gelfand-Tsetlin patterns."""
    nu = as_signature(nu)
    n = nu.level
    if n == 0:
        return LaurentPoly.constant(1, 0)
    if n > MAX_EXPANSION_LEVEL:
        raise ResourceError(f"exact expansion is limited to level {MAX_EXPANSION_LEVEL}, got {n}")
    if count_paths(ROOT, nu) > cap:
        raise ResourceError(f"s_{nu!r} has more than {cap} patterns")
    terms: dict[tuple[int, ...], int] = {}
    for path in enumerate_paths(ROOT, nu, cap=cap):
        sizes = [s.size for s in path]
        exps = tuple(b - a for a, b in zip(sizes, sizes[1:]))
        terms[exps] = terms.get(exps, 0) + 1
    return LaurentPoly(terms, n)


def principal_point(level: int, q) -> list[Scalar]:
    """``(q^(N-1), q^(N-3), ..., q^(-N+1))``."""
    q = to_scalar(q)
    return [q ** (level - 1 - 2 * i) for i in range(level)]


# -- Macdonald ---------------------------------------------------------------

def _conjugate(lam: Sequence[int]) -> list[int]:
    return [sum(1 for p in lam if p > j) for j in range(lam[0] if lam else 0)]


def _b(lam: Sequence[int], conj: Sequence[int], i: int, j: int, q, t) -> Scalar:
    arm = lam[i] - j - 1
    leg = conj[j] - i - 1
    den = 1 - q ** (arm + 1) * t**leg
    if den == 0:
        raise DomainError(f"b-factor singular at q={q}, t={t}")
    return (1 - q**arm * t ** (leg + 1)) / den


def macdonald_psi(mu, nu, q, t) -> Scalar:
    """Branching coefficient ``psi_{nu/mu}(q, t)`` of Macdonald ``P`` polynomials.

    ``P_nu(x_1..x_N) = sum_mu psi_{nu/mu} x_N^(|nu|-|mu|) P_mu(x_1..x_{N-1})``.
    Computed as the product of ``b_mu(s)/b_nu(s)`` over the boxes ``s`` lying
    in a row, but not a column, met by the horizontal strip ``nu/mu``.
    """
    mu, nu = as_signature(mu), as_signature(nu)
    if not interlaces(mu, nu):
        raise ArgumentError(f"{mu!r} does not interlace {nu!r}")
    q, t = to_scalar(q), to_scalar(t)
    if q <= 0 or t <= 0:
        raise ArgumentError("q and t must be positive")
    c = nu[-1]
    lam = [p - c for p in nu]
    kappa = [p - c for p in mu] + [0]
    lam_c, kappa_c = _conjugate(lam), _conjugate(kappa)
    rows = {i for i in range(len(lam)) if lam[i] > kappa[i]}
    cols = {j for i in rows for j in range(kappa[i], lam[i])}
    value = Fraction(1)
    for i in rows:
        for j in range(kappa[i]):
            if j not in cols:
                value *= _b(kappa, kappa_c, i, j, q, t) / _b(lam, lam_c, i, j, q, t)
    return value


def macdonald_principal(nu, q, t) -> Scalar:
    """``P_nu(t^(N-1), t^(N-3), ..., t^(-N+1); q, t^2)`` in closed form.

    Uses the principal specialization
    ``P_lam(1, T, ..., T^(N-1); q, T) = T^n(lam) prod_s (1 - q^a'(s) T^(N-l'(s))) / (1 - q^a(s) T^(l(s)+1))``
    with ``T = t^2``; the symmetric point is ``t^-(N-1)`` times the geometric one.
    """
    nu = as_signature(nu)
    q, t = to_scalar(q), to_scalar(t)
    n = nu.level
    if n == 0:
        return Fraction(1)
    lam = [p - nu[-1] for p in nu]
    conj = _conjugate(lam)
    T = t * t
    value = T ** sum(i * p for i, p in enumerate(lam))
    for i, row in enumerate(lam):
        for j in range(row):
            arm, leg = row - j - 1, conj[j] - i - 1
            den = 1 - q**arm * T ** (leg + 1)
            if den == 0:
                raise DomainError(f"principal specialization singular at q={q}, t={t}")
            value *= (1 - q**j * T ** (n - i)) / den
    return value * t ** (-(n - 1) * sum(lam))
