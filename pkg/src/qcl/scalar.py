"""Exact scalars and sparse multivariate Laurent polynomials.

Every quantity in qcl is a :class:`fractions.Fraction` unless the caller
explicitly opts into float mode by passing ``float`` parameters; the code
paths are shared and only use ``+ - * /`` and integer powers.
"""
from __future__ import annotations

import warnings
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

from .errors import ArgumentError, DomainError

Scalar = Union[Fraction, float]

FLOAT_RTOL = 1e-9


def to_scalar(x) -> Scalar:
    """Coerce ints, strings and rationals to Fraction; floats stay floats."""
    if isinstance(x, float):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise ArgumentError(f"cannot interpret {x!r} as a scalar")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, ``"-3/7"`` or an integer literal."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError, AttributeError):
        raise ArgumentError(f"malformed rational {text!r}") from None


def format_rational(x: Scalar) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(Fraction(x))


def is_exact(*xs) -> bool:
    return not any(isinstance(x, float) for x in xs)


def close(a: Scalar, b: Scalar) -> bool:
    """Exact equality for rationals, relative tolerance 1e-9 once a float is involved."""
    if is_exact(a, b):
        return a == b
    a, b = float(a), float(b)
    return abs(a - b) <= FLOAT_RTOL * max(1.0, abs(a), abs(b))


def check_parameter(name: str, value) -> Scalar:
    """Validate a deformation parameter: positive and not 1.

    Values outside (0, 1) are allowed but produce a warning; the formulas stay
    well defined there.
    """
    value = to_scalar(value)
    if value <= 0:
        raise ArgumentError(f"{name} must be positive, got {format_rational(value)}")
    if value == 1:
        raise ArgumentError(f"{name} must differ from 1")
    if value > 1:
        warnings.warn(f"{name}={format_rational(value)} lies outside (0,1)", stacklevel=3)
    return value


def det(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    """Determinant by Gaussian elimination with exact pivots."""
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ArgumentError("determinant of a non-square matrix")
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if m[r][c] != 0), None)
        if pivot is None:
            return Fraction(0) * result
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        p = m[c][c]
        result *= p
        for r in range(c + 1, n):
            f = m[r][c] / p
            if f:
                row_r, row_c = m[r], m[c]
                for k in range(c + 1, n):
                    row_r[k] -= f * row_c[k]
    return sign * result


class LaurentPoly:
    """Sparse Laurent polynomial in ``nvars`` variables.

    ``terms`` maps integer exponent tuples to nonzero coefficients. Instances
    are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, terms: Mapping[Sequence[int], Scalar] | None = None, nvars: int | None = None):
        clean: dict[tuple[int, ...], Scalar] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if nvars is None:
                nvars = len(exps)
            elif len(exps) != nvars:
                raise ArgumentError(f"exponent vector {exps} does not have {nvars} slots")
            c = to_scalar(c)
            c = clean.get(exps, 0) + c
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        if nvars is None:
            raise ArgumentError("nvars is required for the zero polynomial")
        self.nvars = nvars
        self.terms = clean

    @classmethod
    def constant(cls, c, nvars: int) -> "LaurentPoly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int, power: int = 1) -> "LaurentPoly":
        exps = [0] * nvars
        exps[i] = power
        return cls({tuple(exps): 1}, nvars)

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ArgumentError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return LaurentPoly.constant(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            other = to_scalar(other)
            return LaurentPoly({e: c * other for e, c in self.terms.items()}, self.nvars)
        other = self._coerce(other)
        out: dict[tuple[int, ...], Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out, self.nvars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = to_scalar(other)
        if other == 0:
            raise DomainError("division of a Laurent polynomial by zero")
        return LaurentPoly({e: c / other for e, c in self.terms.items()}, self.nvars)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction, float)):
            return self == LaurentPoly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"LaurentPoly(0, nvars={self.nvars})"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(f"z{i + 1}" if k == 1 else f"z{i + 1}^{k}" for i, k in enumerate(e) if k)
            parts.append(f"{format_rational(c)}" + (f"*{mono}" if mono else ""))
        return "LaurentPoly(" + " + ".join(parts) + ")"

    def is_close(self, other: "LaurentPoly") -> bool:
        """Coefficientwise :func:`close`; exact equality for rational coefficients."""
        other = self._coerce(other)
        keys = set(self.terms) | set(other.terms)
        return all(close(self.terms.get(k, 0), other.terms.get(k, 0)) for k in keys)

    def scale_variables(self, factors: Sequence[Scalar]) -> "LaurentPoly":
        """Substitute ``z_i -> factors[i] * z_i``."""
        if len(factors) != self.nvars:
            raise ArgumentError("one factor per variable required")
        out = {}
        for e, c in self.terms.items():
            for f, k in zip(factors, e):
                c = c * _power(f, k)
            out[e] = c
        return LaurentPoly(out, self.nvars)

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": format_rational(c)} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], nvars: int | None = None) -> "LaurentPoly":
        terms: dict[tuple[int, ...], Scalar] = {}
        for item in data:
            e = tuple(int(k) for k in item["exponents"])
            terms[e] = terms.get(e, 0) + parse_rational(str(item["coeff"]))
        return cls(terms, nvars)


def _power(x: Scalar, k: int) -> Scalar:
    if k < 0 and x == 0:
        raise DomainError("zero raised to a negative power")
    return x**k


def laurent_eval(p: LaurentPoly, point: Sequence) -> Scalar:
    """Evaluate ``p`` at ``point`` exactly."""
    point = [to_scalar(x) for x in point]
    if len(point) != p.nvars:
        raise ArgumentError(f"point has {len(point)} coordinates, polynomial has {p.nvars} variables")
    total: Scalar = Fraction(0)
    for e, c in p.terms.items():
        for x, k in zip(point, e):
            c = c * _power(x, k)
        total += c
    return total


def laurent_substitute_last(p: LaurentPoly, value) -> LaurentPoly:
    """Specialize the last variable of ``p`` to ``value``."""
    if p.nvars < 1:
        raise ArgumentError("polynomial has no variable to substitute")
    value = to_scalar(value)
    if value == 0:
        raise DomainError("substituted value must be nonzero")
    out: dict[tuple[int, ...], Scalar] = {}
    for e, c in p.terms.items():
        head = e[:-1]
        out[head] = out.get(head, 0) + c * value ** e[-1]
    return LaurentPoly(out, p.nvars - 1)
