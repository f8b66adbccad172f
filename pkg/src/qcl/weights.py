"""Edge weights on the Gelfand-Tsetlin graph and weighted dimensions.

Two weight families are supported:

* ``schur``: ``w(mu, nu) = q^(N|mu| - (N-1)|nu|)`` with ``N = level(nu)``;
  the weighted dimension of ``nu`` is the quantum dimension
  ``s_nu(q^(N-1), ..., q^(-N+1))``.
* ``macdonald``: ``w(mu, nu) = psi_{nu/mu}(q, t^2) t^(N|mu| - (N-1)|nu|)``;
  the weighted dimension is ``P_nu(t^(N-1), ..., t^(-N+1); q, t^2)``.
"""
from __future__ import annotations

import json
import os
import threading
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction

from .errors import ArgumentError
from .gtgraph import GTPath, Signature, as_signature, interlaces, predecessors
from .scalar import Scalar, check_parameter, format_rational, parse_rational
from .symfunc import macdonald_psi

SCHUR = "schur"
MACDONALD = "macdonald"
CACHE_FORMAT = "qcl-wdim"
CACHE_VERSION = 1


@dataclass(frozen=True)
class WeightScheme:
    kind: str
    q: Scalar
    t: Scalar | None = None

    def __post_init__(self):
        if self.kind not in (SCHUR, MACDONALD):
            raise ArgumentError(f"unknown weight scheme {self.kind!r}")
        object.__setattr__(self, "q", check_parameter("q", self.q))
        if self.kind == MACDONALD:
            if self.t is None:
                raise ArgumentError("the macdonald scheme needs t")
            object.__setattr__(self, "t", check_parameter("t", self.t))
        else:
            object.__setattr__(self, "t", None)

    @classmethod
    def schur(cls, q) -> "WeightScheme":
        return cls(SCHUR, q)

    @classmethod
    def macdonald(cls, q, t) -> "WeightScheme":
        return cls(MACDONALD, q, t)

    @property
    def exact(self) -> bool:
        return not isinstance(self.q, float) and not isinstance(self.t, float)

    @property
    def base(self) -> Scalar:
        """The parameter raised to the ``N|mu| - (N-1)|nu|`` exponent."""
        return self.q if self.kind == SCHUR else self.t

    def as_float(self) -> "WeightScheme":
        return WeightScheme(self.kind, float(self.q), None if self.t is None else float(self.t))

    def key(self) -> list[str]:
        return [self.kind, format_rational(self.q)] + ([] if self.t is None else [format_rational(self.t)])


class _Memo:
    """Size-capped LRU table that tolerates concurrent readers and writers."""

    def __init__(self, maxsize: int = 200_000):
        self.maxsize = maxsize
        self._data: OrderedDict = OrderedDict()
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            value = self._data.get(key)
            if value is not None:
                self._data.move_to_end(key)
            return value

    def put(self, key, value):
        with self._lock:
            self._data[key] = value
            if len(self._data) > self.maxsize:
                self._data.popitem(last=False)

    def items(self):
        with self._lock:
            return list(self._data.items())

    def clear(self):
        with self._lock:
            self._data.clear()

    def __len__(self):
        return len(self._data)


_wdim_memo = _Memo()
_rel_memo = _Memo()


def clear_caches():
    _wdim_memo.clear()
    _rel_memo.clear()


def edge_weight(scheme: WeightScheme, mu, nu) -> Scalar:
    mu, nu = as_signature(mu), as_signature(nu)
    if not interlaces(mu, nu):
        raise ArgumentError(f"{mu!r} -> {nu!r} is not an edge")
    n = nu.level
    w = scheme.base ** (n * mu.size - (n - 1) * nu.size)
    if scheme.kind == MACDONALD:
        w *= macdonald_psi(mu, nu, scheme.q, scheme.t * scheme.t)
    return w


def path_weight(scheme: WeightScheme, path) -> Scalar:
    if not isinstance(path, GTPath):
        path = GTPath(path)
    w = Fraction(1)
    for mu, nu in path.edges:
        w *= edge_weight(scheme, mu, nu)
    return w


def weighted_dim(scheme: WeightScheme, nu) -> Scalar:
    """Sum of path weights over all paths from the root to ``nu``."""
    nu = as_signature(nu)
    if nu.level == 0:
        return Fraction(1)
    key = (scheme, scheme.exact, nu)
    hit = _wdim_memo.get(key)
    if hit is not None:
        return hit
    total = sum((edge_weight(scheme, mu, nu) * weighted_dim(scheme, mu) for mu in predecessors(nu)), Fraction(0))
    _wdim_memo.put(key, total)
    return total


def relative_weighted_dim(scheme: WeightScheme, mu, nu) -> Scalar:
    """Sum of weights of the paths from ``mu`` up to ``nu``; zero if there are none."""
    mu, nu = as_signature(mu), as_signature(nu)
    if mu.level >= nu.level:
        raise ArgumentError("mu must sit strictly below nu")
    return _relative(scheme, mu, nu)


def _relative(scheme: WeightScheme, mu: Signature, nu: Signature) -> Scalar:
    if mu.level == nu.level:
        return Fraction(int(mu == nu))
    if mu and (mu[0] > nu[0] or mu[-1] < nu[-1]):
        return Fraction(0)
    if mu.level == 0:
        return weighted_dim(scheme, nu)
    key = (scheme, scheme.exact, mu, nu)
    hit = _rel_memo.get(key)
    if hit is not None:
        return hit
    total = Fraction(0)
    for lam in predecessors(nu):
        r = _relative(scheme, mu, lam)
        if r:
            total += edge_weight(scheme, lam, nu) * r
    _rel_memo.put(key, total)
    return total


# -- persistence of the weighted-dimension table ------------------------------

def save_cache(path: str | os.PathLike) -> int:
    """Write the exact weighted-dimension table to ``path``; returns the entry count."""
    rows = [
        {"scheme": scheme.key(), "sig": list(nu), "value": format_rational(v)}
        for (scheme, exact, nu), v in _wdim_memo.items()
        if exact
    ]
    with open(path, "w") as fh:
        fh.write(json.dumps({"format": CACHE_FORMAT, "version": CACHE_VERSION}) + "\n")
        for row in rows:
            fh.write(json.dumps(row) + "\n")
    return len(rows)


def load_cache(path: str | os.PathLike) -> int:
    """Seed the table from a file written by :func:`save_cache`.

    Files with another format name or version are ignored.
    """
    try:
        fh = open(path)
    except FileNotFoundError:
        return 0
    with fh:
        try:
            header = json.loads(fh.readline() or "{}")
        except json.JSONDecodeError:
            return 0
        if header.get("format") != CACHE_FORMAT or header.get("version") != CACHE_VERSION:
            return 0
        n = 0
        for line in fh:
            row = json.loads(line)
            kind, *params = row["scheme"]
            scheme = WeightScheme(kind, *[parse_rational(p) for p in params])
            _wdim_memo.put((scheme, True, Signature(row["sig"])), parse_rational(row["value"]))
            n += 1
    return n

