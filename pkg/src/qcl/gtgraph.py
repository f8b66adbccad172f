"""Signatures, interlacing and paths on the Gelfand-Tsetlin graph.

Level ``N`` vertices are weakly decreasing integer vectors of length ``N``;
the empty signature ``ROOT`` is the unique level-0 vertex.  ``mu`` and ``nu``
are joined by an edge iff ``nu_1 >= mu_1 >= nu_2 >= ... >= mu_N >= nu_{N+1}``.
Every edge has multiplicity one.
"""
from __future__ import annotations

import itertools
import threading
from typing import Iterable, Iterator, Sequence

from .errors import ArgumentError, ResourceError

DEFAULT_PATH_CAP = 10**6


class Signature(tuple):
    """Weakly decreasing integer vector; ``len`` is the level."""

    def __new__(cls, entries: Iterable[int] = ()):
        if isinstance(entries, Signature):
            return entries
        entries = tuple(int(e) for e in entries)
        if any(a < b for a, b in zip(entries, entries[1:])):
            raise ArgumentError(f"signature entries must be weakly decreasing: {entries}")
        return super().__new__(cls, entries)

    @property
    def level(self) -> int:
        return len(self)

    @property
    def size(self) -> int:
        """``|nu|``, the sum of the entries."""
        return sum(self)

    def shift(self, c: int) -> "Signature":
        return Signature(e + c for e in self)

    def __repr__(self):
        return "*" if not self else "(" + ",".join(map(str, self)) + ")"

    def to_json(self) -> list[int]:
        return list(self)


ROOT = Signature(())


def zero(level: int) -> Signature:
    return Signature((0,) * level)


class GTPath(tuple):
    """Chain of signatures on consecutive levels, each interlacing the next."""

    def __new__(cls, chain: Iterable[Iterable[int]]):
        chain = tuple(Signature(s) for s in chain)
        if not chain:
            raise ArgumentError("a path has at least one vertex")
        for a, b in zip(chain, chain[1:]):
            if b.level != a.level + 1 or not interlaces(a, b):
                raise ArgumentError(f"{a!r} -> {b!r} is not an edge")
        return super().__new__(cls, chain)

    @property
    def start(self) -> Signature:
        return self[0]

    @property
    def end(self) -> Signature:
        return self[-1]

    @property
    def edges(self) -> list[tuple[Signature, Signature]]:
        return list(zip(self, self[1:]))

    def at_level(self, n: int) -> Signature:
        return self[n - self[0].level]

    def __repr__(self):
        return "≺".join(repr(s) for s in self)

    def to_json(self) -> list[list[int]]:
        return [s.to_json() for s in self]


def as_signature(s) -> Signature:
    return s if isinstance(s, Signature) else Signature(s)


def interlaces(mu, nu) -> bool:
    """True iff ``mu -> nu`` is an edge; ``nu`` must sit exactly one level above ``mu``."""
    mu, nu = as_signature(mu), as_signature(nu)
    if nu.level != mu.level + 1:
        raise ArgumentError(f"levels {mu.level} and {nu.level} are not adjacent")
    return all(nu[i] >= mu[i] >= nu[i + 1] for i in range(mu.level))


def predecessors(nu) -> list[Signature]:
    """All ``mu`` with ``mu -> nu``, in lexicographically decreasing order."""
    nu = as_signature(nu)
    if nu.level < 1:
        raise ArgumentError("the root has no predecessors")
    ranges = [range(nu[i], nu[i + 1] - 1, -1) for i in range(nu.level - 1)]
    return [Signature(m) for m in itertools.product(*ranges)]


def signatures(level: int, lo: int, hi: int) -> list[Signature]:
    """All level-``level`` signatures with entries in ``[lo, hi]``, lexicographically decreasing."""
    return [Signature(c) for c in itertools.combinations_with_replacement(range(hi, lo - 1, -1), level)]


def signatures_between(mu, nu, level: int) -> list[Signature]:
    """Level-``level`` vertices lying on some path from ``mu`` to ``nu``."""
    mu, nu = as_signature(mu), as_signature(nu)
    if not mu.level <= level <= nu.level:
        return []
    if level == 0:
        return [ROOT]
    return [lam for lam in signatures(level, nu[-1], nu[0]) if _count(mu, lam) and _count(lam, nu)]


_count_lock = threading.Lock()
_count_memo: dict[tuple[Signature, Signature], int] = {}


def count_paths(mu, nu) -> int:
    """``|Omega(mu, nu)|``: the number of interlacing chains from ``mu`` up to ``nu``.

    Computed by dynamic programming over the predecessors of ``nu``; zero when no
    chain exists.  ``count_paths(ROOT, nu)`` is the dimension of the irreducible
    representation labelled by ``nu``.
    """
    mu, nu = as_signature(mu), as_signature(nu)
    if mu.level > nu.level:
        raise ArgumentError("mu must not sit above nu")
    if mu.level == 0 and nu.level > 0:
        return _weyl_dimension(nu)
    return _count(mu, nu)


def _weyl_dimension(nu: Signature) -> int:
    # prod_{i<j} (nu_i - nu_j + j - i) / (j - i); exact in integers
    num = den = 1
    n = len(nu)
    for i in range(n):
        for j in range(i + 1, n):
            num *= nu[i] - nu[j] + j - i
            den *= j - i
    return num // den


def _count(mu: Signature, nu: Signature) -> int:
    if mu.level == nu.level:
        return int(mu == nu)
    # every vertex on a chain ending at nu is bounded by [nu_N, nu_1]
    if mu and (mu[0] > nu[0] or mu[-1] < nu[-1]):
        return 0
    key = (mu, nu)
    hit = _count_memo.get(key)
    if hit is not None:
        return hit
    total = sum(_count(mu, lam) for lam in predecessors(nu))
    with _count_lock:
        _count_memo[key] = total
    return total


def enumerate_paths(mu, nu, cap: int = DEFAULT_PATH_CAP) -> list[GTPath]:
    """All paths from ``mu`` to ``nu``, sorted lexicographically on the chain.

    The order fixes the Gelfand-Tsetlin basis indexing of every matrix block.
    """
    mu, nu = as_signature(mu), as_signature(nu)
    if mu.level >= nu.level:
        raise ArgumentError("mu must sit strictly below nu")
    n = count_paths(mu, nu)
    if n > cap:
        raise ResourceError(f"{n} paths from {mu!r} to {nu!r} exceed the cap of {cap}")
    out = [tuple.__new__(GTPath, chain) for chain in _chains(mu, nu)]
    out.sort()
    return out


def _chains(mu: Signature, nu: Signature) -> Iterator[tuple[Signature, ...]]:
    if mu.level == nu.level:
        if mu == nu:
            yield (nu,)
        return
    for lam in predecessors(nu):
        if _count(mu, lam):
            for chain in _chains(mu, lam):
                yield chain + (nu,)


def edge_multiplicity(mu, nu) -> int:
    """Number of edges ``mu -> nu``; 0 or 1 on the Gelfand-Tsetlin graph."""
    return int(interlaces(mu, nu))


def path_from_json(data: Sequence[Sequence[int]]) -> GTPath:
    return GTPath(data)
