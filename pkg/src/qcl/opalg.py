"""Finite-level block operators, density matrices and the KMS condition.

An element of the level-``N`` group algebra is a finitely supported family
of square matrices ``x_nu``, one per signature, acting on the space whose
basis is indexed by the paths from the root to ``nu`` (in the order produced
by :func:`qcl.gtgraph.enumerate_paths`).  Matrices are numpy object arrays
of Fractions so every product stays exact.
"""
from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .errors import ArgumentError, ResourceError
from .gtgraph import ROOT, GTPath, Signature, as_signature, count_paths, enumerate_paths, predecessors, signatures
from .measures import CoherentSystem, LevelMeasure
from .scalar import Scalar, close, format_rational, parse_rational, to_scalar
from .weights import WeightScheme, edge_weight, path_weight, weighted_dim

BLOCK_CAP = 10**4


@lru_cache(maxsize=4096)
def _basis(nu: Signature) -> tuple[GTPath, ...]:
    n = count_paths(ROOT, nu)
    if n > BLOCK_CAP:
        raise ResourceError(f"block {nu!r} has {n} paths, above the cap of {BLOCK_CAP}")
    if nu.level == 0:
        return (tuple.__new__(GTPath, (ROOT,)),)
    return tuple(enumerate_paths(ROOT, nu))


def basis(nu) -> tuple[GTPath, ...]:
    """Gelfand-Tsetlin basis labels of the block ``nu``."""
    return _basis(as_signature(nu))


def _zeros(n: int) -> np.ndarray:
    m = np.empty((n, n), dtype=object)
    m.fill(Fraction(0))
    return m


def _as_matrix(data) -> np.ndarray:
    m = np.array(data, dtype=object)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ArgumentError(f"block must be a square matrix, got shape {m.shape}")
    return np.vectorize(to_scalar, otypes=[object])(m) if m.size else m


class BlockOperator:
    """Finitely supported element of ``(+)_nu B(H_nu)`` at a fixed level.

    Missing blocks are zero.
    """

    def __init__(self, level: int, blocks: Mapping | None = None):
        self.level = int(level)
        self.blocks: dict[Signature, np.ndarray] = {}
        for sig, m in (blocks or {}).items():
            sig = as_signature(sig)
            if sig.level != self.level:
                raise ArgumentError(f"block {sig!r} does not live on level {self.level}")
            m = _as_matrix(m)
            side = len(basis(sig))
            if m.shape != (side, side):
                raise ArgumentError(f"block {sig!r} must be {side}x{side}, got {m.shape}")
            self.blocks[sig] = m

    @classmethod
    def identity(cls, level: int, sigs: Iterable) -> "BlockOperator":
        blocks = {}
        for s in sigs:
            n = len(basis(s))
            m = _zeros(n)
            for i in range(n):
                m[i, i] = Fraction(1)
            blocks[s] = m
        return cls(level, blocks)

    @classmethod
    def unit(cls, sig, i: int, j: int) -> "BlockOperator":
        """Matrix unit ``e_ij`` inside the block ``sig``."""
        sig = as_signature(sig)
        m = _zeros(len(basis(sig)))
        m[i, j] = Fraction(1)
        return cls(sig.level, {sig: m})

    def block(self, sig) -> np.ndarray:
        sig = as_signature(sig)
        m = self.blocks.get(sig)
        return m if m is not None else _zeros(len(basis(sig)))

    def _check(self, other: "BlockOperator"):
        if not isinstance(other, BlockOperator):
            raise ArgumentError("expected a BlockOperator")
        if other.level != self.level:
            raise ArgumentError(f"level mismatch: {self.level} vs {other.level}")

    def __add__(self, other: "BlockOperator") -> "BlockOperator":
        self._check(other)
        keys = set(self.blocks) | set(other.blocks)
        return BlockOperator(self.level, {k: self.block(k) + other.block(k) for k in keys})

    def __sub__(self, other: "BlockOperator") -> "BlockOperator":
        return self + other * Fraction(-1)

    def __mul__(self, c) -> "BlockOperator":
        c = to_scalar(c)
        return BlockOperator(self.level, {k: m * c for k, m in self.blocks.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "BlockOperator") -> "BlockOperator":
        self._check(other)
        keys = set(self.blocks) & set(other.blocks)
        return BlockOperator(self.level, {k: self.blocks[k].dot(other.blocks[k]) for k in keys})

    def adjoint(self) -> "BlockOperator":
        # entries are real, so the adjoint is the transpose
        return BlockOperator(self.level, {k: m.T.copy() for k, m in self.blocks.items()})

    def __eq__(self, other):
        if not isinstance(other, BlockOperator):
            return NotImplemented
        if other.level != self.level:
            return False
        return all(np.array_equal(self.block(k), other.block(k)) for k in set(self.blocks) | set(other.blocks))

    def is_close(self, other: "BlockOperator") -> bool:
        self._check(other)
        for k in set(self.blocks) | set(other.blocks):
            a, b = self.block(k), other.block(k)
            if not all(close(u, v) for u, v in zip(a.flat, b.flat)):
                return False
        return True

    def __repr__(self):
        return f"BlockOperator(level={self.level}, blocks={sorted(self.blocks, reverse=True)})"

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "blocks": [
                {"sig": list(s), "matrix": [[format_rational(v) for v in row] for row in self.blocks[s]]}
                for s in sorted(self.blocks, reverse=True)
            ],
        }

    @classmethod
    def from_json(cls, data) -> "BlockOperator":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            blocks = {
                Signature(b["sig"]): [[parse_rational(str(v)) for v in row] for row in b["matrix"]]
                for b in data["blocks"]
            }
            return cls(int(data["level"]), blocks)
        except (KeyError, TypeError) as exc:
            raise ArgumentError(f"malformed block operator: {exc}") from None


def random_block_operator(sigs: Iterable, rng: np.random.Generator, bound: int = 3, denom: int = 4) -> BlockOperator:
    """Blocks with entries ``a/b``, ``|a| <= bound``, ``1 <= b <= denom``."""
    sigs = [as_signature(s) for s in sigs]
    blocks = {}
    for s in sigs:
        n = len(basis(s))
        nums = rng.integers(-bound, bound + 1, size=(n, n))
        dens = rng.integers(1, denom + 1, size=(n, n))
        m = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                m[i, j] = Fraction(int(nums[i, j]), int(dens[i, j]))
        blocks[s] = m
    level = sigs[0].level if sigs else 0
    return BlockOperator(level, blocks)


# -- density matrices ----------------------------------------------------------

def density_matrix(scheme: WeightScheme, nu) -> np.ndarray:
    """Diagonal of the density matrix ``F_nu``: the path weights in basis order."""
    nu = as_signature(nu)
    if nu.level < 1:
        raise ArgumentError("density matrices start at level 1")
    return np.array(_density(scheme, scheme.exact, nu), dtype=object)


@lru_cache(maxsize=4096)
def _density(scheme: WeightScheme, exact: bool, nu: Signature) -> tuple:
    return tuple(path_weight(scheme, t) for t in basis(nu))


def density_operator(scheme: WeightScheme, sigs: Iterable, level: int | None = None) -> BlockOperator:
    sigs = [as_signature(s) for s in sigs]
    blocks = {}
    for s in sigs:
        d = density_matrix(scheme, s)
        m = _zeros(len(d))
        for i, v in enumerate(d):
            m[i, i] = v
        blocks[s] = m
    return BlockOperator(level if level is not None else sigs[0].level, blocks)


def verify_density_branching(scheme: WeightScheme, nu) -> bool:
    """Rebuild ``F_nu`` as ``sum_mu w(mu, nu) S_mu F_mu S_mu^*`` from level ``N-1``."""
    nu = as_signature(nu)
    if nu.level < 2:
        raise ArgumentError("branching needs level 2 or higher")
    paths = basis(nu)
    rebuilt: list[Scalar | None] = [None] * len(paths)
    for mu in predecessors(nu):
        w = edge_weight(scheme, mu, nu)
        # S_mu maps the basis of mu onto the paths of nu passing through mu, in order
        rows = [i for i, p in enumerate(paths) if p[-2] == mu]
        f_mu = density_matrix(scheme, mu)
        if len(rows) != len(f_mu):
            return False
        for i, v in zip(rows, f_mu):
            if rebuilt[i] is not None:
                return False
            rebuilt[i] = w * v
    direct = density_matrix(scheme, nu)
    return all(r is not None and close(r, d) for r, d in zip(rebuilt, direct))


# -- embeddings ------------------------------------------------------------------

def _suffix_groups(nu: Signature, k: int) -> dict[tuple[Signature, ...], list[int]]:
    groups: dict[tuple[Signature, ...], list[int]] = {}
    for i, p in enumerate(basis(nu)):
        groups.setdefault(tuple(p[k:]), []).append(i)
    return groups


def default_targets(x: BlockOperator, n: int) -> list[Signature]:
    """Level-``n`` signatures whose entries lie in the range spanned by ``x``'s support."""
    entries = [e for s in x.blocks for e in s]
    if not entries:
        return []
    return signatures(n, min(entries), max(entries))


def embed(x: BlockOperator, n: int, scheme: WeightScheme | None = None, targets: Iterable | None = None) -> BlockOperator:
    """Image of ``x`` under the unital inclusion from level ``K = x.level`` into level ``n``.

    The ``(t, u)`` entry of block ``nu`` equals ``x_rho[t', u']`` when the paths
    ``t`` and ``u`` share their segment from level ``K`` to ``n`` (starting at
    ``rho``) and ``t', u'`` are their truncations to level ``K``; otherwise it
    is zero.  The image is supported on infinitely many blocks in general, so
    only ``targets`` are materialised (see :func:`default_targets`).  The
    inclusion does not depend on the weight scheme; ``scheme`` is accepted for
    signature symmetry with the other operations.
    """
    k = x.level
    if n < k:
        raise ArgumentError(f"cannot embed level {k} into lower level {n}")
    if n == k:
        return x
    targets = default_targets(x, n) if targets is None else [as_signature(s) for s in targets]
    blocks = {}
    for nu in targets:
        if nu.level != n:
            raise ArgumentError(f"target {nu!r} is not on level {n}")
        m = None
        for suffix, idx in _suffix_groups(nu, k).items():
            xb = x.blocks.get(suffix[0])
            if xb is None:
                continue
            if m is None:
                m = _zeros(len(basis(nu)))
            m[np.ix_(idx, idx)] = xb
        if m is not None:
            blocks[nu] = m
    return BlockOperator(n, blocks)


# -- characters and the flow --------------------------------------------------------

@dataclass(frozen=True)
class QuantizedCharacterLevel:
    """Restriction of a character to level ``N``: ``sum_pi c_pi Tr(F_pi x_pi) / Tr(F_pi)``."""

    scheme: WeightScheme
    coeffs: LevelMeasure

    @property
    def level(self) -> int:
        return self.coeffs.level


def chi_eval(chi: QuantizedCharacterLevel, x: BlockOperator) -> Scalar:
    if chi.level != x.level:
        raise ArgumentError(f"character lives on level {chi.level}, operator on {x.level}")
    total: Scalar = Fraction(0)
    for pi, c in chi.coeffs.atoms.items():
        xb = x.blocks.get(pi)
        if xb is None:
            continue
        f = density_matrix(chi.scheme, pi)
        tr = sum((f[i] * xb[i, i] for i in range(len(f))), Fraction(0))
        total += c * tr / weighted_dim(chi.scheme, pi)
    return total


def scaling_flow_analytic(x: BlockOperator, scheme: WeightScheme, s: int) -> BlockOperator:
    """``F^s x F^-s`` blockwise: the dual scaling flow continued to the imaginary time ``-s i``."""
    if int(s) != s:
        raise ArgumentError("only integer analytic points keep the result rational")
    s = int(s)
    blocks = {}
    for nu, m in x.blocks.items():
        f = density_matrix(scheme, nu)
        out = m.copy()
        for i in range(len(f)):
            for j in range(len(f)):
                if out[i, j]:
                    out[i, j] = out[i, j] * (f[i] / f[j]) ** s
        blocks[nu] = out
    return BlockOperator(x.level, blocks)


def scaling_flow(x: BlockOperator, scheme: WeightScheme, t: float) -> dict[Signature, np.ndarray]:
    """``Ad(F^(it))`` at real time ``t`` in complex floating point (demonstration only)."""
    out = {}
    for nu, m in x.blocks.items():
        logf = np.array([cmath.log(float(v)).real for v in density_matrix(scheme, nu)])
        phase = np.exp(1j * t * (logf[:, None] - logf[None, :]))
        out[nu] = m.astype(float) * phase
    return out


@dataclass
class KMSReport:
    ok: bool
    lhs: Scalar
    rhs: Scalar

    @property
    def residual(self) -> Scalar:
        return abs(self.lhs - self.rhs)

    def __bool__(self):
        return self.ok


def kms_check(chi: QuantizedCharacterLevel, x: BlockOperator, y: BlockOperator, scheme: WeightScheme | None = None) -> KMSReport:
    """``chi(x F y F^-1) == chi(y x)``: the KMS condition at inverse temperature -1."""
    scheme = scheme or chi.scheme
    if not (chi.level == x.level == y.level):
        raise ArgumentError("character and operators must share a level")
    lhs = chi_eval(chi, x @ scaling_flow_analytic(y, scheme, 1))
    rhs = chi_eval(chi, y @ x)
    return KMSReport(close(lhs, rhs), lhs, rhs)


def restriction_consistency(scheme: WeightScheme, system: CoherentSystem, x: BlockOperator, n: int) -> bool:
    """The level-``n`` character of ``system`` evaluated on the embedded ``x``
    equals the level-``K`` character evaluated on ``x``."""
    k = x.level
    if not 1 <= k < n <= system.n_max:
        raise ArgumentError(f"need 1 <= K < N <= {system.n_max}")
    chi_n = QuantizedCharacterLevel(scheme, system.at(n))
    chi_k = QuantizedCharacterLevel(scheme, system.at(k))
    lifted = embed(x, n, scheme, targets=system.at(n).support)
    return close(chi_eval(chi_n, lifted), chi_eval(chi_k, x))
