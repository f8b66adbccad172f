"""Central measures on paths of the weighted Gelfand-Tsetlin graph.

A probability measure on infinite paths is *central* for a weight function
when, given the vertex ``X_N`` reached at level ``N``, the path below it is
distributed proportionally to its weight.  Such measures are encoded by
their level marginals ``P_N``, which must satisfy the coherence relation

    P_N(v) = sum_{v'} w(v, v') * wdim(v) / wdim(v') * P_{N+1}(v').
"""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ArgumentError
from .gtgraph import ROOT, GTPath, Signature, as_signature, enumerate_paths, predecessors, signatures_between
from .scalar import Scalar, close, format_rational, is_exact, parse_rational, to_scalar
from .weights import WeightScheme, edge_weight, path_weight, relative_weighted_dim, weighted_dim

_UNIFORM_BITS = 53


class LevelMeasure:
    """Finitely supported probability measure on level-``level`` signatures."""

    def __init__(self, level: int, atoms: Mapping):
        self.level = int(level)
        clean: dict[Signature, Scalar] = {}
        for sig, mass in atoms.items():
            sig = as_signature(sig)
            if sig.level != self.level:
                raise ArgumentError(f"atom {sig!r} does not live on level {self.level}")
            mass = to_scalar(mass)
            if mass < 0:
                raise ArgumentError(f"negative mass {format_rational(mass)} at {sig!r}")
            if mass:
                clean[sig] = clean.get(sig, 0) + mass
        if not clean:
            raise ArgumentError("a probability measure needs nonempty support")
        total = sum(clean.values())
        if not close(total, 1):
            raise ArgumentError(f"masses sum to {format_rational(total)}, not 1")
        self.atoms = clean

    @classmethod
    def delta(cls, sig) -> "LevelMeasure":
        sig = as_signature(sig)
        return cls(sig.level, {sig: Fraction(1)})

    @classmethod
    def mixture(cls, parts: Iterable[tuple[Scalar, "LevelMeasure"]]) -> "LevelMeasure":
        parts = list(parts)
        level = parts[0][1].level
        atoms: dict[Signature, Scalar] = defaultdict(Fraction)
        for c, m in parts:
            if m.level != level:
                raise ArgumentError("mixture components live on different levels")
            for sig, mass in m.atoms.items():
                atoms[sig] += to_scalar(c) * mass
        return cls(level, atoms)

    def mass(self, sig) -> Scalar:
        return self.atoms.get(as_signature(sig), Fraction(0))

    @property
    def support(self) -> list[Signature]:
        return sorted(self.atoms, reverse=True)

    def __eq__(self, other):
        if not isinstance(other, LevelMeasure):
            return NotImplemented
        return self.level == other.level and self.atoms == other.atoms

    def __repr__(self):
        inner = ", ".join(f"{s!r}: {format_rational(self.atoms[s])}" for s in self.support)
        return f"LevelMeasure({self.level}, {{{inner}}})"

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "atoms": [{"sig": list(s), "mass": format_rational(self.atoms[s])} for s in self.support],
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "LevelMeasure":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            atoms = {Signature(a["sig"]): parse_rational(str(a["mass"])) for a in data["atoms"]}
            return cls(int(data["level"]), atoms)
        except (KeyError, TypeError) as exc:
            raise ArgumentError(f"malformed measure: {exc}") from None


def project_down(scheme: WeightScheme, measure: LevelMeasure) -> LevelMeasure:
    """Level ``N-1`` marginal induced by ``measure`` through the coherence relation."""
    if measure.level < 2:
        raise ArgumentError("can only project measures living on level 2 or higher")
    out: dict[Signature, Scalar] = defaultdict(Fraction)
    for nu, mass in measure.atoms.items():
        for mu, p in cotransition_kernel(scheme, nu).items():
            out[mu] += p * mass
    return LevelMeasure(measure.level - 1, out)


@dataclass
class CoherenceReport:
    ok: bool
    worst_residual: Scalar
    violations: list[tuple[Signature, Scalar, Scalar]] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def check_coherence(p_n: LevelMeasure, p_n1: LevelMeasure, scheme: WeightScheme) -> CoherenceReport:
    """Compare ``p_n`` with the marginal that ``p_n1`` induces one level down.

    Each violation records ``(v, P_N(v), induced(v))``.
    """
    if p_n1.level != p_n.level + 1:
        raise ArgumentError(f"levels {p_n.level} and {p_n1.level} are not consecutive")
    induced: dict[Signature, Scalar] = defaultdict(Fraction)
    for nu, mass in p_n1.atoms.items():
        wd_nu = weighted_dim(scheme, nu)
        for mu in predecessors(nu):
            induced[mu] += edge_weight(scheme, mu, nu) * weighted_dim(scheme, mu) / wd_nu * mass
    worst: Scalar = Fraction(0)
    violations = []
    for v in sorted(set(induced) | set(p_n.atoms), reverse=True):
        lhs, rhs = p_n.mass(v), induced.get(v, Fraction(0))
        if not close(lhs, rhs):
            violations.append((v, lhs, rhs))
        worst = max(worst, abs(lhs - rhs))
    return CoherenceReport(not violations, worst, violations)


def cotransition_kernel(scheme: WeightScheme, nu) -> dict[Signature, Scalar]:
    """Law of ``X_{N-1}`` given ``X_N = nu`` under any central measure."""
    nu = as_signature(nu)
    if nu.level < 1:
        raise ArgumentError("the root has no cotransition kernel")
    return dict(_kernel(scheme, scheme.exact, nu))


@lru_cache(maxsize=65536)
def _kernel(scheme: WeightScheme, exact: bool, nu: Signature) -> tuple[tuple[Signature, Scalar], ...]:
    wd = weighted_dim(scheme, nu)
    return tuple((mu, edge_weight(scheme, mu, nu) * weighted_dim(scheme, mu) / wd) for mu in predecessors(nu))


class CoherentSystem:
    """Level marginals ``P_1, ..., P_Nmax`` of a central measure."""

    def __init__(self, levels: Sequence[LevelMeasure], scheme: WeightScheme | None = None):
        levels = list(levels)
        for n, m in enumerate(levels, start=1):
            if m.level != n:
                raise ArgumentError(f"position {n} holds a level-{m.level} measure")
        if scheme is not None:
            for lo, hi in zip(levels, levels[1:]):
                report = check_coherence(lo, hi, scheme)
                if not report:
                    raise ArgumentError(f"levels {lo.level}/{hi.level} are not coherent: {report.violations[:3]}")
        self.levels = levels

    @classmethod
    def from_top(cls, scheme: WeightScheme, top: LevelMeasure) -> "CoherentSystem":
        """The unique coherent system whose highest marginal is ``top``."""
        levels = [top]
        while levels[-1].level > 1:
            levels.append(project_down(scheme, levels[-1]))
        return cls(levels[::-1])

    @property
    def n_max(self) -> int:
        return len(self.levels)

    def at(self, n: int) -> LevelMeasure:
        if not 1 <= n <= self.n_max:
            raise ArgumentError(f"level {n} outside 1..{self.n_max}")
        return self.levels[n - 1]


def cylinder_probability(system: CoherentSystem, path, scheme: WeightScheme) -> Scalar:
    """Probability of the set of infinite paths that begin with ``path``."""
    if not isinstance(path, GTPath):
        path = GTPath(path)
    if path.start != ROOT:
        raise ArgumentError("cylinder paths start at the root")
    end = path.end
    if end.level == 0:
        return Fraction(1)
    return path_weight(scheme, path) * system.at(end.level).mass(end) / weighted_dim(scheme, end)


def pullback_measure(scheme: WeightScheme, nu, k: int) -> LevelMeasure:
    """Level-``k`` marginal of the character attached to the vertex ``nu``.

    ``P_k(pi) = wdim(pi) * wdim(pi, nu) / wdim(nu)``.
    """
    nu = as_signature(nu)
    if not 1 <= k < nu.level:
        raise ArgumentError(f"need 1 <= K < {nu.level}, got {k}")
    wd = weighted_dim(scheme, nu)
    atoms = {
        pi: weighted_dim(scheme, pi) * relative_weighted_dim(scheme, pi, nu) / wd
        for pi in signatures_between(ROOT, nu, k)
    }
    return LevelMeasure(k, atoms)


# -- sampling ----------------------------------------------------------------

def _uniform(rng: np.random.Generator) -> Fraction:
    return Fraction(int(rng.integers(0, 2**_UNIFORM_BITS, dtype=np.uint64)), 2**_UNIFORM_BITS)


def _choose(items: Sequence[tuple[Signature, Scalar]], u: Fraction) -> Signature:
    acc = Fraction(0)
    for sig, p in items:
        acc += p
        if u < acc:
            return sig
    return items[-1][0]


def _draw(scheme: WeightScheme, measure: LevelMeasure, rng: np.random.Generator) -> GTPath:
    items = [(s, measure.atoms[s]) for s in measure.support]
    chain = [_choose(items, _uniform(rng))]
    while chain[-1].level > 1:
        chain.append(_choose(_kernel(scheme, scheme.exact, chain[-1]), _uniform(rng)))
    chain.append(ROOT)
    return tuple.__new__(GTPath, chain[::-1])


def sample_path(scheme: WeightScheme, measure: LevelMeasure, seed: int) -> GTPath:
    """Draw ``X_N ~ measure`` and descend through cotransition kernels.

    The generator is numpy's PCG64 seeded with ``seed``.  The first 53-bit
    uniform selects the top vertex and each further one picks the next vertex
    down by inverse CDF over the lexicographically decreasing predecessor
    order, so a given seed always yields the same path.
    """
    return _draw(scheme, measure, np.random.default_rng(seed))


def sample_paths(scheme: WeightScheme, measure: LevelMeasure, n: int, seed: int) -> list[GTPath]:
    """``n`` paths drawn from a single generator stream."""
    rng = np.random.default_rng(seed)
    return [_draw(scheme, measure, rng) for _ in range(n)]


def descent_probability(scheme: WeightScheme, measure: LevelMeasure, path: GTPath) -> Scalar:
    """Probability that the sampler emits ``path``: top mass times the kernel steps."""
    p = measure.mass(path.end)
    for mu, nu in path.edges[1:]:
        p *= cotransition_kernel(scheme, nu).get(mu, 0)
    return p


# -- ergodic method ------------------------------------------------------------

def ergodic_ratios(scheme: WeightScheme, v, chain: Iterable) -> list[Scalar]:
    """``Z_N = wdim(v, nu^(N)) / wdim(nu^(N))`` along ``chain``.

    Only the levels of the chain matter, so it need not be a path.
    """
    v = as_signature(v)
    out = []
    last = v.level
    for nu in chain:
        nu = as_signature(nu)
        if nu.level <= last:
            raise ArgumentError("chain levels must strictly increase above the level of v")
        last = nu.level
        out.append(relative_weighted_dim(scheme, v, nu) / weighted_dim(scheme, nu))
    return out


def _z(scheme: WeightScheme, v: Signature, x: Signature) -> Scalar:
    if x.level == v.level:
        return Fraction(int(x == v)) / weighted_dim(scheme, v)
    return relative_weighted_dim(scheme, v, x) / weighted_dim(scheme, x)


@dataclass
class MartingaleReport:
    ok: bool
    checks: int
    failures: list[tuple] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def backward_martingale_check(scheme: WeightScheme, top, v) -> MartingaleReport:
    """Check ``E[Z_N | X_{N+1}, ..., X_L] = Z_{N+1}`` exactly for the measure with ``P_L = delta_top``.

    The conditional expectations are computed by enumerating every path from
    the root to ``top`` with its cylinder probability, for all levels
    ``level(v) <= N < L``.
    """
    top, v = as_signature(top), as_signature(v)
    if not 1 <= v.level < top.level:
        raise ArgumentError("v must sit strictly between the root and top")
    system = CoherentSystem.from_top(scheme, LevelMeasure.delta(top))
    paths = [(p, cylinder_probability(system, p, scheme)) for p in enumerate_paths(ROOT, top)]
    checks, failures = 0, []
    for n in range(v.level, top.level):
        num: dict[tuple, Scalar] = defaultdict(Fraction)
        den: dict[tuple, Scalar] = defaultdict(Fraction)
        for p, prob in paths:
            future = tuple(p[n + 1:])
            num[future] += prob * _z(scheme, v, p[n])
            den[future] += prob
        for future, mass in den.items():
            if not mass:
                continue
            checks += 1
            lhs, rhs = num[future] / mass, _z(scheme, v, future[0])
            if not close(lhs, rhs):
                failures.append((n, future, lhs, rhs))
    return MartingaleReport(not failures, checks, failures)


@dataclass(frozen=True)
class BoundaryTheta:
    theta: tuple[int, ...]
    stable_upto: int


def boundary_theta(chain: Iterable, window: int = 5) -> BoundaryTheta:
    """Detect the stabilised tail coordinates ``theta_i = lim nu^(N)_{N-i+1}``.

    Coordinate ``i`` is certified when ``nu^(N)_{N-i+1}`` takes one value on
    the last ``window`` levels of the chain.  This is an empirical check of
    stabilisation, not a proof that the limit exists.
    """
    if window < 2:
        raise ArgumentError("window must be at least 2")
    by_level = {}
    for nu in chain:
        nu = as_signature(nu)
        by_level[nu.level] = nu
    if not by_level:
        return BoundaryTheta((), 0)
    top = max(by_level)
    theta = []
    for i in range(1, top + 1):
        levels = range(top - window + 1, top + 1)
        if levels.start < i or any(n not in by_level for n in levels):
            break
        values = {by_level[n][n - i] for n in levels}
        if len(values) != 1:
            break
        theta.append(values.pop())
    return BoundaryTheta(tuple(theta), len(theta))
