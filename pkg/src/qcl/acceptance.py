"""Exit-criteria checks, shared by the test-suite and ``qcl acceptance``.

Every check is exact except the sampler check, which uses a 5-sigma binomial
band.  Each returns a :class:`CriterionResult` carrying its wall time and the
time budget it must meet.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .genfunc import stability_check
from .gtgraph import ROOT, Signature, predecessors, signatures, signatures_between
from .measures import (
    CoherentSystem,
    LevelMeasure,
    backward_martingale_check,
    boundary_theta,
    check_coherence,
    cylinder_probability,
    descent_probability,
    project_down,
    sample_path,
)
from .opalg import (
    BlockOperator,
    QuantizedCharacterLevel,
    density_matrix,
    embed,
    kms_check,
    random_block_operator,
    scaling_flow_analytic,
    verify_density_branching,
)
from .symfunc import principal_point, schur_eval
from .weights import WeightScheme, edge_weight, weighted_dim

F = Fraction
Q_VALUES = (F(1, 2), F(2, 3), F(3, 5))
MACDONALD_QT = (F(1, 3), F(1, 2))


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    budget: float = math.inf

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds <= self.budget

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] {self.number}. {self.name}: {self.detail} ({self.seconds:.1f}s / {self.budget:.0f}s)"


def _box(max_level: int, lo: int = -2, hi: int = 2, min_level: int = 1):
    for n in range(min_level, max_level + 1):
        yield from signatures(n, lo, hi)


def _random_measure(rng: np.random.Generator, sigs: list[Signature], k: int) -> LevelMeasure:
    picks = rng.choice(len(sigs), size=min(k, len(sigs)), replace=False)
    raw = [F(int(rng.integers(1, 10))) for _ in picks]
    total = sum(raw)
    return LevelMeasure(sigs[0].level, {sigs[int(i)]: r / total for i, r in zip(picks, raw)})


def trace_dimension_triangle() -> tuple[bool, str]:
    checked = 0
    for q in Q_VALUES:
        scheme = WeightScheme.schur(q)
        for nu in _box(4):
            tr = sum(density_matrix(scheme, nu))
            wd = weighted_dim(scheme, nu)
            sv = schur_eval(nu, principal_point(nu.level, q), method="det")
            if not tr == wd == sv:
                return False, f"mismatch at q={q}, nu={nu!r}: {tr}, {wd}, {sv}"
            checked += 1
    return True, f"{checked} (q, nu) cases exact"


def density_branching() -> tuple[bool, str]:
    schemes = [WeightScheme.schur(q) for q in Q_VALUES] + [WeightScheme.macdonald(*MACDONALD_QT)]
    checked = 0
    for scheme in schemes:
        for nu in _box(4, min_level=2):
            if not verify_density_branching(scheme, nu):
                return False, f"branching fails for {scheme.key()} at {nu!r}"
            checked += 1
    return True, f"{checked} blocks rebuilt exactly"


def kms_condition(seed: int = 3, towers: int = 5, pairs_per_level: int = 100) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    scheme = WeightScheme.schur(F(1, 2))
    tops = list(signatures(3, -2, 2))
    systems = [CoherentSystem.from_top(scheme, _random_measure(rng, tops, 3)) for _ in range(towers)]
    checked = 0
    for n in (1, 2, 3):
        for i in range(pairs_per_level):
            chi = QuantizedCharacterLevel(scheme, systems[i % towers].at(n))
            support = chi.coeffs.support
            x = random_block_operator(support, rng)
            y = random_block_operator(support, rng)
            report = kms_check(chi, x, y, scheme)
            if not report:
                return False, f"level {n}: {report.lhs} != {report.rhs}"
            checked += 1
    return True, f"{checked} random pairs over {towers} towers"


def embedding_laws(seed: int = 11, trials: int = 6) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    schemes = [WeightScheme.schur(F(1, 2)), WeightScheme.macdonald(*MACDONALD_QT)]
    checked = 0
    for k, m, n in [(1, 2, 3), (1, 2, 2), (2, 3, 3), (1, 1, 3)]:
        pool = list(signatures(k, -1, 1))
        targets = {lvl: list(signatures(lvl, -1, 1)) for lvl in (m, n)}
        for _ in range(trials):
            picks = [pool[int(i)] for i in rng.choice(len(pool), size=min(2, len(pool)), replace=False)]
            x = random_block_operator(picks, rng)
            y = random_block_operator(picks, rng)
            ex, ey = embed(x, n, targets=targets[n]), embed(y, n, targets=targets[n])
            if embed(x @ y, n, targets=targets[n]) != ex @ ey:
                return False, f"not multiplicative {k}->{n}"
            if embed(x.adjoint(), n, targets=targets[n]) != ex.adjoint():
                return False, f"not *-preserving {k}->{n}"
            if embed(embed(x, m, targets=targets[m]), n, targets=targets[n]) != ex:
                return False, f"not transitive {k}->{m}->{n}"
            for scheme in schemes:
                lhs = embed(scaling_flow_analytic(x, scheme, 1), n, targets=targets[n])
                if lhs != scaling_flow_analytic(ex, scheme, 1):
                    return False, f"flow does not commute {k}->{n} for {scheme.key()}"
            proj = embed(BlockOperator.identity(k, picks), n, targets=targets[n])
            if proj @ proj != proj or proj.adjoint() != proj:
                return False, f"identity of a partial support is not a projection {k}->{n}"
            checked += 1
    # the identity of a full level maps to the identity of every reachable block
    ident = embed(BlockOperator.identity(1, signatures(1, -1, 1)), 3, targets=signatures(3, -1, 1))
    for nu in signatures(3, -1, 1):
        b = ident.block(nu)
        if not all(b[i, j] == (1 if i == j else 0) for i in range(len(b)) for j in range(len(b))):
            return False, f"unit not preserved on {nu!r}"
    return True, f"{checked} random embeddings, both weight schemes"


def coherence_vs_stability(seed: int = 5, mixtures: int = 20) -> tuple[bool, str]:
    q = F(1, 2)
    scheme = WeightScheme.schur(q)
    agree = positives = 0
    for n in (1, 2):
        for mu in signatures(n, -2, 2):
            for nu in signatures(n + 1, -2, 2):
                a, b = LevelMeasure.delta(mu), LevelMeasure.delta(nu)
                c = bool(check_coherence(a, b, scheme))
                if c != stability_check(a, b, q):
                    return False, f"disagree on deltas {mu!r}, {nu!r}"
                agree += 1
                positives += c
    rng = np.random.default_rng(seed)
    for i in range(mixtures):
        n = 1 + i % 2
        top = _random_measure(rng, list(signatures(n + 1, -2, 2)), 3)
        low = project_down(scheme, top)
        if i % 4 >= 2:
            # perturb: move a sliver of mass onto another vertex
            atoms = dict(low.atoms)
            sig = low.support[0]
            other = next(s for s in signatures(n, -2, 2) if s != sig)
            eps = atoms[sig] / 7
            atoms[sig] -= eps
            atoms[other] = atoms.get(other, F(0)) + eps
            low = LevelMeasure(n, atoms)
        c = bool(check_coherence(low, top, scheme))
        if c != stability_check(low, top, q):
            return False, f"disagree on mixture {i}"
        if c != (i % 4 < 2):
            return False, f"mixture {i} has unexpected coherence {c}"
        agree += 1
        positives += c
    return True, f"{agree} pairs agree ({positives} coherent)"


def backward_martingale() -> tuple[bool, str]:
    scheme = WeightScheme.schur(F(1, 2))
    checks = 0
    for top in _box(4, min_level=2):
        for k in range(1, top.level):
            for v in signatures_between(ROOT, top, k):
                report = backward_martingale_check(scheme, top, v)
                if not report:
                    return False, f"top={top!r}, v={v!r}: {report.failures[0]}"
                checks += report.checks
    return True, f"{checks} conditional expectations exact"


def sampler_fidelity(n: int = 100_000) -> tuple[bool, str]:
    scheme = WeightScheme.schur(F(1, 2))
    measure = LevelMeasure.delta((1, 0))
    system = CoherentSystem.from_top(scheme, measure)
    counts: dict = {}
    for seed in range(n):
        p = sample_path(scheme, measure, seed)
        counts[p] = counts.get(p, 0) + 1
    via_zero = sum(c for p, c in counts.items() if p[1] == Signature((0,)))
    p0 = 0.8
    sigma = math.sqrt(n * p0 * (1 - p0))
    z = (via_zero - n * p0) / sigma
    for p in counts:
        if descent_probability(scheme, measure, p) != cylinder_probability(system, p, scheme):
            return False, f"cylinder mismatch on {p!r}"
    ok = abs(z) <= 5
    return ok, f"freq {via_zero / n:.5f} vs 0.8, z={z:+.2f}, {len(counts)} distinct paths"


def degeneration() -> tuple[bool, str]:
    checked = 0
    for t in (F(1, 2), F(2, 3)):
        mac, schur = WeightScheme.macdonald(t * t, t), WeightScheme.schur(t)
        for nu in _box(3):
            if weighted_dim(mac, nu) != weighted_dim(schur, nu):
                return False, f"weighted dims differ at {nu!r}"
            if list(density_matrix(mac, nu)) != list(density_matrix(schur, nu)):
                return False, f"density matrices differ at {nu!r}"
            for mu in predecessors(nu):
                if edge_weight(mac, mu, nu) != edge_weight(schur, mu, nu):
                    return False, f"edge weights differ at {mu!r}->{nu!r}"
            checked += 1
    return True, f"{checked} vertices agree for t in (1/2, 2/3)"


def boundary_detection() -> tuple[bool, str]:
    hook = boundary_theta([(1,) + (0,) * (n - 1) for n in range(1, 13)], window=5)
    ones = boundary_theta([(1,) * n for n in range(1, 13)], window=5)
    ok = (
        hook.stable_upto > 0
        and set(hook.theta) == {0}
        and ones.stable_upto > 0
        and set(ones.theta) == {1}
    )
    return ok, f"hook theta={hook.theta}, ones theta={ones.theta}"


CRITERIA: list[tuple[int, str, Callable[[], tuple[bool, str]], float]] = [
    (1, "trace / weighted dimension / Schur specialization", trace_dimension_triangle, 60),
    (2, "density matrix branching (Schur and Macdonald)", density_branching, 120),
    (3, "KMS condition on random operators", kms_condition, 120),
    (4, "embedding laws and flow commutation", embedding_laws, 60),
    (5, "coherence agrees with generating-function stability", coherence_vs_stability, 60),
    (6, "backward martingale identity", backward_martingale, 60),
    (7, "sampler fidelity", sampler_fidelity, 60),
    (8, "Macdonald-to-Schur degeneration", degeneration, 30),
    (9, "boundary parameter detection", boundary_detection, 5),
]


def run_criterion(number: int) -> CriterionResult:
    num, name, fn, budget = next(c for c in CRITERIA if c[0] == number)
    start = time.perf_counter()
    passed, detail = fn()
    return CriterionResult(num, name, passed, detail, time.perf_counter() - start, budget)


def run_all(numbers=None) -> list[CriterionResult]:
    return [run_criterion(c[0]) for c in CRITERIA if numbers is None or c[0] in numbers]
