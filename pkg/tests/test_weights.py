from fractions import Fraction as F

import pytest

from qcl.errors import ArgumentError
from qcl.gtgraph import ROOT, GTPath, predecessors, signatures, zero
from qcl.symfunc import principal_point, schur_eval
from qcl.weights import (
    WeightScheme,
    clear_caches,
    edge_weight,
    load_cache,
    path_weight,
    relative_weighted_dim,
    save_cache,
    weighted_dim,
)

SMALL = [nu for n in range(1, 5) for nu in signatures(n, -2, 2)]


@pytest.mark.parametrize("q", [F(1, 2), F(2, 3), F(3, 5)])
def test_edge_weight_examples(q):
    s = WeightScheme.schur(q)
    assert edge_weight(s, (1,), (1, 0)) == q
    assert edge_weight(s, (0,), (1, 0)) == 1 / q
    for k in (-3, 0, 4):
        assert edge_weight(s, ROOT, (k,)) == 1
    with pytest.raises(ArgumentError):
        edge_weight(s, (2,), (1, 0))


@pytest.mark.parametrize("q", [F(1, 2), F(3, 5)])
def test_path_weight_and_dims(q):
    s = WeightScheme.schur(q)
    assert path_weight(s, GTPath([(), (0,), (1, 0)])) == 1 / q
    assert path_weight(s, GTPath([(), (1,), (1, 0)])) == q
    assert path_weight(s, GTPath([(1, 0)])) == 1
    assert weighted_dim(s, zero(3)) == 1
    assert weighted_dim(s, (1, 0)) == q + 1 / q
    assert weighted_dim(s, (2, 0)) == q**2 + 1 + q**-2
    assert weighted_dim(s, ROOT) == 1


def test_relative_examples(schur_half):
    q = schur_half.q
    assert relative_weighted_dim(schur_half, (1,), (1, 0)) == q
    assert relative_weighted_dim(schur_half, zero(2), zero(4)) == 1
    assert relative_weighted_dim(schur_half, (3,), (1, 0)) == 0


@pytest.mark.parametrize("scheme", [WeightScheme.schur(F(1, 2)), WeightScheme.macdonald(F(1, 3), F(1, 2))], ids=["schur", "macdonald"])
def test_recursion_and_intermediate_levels(scheme):
    for nu in SMALL:
        rec = sum(edge_weight(scheme, mu, nu) * weighted_dim(scheme, mu) for mu in predecessors(nu))
        assert rec == weighted_dim(scheme, nu)
        for k in range(1, nu.level):
            split = sum(
                relative_weighted_dim(scheme, mu, nu) * weighted_dim(scheme, mu)
                for mu in signatures(k, nu[-1], nu[0])
            )
            assert split == weighted_dim(scheme, nu)


def test_weighted_dim_is_sum_over_paths(macdonald):
    from qcl.gtgraph import enumerate_paths

    for nu in [(2, 0, -1), (1, 1, 0), (2, 1, 0, -1)]:
        assert sum(path_weight(macdonald, p) for p in enumerate_paths(ROOT, nu)) == weighted_dim(macdonald, nu)


@pytest.mark.parametrize("q", [F(1, 2), F(2, 3), F(3, 5)])
def test_quantum_dimension_is_principal_schur(q):
    s = WeightScheme.schur(q)
    for nu in SMALL:
        assert weighted_dim(s, nu) == schur_eval(nu, principal_point(nu.level, q))


def test_weights_positive(macdonald):
    for nu in SMALL:
        for mu in predecessors(nu):
            assert edge_weight(macdonald, mu, nu) > 0


def test_macdonald_degenerates_to_schur():
    t = F(3, 5)
    mac, schur = WeightScheme.macdonald(t * t, t), WeightScheme.schur(t)
    for nu in SMALL:
        for mu in predecessors(nu):
            assert edge_weight(mac, mu, nu) == edge_weight(schur, mu, nu)


def test_scheme_validation():
    with pytest.raises(ArgumentError):
        WeightScheme.macdonald(F(1, 2), None)
    with pytest.raises(ArgumentError):
        WeightScheme("hall", F(1, 2))
    with pytest.warns(UserWarning):
        WeightScheme.schur(3)


def test_float_mode_agrees_within_tolerance():
    exact = WeightScheme.schur(F(2, 3))
    approx = exact.as_float()
    for nu in SMALL:
        a, b = weighted_dim(approx, nu), weighted_dim(exact, nu)
        assert isinstance(a, float)
        assert abs(a - float(b)) <= 1e-9 * abs(float(b))


def test_cache_roundtrip(tmp_path, macdonald):
    clear_caches()
    value = weighted_dim(macdonald, (2, 1, 0))
    path = tmp_path / "wdim.jsonl"
    assert save_cache(path) > 0
    clear_caches()
    assert load_cache(path) > 0
    assert weighted_dim(macdonald, (2, 1, 0)) == value
    (tmp_path / "old.jsonl").write_text('{"format": "qcl-wdim", "version": 0}\n')
    assert load_cache(tmp_path / "old.jsonl") == 0
