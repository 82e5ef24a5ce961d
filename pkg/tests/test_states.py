import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conewit.cones import circulant_a, extremal_y, h_family
from conewit.errors import (
    BadDiagonal,
    DimensionMismatch,
    InvariantViolation,
    NotOnFace,
    PreconditionViolation,
)
from conewit.graphs import complete_graph, cycle_graph
from conewit.matcore import partial_transpose
from conewit.states import (
    BipartiteState,
    Bosonic,
    LdoiTriple,
    RestrictedRank1,
    Sparse,
    build_corr_state,
    build_dicke_mixture,
    build_sparse_family,
    diag_matrix,
    face_check,
    face_map,
    face_residual,
    flip_operator,
    ldoi_ccnr_satisfied,
    ldoi_is_ppt,
    ldoi_is_psd,
    ldoi_matrix,
    ldoi_to_dense,
)

from conftest import random_hermitian, random_psd


def random_triple(rng: np.random.Generator, d: int) -> LdoiTriple:
    """Random triple that lands on both sides of the PSD and PPT boundaries."""
    y = random_psd(rng, d, rank=int(rng.integers(1, d + 1)))
    z = random_psd(rng, d, rank=int(rng.integers(1, d + 1)))
    s = np.sqrt(y.diagonal().real / z.diagonal().real)
    z = z * np.outer(s, s)
    off = ~np.eye(d, dtype=bool)
    if rng.random() < 0.3:
        y = y + 0.3 * random_hermitian(rng, d) * off
    if rng.random() < 0.3:
        z = z + 0.3 * random_hermitian(rng, d) * off
    x = np.diag(y.diagonal().real)
    mode = rng.integers(3)
    bound = np.abs(z) if mode == 0 else np.maximum(np.abs(y), np.abs(z))
    factor = rng.uniform(0.6, 1.4, size=(d, d)) if mode < 2 else np.ones((d, d))
    x = x + np.where(off, bound * factor, 0.0)
    return LdoiTriple(x, y, z)


def dense_oracle(t: LdoiTriple) -> tuple[bool, bool]:
    rho = ldoi_matrix(t)
    floor = -1e-9 * max(1.0, np.linalg.norm(rho))
    psd = np.linalg.eigvalsh(rho)[0] >= floor
    ppt = psd and np.linalg.eigvalsh(partial_transpose(rho, t.d))[0] >= floor
    return bool(psd), bool(ppt)


def test_ldoi_tests_agree_with_dense_oracle():
    rng = np.random.default_rng(8)
    counts = {"psd": 0, "ppt": 0}
    for k in range(500):
        t = random_triple(rng, int(rng.choice([2, 3, 4])))
        psd, ppt = dense_oracle(t)
        assert ldoi_is_psd(t) == psd, k
        assert ldoi_is_ppt(t) == ppt, k
        counts["psd"] += psd
        counts["ppt"] += ppt
    # the sample exercises both outcomes of each test
    assert 50 < counts["psd"] < 450 and 20 < counts["ppt"] < counts["psd"]


def test_ldoi_matrix_structure():
    t = build_corr_state(np.ones((4, 4)), 0.3)
    rho = ldoi_matrix(t)
    assert np.allclose(rho, rho.conj().T)
    pt = LdoiTriple(t.X, t.Z, t.Y)
    assert np.allclose(partial_transpose(rho, 4), ldoi_matrix(pt))
    assert np.allclose(diag_matrix(t), t.X)


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3]))
def test_ldoi_invariance_under_diagonal_orthogonals(seed, d):
    rng = np.random.default_rng(seed)
    t = random_triple(rng, d)
    o = np.diag(rng.choice([-1.0, 1.0], size=d))
    u = np.kron(o, o)
    rho = ldoi_matrix(t)
    assert np.allclose(u @ rho @ u.T, rho)


def test_triple_validation():
    with pytest.raises(InvariantViolation):
        LdoiTriple(-np.ones((2, 2)), np.eye(2), np.eye(2))
    with pytest.raises(InvariantViolation):
        LdoiTriple(np.ones((2, 2)), 2 * np.eye(2), np.eye(2))
    with pytest.raises(DimensionMismatch):
        LdoiTriple(np.ones((2, 2)), np.eye(3), np.eye(2))
    with pytest.raises(InvariantViolation):
        BipartiteState(2, -np.eye(4))
    with pytest.raises(DimensionMismatch):
        BipartiteState.from_matrix(np.eye(5))


def test_corr_state_builder():
    t = build_corr_state(np.ones((4, 4)), 0.55)
    assert np.array_equal(t.Z, h_family(0.55))
    assert np.array_equal(t.Y, np.ones((4, 4)))
    assert ldoi_is_ppt(t)
    assert not ldoi_is_ppt(build_corr_state(np.ones((4, 4)), 0.6))
    with pytest.raises(BadDiagonal):
        build_corr_state(2 * np.ones((4, 4)), 0.1)


def test_ccnr_cannot_see_the_corr_family():
    for x in np.linspace(-1 / np.sqrt(3), 1 / np.sqrt(3), 9):
        ok, lhs, rhs = ldoi_ccnr_satisfied(build_corr_state(np.ones((4, 4)), x))
        assert ok and lhs == pytest.approx(12.0, abs=1e-9) and rhs == pytest.approx(12.0, abs=1e-9)


def test_sparse_family_builder():
    y = extremal_y()
    z = 0.5 * (y + np.diag(y.diagonal()))
    t = build_sparse_family(cycle_graph(4), y, z, np.abs(y))
    assert ldoi_is_ppt(t)
    assert face_check(t, Sparse(cycle_graph(4)))
    with pytest.raises(PreconditionViolation, match="X_12 X_21"):
        build_sparse_family(cycle_graph(4), y, z, np.diag(y.diagonal().real) + 0.1 * np.abs(y - np.diag(y.diagonal())))
    with pytest.raises(PreconditionViolation, match="is not contained in G"):
        build_sparse_family(cycle_graph(4), np.ones((4, 4)), np.eye(4), np.ones((4, 4)))


def test_dicke_mixture_is_bosonic_and_ppt():
    t = build_dicke_mixture(circulant_a())
    rho = ldoi_matrix(t)
    assert np.allclose(rho @ flip_operator(5), rho)
    assert ldoi_is_ppt(t)
    assert face_check(t, Bosonic())
    with pytest.raises(PreconditionViolation):
        build_dicke_mixture(-circulant_a())


def test_face_maps():
    t = build_corr_state(np.ones((4, 4)), 0.4)
    fm = face_map(t, RestrictedRank1(np.ones(4)))
    assert fm.transposed and np.allclose(fm.M, h_family(0.4))
    y = extremal_y()
    ts = build_sparse_family(cycle_graph(4), y, 0.5 * (y + np.diag(y.diagonal())), np.abs(y))
    fm = face_map(ts, Sparse(cycle_graph(4)))
    assert not fm.transposed and np.allclose(fm.M, y)
    fm = face_map(build_dicke_mixture(circulant_a()), Bosonic())
    assert np.allclose(fm.M, circulant_a())


def test_not_on_face():
    t = build_corr_state(np.ones((4, 4)), 0.4)
    assert face_residual(t, Sparse(cycle_graph(4))) == 2.0
    with pytest.raises(NotOnFace) as info:
        face_map(t, Sparse(cycle_graph(4)))
    assert info.value.residual == 2.0
    with pytest.raises(NotOnFace):
        face_map(t, Bosonic())
    assert face_check(t, Sparse(complete_graph(4)))


def test_dense_wrapper_and_normalization():
    s = ldoi_to_dense(build_corr_state(np.ones((4, 4)), 0.2))
    assert s.d == 4
    assert np.trace(s.normalized()).real == pytest.approx(1.0)
