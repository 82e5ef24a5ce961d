import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conewit.cones import (
    DNN,
    JARRE_TORUS_MAX,
    NamedMatrix,
    R1Status,
    R1Verdict,
    ScaledCorrelation,
    SparsePSD,
    Check,
    circulant_a,
    clique_psd_check,
    comparison_witness,
    cone_membership,
    copositive_witness_apply,
    corr_r1_test,
    corr_r1_witness,
    dnn_r1_test,
    dnn_rank_bound_check,
    extremal_y,
    extremality_test,
    gram_span_dimension,
    h_family,
    horn,
    jarre_w,
    named_matrix,
    r1_test,
    schur_witness_apply,
    span_dimension,
    sparse_r1_test,
    torus_max_search,
)
from conewit.errors import (
    DimensionMismatch,
    InvariantViolation,
    NotDNN,
    NotInCone,
    WitnessNotInDualCone,
    WrongDimension,
)
from conewit.graphs import Graph, complete_graph, cycle_graph, is_triangle_free, maximal_cliques

EDGE_X = 1 / math.sqrt(3)


# ---------------------------------------------------------------------------
# random rank-1 members of each cone


def sparse_rank1_sum(rng, g: Graph, terms: int) -> np.ndarray:
    cliques = maximal_cliques(g)
    x = np.zeros((g.n, g.n), dtype=complex)
    for _ in range(terms):
        clique = cliques[rng.integers(len(cliques))]
        sub = [v for v in clique if rng.random() < 0.8] or clique[:1]
        v = np.zeros(g.n, dtype=complex)
        v[sub] = rng.normal(size=len(sub)) + 1j * rng.normal(size=len(sub))
        x += np.outer(v, v.conj())
    return x


def corr_rank1_sum(rng, weights, terms: int) -> np.ndarray:
    n = len(weights)
    x = np.zeros((n, n), dtype=complex)
    for _ in range(terms):
        v = np.sqrt(rng.exponential() * np.asarray(weights)) * np.exp(2j * np.pi * rng.random(n))
        x += np.outer(v, v.conj())
    return x


def cp_rank1_sum(rng, n: int, terms: int) -> np.ndarray:
    x = np.zeros((n, n))
    for _ in range(terms):
        v = rng.exponential(size=n) * (rng.random(n) < 0.7)
        x += np.outer(v, v)
    return x.astype(complex)


# ---------------------------------------------------------------------------
# named matrices


def test_named_matrix_constants():
    assert np.linalg.eigvalsh(h_family(EDGE_X)) == pytest.approx([0, 0, 2, 2], abs=1e-12)
    assert np.trace(jarre_w() @ h_family(0.3)).real == pytest.approx(3.6, abs=1e-12)
    assert np.sum(horn() * circulant_a().T).real == pytest.approx(10 * (math.cos(math.pi / 5) - 1), abs=1e-12)
    assert np.linalg.matrix_rank(extremal_y()) == 2
    assert np.linalg.matrix_rank(circulant_a()) == 3
    assert np.array_equal(named_matrix("h", 0.2), h_family(0.2))
    assert np.array_equal(named_matrix(NamedMatrix.HORN), horn())
    with pytest.raises(ValueError):
        named_matrix("h")


@given(st.floats(-1.0, 1.0))
def test_h_family_psd_iff_small(x):
    lmin = np.linalg.eigvalsh(h_family(x))[0]
    if abs(abs(x) - EDGE_X) > 1e-6:
        assert (lmin >= -1e-12) == (abs(x) <= EDGE_X)


def test_horn_is_copositive_on_random_nonnegative_vectors():
    rng = np.random.default_rng(0)
    v = rng.exponential(size=(20000, 5)) * (rng.random((20000, 5)) < 0.8)
    assert np.min(np.einsum("ki,ij,kj->k", v, horn().real, v)) >= -1e-12
    assert np.linalg.eigvalsh(horn())[0] < 0


# ---------------------------------------------------------------------------
# membership and verdict types


def test_cone_membership_reports_each_check():
    ok, ev = cone_membership(h_family(0.3), ScaledCorrelation(np.ones(4)))
    assert ok and [c.test for c in ev] == ["psd.lambda_min", "diagonal.scale", "diagonal.residual"]
    ok, ev = cone_membership(np.diag([1.0, 2.0, 1.0, 1.0]), ScaledCorrelation(np.ones(4)))
    assert not ok
    ok, _ = cone_membership(extremal_y(), SparsePSD(cycle_graph(4)))
    assert ok
    ok, ev = cone_membership(extremal_y(), DNN(4))
    assert not ok and any(c.test == "entrywise.most_negative" and c.violated for c in ev)
    with pytest.raises(DimensionMismatch):
        cone_membership(np.eye(3), DNN(4))


def test_not_member_requires_violated_evidence():
    with pytest.raises(InvariantViolation):
        R1Verdict(R1Status.NOT_MEMBER, [Check("x", 0.0, 0.0, False)])
    with pytest.raises(InvariantViolation):
        ScaledCorrelation(np.array([1.0, -1.0]))


# ---------------------------------------------------------------------------
# sparse cone


def test_sparse_extremal_example_is_refuted():
    v = sparse_r1_test(extremal_y(), cycle_graph(4))
    assert v.status is R1Status.NOT_MEMBER
    assert v.evidence[0].value < -0.1
    violated, lmin = schur_witness_apply(comparison_witness(extremal_y()), extremal_y(), cycle_graph(4))
    assert violated and lmin == pytest.approx(v.evidence[0].value)


def test_chordal_and_non_triangle_free_paths():
    assert sparse_r1_test(np.eye(4) + 0.1, complete_graph(4)).status is R1Status.MEMBER
    # C4 plus a pendant triangle: not triangle-free, not chordal
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 3)])
    y = np.zeros((6, 6), dtype=complex)
    y[:4, :4] = extremal_y()
    y[4:, 4:] = np.eye(2)
    y[3, 3] += 1.0
    v = sparse_r1_test(y, g)
    assert v.status is R1Status.NOT_MEMBER
    assert any(c.test.startswith("comparison.induced[1-2-3-4]") for c in v.evidence)
    assert sparse_r1_test(y, g, exhaustive=True).status is R1Status.NOT_MEMBER


def test_schur_witness_must_be_in_dual():
    z = -np.ones((4, 4))
    with pytest.raises(WitnessNotInDualCone):
        schur_witness_apply(z, extremal_y(), cycle_graph(4))
    assert clique_psd_check(comparison_witness(extremal_y()), cycle_graph(4))


def test_sparse_rank1_sums_are_never_refuted():
    rng = np.random.default_rng(11)
    graphs = [cycle_graph(4), cycle_graph(5), cycle_graph(6)]
    graphs.append(Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 3)]))
    for k in range(120):
        g = graphs[k % len(graphs)]
        x = sparse_rank1_sum(rng, g, int(rng.integers(1, 7)))
        assert r1_test(x, SparsePSD(g)).status is not R1Status.NOT_MEMBER
        if is_triangle_free(g):
            violated, _ = schur_witness_apply(comparison_witness(x), x, g)
            assert not violated


# ---------------------------------------------------------------------------
# correlation cone


@pytest.mark.parametrize("x", [0.3, 0.5, 0.55, EDGE_X])
def test_jarre_pairing_is_linear(x):
    assert np.trace(jarre_w() @ h_family(x)).real == pytest.approx(12 * x, abs=1e-12)
    violated, value = corr_r1_witness(h_family(x))
    assert value == pytest.approx(12 * x - JARRE_TORUS_MAX, abs=1e-12)
    assert violated == (x > 0.5)


def test_corr_witness_rejects_bad_input():
    with pytest.raises(WrongDimension):
        corr_r1_witness(np.eye(5))
    with pytest.raises(NotInCone):
        corr_r1_witness(h_family(0.7))


def test_torus_bound():
    best, z = torus_max_search(jarre_w(), restarts=64, seed=0)
    assert best == pytest.approx(6.0, abs=1e-9)
    assert np.allclose(np.abs(z), 1.0)
    assert torus_max_search(jarre_w(), restarts=4, seed=3)[0] <= 6.0 + 1e-9


def test_corr_small_n_and_weights():
    assert corr_r1_test(np.eye(3), np.ones(3)).status is R1Status.MEMBER
    w = np.array([1.0, 2.0, 3.0, 4.0])
    d = np.diag(np.sqrt(w))
    v = corr_r1_test(d @ h_family(0.55) @ d, w)
    assert v.status is R1Status.NOT_MEMBER
    assert v.evidence[0].value == pytest.approx(0.6, abs=1e-12)


def test_corr_rank1_sums_are_never_refuted():
    rng = np.random.default_rng(12)
    for k in range(120):
        n = 4 + k % 2
        w = rng.uniform(0.2, 2.0, size=n)
        x = corr_rank1_sum(rng, w, int(rng.integers(1, 8)))
        assert corr_r1_test(x, w).status is not R1Status.NOT_MEMBER
        if n == 4:
            assert not corr_r1_witness(x, weights=w)[0]


# ---------------------------------------------------------------------------
# DNN cone


def test_horn_refutes_circulant():
    violated, value = copositive_witness_apply(horn(), circulant_a())
    assert violated and value == pytest.approx(-1.9098300562505255, abs=1e-12)
    assert copositive_witness_apply(horn(), np.ones((5, 5)))[1] == pytest.approx(5.0)
    v = dnn_r1_test(circulant_a())
    assert v.status is R1Status.NOT_MEMBER
    with pytest.raises(NotDNN):
        copositive_witness_apply(horn(), horn())


def test_dnn_small_n_rule():
    rng = np.random.default_rng(13)
    for _ in range(20):
        x = cp_rank1_sum(rng, 4, 3) + np.eye(4)
        assert dnn_r1_test(x).status is R1Status.MEMBER


def test_dnn_rank1_sums_are_never_refuted():
    rng = np.random.default_rng(14)
    for k in range(60):
        n = 5 + k % 2
        x = cp_rank1_sum(rng, n, int(rng.integers(1, 8))) + 1e-3 * np.eye(n)
        assert dnn_r1_test(x).status is not R1Status.NOT_MEMBER


def test_dnn_rank_bound():
    assert dnn_rank_bound_check(circulant_a())
    assert not dnn_rank_bound_check(np.eye(5))


# ---------------------------------------------------------------------------
# extremality


def test_extremality_examples():
    rep = extremality_test(h_family(EDGE_X), ScaledCorrelation(np.ones(4)))
    assert (rep.rank, rep.perturbation_dim, rep.is_extremal) == (2, 1, True)
    rep = extremality_test(h_family(0.55), ScaledCorrelation(np.ones(4)))
    assert rep.rank == 4 and not rep.is_extremal
    rep = extremality_test(extremal_y(), SparsePSD(cycle_graph(4)))
    assert (rep.rank, rep.perturbation_dim) == (2, 1)
    rep = extremality_test(circulant_a(), DNN(5))
    assert (rep.rank, rep.perturbation_dim) == (3, 1)


@given(st.integers(0, 2**32 - 1), st.integers(2, 5))
def test_rank1_matrices_are_extreme_in_the_psd_cone(seed, n):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=n) + 1j * rng.normal(size=n)
    rep = extremality_test(np.outer(v, v.conj()), SparsePSD(complete_graph(n)))
    assert rep.is_extremal and rep.rank == 1


@given(st.integers(0, 2**32 - 1))
def test_generic_full_rank_is_not_extremal(seed):
    rng = np.random.default_rng(seed)
    b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rep = extremality_test(b @ b.conj().T + np.eye(4), SparsePSD(complete_graph(4)))
    assert rep.perturbation_dim == 16 and not rep.is_extremal


def test_span_dimension():
    w = np.exp(2j * np.pi / 3)
    rows = [(1, 1), (1, w**2), (1, w), (-math.sqrt(3), 0)]
    assert span_dimension(rows) == 4
    assert span_dimension([(1, 0), (2, 0)]) == 1
    assert gram_span_dimension(h_family(EDGE_X)) == (2, 4)
    assert span_dimension([]) == 0


def test_witness_consistency_with_torus_bound():
    # a firing witness means Tr(W X) beats the torus maximum spread over the four diagonal entries
    bound, _ = torus_max_search(jarre_w(), restarts=16, seed=1)
    assert bound == pytest.approx(JARRE_TORUS_MAX, abs=1e-6)
    rng = np.random.default_rng(15)
    fired = 0
    for _ in range(200):
        x = rng.uniform(0.0, EDGE_X)
        u = np.diag(np.exp(2j * np.pi * rng.random(4)))
        xm = u @ h_family(x) @ u.conj().T if rng.random() < 0.3 else h_family(x)
        violated, _ = corr_r1_witness(xm)
        tr_wx = np.sum(jarre_w() * xm.T).real
        if violated:
            fired += 1
            assert tr_wx > bound / 4 * np.trace(xm).real
    assert fired > 0
