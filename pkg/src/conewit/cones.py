"""Constrained PSD cones and their rank-1 generated subcones.

Three cones appear as images of faces of the bipartite state cone:

* ``SparsePSD(G)``: PSD matrices whose off-diagonal support lies in ``G``;
* ``ScaledCorrelation(x)``: PSD matrices whose diagonal is proportional to ``x``;
* ``DNN(n)``: PSD matrices with non-negative entries.

For each, this module decides membership, tries to refute membership in the
rank-1 generated subcone ``R1[.]`` and certifies extremal rays.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import NamedTuple, Sequence, Union

import numpy as np

from conewit.errors import (
    DimensionMismatch,
    InvariantViolation,
    NotDNN,
    NotInCone,
    WitnessNotInDualCone,
    WrongDimension,
)
from conewit.graphs import (
    Graph,
    graph_of_matrix,
    is_chordal,
    is_subgraph,
    is_triangle_free,
    iter_chordless_cycles,
    maximal_cliques,
    triangle_free_induced_subsets,
)
from conewit.matcore import (
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
    comparison_matrix,
    herm_eig,
    is_psd,
    lambda_min,
    principal_submatrix,
    range_basis,
    rank_of,
    require_hermitian,
    scale,
)

# ---------------------------------------------------------------------------
# named matrices


def jarre_w() -> np.ndarray:
    """4x4 Hermitian witness with ``<z|W|z> <= 6`` on the 4-torus."""
    i = 1j
    return np.array(
        [
            [0, -i, i, 1],
            [i, 0, -i, 1],
            [-i, i, 0, 1],
            [1, 1, 1, 0],
        ],
        dtype=np.complex128,
    )


def h_family(x: float) -> np.ndarray:
    """Unit-diagonal 4x4 family; PSD iff ``|x| <= 1/sqrt(3)``, rank 2 at the endpoint."""
    i = 1j
    return np.array(
        [
            [1, -i * x, i * x, x],
            [i * x, 1, -i * x, x],
            [-i * x, i * x, 1, x],
            [x, x, x, 1],
        ],
        dtype=np.complex128,
    )


def horn() -> np.ndarray:
    """Horn's matrix: copositive, but not PSD + non-negative."""
    return np.array(
        [
            [1, -1, 1, 1, -1],
            [-1, 1, -1, 1, 1],
            [1, -1, 1, -1, 1],
            [1, 1, -1, 1, -1],
            [-1, 1, 1, -1, 1],
        ],
        dtype=np.complex128,
    )


def circulant_a() -> np.ndarray:
    """Circulant DNN_5 matrix with diagonal ``2cos(pi/5)`` and unit 5-cycle entries."""
    c = 2.0 * np.cos(np.pi / 5.0)
    a = np.zeros((5, 5))
    for k in range(5):
        a[k, k] = c
        a[k, (k + 1) % 5] = a[(k + 1) % 5, k] = 1.0
    return a.astype(np.complex128)


def extremal_y() -> np.ndarray:
    """Rank-2 extremal element of the sparse PSD cone on the 4-cycle 1-2-3-4."""
    return np.array(
        [
            [1, 1, 0, 1],
            [1, 2, 1, 0],
            [0, 1, 1, -1],
            [1, 0, -1, 2],
        ],
        dtype=np.complex128,
    )


class NamedMatrix(str, enum.Enum):
    JARRE_W = "jarre"
    H_FAMILY = "h"
    HORN = "horn"
    CIRCULANT_A = "circulantA"
    EXTREMAL_Y = "extremalY"


def named_matrix(name: NamedMatrix | str, x: float | None = None) -> np.ndarray:
    name = NamedMatrix(name)
    if name is NamedMatrix.H_FAMILY:
        if x is None:
            raise ValueError("the H family needs a parameter x")
        return h_family(x)
    return {
        NamedMatrix.JARRE_W: jarre_w,
        NamedMatrix.HORN: horn,
        NamedMatrix.CIRCULANT_A: circulant_a,
        NamedMatrix.EXTREMAL_Y: extremal_y,
    }[name]()


#: Witnesses shipped with the package are known to be copositive.
HORN_PROVENANCE = "builtin:horn (copositive, not SPN)"
USER_PROVENANCE = "user-supplied (copositivity not verified)"

# ---------------------------------------------------------------------------
# cone specs and verdict types


@dataclass(frozen=True)
class SparsePSD:
    G: Graph

    @property
    def n(self) -> int:
        return self.G.n


@dataclass(frozen=True, eq=False)
class ScaledCorrelation:
    x: np.ndarray

    def __post_init__(self):
        x = np.array(self.x, dtype=float).ravel()
        if x.size == 0 or not np.all(np.isfinite(x)) or x.min() < 0 or not np.any(x > 0):
            raise InvariantViolation("x must be non-negative and not all zero")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return self.x.size


@dataclass(frozen=True)
class DNN:
    n: int


ConeSpec = Union[SparsePSD, ScaledCorrelation, DNN]


def describe_cone(c: ConeSpec) -> str:
    if isinstance(c, SparsePSD):
        edges = ",".join(f"{i + 1}-{j + 1}" for i, j in c.G.sorted_edges())
        return f"SparsePSD(n={c.n};{edges})"
    if isinstance(c, ScaledCorrelation):
        return "ScaledCorrelation(" + ",".join(f"{v:.6g}" for v in c.x) + ")"
    return f"DNN({c.n})"


class Check(NamedTuple):
    """One numeric test: ``value`` compared against ``threshold``."""

    test: str
    value: float
    threshold: float
    violated: bool


class R1Status(str, enum.Enum):
    MEMBER = "Member"
    NOT_MEMBER = "NotMember"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class R1Verdict:
    status: R1Status
    evidence: list[Check] = field(default_factory=list)

    def __post_init__(self):
        if self.status is R1Status.NOT_MEMBER and not any(c.violated for c in self.evidence):
            raise InvariantViolation("NotMember needs at least one violated check")


class ExtremalityReport(NamedTuple):
    rank: int
    perturbation_dim: int
    is_extremal: bool


# ---------------------------------------------------------------------------
# membership


def _check_shape(x: np.ndarray, c: ConeSpec) -> None:
    if x.shape != (c.n, c.n):
        raise DimensionMismatch(f"matrix is {x.shape}, cone has n={c.n}")


def diagonal_scale(x: np.ndarray, weights: np.ndarray) -> float:
    """Least-squares ``lambda`` with ``diag(x) ~ lambda * weights``."""
    return float(np.dot(x.diagonal().real, weights) / np.dot(weights, weights))


def cone_membership(x, c: ConeSpec, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, list[Check]]:
    x = require_hermitian(x)
    _check_shape(x, c)
    floor = tol.zero_eps * scale(x)
    ok, lmin = is_psd(x, tol)
    evidence = [Check("psd.lambda_min", lmin, -tol.psd_eps * scale(x), not ok)]
    if isinstance(c, SparsePSD):
        extra = len(graph_of_matrix(x, tol).edges - c.G.edges)
        evidence.append(Check("pattern.edges_outside_graph", float(extra), 0.0, extra > 0))
    elif isinstance(c, ScaledCorrelation):
        lam = diagonal_scale(x, c.x)
        resid = float(np.abs(x.diagonal().real - lam * c.x).max())
        evidence.append(Check("diagonal.scale", lam, -floor, lam < -floor))
        evidence.append(Check("diagonal.residual", resid, floor, resid > floor))
    elif isinstance(c, DNN):
        neg = float(-min(0.0, x.real.min()))
        imag = float(np.abs(x.imag).max())
        evidence.append(Check("entrywise.most_negative", -neg, -floor, neg > floor))
        evidence.append(Check("entrywise.imag", imag, floor, imag > floor))
    else:
        raise TypeError(f"unknown cone {c!r}")
    return not any(e.violated for e in evidence), evidence


def _require_member(x, c: ConeSpec, tol: Tolerance, exc=NotInCone) -> np.ndarray:
    x = require_hermitian(x)
    ok, ev = cone_membership(x, c, tol)
    if not ok:
        bad = ", ".join(f"{e.test}={e.value:.3e}" for e in ev if e.violated)
        raise exc(f"matrix is not in {describe_cone(c)}: {bad}")
    return x


# ---------------------------------------------------------------------------
# sparse cone


def _comparison_check(x: np.ndarray, idx, tol: Tolerance, label: str) -> Check:
    sub = principal_submatrix(x, idx)
    m = comparison_matrix(sub)
    lmin = lambda_min(m)
    thr = -tol.psd_eps * scale(m)
    return Check(label, lmin, thr, lmin < thr)


def sparse_r1_test(
    x, g: Graph, tol: Tolerance = DEFAULT_TOL, exhaustive: bool = False
) -> R1Verdict:
    """Is ``x`` in ``R1[M+(G)]``?

    Exact on chordal patterns (always yes) and triangle-free patterns
    (``M(x) >= 0``). Otherwise every chordless cycle found (or, with
    ``exhaustive``, every triangle-free induced subgraph) is checked and a pass
    is inconclusive.
    """
    x = _require_member(x, SparsePSD(g), tol)
    chordal, _ = is_chordal(g)
    if chordal:
        return R1Verdict(R1Status.MEMBER, [Check("graph.chordal", 1.0, 1.0, False)])
    if is_triangle_free(g):
        chk = _comparison_check(x, range(g.n), tol, "comparison.lambda_min")
        status = R1Status.NOT_MEMBER if chk.violated else R1Status.MEMBER
        return R1Verdict(status, [chk])
    evidence = []
    subsets = (
        triangle_free_induced_subsets(g) if exhaustive else iter_chordless_cycles(g)
    )
    for sub in subsets:
        label = "comparison.induced[" + "-".join(str(v + 1) for v in sub) + "]"
        evidence.append(_comparison_check(x, sorted(sub), tol, label))
    if any(c.violated for c in evidence):
        return R1Verdict(R1Status.NOT_MEMBER, evidence)
    return R1Verdict(R1Status.INCONCLUSIVE, evidence)


def clique_psd_check(z, g: Graph, tol: Tolerance = DEFAULT_TOL) -> bool:
    """``Z[I] >= 0`` for every maximal clique ``I`` of ``g``."""
    z = require_hermitian(z)
    if z.shape != (g.n, g.n):
        raise DimensionMismatch(f"Z is {z.shape}, graph has n={g.n}")
    for clique in maximal_cliques(g):
        if not is_psd(principal_submatrix(z, clique), tol)[0]:
            return False
    for v in range(g.n):
        if z[v, v].real < -tol.psd_eps * scale(z):
            return False
    return True


def comparison_witness(x) -> np.ndarray:
    """``Z`` with unit diagonal and ``Z_ij = -exp(-i arg X_ij)``, so ``Z o X = M(X)``."""
    x = as_matrix(x)
    mag = np.abs(x)
    phase = np.where(mag > 0, x / np.where(mag > 0, mag, 1.0), 1.0)
    z = -phase.conj()
    np.fill_diagonal(z, 1.0)
    return z


def schur_witness_apply(
    z, x, g: Graph, tol: Tolerance = DEFAULT_TOL
) -> tuple[bool, float]:
    """``lambda_min(Z o X)``; negative certifies ``X`` outside ``R1[M+(G)]``."""
    z = as_matrix(z)
    x = require_hermitian(x)
    if z.shape != x.shape:
        raise DimensionMismatch(f"Z is {z.shape}, X is {x.shape}")
    try:
        in_dual = clique_psd_check(z, g, tol)
    except Exception as exc:
        raise WitnessNotInDualCone(str(exc)) from exc
    if not in_dual:
        raise WitnessNotInDualCone("Z[I] is not PSD for some clique I")
    prod = z * x
    lmin = lambda_min(prod)
    return lmin < -tol.psd_eps * scale(prod), lmin


# ---------------------------------------------------------------------------
# scaled correlation cone

#: ``max <z|W|z>`` over the 4-torus; divided by ``n = 4`` it bounds ``Tr(W X) / Tr(X)``.
JARRE_TORUS_MAX = 6.0


def _normalize_correlation(x: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    support = np.flatnonzero(weights > 0)
    sub = principal_submatrix(x, support)
    inv = 1.0 / np.sqrt(weights[support])
    return sub * np.outer(inv, inv), support


def corr_r1_witness(
    xm, tol: Tolerance = DEFAULT_TOL, weights=None
) -> tuple[bool, float]:
    """``Tr(W X) - (6/4) Tr(X)``; positive certifies ``X`` outside ``R1[M4+[e]]``.

    With ``weights``, ``X`` is first taken from ``M4+[weights]`` to ``M4+[e]`` by
    conjugating with ``D_{1/sqrt(weights)}``.
    """
    xm = require_hermitian(xm)
    if xm.shape != (4, 4):
        raise WrongDimension(f"the correlation witness is 4x4-specific, got {xm.shape}")
    w = np.ones(4) if weights is None else np.asarray(weights, dtype=float)
    xm = _require_member(xm, ScaledCorrelation(w), tol)
    xn, support = _normalize_correlation(xm, w)
    if support.size < 4:
        return False, 0.0
    value = _jarre_value(jarre_w(), xn)
    return value > tol.psd_eps * scale(xn), value


def _jarre_value(w: np.ndarray, xn: np.ndarray) -> float:
    return float(np.real(np.sum(w * xn.T)) - JARRE_TORUS_MAX / 4.0 * np.trace(xn).real)


def torus_max_search(
    w, restarts: int = 64, steps: int = 500, seed: int = 0
) -> tuple[float, np.ndarray]:
    """Maximize ``<z|W|z>`` over unit-modulus ``z`` by cyclic coordinate ascent.

    Each coordinate update is exact: with the others fixed, the objective is
    ``2 Re(conj(z_k) s_k) + const`` where ``s_k = sum_{j != k} W_kj z_j``.
    The result is a lower bound on the true maximum and depends only on ``seed``.
    """
    w = require_hermitian(w)
    n = w.shape[0]
    rng = np.random.default_rng(seed)
    starts = np.exp(2j * np.pi * rng.random((restarts, n)))
    off = w - np.diag(w.diagonal())
    best_val, best_z = -np.inf, starts[0]
    for z in starts:
        z = z.copy()
        val = float(np.real(np.vdot(z, w @ z)))
        for _ in range(steps):
            for k in range(n):
                s = off[k] @ z
                mag = abs(s)
                if mag > 0:
                    z[k] = s / mag
            new = float(np.real(np.vdot(z, w @ z)))
            if new - val <= 1e-15 * max(1.0, abs(new)):
                val = max(val, new)
                break
            val = new
        if val > best_val:
            best_val, best_z = val, z
    return best_val, best_z


def corr_r1_test(x, weights, tol: Tolerance = DEFAULT_TOL) -> R1Verdict:
    """Refute ``R1[Mn+[weights]]`` with the 4x4 witness on every principal 4x4 block.

    Blocks are tried under all orderings and with ``W`` and its conjugate,
    each of which remains a valid witness.
    """
    weights = np.asarray(weights, dtype=float)
    x = _require_member(x, ScaledCorrelation(weights), tol)
    xn, support = _normalize_correlation(x, weights)
    n = support.size
    if n <= 3:
        return R1Verdict(R1Status.MEMBER, [Check("correlation.n<=3", float(n), 3.0, False)])
    thr = tol.psd_eps * scale(xn)
    w = jarre_w()
    evidence = []
    if n == 4:
        val = _jarre_value(w, xn)
        evidence.append(Check("jarre.value", val, thr, val > thr))
    best, where = -np.inf, None
    for sub in combinations(range(n), 4):
        block = principal_submatrix(xn, sub)
        for perm in permutations(range(4)):
            pb = principal_submatrix(block, perm)
            for wit in (w, w.conj()):
                val = _jarre_value(wit, pb)
                if val > best:
                    best, where = val, [sub[p] for p in perm]
    label = "jarre.battery[" + "-".join(str(support[v] + 1) for v in where) + "]"
    evidence.append(Check(label, best, thr, best > thr))
    if any(c.violated for c in evidence):
        return R1Verdict(R1Status.NOT_MEMBER, evidence)
    return R1Verdict(R1Status.INCONCLUSIVE, evidence)


# ---------------------------------------------------------------------------
# doubly non-negative cone


def copositive_witness_apply(
    zw, x, tol: Tolerance = DEFAULT_TOL
) -> tuple[bool, float]:
    """``Tr(Zw X)``; negative certifies ``X`` outside ``CP_n`` provided ``Zw`` is copositive.

    Copositivity of ``Zw`` is the caller's claim and is not checked.
    """
    zw = require_hermitian(zw)
    x = require_hermitian(x)
    if zw.shape != x.shape:
        raise DimensionMismatch(f"witness is {zw.shape}, matrix is {x.shape}")
    if np.abs(zw.imag).max() > 0:
        raise ValueError("copositive witnesses must be real symmetric")
    x = _require_member(x, DNN(x.shape[0]), tol, exc=NotDNN)
    value = float(np.real(np.sum(zw * x.T)))
    return value < -tol.psd_eps * scale(x) * scale(zw), value


def _dihedral_classes(k: int) -> list[tuple[int, ...]]:
    # orderings of range(k) modulo rotation and reflection
    seen, out = set(), []
    for p in permutations(range(k)):
        if p[0] != 0:
            continue
        rev = (p[0],) + tuple(reversed(p[1:]))
        if rev in seen:
            continue
        seen.add(p)
        out.append(p)
    return out


def dnn_r1_test(
    x,
    tol: Tolerance = DEFAULT_TOL,
    witnesses: Sequence[tuple[str, np.ndarray]] = (),
) -> R1Verdict:
    """Refute complete positivity.

    ``n <= 4``: every DNN matrix is completely positive. Otherwise Horn's
    matrix is tried on every principal 5x5 block in every cyclic ordering,
    followed by any extra ``(provenance, witness)`` pairs of full size.
    """
    x = _require_member(x, DNN(as_matrix(x).shape[0]), tol, exc=NotDNN)
    n = x.shape[0]
    if n <= 4:
        return R1Verdict(R1Status.MEMBER, [Check("dnn.n<=4", float(n), 4.0, False)])
    h = horn()
    thr = -tol.psd_eps * scale(x) * scale(h)
    best, where = np.inf, None
    orders = _dihedral_classes(5)
    for sub in combinations(range(n), 5):
        block = principal_submatrix(x, sub)
        for perm in orders:
            val = float(np.real(np.sum(h * principal_submatrix(block, perm).T)))
            if val < best:
                best, where = val, [sub[p] for p in perm]
    evidence = [
        Check("horn.battery[" + "-".join(str(v + 1) for v in where) + "]", best, thr, best < thr)
    ]
    for provenance, zw in witnesses:
        violated, val = copositive_witness_apply(zw, x, tol)
        evidence.append(Check(f"copositive[{provenance}]", val, 0.0, violated))
    if any(c.violated for c in evidence):
        return R1Verdict(R1Status.NOT_MEMBER, evidence)
    return R1Verdict(R1Status.INCONCLUSIVE, evidence)


def dnn_rank_bound_check(x, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Necessary rank condition for extremal DNN matrices."""
    x = _require_member(x, DNN(as_matrix(x).shape[0]), tol, exc=NotDNN)
    n = x.shape[0]
    r = rank_of(x, tol)
    if n <= 2:
        bound = 1
    elif n % 2 == 0:
        bound = n - 3
    else:
        bound = n - 2
    return r <= max(bound, 1)


# ---------------------------------------------------------------------------
# dispatch


def r1_test(
    x, c: ConeSpec, tol: Tolerance = DEFAULT_TOL, exhaustive: bool = False
) -> R1Verdict:
    if isinstance(c, SparsePSD):
        return sparse_r1_test(x, c.G, tol, exhaustive=exhaustive)
    if isinstance(c, ScaledCorrelation):
        return corr_r1_test(x, c.x, tol)
    if isinstance(c, DNN):
        return dnn_r1_test(x, tol)
    raise TypeError(f"unknown cone {c!r}")


# ---------------------------------------------------------------------------
# extremality


def _hermitian_basis(r: int) -> list[np.ndarray]:
    basis = []
    for k in range(r):
        e = np.zeros((r, r), dtype=np.complex128)
        e[k, k] = 1.0
        basis.append(e)
    for k, l in combinations(range(r), 2):
        e = np.zeros((r, r), dtype=np.complex128)
        e[k, l] = e[l, k] = 1.0
        basis.append(e)
        e = np.zeros((r, r), dtype=np.complex128)
        e[k, l], e[l, k] = 1j, -1j
        basis.append(e)
    return basis


def _nullity(a: np.ndarray, cols: int) -> int:
    if a.size == 0:
        return cols
    sv = np.linalg.svd(a, compute_uv=False)
    thr = 1e-9 * max(1.0, sv[0])
    return cols - int(np.sum(sv > thr))


def extremality_test(x, c: ConeSpec, tol: Tolerance = DEFAULT_TOL) -> ExtremalityReport:
    """Dimension of the two-sided feasible perturbation space of ``x`` in ``c``.

    Perturbations live in ``{Q B Q* : B Hermitian}`` with ``Q`` an orthonormal
    basis of ``ran(x)``; the cone's linear constraints (zero pattern, diagonal
    proportionality, zero/real entries) cut this down. ``x`` spans an extreme
    ray iff only multiples of ``x`` survive.
    """
    x = _require_member(x, c, tol)
    q = range_basis(x, tol)
    r = q.shape[1]
    n = x.shape[0]
    # one column per real parameter of B, one row per real linear constraint on H
    stack = np.stack([q @ b @ q.conj().T for b in _hermitian_basis(r)]) if r else np.zeros((0, n, n))
    rows: list[np.ndarray] = []
    width = r * r
    iu, ju = np.triu_indices(n, k=1)
    if isinstance(c, SparsePSD):
        for i, j in zip(iu, ju):
            if not c.G.has_edge(int(i), int(j)):
                rows.append(stack[:, i, j].real)
                rows.append(stack[:, i, j].imag)
    elif isinstance(c, ScaledCorrelation):
        width += 1  # free diagonal scale mu in H_ii = mu * x_i
        for i in range(n):
            rows.append(np.concatenate([stack[:, i, i].real, [-c.x[i]]]))
    elif isinstance(c, DNN):
        thr = tol.zero_eps * scale(x)
        for i, j in zip(iu, ju):
            rows.append(stack[:, i, j].imag)
            if abs(x[i, j]) <= thr:
                rows.append(stack[:, i, j].real)
    else:
        raise TypeError(f"unknown cone {c!r}")
    a = np.array([np.pad(row, (0, width - row.size)) for row in rows]) if rows else np.zeros((0, width))
    dim = _nullity(a, width)
    return ExtremalityReport(r, dim, dim == 1)


def span_dimension(vectors) -> int:
    """Real dimension of ``span{v v*}`` inside the Hermitian ``r x r`` matrices."""
    vecs = [np.asarray(v, dtype=np.complex128).ravel() for v in vectors]
    if not vecs:
        return 0
    r = vecs[0].size
    iu, ju = np.triu_indices(r, k=1)
    rows = []
    for v in vecs:
        p = np.outer(v, v.conj())
        rows.append(np.concatenate([p.diagonal().real, p[iu, ju].real, p[iu, ju].imag]))
    sv = np.linalg.svd(np.array(rows), compute_uv=False)
    return int(np.sum(sv > 1e-9 * max(1.0, sv[0])))


def gram_rows(x, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Rows ``v_i`` of a factor with ``X = V V*`` and ``V`` of width ``rank(X)``."""
    x = require_hermitian(x)
    w, vecs = herm_eig(x)
    keep = np.abs(w) > tol.zero_eps * scale(x)
    return vecs[:, keep] * np.sqrt(np.clip(w[keep], 0.0, None))


def gram_span_dimension(x, tol: Tolerance = DEFAULT_TOL) -> tuple[int, int]:
    """``(rank, dim span{v_i* v_i})`` for the Gram rows of ``x``; equal to ``rank**2`` on
    extreme correlation matrices."""
    rows = gram_rows(x, tol)
    return rows.shape[1], span_dimension(rows.conj())


__all__ = [
    "Check",
    "ConeSpec",
    "DNN",
    "ExtremalityReport",
    "HORN_PROVENANCE",
    "NamedMatrix",
    "R1Status",
    "R1Verdict",
    "ScaledCorrelation",
    "SparsePSD",
    "USER_PROVENANCE",
    "circulant_a",
    "clique_psd_check",
    "comparison_witness",
    "cone_membership",
    "copositive_witness_apply",
    "corr_r1_test",
    "corr_r1_witness",
    "dnn_r1_test",
    "dnn_rank_bound_check",
    "extremal_y",
    "extremality_test",
    "gram_span_dimension",
    "h_family",
    "horn",
    "jarre_w",
    "named_matrix",
    "r1_test",
    "schur_witness_apply",
    "span_dimension",
    "sparse_r1_test",
    "torus_max_search",
]
