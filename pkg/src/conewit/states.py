"""Bipartite states, LDOI triples, faces and face maps.

States are kept unnormalized. An LDOI triple ``(X, Y, Z)`` with equal
diagonals stands for the ``d**2 x d**2`` matrix

    sum_ij X_ij |ij><ij| + sum_{i!=j} Y_ij |ii><jj| + sum_{i!=j} Z_ij |ij><ji|

whose partial transpose is the triple ``(X, Z, Y)``. Both PSD-ness and PPT-ness
therefore reduce to ``Y`` (resp. ``Z``) being PSD plus a 2x2 determinant
condition on each pair ``{|ij>, |ji>}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from conewit.errors import (
    BadDiagonal,
    DimensionMismatch,
    InvariantViolation,
    NotOnFace,
    PreconditionViolation,
)
from conewit.graphs import Graph, graph_of_matrix, is_subgraph
from conewit.matcore import (
    DEFAULT_TOL,
    HERMITIAN_RTOL,
    Tolerance,
    as_matrix,
    hermitian_defect,
    is_psd,
    lambda_min,
    norms,
    partial_transpose,
    require_hermitian,
    scale,
)
from conewit.cones import h_family

_DIAG_ATOL = 1e-12
MAX_BUILDER_DIM = 8


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """An unnormalized PSD operator on ``C^d (x) C^d``."""

    d: int
    rho: np.ndarray
    tol: Tolerance = field(default=DEFAULT_TOL, repr=False)
    lambda_min: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rho = as_matrix(self.rho)
        if rho.shape != (self.d * self.d, self.d * self.d):
            raise DimensionMismatch(f"rho must be {self.d ** 2}x{self.d ** 2}, got {rho.shape}")
        if hermitian_defect(rho) > HERMITIAN_RTOL * scale(rho):
            raise InvariantViolation("rho is not Hermitian")
        ok, lmin = is_psd(rho, self.tol)
        if not ok:
            raise InvariantViolation(f"rho is not PSD (lambda_min = {lmin:.3e})")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "lambda_min", lmin)

    @classmethod
    def from_matrix(cls, rho, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
        rho = as_matrix(rho)
        d = int(round(np.sqrt(rho.shape[0])))
        if d * d != rho.shape[0]:
            raise DimensionMismatch(f"{rho.shape[0]} is not a perfect square")
        return cls(d, rho, tol)

    def normalized(self) -> np.ndarray:
        return self.rho / np.trace(self.rho).real


@dataclass(frozen=True, eq=False)
class LdoiTriple:
    X: np.ndarray
    Y: np.ndarray
    Z: np.ndarray

    def __post_init__(self):
        X, Y, Z = (as_matrix(m) for m in (self.X, self.Y, self.Z))
        d = X.shape[0]
        for name, m in (("X", X), ("Y", Y), ("Z", Z)):
            if m.shape != (d, d):
                raise DimensionMismatch(f"{name} must be {d}x{d}, got {m.shape}")
        if np.abs(X.imag).max() > _DIAG_ATOL or X.real.min() < -_DIAG_ATOL:
            raise InvariantViolation("X must be entrywise real and non-negative")
        for name, m in (("Y", Y), ("Z", Z)):
            if hermitian_defect(m) > HERMITIAN_RTOL * scale(m):
                raise InvariantViolation(f"{name} must be Hermitian")
        dx, dy, dz = X.diagonal(), Y.diagonal(), Z.diagonal()
        if np.abs(dx - dy).max() > _DIAG_ATOL or np.abs(dx - dz).max() > _DIAG_ATOL:
            raise InvariantViolation("X, Y, Z must share the same diagonal")
        for name, m in (("X", X), ("Y", Y), ("Z", Z)):
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    @property
    def d(self) -> int:
        return self.X.shape[0]


StateLike = Union[BipartiteState, LdoiTriple]


@dataclass(frozen=True)
class Sparse:
    H: Graph
    kind: str = field(default="sparse", init=False)


@dataclass(frozen=True, eq=False)
class RestrictedRank1:
    phi: np.ndarray
    kind: str = field(default="rank1", init=False)

    def __post_init__(self):
        phi = np.array(self.phi, dtype=np.complex128).ravel()
        if phi.size == 0 or not np.all(np.isfinite(phi)) or np.linalg.norm(phi) == 0:
            raise InvariantViolation("phi must be a finite non-zero vector")
        phi.setflags(write=False)
        object.__setattr__(self, "phi", phi)


@dataclass(frozen=True)
class Bosonic:
    kind: str = field(default="bosonic", init=False)


FaceSpec = Union[Sparse, RestrictedRank1, Bosonic]


def describe_face(f: FaceSpec) -> str:
    if isinstance(f, Sparse):
        edges = ",".join(f"{i + 1}-{j + 1}" for i, j in f.H.sorted_edges())
        return f"sparse(n={f.H.n};{edges})"
    if isinstance(f, RestrictedRank1):
        return "rank1(" + ",".join(f"{z.real:.6g}{z.imag:+.6g}j" for z in f.phi) + ")"
    return "bosonic"


def ldoi_matrix(t: LdoiTriple) -> np.ndarray:
    """Dense ``d**2 x d**2`` matrix of the triple, with no PSD check."""
    d = t.d
    rho = np.zeros((d, d, d, d), dtype=np.complex128)  # indices (i, j, k, l) of |ij><kl|
    idx = np.arange(d)
    ii, jj = np.meshgrid(idx, idx, indexing="ij")
    rho[ii, jj, ii, jj] = t.X
    off = ii != jj
    rho[ii[off], ii[off], jj[off], jj[off]] = t.Y[off]
    rho[ii[off], jj[off], jj[off], ii[off]] = t.Z[off]
    return rho.reshape(d * d, d * d)


def ldoi_to_dense(t: LdoiTriple, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    return BipartiteState(t.d, ldoi_matrix(t), tol)


def _ldoi_frobenius(t: LdoiTriple) -> float:
    off = ~np.eye(t.d, dtype=bool)
    sq = np.sum(np.abs(t.X) ** 2) + np.sum(np.abs(t.Y[off]) ** 2) + np.sum(np.abs(t.Z[off]) ** 2)
    return float(np.sqrt(sq))


def _pair_blocks_ok(t: LdoiTriple, coh: np.ndarray, delta: float) -> bool:
    # 2x2 block [[X_ij, c], [c*, X_ji]] has lambda_min >= -delta
    # iff (X_ij + delta)(X_ji + delta) >= |c|^2
    X = t.X.real
    off = ~np.eye(t.d, dtype=bool)
    lhs = (X + delta) * (X.T + delta)
    return bool(np.all(lhs[off] >= np.abs(coh[off]) ** 2))


def _psd_floor(t: LdoiTriple, tol: Tolerance) -> float:
    return tol.psd_eps * max(1.0, _ldoi_frobenius(t))


def ldoi_is_psd(t: LdoiTriple, tol: Tolerance = DEFAULT_TOL) -> bool:
    """PSD test from the triple alone.

    Uses the same absolute floor as ``is_psd`` on the dense matrix, so the two
    decisions coincide up to rounding.
    """
    delta = _psd_floor(t, tol)
    return lambda_min(t.Y) >= -delta and _pair_blocks_ok(t, t.Z, delta)


def ldoi_is_ppt(t: LdoiTriple, tol: Tolerance = DEFAULT_TOL) -> bool:
    """PSD and PPT: ``Y, Z >= 0`` and ``X_ij X_ji >= max(|Y_ij|^2, |Z_ij|^2)`` (with floor)."""
    delta = _psd_floor(t, tol)
    return (
        lambda_min(t.Y) >= -delta
        and lambda_min(t.Z) >= -delta
        and _pair_blocks_ok(t, t.Z, delta)
        and _pair_blocks_ok(t, t.Y, delta)
    )


def ldoi_ccnr_satisfied(t: LdoiTriple) -> tuple[bool, float, float]:
    """Realignment criterion on the triple: ``||X||_1 - ||X||_tr >= 2 sum_{i<j} max(|Y_ij|, |Z_ij|)``."""
    nx = norms(t.X)
    lhs = nx.entrywise_one - nx.trace_norm
    iu, ju = np.triu_indices(t.d, k=1)
    rhs = 2.0 * float(np.sum(np.maximum(np.abs(t.Y[iu, ju]), np.abs(t.Z[iu, ju]))))
    return lhs >= rhs - 1e-9, lhs, rhs


def _rho_of(s: StateLike) -> tuple[int, np.ndarray]:
    if isinstance(s, LdoiTriple):
        return s.d, ldoi_matrix(s)
    return s.d, s.rho


def _local_basis_change(rho: np.ndarray, d: int, basis_a, basis_b) -> np.ndarray:
    if basis_a is None and basis_b is None:
        return rho
    u = np.eye(d, dtype=np.complex128) if basis_a is None else _unitary(basis_a, d)
    v = np.eye(d, dtype=np.complex128) if basis_b is None else _unitary(basis_b, d)
    w = np.kron(u, v)
    return w.conj().T @ rho @ w


def _unitary(u, d: int) -> np.ndarray:
    u = as_matrix(u)
    if u.shape != (d, d):
        raise DimensionMismatch(f"basis must be {d}x{d}, got {u.shape}")
    if np.linalg.norm(u.conj().T @ u - np.eye(d)) > 1e-9:
        raise InvariantViolation("basis matrix is not unitary")
    return u


def diag_matrix(s: StateLike, basis_a=None, basis_b=None) -> np.ndarray:
    """``D(rho)_ij = <a_i b_j| rho |a_i b_j>`` (computational basis by default)."""
    d, rho = _rho_of(s)
    rho = _local_basis_change(rho, d, basis_a, basis_b)
    return rho.diagonal().reshape(d, d).real.astype(np.complex128)


def flip_operator(d: int) -> np.ndarray:
    f = np.zeros((d, d, d, d))
    i, j = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    f[i, j, j, i] = 1.0
    return f.reshape(d * d, d * d).astype(np.complex128)


def _v_block(rho: np.ndarray, d: int) -> np.ndarray:
    idx = np.arange(d) * (d + 1)
    return rho[np.ix_(idx, idx)]


def face_residual(s: StateLike, f: FaceSpec, tol: Tolerance = DEFAULT_TOL) -> float:
    """How far ``s`` is from the face ``f`` (0 when it lies on it).

    For a sparse face the residual counts the edges of ``G(D(rho))`` missing
    from ``H``; otherwise it is a relative Frobenius defect.
    """
    d, rho = _rho_of(s)
    if isinstance(f, Sparse):
        if f.H.n != d:
            raise DimensionMismatch(f"face graph has {f.H.n} vertices, state has d={d}")
        g = graph_of_matrix(diag_matrix(s), tol)
        return float(len(g.edges - f.H.edges))
    if isinstance(f, RestrictedRank1):
        if f.phi.size != d:
            raise DimensionMismatch(f"phi has length {f.phi.size}, state has d={d}")
        r = _v_block(rho, d)
        u = f.phi / np.linalg.norm(f.phi)
        c = np.vdot(u, r @ u)
        return float(np.linalg.norm(r - c * np.outer(u, u.conj())) / scale(r))
    if isinstance(f, Bosonic):
        return float(np.linalg.norm(rho @ flip_operator(d) - rho) / scale(rho))
    raise TypeError(f"unknown face {f!r}")


def face_check(s: StateLike, f: FaceSpec, tol: Tolerance = DEFAULT_TOL) -> bool:
    res = face_residual(s, f, tol)
    if isinstance(f, Sparse):
        return res == 0.0
    return res <= tol.zero_eps


@dataclass(frozen=True, eq=False)
class FaceMap:
    K: np.ndarray
    M: np.ndarray
    transposed: bool


def diagonal_isometry(d: int, basis_a=None, basis_b=None) -> np.ndarray:
    """``K = sum_i |i><a_i b_i|`` as a ``d x d**2`` matrix."""
    u = np.eye(d, dtype=np.complex128) if basis_a is None else _unitary(basis_a, d)
    v = np.eye(d, dtype=np.complex128) if basis_b is None else _unitary(basis_b, d)
    k = np.zeros((d, d * d), dtype=np.complex128)
    for i in range(d):
        k[i] = np.kron(u[:, i], v[:, i]).conj()
    return k


def face_map(
    s: StateLike, f: FaceSpec, tol: Tolerance = DEFAULT_TOL, basis_a=None, basis_b=None
) -> FaceMap:
    """Compress ``s`` to the ``d x d`` matrix whose cone membership encodes PPT on ``f``.

    Sparse faces use ``K rho K*``; the rank-1 and bosonic faces use the partial
    transpose, ``K rho^T_B K*``, with ``K = sum_i |i><ii|``.
    """
    if not face_check(s, f, tol):
        res = face_residual(s, f, tol)
        raise NotOnFace(f"state is not on face {describe_face(f)} (residual {res:.3e})", res)
    d, rho = _rho_of(s)
    if isinstance(f, Sparse):
        k = diagonal_isometry(d, basis_a, basis_b)
        return FaceMap(k, k @ rho @ k.conj().T, False)
    k = diagonal_isometry(d)
    m = k @ partial_transpose(rho, d) @ k.conj().T
    return FaceMap(k, m, True)


def _check_hermitian(name: str, m) -> np.ndarray:
    try:
        return require_hermitian(m)
    except Exception as exc:
        raise PreconditionViolation(f"{name} must be Hermitian") from exc


def build_sparse_family(g: Graph, Y, Z, X, tol: Tolerance = DEFAULT_TOL) -> LdoiTriple:
    """LDOI state on the sparse face ``F[G]`` from a ``G``-patterned ``Y``.

    Requires ``G(Y), G(Z), G(X)`` inside ``G``, ``Z >= 0``, matching diagonals,
    ``X >= 0`` entrywise and ``X_ij X_ji >= |Z_ij|^2``. The state is PPT
    entangled whenever ``Y`` is not rank-1 generated in the sparse cone.
    """
    Y = _check_hermitian("Y", Y)
    Z = _check_hermitian("Z", Z)
    X = as_matrix(X)
    d = g.n
    if d > MAX_BUILDER_DIM:
        raise PreconditionViolation(f"builders support d <= {MAX_BUILDER_DIM}")
    for name, m in (("X", X), ("Y", Y), ("Z", Z)):
        if m.shape != (d, d):
            raise PreconditionViolation(f"{name} must be {d}x{d}")
        if not is_subgraph(graph_of_matrix(m, tol), g):
            raise PreconditionViolation(f"G({name}) is not contained in G")
    if np.abs(X.imag).max() > _DIAG_ATOL or X.real.min() < -_DIAG_ATOL:
        raise PreconditionViolation("X must be entrywise non-negative")
    if np.abs(X.diagonal() - Y.diagonal()).max() > _DIAG_ATOL:
        raise PreconditionViolation("diag(X) != diag(Y)")
    if np.abs(Z.diagonal() - Y.diagonal()).max() > _DIAG_ATOL:
        raise PreconditionViolation("diag(Z) != diag(Y)")
    ok, lmin = is_psd(Y, tol)
    if not ok:
        raise PreconditionViolation(f"Y >= 0 fails (lambda_min = {lmin:.3e})")
    ok, lmin = is_psd(Z, tol)
    if not ok:
        raise PreconditionViolation(f"Z >= 0 fails (lambda_min = {lmin:.3e})")
    Xr = X.real
    for i in range(d):
        for j in range(i + 1, d):
            need = abs(Z[i, j]) ** 2
            if Xr[i, j] * Xr[j, i] < need - tol.psd_eps * scale(X):
                raise PreconditionViolation(
                    f"X_{i + 1}{j + 1} X_{j + 1}{i + 1} >= |Z_{i + 1}{j + 1}|^2 fails "
                    f"({Xr[i, j] * Xr[j, i]:.6g} < {need:.6g})"
                )
    return LdoiTriple(Xr, Y, Z)


def build_corr_state(A, x: float) -> LdoiTriple:
    """``|w><w| + sum_{i!=j} A_ij |ij><ij| + sum_{i!=j} H(x)_ij |ij><ji|``, i.e. the triple ``(A, J_4, H(x))``."""
    A = as_matrix(A)
    if A.shape != (4, 4):
        raise DimensionMismatch("A must be 4x4")
    if np.abs(A.imag).max() > 0 or A.real.min() < 0:
        raise PreconditionViolation("A must be entrywise real and non-negative")
    if np.abs(A.diagonal() - 1.0).max() > _DIAG_ATOL:
        raise BadDiagonal("A must have unit diagonal")
    return LdoiTriple(A.real, np.ones((4, 4)), h_family(x))


def build_dicke_mixture(A, Y=None, tol: Tolerance = DEFAULT_TOL) -> LdoiTriple:
    """Bosonic LDOI triple ``(A, Y, A)``; ``Y=None`` gives a mixture of Dicke states."""
    A = as_matrix(A)
    d = A.shape[0]
    if A.shape != (d, d) or d > MAX_BUILDER_DIM:
        raise PreconditionViolation(f"A must be square with d <= {MAX_BUILDER_DIM}")
    if np.abs(A.imag).max() > 0 or np.abs(A - A.T).max() > 0:
        raise PreconditionViolation("A must be real symmetric")
    if A.real.min() < 0:
        raise PreconditionViolation("A must be entrywise non-negative")
    if Y is None:
        Y = np.diag(A.diagonal())
    Y = _check_hermitian("Y", Y)
    if Y.shape != (d, d):
        raise PreconditionViolation(f"Y must be {d}x{d}")
    if np.abs(Y.diagonal() - A.diagonal()).max() > _DIAG_ATOL:
        raise PreconditionViolation("diag(Y) != diag(A)")
    ok, lmin = is_psd(Y, tol)
    if not ok:
        raise PreconditionViolation(f"Y >= 0 fails (lambda_min = {lmin:.3e})")
    off = ~np.eye(d, dtype=bool)
    if np.any(np.abs(Y[off]) > A.real[off] + tol.psd_eps):
        raise PreconditionViolation("|A_ij| >= |Y_ij| fails")
    return LdoiTriple(A.real, Y, A.real)
