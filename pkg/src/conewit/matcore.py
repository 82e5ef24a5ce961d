"""Dense complex matrix kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every predicate
takes an explicit :class:`Tolerance`; thresholds are relative to
``max(1, ||X||_F)`` so that the O(1)-scaled matrices used throughout behave
like absolute tolerances.

The Hermitian eigensolver is a cyclic Jacobi method with round-robin
(tournament) ordering, so each round applies ``n // 2`` disjoint rotations at
once as a single dense unitary update.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from conewit.errors import DimensionMismatch, InvariantViolation, NonSquare, NotHermitian

HERMITIAN_RTOL = 1e-9
_MAX_SWEEPS = 60


@dataclass(frozen=True)
class Tolerance:
    """Relative floors for eigenvalue signs (``psd_eps``) and zero tests (``zero_eps``)."""

    psd_eps: float = 1e-9
    zero_eps: float = 1e-9

    def __post_init__(self):
        for name in ("psd_eps", "zero_eps"):
            val = getattr(self, name)
            if not (0.0 < val <= 1e-2):
                raise ValueError(f"{name} must lie in (0, 1e-2], got {val!r}")


DEFAULT_TOL = Tolerance()


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


class Norms(NamedTuple):
    entrywise_one: float
    trace_norm: float
    frobenius: float


def as_matrix(x) -> np.ndarray:
    """Coerce ``x`` to a 2-D finite complex128 array (copying)."""
    arr = np.array(x, dtype=np.complex128)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionMismatch(f"expected a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvariantViolation("matrix has non-finite entries")
    return arr


def scale(x: np.ndarray) -> float:
    """``max(1, ||x||_F)``, the reference magnitude for relative tolerances."""
    return max(1.0, float(np.linalg.norm(x)))


def _require_square(x: np.ndarray) -> None:
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {x.shape}")


def hermitian_defect(x: np.ndarray) -> float:
    return float(np.linalg.norm(x - x.conj().T))


def require_hermitian(x) -> np.ndarray:
    x = as_matrix(x)
    _require_square(x)
    if hermitian_defect(x) > HERMITIAN_RTOL * scale(x):
        raise NotHermitian(f"||X - X*||_F = {hermitian_defect(x):.3e} exceeds tolerance")
    return x


def _tournament(n: int) -> list[list[tuple[int, int]]]:
    # round-robin schedule; odd n gets a dummy player that sits out
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = []
        for k in range(m // 2):
            p, q = players[k], players[m - 1 - k]
            if p >= 0 and q >= 0:
                pairs.append((min(p, q), max(p, q)))
        rounds.append(pairs)
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


@lru_cache(maxsize=64)
def _round_indices(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    out = []
    for r in _tournament(n):
        idx = np.array(r, dtype=np.intp).T
        idx.setflags(write=False)
        out.append((idx[0], idx[1]))
    return tuple(out)


def herm_eig(x) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Returns eigenvalues in ascending order and the unitary whose columns are
    the matching eigenvectors.
    """
    a = require_hermitian(x)
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=np.complex128)
    if n == 1:
        return EigenDecomposition(a.real.diagonal().copy(), v)

    rounds = _round_indices(n)
    eye = np.eye(n, dtype=np.complex128)
    ref = float(np.linalg.norm(a))
    tiny = np.finfo(float).tiny
    for _ in range(_MAX_SWEEPS):
        off = np.linalg.norm(a - np.diag(a.diagonal()))
        if off <= 1e-14 * ref or off == 0.0:
            break
        for p, q in rounds:
            b = a[p, q]
            mag = np.abs(b)
            active = mag > 1e-300
            app = a[p, p].real
            aqq = a[q, q].real
            safe = np.where(active, mag, 1.0)
            tau = (aqq - app) / (2.0 * safe)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            phase = np.where(active, b / np.maximum(safe, tiny), 1.0)
            rot = eye.copy()
            rot[p, p] = phase * c
            rot[p, q] = phase * s
            rot[q, p] = -s
            rot[q, q] = c
            a = rot.conj().T @ a @ rot
            v = v @ rot
    w = a.diagonal().real
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order].copy(), v[:, order])


def lambda_min(x) -> float:
    return float(herm_eig(x).eigenvalues[0])


def is_psd(x, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """PSD test: ``lambda_min >= -psd_eps * max(1, ||X||_F)``; returns ``(ok, lambda_min)``."""
    x = require_hermitian(x)
    lmin = lambda_min(x)
    return lmin >= -tol.psd_eps * scale(x), lmin


def rank_of(x, tol: Tolerance = DEFAULT_TOL) -> int:
    x = require_hermitian(x)
    w = herm_eig(x).eigenvalues
    return int(np.sum(np.abs(w) > tol.zero_eps * scale(x)))


def range_basis(x, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (as columns) of the range of a Hermitian matrix."""
    x = require_hermitian(x)
    w, vecs = herm_eig(x)
    keep = np.abs(w) > tol.zero_eps * scale(x)
    return vecs[:, keep]


def partial_transpose(rho, d: int) -> np.ndarray:
    """Transpose on the second tensor factor of a ``d**2 x d**2`` matrix."""
    rho = as_matrix(rho)
    if rho.shape != (d * d, d * d):
        raise DimensionMismatch(f"expected {d * d}x{d * d}, got {rho.shape}")
    return rho.reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d).copy()


def comparison_matrix(x) -> np.ndarray:
    x = as_matrix(x)
    _require_square(x)
    m = -np.abs(x)
    np.fill_diagonal(m, np.abs(x.diagonal()))
    return m.astype(np.complex128)


def schur_product(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return a * b


def norms(x) -> Norms:
    x = as_matrix(x)
    sv = np.linalg.svd(x, compute_uv=False)
    return Norms(float(np.abs(x).sum()), float(sv.sum()), float(np.linalg.norm(x)))


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def diag_embed(q) -> np.ndarray:
    q = np.asarray(q, dtype=np.complex128).ravel()
    return np.diag(q)


def frob_inner(a, b) -> complex:
    """``Tr(A* B)``."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape} vs {b.shape}")
    return complex(np.sum(a.conj() * b))


def principal_submatrix(x: np.ndarray, idx) -> np.ndarray:
    idx = np.asarray(list(idx), dtype=int)
    return x[np.ix_(idx, idx)]
