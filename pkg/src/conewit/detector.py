"""Face-restricted detection of PPT entanglement.

Pipeline for a state ``rho`` and a face ``F``:

1. ``rho`` is PSD;
2. ``rho`` is PPT (otherwise it is reported as NPT and the method stops);
3. ``rho`` lies on ``F``;
4. ``rho`` is compressed to ``M = K rho K*`` (or ``K rho^T_B K*``);
5. the face fixes a cone ``C`` that contains ``M`` for every PPT state on ``F``;
6. that containment is re-checked numerically;
7. ``M`` is tested for membership in ``R1[C]``, which holds for every separable state on ``F``;
8. a refutation certifies entanglement;
9. optionally, an extreme ray ``M`` of rank >= 2 certifies an edge state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from conewit.cones import (
    DNN,
    ConeSpec,
    ExtremalityReport,
    R1Status,
    ScaledCorrelation,
    SparsePSD,
    cone_membership,
    describe_cone,
    extremality_test,
    r1_test,
)
from conewit.errors import FaceUnsatisfiable, InvariantViolation
from conewit.graphs import graph_of_matrix
from conewit.matcore import (
    DEFAULT_TOL,
    Tolerance,
    herm_eig,
    is_psd,
    partial_transpose,
    rank_of,
    scale,
)
from conewit.states import (
    BipartiteState,
    Bosonic,
    FaceSpec,
    LdoiTriple,
    RestrictedRank1,
    Sparse,
    StateLike,
    _v_block,
    describe_face,
    diag_matrix,
    face_check,
    face_map,
    face_residual,
    ldoi_ccnr_satisfied,
    ldoi_is_ppt,
    ldoi_matrix,
)


class Status(str, enum.Enum):
    ENTANGLED = "EntangledCertified"
    EDGE = "EdgeStateCertified"
    INCONCLUSIVE = "Inconclusive"
    NPT = "NptEntangled"


_RANK = {Status.EDGE: 3, Status.ENTANGLED: 2, Status.NPT: 1, Status.INCONCLUSIVE: 0}


class Evidence(NamedTuple):
    step: int
    test: str
    value: float
    threshold: float


#: Closed vocabulary of evidence tests (prefix before any ``[...]`` qualifier).
EVIDENCE_TESTS = {
    1: "psd.lambda_min: smallest eigenvalue of rho (threshold: -psd floor)",
    2: "ppt.lambda_min: smallest eigenvalue of rho^T_B; ldoi.ppt_shortcut: 1 if the "
    "triple inequalities hold; ccnr.margin: ||X||_1 - ||X||_tr - 2 sum max(|Y_ij|,|Z_ij|)",
    3: "face.residual: distance of rho from the face",
    4: "map.rank: rank of the compressed matrix M",
    6: "cone.<check>: membership of M in the face's cone",
    7: "comparison.*, jarre.*, horn.*, dnn.n<=4, correlation.n<=3, graph.chordal: rank-1 tests",
    9: "extremal.perturbation_dim, extremal.rank: edge-state certification",
}


class MatrixDigest(NamedTuple):
    fnv1a64: str
    rows: int
    cols: int


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def matrix_digest(m: np.ndarray) -> MatrixDigest:
    """FNV-1a over the row-major little-endian ``(re, im)`` float64 bytes of ``m``."""
    arr = np.ascontiguousarray(m, dtype="<c16")
    return MatrixDigest(f"{fnv1a64(arr.tobytes()):016x}", arr.shape[0], arr.shape[1])


@dataclass
class Verdict:
    status: Status
    face: FaceSpec
    cone: Optional[ConeSpec] = None
    mapped_matrix_digest: Optional[MatrixDigest] = None
    evidence: list[Evidence] = field(default_factory=list)
    mapped_matrix: Optional[np.ndarray] = field(default=None, repr=False)
    extremality: Optional[ExtremalityReport] = None
    r1_status: Optional[R1Status] = None

    @property
    def certified(self) -> bool:
        return self.status in (Status.ENTANGLED, Status.EDGE)

    def to_dict(self) -> dict:
        return {
            "verdict": self.status.value,
            "face": describe_face(self.face),
            "cone": None if self.cone is None else describe_cone(self.cone),
            "mapped_matrix": None
            if self.mapped_matrix_digest is None
            else self.mapped_matrix_digest._asdict(),
            "r1_status": None if self.r1_status is None else self.r1_status.value,
            "extremality": None if self.extremality is None else self.extremality._asdict(),
            "evidence": [e._asdict() for e in self.evidence],
        }


def cone_for_face(f: FaceSpec, d: int) -> ConeSpec:
    if isinstance(f, Sparse):
        return SparsePSD(f.H)
    if isinstance(f, RestrictedRank1):
        return ScaledCorrelation(np.abs(f.phi) ** 2)
    if isinstance(f, Bosonic):
        return DNN(d)
    raise TypeError(f"unknown face {f!r}")


def _dense(s: StateLike, tol: Tolerance) -> tuple[int, np.ndarray]:
    if isinstance(s, LdoiTriple):
        return s.d, ldoi_matrix(s)
    return s.d, s.rho


def detect(
    s: StateLike,
    f: FaceSpec,
    tol: Tolerance = DEFAULT_TOL,
    edge: bool = False,
    exhaustive: bool = False,
) -> Verdict:
    """Run the face-restricted rank-1 test on ``s``.

    Raises :class:`~conewit.errors.NotOnFace` if ``s`` is not on ``f`` and
    :class:`~conewit.errors.InvariantViolation` if ``s`` is not PSD.
    """
    d, rho = _dense(s, tol)
    ev: list[Evidence] = []

    if isinstance(s, BipartiteState) and s.tol == tol:
        lmin = s.lambda_min
        ok = True
    else:
        ok, lmin = is_psd(rho, tol)
    ev.append(Evidence(1, "psd.lambda_min", lmin, -tol.psd_eps * scale(rho)))
    if not ok:
        raise InvariantViolation(f"input is not PSD (lambda_min = {lmin:.3e})")

    pt = partial_transpose(rho, d)
    ppt, lmin_pt = is_psd(pt, tol)
    ev.append(Evidence(2, "ppt.lambda_min", lmin_pt, -tol.psd_eps * scale(pt)))
    if isinstance(s, LdoiTriple):
        ev.append(Evidence(2, "ldoi.ppt_shortcut", float(ldoi_is_ppt(s, tol)), 1.0))
        _, lhs, rhs = ldoi_ccnr_satisfied(s)
        ev.append(Evidence(2, "ccnr.margin", lhs - rhs, 0.0))
    if not ppt:
        return Verdict(Status.NPT, f, evidence=ev)

    ev.append(Evidence(3, "face.residual", face_residual(s, f, tol), _face_threshold(f, tol)))
    fm = face_map(s, f, tol)
    m = 0.5 * (fm.M + fm.M.conj().T)
    ev.append(Evidence(4, "map.rank", float(rank_of(m, tol)), tol.zero_eps * scale(m)))
    cone = cone_for_face(f, d)
    digest = matrix_digest(m)

    member, checks = cone_membership(m, cone, tol)
    for c in checks:
        ev.append(Evidence(6, "cone." + c.test, c.value, c.threshold))
    verdict = Verdict(Status.INCONCLUSIVE, f, cone, digest, ev, m)
    if not member:
        ev.append(Evidence(6, "sanity.failed", 1.0, 0.0))
        return verdict

    r1 = r1_test(m, cone, tol, exhaustive=exhaustive)
    verdict.r1_status = r1.status
    for c in r1.evidence:
        ev.append(Evidence(7, c.test, c.value, c.threshold))
    if r1.status is R1Status.NOT_MEMBER:
        verdict.status = Status.ENTANGLED

    if edge:
        _certify_edge(verdict, m, cone, tol)
    return verdict


def _face_threshold(f: FaceSpec, tol: Tolerance) -> float:
    return 0.0 if isinstance(f, Sparse) else tol.zero_eps


def _certify_edge(verdict: Verdict, m: np.ndarray, cone: ConeSpec, tol: Tolerance) -> None:
    rep = extremality_test(m, cone, tol)
    verdict.extremality = rep
    verdict.evidence.append(Evidence(9, "extremal.rank", float(rep.rank), 2.0))
    verdict.evidence.append(Evidence(9, "extremal.perturbation_dim", float(rep.perturbation_dim), 1.0))
    if rep.is_extremal and rep.rank >= 2:
        verdict.status = Status.EDGE


def certify_edge(s: StateLike, f: FaceSpec, tol: Tolerance = DEFAULT_TOL) -> Verdict:
    """``detect`` followed by the extremality upgrade.

    An extreme ray of rank >= 2 is never rank-1 generated, so the upgrade
    applies even when the rank-1 battery itself was inconclusive.
    """
    return detect(s, f, tol, edge=True)


def natural_faces(s: StateLike, tol: Tolerance = DEFAULT_TOL) -> list[FaceSpec]:
    """Faces ``s`` lies on, in the fixed order sparse, rank-1, bosonic.

    The sparse face is the tightest one, ``H = G(D(rho))``; the rank-1 face is
    included when ``rho`` restricted to ``span{|ii>}`` has rank <= 1.
    """
    d, rho = _dense(s, tol)
    faces: list[FaceSpec] = [Sparse(graph_of_matrix(diag_matrix(s), tol))]
    block = _v_block(rho, d)
    w, v = herm_eig(0.5 * (block + block.conj().T))
    if w[-1] > tol.zero_eps * scale(block):
        cand = RestrictedRank1(v[:, -1] * np.sqrt(w[-1]))
        if face_check(s, cand, tol):
            faces.append(cand)
    if face_check(s, Bosonic(), tol):
        faces.append(Bosonic())
    return faces


def detect_sweep(
    s: StateLike, tol: Tolerance = DEFAULT_TOL, edge: bool = False
) -> Verdict:
    """Run ``detect`` on every natural face and keep the strongest verdict.

    Evidence from all faces is merged in face order, each test prefixed with
    the face kind.
    """
    best: Optional[Verdict] = None
    merged: list[Evidence] = []
    for f in natural_faces(s, tol):
        v = detect(s, f, tol, edge=edge)
        merged.extend(Evidence(e.step, f"{f.kind}:{e.test}", e.value, e.threshold) for e in v.evidence)
        if best is None or _RANK[v.status] > _RANK[best.status]:
            best = v
        if v.status is Status.NPT:
            break
    assert best is not None
    best.evidence = merged
    return best


def separable_sampler(
    f: FaceSpec, d: int, k_terms: int, seed: int
) -> BipartiteState:
    """Random separable state ``sum_k (v_k v_k*) (x) (w_k w_k*)`` lying on ``f``.

    * sparse ``H``: every term has ``supp(v) x supp(w)`` inside the edges and
      loops of ``H``, so ``G(D(rho))`` stays inside ``H``;
    * rank-1 ``phi``: every term has ``v o w`` proportional to ``phi`` (or zero);
    * bosonic: ``w = v``, so each term is symmetric.
    """
    if k_terms < 1:
        raise ValueError("k_terms must be >= 1")
    rng = np.random.default_rng(seed)

    def cvec(size: int) -> np.ndarray:
        return rng.normal(size=size) + 1j * rng.normal(size=size)

    rho = np.zeros((d * d, d * d), dtype=np.complex128)
    for _ in range(k_terms):
        v = np.zeros(d, dtype=np.complex128)
        w = np.zeros(d, dtype=np.complex128)
        if isinstance(f, Sparse):
            if f.H.n != d:
                raise FaceUnsatisfiable(f"face graph has {f.H.n} vertices, d={d}")
            nbrs = f.H.neighbors()
            a = int(rng.integers(d))
            if nbrs[a] and rng.random() < 0.5:
                b = int(rng.choice(sorted(nbrs[a])))
                sup = [a, b]
                v[sup] = cvec(2)
                w[sup] = cvec(2)
            else:
                sup = [a] + sorted(nbrs[a])
                v[a] = cvec(1)[0]
                w[sup] = cvec(len(sup))
                if rng.random() < 0.5:
                    v, w = w, v
        elif isinstance(f, RestrictedRank1):
            phi = f.phi
            if phi.size != d:
                raise FaceUnsatisfiable(f"phi has length {phi.size}, d={d}")
            support = np.flatnonzero(np.abs(phi) > 0)
            if rng.random() < 0.25:
                # v o w = 0: disjoint supports
                cut = int(rng.integers(1, d)) if d > 1 else 1
                perm = rng.permutation(d)
                v[perm[:cut]] = cvec(cut)
                w[perm[cut:]] = cvec(d - cut)
            else:
                v[support] = cvec(support.size)
                w[support] = (rng.normal() + 1j * rng.normal()) * phi[support] / v[support]
                rest = np.setdiff1d(np.arange(d), support)
                if rest.size:
                    mask = rng.random(rest.size) < 0.5
                    v[rest[mask]] = cvec(int(mask.sum()))
                    w[rest[~mask]] = cvec(int((~mask).sum()))
        elif isinstance(f, Bosonic):
            v = cvec(d)
            w = v.copy()
        else:
            raise TypeError(f"unknown face {f!r}")
        psi = np.kron(v, w)
        rho += np.outer(psi, psi.conj())
    rho = 0.5 * (rho + rho.conj().T)
    state = BipartiteState(d, rho)
    if not face_check(state, f):
        raise FaceUnsatisfiable(f"sampled state missed the face {describe_face(f)}")
    return state
