"""Command-line front end.

Matrices travel as JSON ``{"rows": r, "cols": c, "data": [[re, im], ...]}``
(row-major) and graphs as ``{"n": n, "edges": [[i, j], ...]}`` with 1-indexed
vertices. Exit codes: 0 certified, 1 inconclusive, 2 input error, 3 state not
on the requested face.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from conewit import __version__
from conewit.cones import (
    HORN_PROVENANCE,
    USER_PROVENANCE,
    circulant_a,
    copositive_witness_apply,
    corr_r1_witness,
    extremal_y,
    horn,
    jarre_w,
    schur_witness_apply,
    torus_max_search,
)
from conewit.detector import (
    EVIDENCE_TESTS,
    Status,
    Verdict,
    detect,
    detect_sweep,
    matrix_digest,
    separable_sampler,
)
from conewit.errors import ConewitError, NotOnFace
from conewit.graphs import (
    Graph,
    cycle_graph,
    find_chordless_cycle,
    graph_of_matrix,
    is_chordal,
    is_triangle_free,
    maximal_cliques,
    one_indexed,
)
from conewit.matcore import DEFAULT_TOL, Tolerance
from conewit.states import (
    BipartiteState,
    Bosonic,
    FaceSpec,
    LdoiTriple,
    RestrictedRank1,
    Sparse,
    StateLike,
    build_corr_state,
    build_dicke_mixture,
    build_sparse_family,
    ldoi_matrix,
)

EXIT_CERTIFIED = 0
EXIT_INCONCLUSIVE = 1
EXIT_INPUT = 2
EXIT_NOT_ON_FACE = 3

SEED_ENV = "CONEWIT_SEED"
EDGE_X = 1.0 / math.sqrt(3.0)
EDGE_SNAP = 1e-5
PRESETS = ("corr:<x>", "sparse:agler-c4", "dicke:circulantA")


class InputError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


# ---------------------------------------------------------------------------
# JSON file formats


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from exc
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _reject_constant(name: str):
    raise ValueError(f"non-finite constant {name} is not allowed")


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if not np.all(np.isfinite(m)):
        raise InputError("cannot serialize a matrix with non-finite entries")
    flat = m.ravel()
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_json(obj, where: str = "matrix") -> np.ndarray:
    if not isinstance(obj, dict) or not {"rows", "cols", "data"} <= obj.keys():
        raise InputError(f"{where}: expected an object with rows, cols and data")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise InputError(f"{where}: rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise InputError(f"{where}: data must hold rows*cols = {rows * cols} entries")
    out = np.empty(rows * cols, dtype=np.complex128)
    for k, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise InputError(f"{where}: entry {k} must be a [re, im] number pair")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise InputError(f"{where}: entry {k} is not finite")
        out[k] = complex(re, im)
    return out.reshape(rows, cols)


def read_matrix(path: str) -> np.ndarray:
    return matrix_from_json(_load_json(path), path)


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [one_indexed(e) for e in g.sorted_edges()]}


def graph_from_json(obj, where: str = "graph") -> Graph:
    if not isinstance(obj, dict) or not {"n", "edges"} <= obj.keys():
        raise InputError(f"{where}: expected an object with n and edges")
    n, edges = obj["n"], obj["edges"]
    if not isinstance(n, int) or n < 0 or not isinstance(edges, list):
        raise InputError(f"{where}: n must be a non-negative integer and edges a list")
    pairs = []
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise InputError(f"{where}: edge {e!r} must be a pair of integers")
        if not all(1 <= v <= n for v in e) or e[0] == e[1]:
            raise InputError(f"{where}: edge {e!r} is out of range 1..{n} or a loop")
        pairs.append((e[0] - 1, e[1] - 1))
    return Graph.from_edges(n, pairs)


def read_graph(path: str) -> Graph:
    return graph_from_json(_load_json(path), path)


def write_json_atomic(path: str, payload) -> None:
    """Write ``payload`` next to ``path`` and rename it into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".conewit-", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2, allow_nan=False)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# presets


@dataclass(frozen=True)
class Example:
    state: LdoiTriple
    face: str
    expected: str
    expected_with_edge: str
    rationale: str
    graph: Optional[Graph] = None


def parse_corr_parameter(text: str) -> float:
    """Parse ``x``; values within 1e-5 of ``1/sqrt(3)`` snap onto it exactly."""
    if text in ("edge", "1/sqrt3"):
        return EDGE_X
    try:
        x = float(text)
    except ValueError as exc:
        raise InputError(f"corr parameter {text!r} is not a number") from exc
    if not math.isfinite(x):
        raise InputError("corr parameter must be finite")
    if abs(abs(x) - EDGE_X) <= EDGE_SNAP:
        return math.copysign(EDGE_X, x)
    return x


def _corr_expectation(x: float) -> tuple[str, str, str]:
    if abs(x) > EDGE_X:
        why = "H(x) has a negative eigenvalue, so the partial transpose is not PSD"
        return Status.NPT.value, Status.NPT.value, why
    if x == EDGE_X:
        why = (
            "the witness value 12x - 6 is positive and H(x) is a rank-2 extreme point "
            "of the correlation cone"
        )
        return Status.ENTANGLED.value, Status.EDGE.value, why
    if x == -EDGE_X:
        why = (
            "the witness does not fire, but H(x) is a rank-2 extreme point of the "
            "correlation cone and so cannot be a sum of rank-1 members"
        )
        return Status.INCONCLUSIVE.value, Status.EDGE.value, why
    if x > 0.5:
        why = "the witness value 12x - 6 is positive"
        return Status.ENTANGLED.value, Status.ENTANGLED.value, why
    why = "the witness value 12x - 6 is not positive, so the test cannot refute"
    return Status.INCONCLUSIVE.value, Status.INCONCLUSIVE.value, why


def agler_c4_triple() -> LdoiTriple:
    y = extremal_y()
    z = 0.5 * (y + np.diag(y.diagonal()))
    x = np.abs(y)
    return build_sparse_family(cycle_graph(4), y, z, x)


def load_example(spec: str) -> Example:
    family, _, arg = spec.partition(":")
    if family == "corr" and arg:
        x = parse_corr_parameter(arg)
        expected, with_edge, why = _corr_expectation(x)
        try:
            state = build_corr_state(np.ones((4, 4)), x)
        except ConewitError as exc:
            raise InputError(f"corr:{arg}: {exc}") from exc
        return Example(state, "rank1:e", expected, with_edge, why)
    if spec == "sparse:agler-c4":
        why = (
            "Y is supported on the 4-cycle, its comparison matrix has a negative "
            "eigenvalue, and Y is a rank-2 extreme ray of the sparse PSD cone"
        )
        return Example(
            agler_c4_triple(), "sparse", Status.ENTANGLED.value, Status.EDGE.value, why, cycle_graph(4)
        )
    if spec == "dicke:circulantA":
        why = (
            "A is doubly non-negative but pairs negatively with the Horn matrix, "
            "and A is a rank-3 extreme ray of the DNN cone"
        )
        return Example(
            build_dicke_mixture(circulant_a()), "bosonic", Status.ENTANGLED.value, Status.EDGE.value, why
        )
    raise InputError(f"unknown preset {spec!r}; valid presets: {', '.join(PRESETS)}")


# ---------------------------------------------------------------------------
# helpers


def _tolerance(value: Optional[float]) -> Tolerance:
    if value is None:
        return DEFAULT_TOL
    try:
        return Tolerance(psd_eps=value, zero_eps=value)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def resolve_seed(seed: Optional[int]) -> int:
    """``CONEWIT_SEED`` (decimal integer) wins over ``--seed``; the default is 0."""
    env = os.environ.get(SEED_ENV)
    if env is not None and env.strip():
        try:
            return int(env.strip(), 10)
        except ValueError as exc:
            raise InputError(f"{SEED_ENV}={env!r} is not a decimal integer") from exc
    return 0 if seed is None else seed


def _load_state(args) -> tuple[StateLike, dict, Optional[Example]]:
    chosen = [a for a in (args.state, args.ldoi, args.example) if a is not None]
    if len(chosen) != 1:
        raise InputError("give exactly one of --state, --ldoi or --example")
    if args.state is not None:
        rho = read_matrix(args.state)
        try:
            s = BipartiteState.from_matrix(rho)
        except ConewitError as exc:
            raise InputError(f"{args.state}: {exc}") from exc
        return s, {"state": matrix_digest(rho)._asdict()}, None
    if args.ldoi is not None:
        mats = [read_matrix(p) for p in args.ldoi]
        try:
            s = LdoiTriple(*mats)
        except ConewitError as exc:
            raise InputError(f"LDOI triple: {exc}") from exc
        return s, {k: matrix_digest(m)._asdict() for k, m in zip("XYZ", mats)}, None
    ex = load_example(args.example)
    inputs = {"example": args.example}
    inputs.update({k: matrix_digest(m)._asdict() for k, m in zip("XYZ", (ex.state.X, ex.state.Y, ex.state.Z))})
    return ex.state, inputs, ex


def _parse_face(text: str, d: int, example: Optional[Example]) -> Optional[FaceSpec]:
    """``None`` means sweep."""
    kind, _, arg = text.partition(":")
    if text == "sweep":
        return None
    if text == "bosonic":
        return Bosonic()
    if kind == "rank1" and arg:
        if arg == "e":
            return RestrictedRank1(np.ones(d))
        phi = read_matrix(arg)
        if 1 not in phi.shape or phi.size != d:
            raise InputError(f"{arg}: phi must be a vector of length {d}")
        return RestrictedRank1(phi.ravel())
    if kind == "sparse":
        if arg:
            g = read_graph(arg)
        elif example is not None and example.graph is not None:
            g = example.graph
        else:
            raise InputError("sparse faces need a graph file: --face sparse:<graphfile>")
        if g.n != d:
            raise InputError(f"face graph has {g.n} vertices but the state has d={d}")
        return Sparse(g)
    raise InputError(f"unknown face {text!r}; use sparse:<graphfile>, rank1:<phifile>, rank1:e, bosonic or sweep")


def _exit_code(v: Verdict) -> int:
    return EXIT_CERTIFIED if v.certified else EXIT_INCONCLUSIVE


def _fmt(x: float) -> str:
    return repr(float(x))


def render_text(report: dict) -> str:
    lines = [f"verdict: {report['verdict']}", f"face: {report['face']}"]
    if report.get("cone"):
        lines.append(f"cone: {report['cone']}")
    if report.get("mapped_matrix"):
        mm = report["mapped_matrix"]
        lines.append(f"mapped matrix: {mm['rows']}x{mm['cols']} fnv1a64={mm['fnv1a64']}")
    if report.get("extremality"):
        e = report["extremality"]
        lines.append(
            f"extremality: rank={e['rank']} perturbation_dim={e['perturbation_dim']} "
            f"extremal={e['is_extremal']}"
        )
    lines.append("evidence:")
    for e in report["evidence"]:
        lines.append(f"  [{e['step']}] {e['test']}: value={_fmt(e['value'])} threshold={_fmt(e['threshold'])}")
    return "\n".join(lines)


def _evidence_help() -> str:
    body = "\n".join(f"  step {k}: {v}" for k, v in sorted(EVIDENCE_TESTS.items()))
    return "evidence vocabulary:\n" + body


# ---------------------------------------------------------------------------
# subcommands


def cmd_detect(args) -> int:
    tol = _tolerance(args.tol)
    state, inputs, example = _load_state(args)
    d = state.d
    face_text = args.face
    if face_text is None:
        if example is None:
            raise InputError("--face is required unless --example supplies a default")
        face_text = example.face
    face = _parse_face(face_text, d, example)
    inputs["face"] = face_text
    try:
        if face is None:
            verdict = detect_sweep(state, tol, edge=args.edge)
        else:
            verdict = detect(state, face, tol, edge=args.edge)
    except NotOnFace as exc:
        print(f"error: state is not on the face: {exc}", file=sys.stderr)
        return EXIT_NOT_ON_FACE
    report = verdict.to_dict()
    report["inputs"] = inputs
    report["tool_version"] = __version__
    if args.out:
        write_json_atomic(args.out, report)
    if args.format == "json":
        print(json.dumps(report, indent=2, allow_nan=False))
    else:
        print(render_text(report))
    return _exit_code(verdict)


def _witness_matrix(spec: str) -> tuple[np.ndarray, str]:
    if spec == "horn":
        return horn(), HORN_PROVENANCE
    if spec == "jarre":
        return jarre_w(), "builtin:jarre"
    if spec.startswith("file:") and len(spec) > 5:
        return read_matrix(spec[5:]), USER_PROVENANCE
    raise InputError(f"unknown witness {spec!r}; use horn, jarre or file:<path>")


def cmd_witness(args) -> int:
    tol = _tolerance(args.tol)
    w, provenance = _witness_matrix(args.witness)
    x = read_matrix(args.matrix)
    if w.shape != x.shape:
        raise InputError(f"dimension mismatch: witness is {w.shape[0]}x{w.shape[1]}, matrix is {x.shape[0]}x{x.shape[1]}")
    cone = args.cone
    if cone == "dnn":
        violated, value = copositive_witness_apply(w, x, tol)
    elif cone == "corr":
        if args.witness != "jarre":
            raise InputError("the correlation cone is tested with --witness jarre only")
        violated, value = corr_r1_witness(x, tol)
    elif cone.startswith("sparse:"):
        g = read_graph(cone[7:])
        if g.n != x.shape[0]:
            raise InputError(f"graph has {g.n} vertices, matrix is {x.shape[0]}x{x.shape[0]}")
        violated, value = schur_witness_apply(w, x, g, tol)
    else:
        raise InputError(f"unknown cone {cone!r}; use dnn, corr or sparse:<graphfile>")
    print(f"value={_fmt(value)} violated={'true' if violated else 'false'}")
    print(f"witness: {provenance}", file=sys.stderr)
    return EXIT_CERTIFIED if violated else EXIT_INCONCLUSIVE


def cmd_graph(args) -> int:
    if (args.matrix is None) == (args.graph is None):
        raise InputError("give exactly one of --matrix or --graph")
    if args.graph is not None:
        g = read_graph(args.graph)
    else:
        m = read_matrix(args.matrix)
        try:
            g = graph_of_matrix(m, _tolerance(args.tol))
        except ConewitError as exc:
            raise InputError(f"{args.matrix}: {exc}") from exc
    check = args.check
    if check == "chordal":
        ok, order = is_chordal(g)
        if ok:
            print("chordal; elimination order: " + ",".join(map(str, one_indexed(order))))
        else:
            print("non-chordal; chordless cycle: " + _cycle_text(find_chordless_cycle(g)))
    elif check == "triangle-free":
        print("triangle-free" if is_triangle_free(g) else "has a triangle: " + _triangle_text(g))
    elif check == "cliques":
        for clique in maximal_cliques(g):
            print("{" + ",".join(map(str, one_indexed(clique))) + "}")
    elif check == "chordless-cycle":
        cyc = find_chordless_cycle(g)
        print("none (chordal)" if cyc is None else "chordless cycle: " + _cycle_text(cyc))
    return 0


def _cycle_text(cyc) -> str:
    return "-".join(map(str, one_indexed(cyc)))


def _triangle_text(g: Graph) -> str:
    nbrs = g.neighbors()
    for i, j in g.sorted_edges():
        common = sorted(nbrs[i] & nbrs[j])
        if common:
            return _cycle_text([i, j, common[0]])
    return ""


def cmd_example(args) -> int:
    ex = load_example(args.family)
    prefix = args.out_prefix
    written = {}
    for name, m in zip("XYZ", (ex.state.X, ex.state.Y, ex.state.Z)):
        path = f"{prefix}_{name}.json"
        write_json_atomic(path, matrix_to_json(m))
        written[name] = path
    if ex.graph is not None:
        path = f"{prefix}_graph.json"
        write_json_atomic(path, graph_to_json(ex.graph))
        written["graph"] = path
    state_path = f"{prefix}_state.json"
    write_json_atomic(state_path, matrix_to_json(ldoi_matrix(ex.state)))
    written["state"] = state_path
    face = ex.face if ex.graph is None else f"sparse:{written['graph']}"
    manifest = {
        "family": args.family,
        "face": face,
        "flags": ["--edge"],
        "expected": ex.expected_with_edge,
        "expected_without_edge": ex.expected,
        "rationale": ex.rationale,
        "files": written,
        "tool_version": __version__,
    }
    write_json_atomic(f"{prefix}_manifest.json", manifest)
    print(f"expected: {ex.expected_with_edge}")
    print(f"expected without --edge: {ex.expected}")
    for path in written.values():
        print(f"wrote {path}")
    print(f"wrote {prefix}_manifest.json")
    return 0


def cmd_sample(args) -> int:
    seed = resolve_seed(args.seed)
    if args.face == "bosonic":
        face: FaceSpec = Bosonic()
    elif args.face == "rank1:e":
        face = RestrictedRank1(np.ones(args.d))
    elif args.face.startswith("sparse:"):
        face = Sparse(read_graph(args.face[7:]))
    else:
        raise InputError("sample supports --face bosonic, rank1:e or sparse:<graphfile>")
    state = separable_sampler(face, args.d, args.terms, seed)
    write_json_atomic(args.out, matrix_to_json(state.rho))
    print(f"seed={seed} wrote {args.out}")
    return 0


def cmd_torus(args) -> int:
    w, _ = _witness_matrix(args.witness)
    seed = resolve_seed(args.seed)
    value, _ = torus_max_search(w, restarts=args.restarts, seed=seed)
    print(f"max={_fmt(value)} seed={seed}")
    return 0


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="conewit",
        description="Certify PPT entanglement by face-restricted rank-1 cone tests.",
    )
    p.add_argument("--version", action="version", version=f"conewit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser(
        "detect",
        help="run the detector on a state",
        epilog=_evidence_help(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    d.add_argument("--state", metavar="FILE", help="d^2 x d^2 density matrix")
    d.add_argument("--ldoi", nargs=3, metavar=("XFILE", "YFILE", "ZFILE"), help="LDOI triple")
    d.add_argument("--example", metavar="PRESET", help="built-in preset: " + ", ".join(PRESETS))
    d.add_argument("--face", help="sparse:<graphfile> | rank1:<phifile> | rank1:e | bosonic | sweep")
    d.add_argument("--edge", action="store_true", help="also test for an edge state")
    d.add_argument("--tol", type=float, help="psd_eps and zero_eps (default 1e-9)")
    d.add_argument("--out", metavar="FILE", help="write the JSON report here")
    d.add_argument("--format", choices=("json", "text"), default="text")
    d.set_defaults(func=cmd_detect)

    w = sub.add_parser("witness", help="evaluate a witness on a matrix")
    w.add_argument("--witness", required=True, help="horn | jarre | file:<path>")
    w.add_argument("--matrix", required=True, metavar="FILE")
    w.add_argument("--cone", required=True, help="dnn | corr | sparse:<graphfile>")
    w.add_argument("--tol", type=float)
    w.set_defaults(func=cmd_witness)

    g = sub.add_parser("graph", help="analyse a sparsity pattern")
    g.add_argument("--matrix", metavar="FILE", help="use the off-diagonal support of this matrix")
    g.add_argument("--graph", metavar="FILE", help="graph file with 1-indexed edges")
    g.add_argument("--check", required=True, choices=("chordal", "triangle-free", "cliques", "chordless-cycle"))
    g.add_argument("--tol", type=float)
    g.set_defaults(func=cmd_graph)

    e = sub.add_parser("example", help="write a preset LDOI state to disk")
    e.add_argument("--family", required=True, help=", ".join(PRESETS))
    e.add_argument("--out-prefix", required=True, metavar="PATH")
    e.set_defaults(func=cmd_example)

    s = sub.add_parser("sample", help=f"write a random separable state on a face ({SEED_ENV} overrides --seed)")
    s.add_argument("--face", required=True, help="bosonic | rank1:e | sparse:<graphfile>")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--terms", type=int, default=6)
    s.add_argument("--seed", type=int)
    s.add_argument("--out", required=True, metavar="FILE")
    s.set_defaults(func=cmd_sample)

    t = sub.add_parser("torus", help=f"search max <z|W|z> over unit-modulus z ({SEED_ENV} overrides --seed)")
    t.add_argument("--witness", default="jarre", help="jarre | horn | file:<path>")
    t.add_argument("--restarts", type=int, default=64)
    t.add_argument("--seed", type=int)
    t.set_defaults(func=cmd_torus)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    handler: Callable[[argparse.Namespace], int] = args.func
    try:
        return handler(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ConewitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
