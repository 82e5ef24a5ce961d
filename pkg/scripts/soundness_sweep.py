"""Run the detector on random separable states and count false certificates.

Any certificate on a separable state would be a soundness bug, so the
expected count is zero on every face.
"""

from __future__ import annotations

import argparse
import os
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from conewit.detector import detect, separable_sampler
from conewit.graphs import cycle_graph
from conewit.states import Bosonic, FaceSpec, RestrictedRank1, Sparse


def default_faces() -> list[tuple[str, FaceSpec, int]]:
    return [
        ("sparse:C4", Sparse(cycle_graph(4)), 4),
        ("sparse:C5", Sparse(cycle_graph(5)), 5),
        ("rank1:e", RestrictedRank1(np.ones(4)), 4),
        ("bosonic:3", Bosonic(), 3),
        ("bosonic:4", Bosonic(), 4),
    ]


@dataclass
class SweepConfig:
    seeds: int = 200
    first_seed: int = 0
    terms: int = 6
    edge: bool = False
    faces: list[tuple[str, FaceSpec, int]] = field(default_factory=default_faces)


def sweep(cfg: SweepConfig) -> dict[str, Counter]:
    out: dict[str, Counter] = {}
    for name, face, d in cfg.faces:
        counts: Counter = Counter()
        for seed in range(cfg.first_seed, cfg.first_seed + cfg.seeds):
            state = separable_sampler(face, d, cfg.terms, seed)
            counts[detect(state, face, edge=cfg.edge).status.value] += 1
        out[name] = counts
    return out


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seeds", type=int, default=SweepConfig.seeds)
    p.add_argument("--terms", type=int, default=SweepConfig.terms)
    p.add_argument("--edge", action="store_true")
    a = p.parse_args()
    first = int(os.environ.get("CONEWIT_SEED", "0"))
    cfg = SweepConfig(seeds=a.seeds, first_seed=first, terms=a.terms, edge=a.edge)
    t0 = time.perf_counter()
    results = sweep(cfg)
    bad = 0
    for name, counts in results.items():
        certified = counts["EntangledCertified"] + counts["EdgeStateCertified"]
        bad += certified
        print(f"{name:10s} {dict(counts)}  certified={certified}")
    print(f"total false certificates: {bad} ({time.perf_counter() - t0:.1f}s)")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
