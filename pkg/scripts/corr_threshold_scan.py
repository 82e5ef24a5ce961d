"""Scan the correlation family and tabulate what each test says about it.

For every x the script reports the witness value, PSD/PPT status of the
state, the detector verdict on the rank-1 face and the CCNR margin.
"""

from __future__ import annotations

import argparse
import math
from dataclasses import dataclass

import numpy as np

from conewit.cones import corr_r1_witness, h_family
from conewit.detector import detect
from conewit.matcore import is_psd
from conewit.states import RestrictedRank1, build_corr_state, ldoi_ccnr_satisfied, ldoi_is_ppt


@dataclass(frozen=True)
class ScanConfig:
    lo: float = -0.6
    hi: float = 0.6
    points: int = 25
    edge: bool = True


def scan(cfg: ScanConfig) -> list[dict]:
    xs = np.linspace(cfg.lo, cfg.hi, cfg.points).tolist() + [1 / math.sqrt(3)]
    face = RestrictedRank1(np.ones(4))
    rows = []
    for x in sorted(xs):
        h = h_family(x)
        t = build_corr_state(np.ones((4, 4)), x)
        psd_h = is_psd(h)[0]
        witness = corr_r1_witness(h)[1] if psd_h else float("nan")
        _, lhs, rhs = ldoi_ccnr_satisfied(t)
        verdict = detect(t, face, edge=cfg.edge).status.value
        rows.append(
            {"x": x, "witness": witness, "ppt": ldoi_is_ppt(t), "ccnr_margin": lhs - rhs, "verdict": verdict}
        )
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--lo", type=float, default=ScanConfig.lo)
    p.add_argument("--hi", type=float, default=ScanConfig.hi)
    p.add_argument("--points", type=int, default=ScanConfig.points)
    p.add_argument("--no-edge", action="store_true")
    a = p.parse_args()
    cfg = ScanConfig(a.lo, a.hi, a.points, not a.no_edge)
    print(f"{'x':>10} {'witness':>10} {'ppt':>5} {'ccnr':>8}  verdict")
    for r in scan(cfg):
        print(f"{r['x']:10.6f} {r['witness']:10.6f} {str(r['ppt']):>5} {r['ccnr_margin']:8.2e}  {r['verdict']}")


if __name__ == "__main__":
    main()
