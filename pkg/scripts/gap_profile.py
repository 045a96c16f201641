"""Time saved over hovering above the target, as a function of distance, across SNR levels.

In the noise-limited regime the saving grows with distance; at high SNR it
peaks and then decays because the standoff's rate advantage shrinks like rho/d.
"""

import argparse
from pathlib import Path

import numpy as np

from oblique_uav.baselines import vertical_baseline
from oblique_uav.config import load_config
from oblique_uav.solver import bcd_solve

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=str(ROOT / "configs" / "baseline.yaml"))
    ap.add_argument("--i-min", type=float, default=0.2)
    ap.add_argument("--gamma0", type=float, nargs="+", default=[1e3, 1e4, 1e5, 1e6, 1e7, 1e8])
    args = ap.parse_args()

    cfg = load_config(args.config)
    distances = np.arange(50.0, 501.0, 50.0)
    print("gamma0   monotone  saved [s] at d_gb = " + " ".join(f"{d:>7.0f}" for d in distances))
    for g in args.gamma0:
        gaps = []
        for d in distances:
            s = cfg.scenario.with_gamma0(g).with_i_min(args.i_min).with_distance(float(d))
            gaps.append(vertical_baseline(s).delay - bcd_solve(s, cfg.solver).delay)
        mono = all(b >= a for a, b in zip(gaps, gaps[1:]))
        print(f"{g:<8.0e} {str(mono):<9} {'':19}" + " ".join(f"{x:>7.3g}" for x in gaps))


if __name__ == "__main__":
    main()
