"""Check that the full 3D grid optimum sits on the BS-GT segment, and compare schemes."""

import argparse
import math
from pathlib import Path

from oblique_uav.baselines import exhaustive_search_2d, exhaustive_search_3d, segment_offset, vertical_baseline
from oblique_uav.config import load_config
from oblique_uav.solver import bcd_solve

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=str(ROOT / "configs" / "baseline.yaml"))
    ap.add_argument("--step", type=float, default=5.0)
    args = ap.parse_args()

    cfg = load_config(args.config)
    for g in cfg.gamma0_sweep:
        for i in (0.1, 0.2, 0.3):
            s = cfg.scenario.with_gamma0(g).with_i_min(i)
            es3 = exhaustive_search_3d(s, args.step)
            es2 = exhaustive_search_2d(s, cfg.es_step)
            bcd = bcd_solve(s, cfg.solver)
            conv = vertical_baseline(s)
            print(
                f"gamma0={g:.0e} i_min={i:.1f}  offset {segment_offset(es3.placement.q, s):5.2f} m "
                f"(limit {args.step * math.sqrt(2):.2f})  delay bcd {bcd.delay:7.3f}  es2d {es2.delay:7.3f}  "
                f"es3d {es3.delay:7.3f}  conv {conv.delay:7.3f} s"
            )


if __name__ == "__main__":
    main()
