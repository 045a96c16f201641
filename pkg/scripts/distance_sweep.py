"""Delay vs BS-GT distance for each resolution requirement; writes CSV and prints the gaps."""

import argparse
from pathlib import Path

from oblique_uav.config import load_config
from oblique_uav.experiments import rows_to_csv, sweep_distance

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=str(ROOT / "configs" / "baseline.yaml"))
    ap.add_argument("--out", default="distance_sweep.csv")
    args = ap.parse_args()

    rows = sweep_distance(load_config(args.config))
    Path(args.out).write_text(rows_to_csv(rows), newline="\n")

    table = {}
    for r in rows:
        table.setdefault((r.i_min, r.d_gb), {})[r.scheme] = r.delay_s
    print(f"{'i_min':>6} {'d_gb':>6} {'bcd [s]':>9} {'conv [s]':>9} {'saved [s]':>10}")
    for (i, d), v in sorted(table.items()):
        print(f"{i:>6.2f} {d:>6.0f} {v['proposed-bcd']:>9.3f} {v['conventional']:>9.3f} "
              f"{v['conventional'] - v['proposed-bcd']:>10.3f}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
