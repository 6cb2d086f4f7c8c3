"""Null-capacity map over (kappa, N0) written as CSV, with a per-verdict summary.

    python scripts/region_map.py --steps 121 --out region.csv
"""

import argparse
import math
from collections import Counter
from dataclasses import dataclass

from gck.capacity import Verdict, region_scan, write_csv


@dataclass(frozen=True)
class MapConfig:
    kappa_min: float = 0.05
    kappa_max: float = math.sqrt(3)
    n0_max: float = 3.0
    steps: int = 61
    out: str = "region.csv"


def run(cfg: MapConfig) -> Counter:
    rows = region_scan((cfg.kappa_min, cfg.kappa_max), (0.0, cfg.n0_max), cfg.steps)
    with open(cfg.out, "w", newline="") as fh:
        write_csv(rows, fh)
    return Counter(r.verdict for r in rows)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(MapConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    cfg = MapConfig(**vars(p.parse_args()))
    counts = run(cfg)
    total = sum(counts.values())
    print(f"wrote {total} grid points to {cfg.out}")
    for v in Verdict:
        if counts[v]:
            print(f"  {v.value:<28} {counts[v]:6d}  ({counts[v] / total:.1%})")


if __name__ == "__main__":
    main()
