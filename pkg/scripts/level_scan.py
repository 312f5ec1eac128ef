"""Coincidence threshold of C(3, d) at every admissible critical level.

Prints one CSV row per (d, level) with the node count, ct, and whether ct
equals 3d - [d/2] - 5.  Used to pick the default level.
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from syzlab.invariants import coincidence_threshold
from syzlab.linalg import PrimePolicy
from syzlab.nodal import chebyshev_hypersurface, chebyshev_levels, default_chebyshev_level


@dataclass
class ScanConfig:
    d_min: int = 3
    d_max: int = 8
    num_primes: int = 2
    seed: int = 0


def scan(cfg: ScanConfig):
    policy = PrimePolicy(cfg.num_primes, cfg.seed)
    for d in range(cfg.d_min, cfg.d_max + 1):
        target = 3 * d - d // 2 - 5
        for level, count in sorted(chebyshev_levels(3, d).items()):
            if count == 0:
                continue
            ct = coincidence_threshold(chebyshev_hypersurface(3, d, level), policy)
            yield {"d": d, "level": level, "nodes": count, "ct": ct, "target": target,
                   "match": ct == target, "default": level == default_chebyshev_level(3, d)}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-min", type=int, default=3)
    ap.add_argument("--d-max", type=int, default=8)
    ap.add_argument("--num-primes", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    cfg = ScanConfig(**vars(ap.parse_args(argv)))
    w = csv.DictWriter(sys.stdout, fieldnames=["d", "level", "nodes", "ct", "target", "match", "default"])
    w.writeheader()
    for row in scan(cfg):
        w.writerow(row)
        sys.stdout.flush()


if __name__ == "__main__":
    main()
