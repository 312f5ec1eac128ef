"""dim H^j(K*(f))_m over a range of m for a polynomial file.

    python scripts/koszul_profile.py cheb34.poly --j 3 --m-max 12
"""

import argparse
from dataclasses import dataclass
from pathlib import Path

from syzlab.cli import parse_polynomial
from syzlab.koszul import cohomology_dim
from syzlab.linalg import PrimePolicy


@dataclass
class ProfileConfig:
    poly: Path
    j: int | None = None
    m_min: int = 0
    m_max: int = 12
    num_primes: int = 2


def profile(cfg: ProfileConfig):
    f = parse_polynomial(cfg.poly.read_text())
    j = f.nvars - 1 if cfg.j is None else cfg.j
    policy = PrimePolicy(cfg.num_primes)
    return j, [(m, cohomology_dim(f, j, m, policy)) for m in range(cfg.m_min, cfg.m_max + 1)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("poly", type=Path)
    ap.add_argument("--j", type=int)
    ap.add_argument("--m-min", type=int, default=0)
    ap.add_argument("--m-max", type=int, default=12)
    ap.add_argument("--num-primes", type=int, default=2)
    cfg = ProfileConfig(**vars(ap.parse_args(argv)))
    j, dims = profile(cfg)
    for m, v in dims:
        flag = "" if v.agreement else "  (no consensus)"
        print(f"H^{j}_{m} = {int(v)}{flag}")


if __name__ == "__main__":
    main()
