"""Enumerate interval partitions of the subdivided simplex (and its boundary)
and tally how many distinct partitions exist and which anchor-size censuses
they produce.  Every census should equal the h-vector.

    python scripts/partition_census.py --n-max 4 --limit 5000
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from dataclasses import dataclass
from itertools import islice

from eulerdie import complexes


@dataclass(frozen=True)
class CensusConfig:
    n_max: int = 4
    limit: int = 5000
    boundary: bool = True


def census_table(cfg: CensusConfig):
    for n in range(1, cfg.n_max + 1):
        for boundary in ((False, True) if cfg.boundary else (False,)):
            S, _ = complexes.delta_n(n, boundary)
            h = complexes.h_vector(complexes.f_vector(S))
            tally = Counter(complexes.verify_partition(S, P).census
                            for P in islice(complexes.iter_partitions(S), cfg.limit))
            yield n, boundary, h, tally


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--n-max", type=int, default=CensusConfig.n_max)
    ap.add_argument("--limit", type=int, default=CensusConfig.limit)
    a = ap.parse_args(argv)
    cfg = CensusConfig(n_max=a.n_max, limit=a.limit)
    ok = True
    for n, boundary, h, tally in census_table(cfg):
        total = sum(tally.values())
        capped = "+" if total >= cfg.limit else ""
        name = f"delta'_{n}" if boundary else f"delta_{n}"
        print(f"{name:<9} h={h} partitions={total}{capped} censuses={dict(tally)}")
        ok &= set(tally) <= {h}
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
