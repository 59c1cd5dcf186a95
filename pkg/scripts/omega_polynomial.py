"""Tabulate Omega_P(k) for a poset file both by direct search and through
linear extensions, and print the alternating sum that recovers the P-Eulerian
numbers.

    python scripts/omega_polynomial.py fig2.json --k-max 10
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from eulerdie import posets


@dataclass(frozen=True)
class OmegaConfig:
    poset: str
    k_max: int = 10


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("poset")
    ap.add_argument("--k-max", type=int, default=10)
    a = ap.parse_args(argv)
    cfg = OmegaConfig(a.poset, a.k_max)
    P = posets.parse_poset(Path(cfg.poset).read_text())
    print(f"{'k':>3} {'omega':>10} {'via L(P)':>10} {'alt sum':>8} {'P-Eulerian':>10}")
    ok = True
    for k in range(cfg.k_max + 1):
        direct, via = posets.omega(P, k), posets.omega_via_linext(P, k)
        alt, pe = posets.alternating_omega_sum(P, k), posets.p_eulerian(P, k)
        ok &= direct == via and alt == pe
        print(f"{k:>3} {direct:>10} {via:>10} {alt:>8} {pe:>10}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
