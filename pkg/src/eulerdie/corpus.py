"""Small worked fixtures: two posets and two complexes with hand-known answers."""

from __future__ import annotations

import json
from pathlib import Path

# 1 < 2 and 3 < 2
FIG1_POSET = {"n": 3, "covers": [[1, 2], [3, 2]]}
# 1 < 2 < 5 and 1 < 4 < 3
FIG2_POSET = {"n": 5, "covers": [[1, 2], [2, 5], [1, 4], [4, 3]]}
ANTICHAIN5_POSET = {"n": 5, "covers": []}
CHAIN3_POSET = {"n": 3, "covers": [[1, 2], [2, 3]]}

# triangle abc plus the path b-d-e-c; not pure
FIG3_COMPLEX = {"vertices": ["a", "b", "c", "d", "e"],
                "facets": [["a", "b", "c"], ["b", "d"], ["c", "e"], ["d", "e"]]}
# three triangles in a strip
FIG4_COMPLEX = {"vertices": ["a", "b", "c", "d", "e"],
                "facets": [["a", "b", "c"], ["b", "c", "d"], ["c", "d", "e"]]}
FIG4_PARTITION = [
    {"anchor": [], "facet": ["a", "b", "c"]},
    {"anchor": ["d"], "facet": ["b", "c", "d"]},
    {"anchor": ["e"], "facet": ["c", "d", "e"]},
]

CORPUS = {
    "fig1.json": FIG1_POSET,
    "fig2.json": FIG2_POSET,
    "antichain5.json": ANTICHAIN5_POSET,
    "chain3.json": CHAIN3_POSET,
    "fig3.json": FIG3_COMPLEX,
    "fig4.json": FIG4_COMPLEX,
    "fig4_partition.json": FIG4_PARTITION,
}


def write_corpus(directory) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, data in CORPUS.items():
        path = out / name
        path.write_text(json.dumps(data, indent=2) + "\n")
        paths.append(path)
    return paths
