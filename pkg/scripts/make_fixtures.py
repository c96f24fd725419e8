"""Regenerate the bundled fixtures. Run from the repository root."""

import json
import random
from pathlib import Path

from wittlab.homology.models import random_cubical_group

OUT = Path(__file__).resolve().parent.parent / "src" / "wittlab" / "fixtures"

# name, seed, top level, alphabet size, seed cubes, size cap
CUBICAL = [
    ("cubical_square", 400, 2, 4, 2, 80),
    ("cubical_loop", 208, 3, 2, 2, 150),
    ("cubical_plain", 213, 3, 2, 2, 150),
    ("cubical_torsion", 204, 3, 2, 2, 150),
    ("cubical_torsion_b", 206, 3, 2, 2, 150),
    ("cubical_three_letters", 300, 3, 3, 1, 120),
]

COMPLEXES = [
    ("complex_mod2", [1, 1], [[[2]]]),
    ("complex_projective_plane", [1, 1, 1], [[[0]], [[2]]]),
]


def write(name, record):
    (OUT / f"{name}.json").write_text(json.dumps(record, sort_keys=True) + "\n")


def main():
    for name, seed, top, alphabet, seeds, cap in CUBICAL:
        C = random_cubical_group(top, rng=random.Random(seed), alphabet=alphabet, seeds=seeds, max_size=cap)
        write(name, {"kind": "cubical", "name": name, **C.to_json()})
        print(name, C.ranks, C.compare_normalization().to_json()["nondegenerate"])
    for name, levels, boundaries in COMPLEXES:
        write(name, {"kind": "complex", "name": name, "levels": levels, "boundaries": boundaries})
        print(name, levels)


if __name__ == "__main__":
    main()
