"""Regenerate the bundled example corpus and its expected outputs.

Writes the singularity/ideal JSON inputs under src/fanocone/corpus/ and an
expected.json with independently derived reference values (grid plus
golden-section search for minima).  Deterministic: fixed seed.
"""

from __future__ import annotations

import json
import random
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tests"))

import fanocone as fc  # noqa: E402
import oracles  # noqa: E402

CORPUS = ROOT / "src" / "fanocone" / "corpus"


def write(name: str, obj: dict) -> None:
    path = CORPUS / name
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    print("wrote", path)


def main() -> None:
    CORPUS.mkdir(parents=True, exist_ok=True)

    def orthant(n: int) -> list[list[int]]:
        return [[1 if j == i else 0 for j in range(n)] for i in range(n)]

    singularities = {
        "c2.json": {"rank": 2, "rays": orthant(2), "boundary": ["0", "0"], "label": "c2"},
        "c3.json": {"rank": 3, "rays": orthant(3), "boundary": ["0", "0", "0"], "label": "c3"},
        "c4.json": {"rank": 4, "rays": orthant(4), "boundary": ["0", "0", "0", "0"], "label": "c4"},
        "conifold.json": {
            "rank": 3,
            "rays": [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]],
            "boundary": ["0", "0", "0", "0"],
            "label": "conifold",
        },
        "c2_boundary.json": {
            "rank": 2,
            "rays": [[1, 0], [0, 1]],
            "boundary": ["1/2", "0"],
            "label": "c2-half-boundary",
        },
    }

    rng = random.Random(20260808)
    for i in range(5):
        data = oracles.random_fano_cone_data(rng, 3, label=f"random3-{i}")
        singularities[f"random3_{i}.json"] = data.to_dict()

    for name, obj in singularities.items():
        write(name, obj)

    write("xy.json", {"n": 2, "generators": [[1, 0], [0, 1]]})
    write("toy.json", {"support": [[0, 0], [1, -5]], "directions": [[1, 0], [0, 1]], "k": 6})

    expected = {}
    for name, obj in singularities.items():
        data = fc.ToricConeData.from_dict(obj)
        form = fc.build_volume_form(data)
        gamma = fc.gorenstein_vector(data)
        entry = {
            "gamma": [str(g) for g in gamma],
            "dual_rays": [list(r) for r in form.dual_rays],
        }
        if data.rank <= 3:
            val, pt = oracles.grid_golden_min_hvol(data)
            entry["min_hvol_oracle"] = val
            entry["minimizer_oracle"] = [float(x) for x in pt]
        else:
            n = data.rank
            entry["min_hvol_oracle"] = float(n) ** n  # orthant closed form
            entry["minimizer_oracle"] = [1.0] * n
        xi = tuple(Fraction(sum(r[k] for r in data.sigma.rays)) for k in range(data.rank))
        entry["probe_xi"] = [str(x) for x in xi]
        entry["probe_hvol"] = str(Fraction(fc.normalized_volume(data, form, xi)))
        expected[name] = entry

    write("expected.json", expected)


if __name__ == "__main__":
    main()
