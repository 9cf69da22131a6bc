"""Regenerate the shipped genus-2 and genus-3 lattice fixtures.

Start from a connected sum of torus grids, subdivide, then anneal edge
flips until every triangulation vertex has degree 6 or 7.  The dual is then
a trivalent lattice of hexagons and exactly 12 (g - 1) heptagons.

    python scripts/make_high_genus_fixtures.py
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from zeromodes.builders import save_lattice
from zeromodes.lattice import defect_census, genus_of
from zeromodes.triangulations import FlipTriangulation, dual, genus_surface, loop_subdivide

DATA = Path(__file__).resolve().parents[1] / "src" / "zeromodes" / "data"


def cost(d: int) -> int:
    return (d - 6) * (d - 7)


def anneal(tris, rng, steps=400_000, t0=2.0):
    ft = FlipTriangulation(tris)
    edges = ft.edges()
    total = sum(cost(d) for d in ft.degree.values())
    for step in range(steps):
        if total == 0:
            break
        temp = t0 * (1 - step / steps) + 1e-3
        i = int(rng.integers(len(edges)))
        u, v = edges[i]
        if not ft.can_flip(u, v, min_degree=4):
            continue
        c, d = ft.flip_targets(u, v)
        deg = ft.degree
        delta = (cost(deg[u] - 1) - cost(deg[u]) + cost(deg[v] - 1) - cost(deg[v])
                 + cost(deg[c] + 1) - cost(deg[c]) + cost(deg[d] + 1) - cost(deg[d]))
        if delta <= 0 or rng.random() < math.exp(-delta / temp):
            ft.flip(u, v)
            edges[i] = (min(c, d), max(c, d))
            total += delta
    if total:
        raise RuntimeError(f"annealing stopped with cost {total}")
    return ft.triangles()


def main():
    rng = np.random.default_rng(20240607)
    for g in (2, 3):
        for attempt in range(20):
            try:
                tris = anneal(loop_subdivide(genus_surface(g, 4, 4)), rng)
                break
            except RuntimeError:
                continue
        else:
            raise RuntimeError(f"no degree-6/7 triangulation found for genus {g}")
        lattice = dual(tris, {"name": f"genus{g}", "builder": "fixture", "genus": str(g),
                              "construction": "dual of annealed subdivided connected sum of torus grids"})
        assert genus_of(lattice) == g
        census = defect_census(lattice)
        assert set(census) == {6, 7} and census[7] == 12 * (g - 1), census
        save_lattice(lattice, DATA / f"genus{g}.lat")
        print(f"genus {g}: V={lattice.V} census {census.line()}")


if __name__ == "__main__":
    main()
