"""Oriented triangulations and their trivalent duals.

Every trivalent lattice built by this package is the dual of a simplicial
triangulation: sites are triangles, faces are the stars of triangulation
vertices, and a vertex of degree ``d`` becomes a ``d``-gon.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.spatial import ConvexHull

from .lattice import Lattice

Triangle = tuple[int, int, int]


def _orient_outward(points: np.ndarray, simplices: np.ndarray) -> list[Triangle]:
    centre = points.mean(axis=0)
    tris = []
    for a, b, c in simplices:
        n = np.cross(points[b] - points[a], points[c] - points[a])
        if np.dot(n, points[a] - centre) < 0:
            b, c = c, b
        tris.append((int(a), int(b), int(c)))
    return tris


def icosahedron() -> tuple[np.ndarray, list[Triangle]]:
    phi = (1 + 5**0.5) / 2
    pts = []
    for s1 in (-1, 1):
        for s2 in (-1, 1):
            pts += [(0, s1, s2 * phi), (s1, s2 * phi, 0), (s2 * phi, 0, s1)]
    pts = np.array(pts, dtype=float)
    return pts, _orient_outward(pts, ConvexHull(pts).simplices)


def octahedron() -> tuple[np.ndarray, list[Triangle]]:
    pts = np.array([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)], dtype=float)
    return pts, _orient_outward(pts, ConvexHull(pts).simplices)


def _face_lattice_points(m: int, n: int) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Barycentric coordinates of the triangular-lattice points in the closed
    triangle with corners ``0``, ``W = m + n w`` and ``W w`` (``w = e^{i pi/3}``,
    Eisenstein coordinates)."""
    # corners in the (1, w) basis; multiplication by w maps (i, j) -> (-j, i + j)
    bx, by = m, n
    cx, cy = -n, m + n
    det = bx * cy - by * cx
    out = []
    lo, hi = min(0, bx, cx), max(0, bx, cx)
    lo_y, hi_y = min(0, by, cy), max(0, by, cy)
    for i in range(lo, hi + 1):
        for j in range(lo_y, hi_y + 1):
            beta = Fraction(i * cy - j * cx, det)
            gamma = Fraction(bx * j - by * i, det)
            alpha = 1 - beta - gamma
            if alpha >= 0 and beta >= 0 and gamma >= 0:
                out.append((alpha, beta, gamma))
    return out


def geodesic(m: int, n: int, base: str = "icosahedron") -> list[Triangle]:
    """Class (m, n) geodesic subdivision of a triangulated solid.

    Lattice points are placed on each flat face with exact barycentric
    coordinates, merged across shared edges by those coordinates, projected
    to the unit sphere, and re-triangulated by their convex hull.  The hull
    reproduces the lattice triangulation because a lattice rhombus has
    diagonals in ratio 1 : sqrt(3), far from the cocircular case.
    """
    if m < 0 or n < 0 or (m, n) == (0, 0):
        raise ValueError(f"invalid geodesic parameters ({m}, {n})")
    if base == "icosahedron":
        corners, faces = icosahedron()
    elif base == "octahedron":
        corners, faces = octahedron()
    else:
        raise ValueError(f"unknown base solid {base!r}")
    if (m, n) == (1, 0):
        return faces
    bary = _face_lattice_points(m, n)
    index: dict[frozenset, int] = {}
    coords = []
    for a, b, c in faces:
        for wa, wb, wc in bary:
            key = frozenset((v, w) for v, w in ((a, wa), (b, wb), (c, wc)) if w)
            if key in index:
                continue
            index[key] = len(coords)
            x = float(wa) * corners[a] + float(wb) * corners[b] + float(wc) * corners[c]
            coords.append(x / np.linalg.norm(x))
    pts = np.array(coords)
    tris = _orient_outward(pts, ConvexHull(pts).simplices)
    t = m * m + m * n + n * n
    expected = len(faces) * t
    if len(tris) != expected:
        raise RuntimeError(f"geodesic hull produced {len(tris)} triangles, expected {expected}")
    return tris


def dual(triangles: list[Triangle], labels: dict | None = None) -> Lattice:
    """Trivalent dual of a closed oriented simplicial triangulation.

    Face ``v`` of the dual lists, counterclockwise, the triangles around
    vertex ``v``.
    """
    owner: dict[tuple[int, int], int] = {}
    for t, (a, b, c) in enumerate(triangles):
        for e in ((a, b), (b, c), (c, a)):
            if e in owner:
                raise ValueError(f"directed edge {e} used twice")
            owner[e] = t
    # ccw around v, triangle (v, x, y) is followed by the owner of v -> y
    nxt: dict[tuple[int, int], int] = {}
    first: dict[int, int] = {}
    for t, tri in enumerate(triangles):
        for k in range(3):
            v, y = tri[k], tri[(k + 2) % 3]
            nxt[(v, t)] = owner[(v, y)]
            first.setdefault(v, t)
    faces = []
    for v in sorted(first):
        start = first[v]
        ring = [start]
        t = nxt[(v, start)]
        while t != start:
            ring.append(t)
            t = nxt[(v, t)]
            if len(ring) > len(triangles):
                raise ValueError(f"vertex {v} has an open star")
        faces.append(tuple(ring))
    return Lattice(len(triangles), faces, labels or {})


def torus_grid(nx: int, ny: int) -> list[Triangle]:
    """Regular triangulation of an ``nx`` by ``ny`` torus grid (all degrees 6)."""
    if nx < 3 or ny < 3:
        raise ValueError("torus grid needs at least 3x3 cells to be simplicial")

    def vid(i, j):
        return (i % nx) * ny + (j % ny)

    tris = []
    for i in range(nx):
        for j in range(ny):
            tris.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            tris.append((vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)))
    return tris


def connected_sum(t1: list[Triangle], t2: list[Triangle]) -> list[Triangle]:
    """Glue two oriented triangulations along one removed triangle each."""
    off = 1 + max(max(t) for t in t1)
    t2 = [(a + off, b + off, c + off) for a, b, c in t2]
    a, b, c = t1[-1]
    x, y, z = t2[0]
    # remaining boundary of t2 is y->x, z->y, x->z; it must become a->b, c->a, b->c
    glue = {x: b, y: a, z: c}
    rest2 = [tuple(glue.get(v, v) for v in tri) for tri in t2[1:]]
    merged = t1[:-1] + rest2
    return _compact(merged)


def _compact(tris: list[Triangle]) -> list[Triangle]:
    used = sorted({v for t in tris for v in t})
    remap = {v: i for i, v in enumerate(used)}
    return [tuple(remap[v] for v in t) for t in tris]


def genus_surface(g: int, nx: int = 4, ny: int = 4) -> list[Triangle]:
    """A simplicial triangulation of the closed orientable genus-``g`` surface."""
    if g == 0:
        return icosahedron()[1]
    surf = torus_grid(nx, ny)
    for _ in range(g - 1):
        surf = connected_sum(surf, torus_grid(nx, ny))
    return surf


def loop_subdivide(tris: list[Triangle]) -> list[Triangle]:
    """Split every triangle into four through its edge midpoints."""
    nv = 1 + max(max(t) for t in tris)
    mid: dict[tuple[int, int], int] = {}

    def m(u, v):
        key = (min(u, v), max(u, v))
        if key not in mid:
            mid[key] = nv + len(mid)
        return mid[key]

    out = []
    for a, b, c in tris:
        ab, bc, ca = m(a, b), m(b, c), m(c, a)
        out += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
    return out


class FlipTriangulation:
    """Mutable triangulation supporting edge flips that keep it simplicial."""

    def __init__(self, tris: list[Triangle]):
        self.tris: list[list[int]] = [list(t) for t in tris]
        self.owner: dict[tuple[int, int], int] = {}
        for i, (a, b, c) in enumerate(self.tris):
            for e in ((a, b), (b, c), (c, a)):
                self.owner[e] = i
        self.degree: dict[int, int] = {}
        for u, _ in self.owner:
            self.degree[u] = self.degree.get(u, 0) + 1

    def edges(self) -> list[tuple[int, int]]:
        return sorted(e for e in self.owner if e[0] < e[1])

    def _apex(self, t: int, u: int, v: int) -> int:
        (x,) = set(self.tris[t]) - {u, v}
        return x

    def flip_targets(self, u: int, v: int) -> tuple[int, int]:
        t1, t2 = self.owner[(u, v)], self.owner[(v, u)]
        return self._apex(t1, u, v), self._apex(t2, u, v)

    def can_flip(self, u: int, v: int, min_degree: int = 3, max_degree: int | None = None) -> bool:
        c, d = self.flip_targets(u, v)
        if c == d or (c, d) in self.owner:
            return False
        if self.degree[u] - 1 < min_degree or self.degree[v] - 1 < min_degree:
            return False
        if max_degree is not None and max(self.degree[c], self.degree[d]) + 1 > max_degree:
            return False
        return True

    def flip(self, u: int, v: int) -> None:
        """Replace edge ``u v`` by the other diagonal of its quadrilateral."""
        t1, t2 = self.owner[(u, v)], self.owner[(v, u)]
        c, d = self.flip_targets(u, v)
        for t in (t1, t2):
            a, b, e = self.tris[t]
            for x in ((a, b), (b, e), (e, a)):
                del self.owner[x]
        # quad boundary is u -> d -> v -> c -> u
        self.tris[t1] = [u, d, c]
        self.tris[t2] = [v, c, d]
        for t in (t1, t2):
            a, b, e = self.tris[t]
            for x in ((a, b), (b, e), (e, a)):
                self.owner[x] = t
        self.degree[u] -= 1
        self.degree[v] -= 1
        self.degree[c] += 1
        self.degree[d] += 1

    def triangles(self) -> list[Triangle]:
        return [tuple(t) for t in self.tris]


def random_flips(tris: list[Triangle], steps: int, rng: np.random.Generator,
                 min_degree: int = 3, max_degree: int | None = None) -> list[Triangle]:
    ft = FlipTriangulation(tris)
    edges = ft.edges()
    for _ in range(steps):
        i = int(rng.integers(len(edges)))
        u, v = edges[i]
        if ft.can_flip(u, v, min_degree, max_degree):
            c, d = ft.flip_targets(u, v)
            ft.flip(u, v)
            edges[i] = (min(c, d), max(c, d))
    return ft.triangles()


def goldberg_t(m: int, n: int) -> int:
    return m * m + m * n + n * n



def random_lattice(rng: np.random.Generator, genus: int, steps: int = 400, subdivide: bool = False,
                   min_degree: int = 3, max_degree: int | None = None) -> Lattice:
    """Random closed trivalent lattice of the given genus.

    Dual of a randomly flipped triangulation; sites are shuffled and faces
    rotated so nothing depends on construction order.  ``min_degree`` and
    ``max_degree`` bound the face sizes.
    """
    tris = genus_surface(genus)
    if subdivide:
        tris = loop_subdivide(tris)
    tris = random_flips(tris, steps, rng, min_degree=min_degree, max_degree=max_degree)
    base = dual(tris)
    perm = rng.permutation(base.V)
    faces = []
    for f in base.faces:
        f = [int(perm[v]) for v in f]
        r = int(rng.integers(len(f)))
        faces.append(tuple(f[r:] + f[:r]))
    order = rng.permutation(len(faces))
    return Lattice(base.V, [faces[i] for i in order],
                   {"name": f"random-g{genus}-{int(rng.integers(1 << 30))}", "builder": "random"})
