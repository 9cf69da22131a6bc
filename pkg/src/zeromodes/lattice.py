"""Trivalent lattices on closed orientable surfaces.

A :class:`Lattice` is stored as a list of oriented faces; edges, degrees and
adjacency are derived from them.  Nothing is checked at construction time:
:func:`validate` inspects arbitrary candidate data and reports every problem,
while the topological functions refuse to work on invalid input.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

__all__ = [
    "Lattice",
    "FaceCensus",
    "Violation",
    "ValidationReport",
    "Bipartition",
    "Frustration",
    "DefectRelation",
    "LatticeError",
    "InvalidLatticeError",
    "TopologyError",
    "NonOrientableError",
    "validate",
    "euler_characteristic",
    "genus_of",
    "defect_census",
    "bipartition",
    "defect_relation_check",
]


class LatticeError(Exception):
    """Base class for lattice problems."""


class InvalidLatticeError(LatticeError, ValueError):
    """Raised when an operation needs a valid lattice and did not get one."""

    def __init__(self, report: ValidationReport):
        self.report = report
        lines = [f"{v.rule}: {v.detail}" for v in report.violations[:10]]
        more = len(report.violations) - len(lines)
        if more > 0:
            lines.append(f"... and {more} more")
        super().__init__("invalid lattice\n  " + "\n  ".join(lines))


class TopologyError(LatticeError, ValueError):
    """Counts that cannot come from a closed orientable surface."""


class NonOrientableError(TopologyError):
    pass


@dataclass(frozen=True)
class Lattice:
    """Closed trivalent map given by its faces.

    Parameters
    ----------
    vertex_count : int
        Number of sites ``V``.
    faces : sequence of sequences of int
        Each face is a cyclic list of vertex indices, counterclockwise with
        respect to one global orientation.
    labels : mapping, optional
        Free-form text annotations (builder name, parameters, ...).  They are
        ignored by equality.
    """

    vertex_count: int
    faces: tuple[tuple[int, ...], ...]
    labels: Mapping[str, str] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "faces", tuple(tuple(int(v) for v in f) for f in self.faces))
        object.__setattr__(self, "labels", dict(self.labels))

    @property
    def name(self) -> str:
        return self.labels.get("name", f"lattice-{self.fingerprint[:12]}")

    @cached_property
    def directed_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((f[i], f[(i + 1) % len(f)]) for f in self.faces for i in range(len(f)))

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        """Unordered edges as sorted pairs."""
        return frozenset((min(u, v), max(u, v)) for u, v in self.directed_edges)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(max(self.vertex_count, 0))]
        for u, v in self.edges:
            if 0 <= u < self.vertex_count and 0 <= v < self.vertex_count:
                nbrs[u].add(v)
                nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @property
    def V(self) -> int:
        return self.vertex_count

    @property
    def E(self) -> int:
        return len(self.edges)

    @property
    def F(self) -> int:
        return len(self.faces)

    @cached_property
    def report(self) -> ValidationReport:
        return validate(self)

    @property
    def is_valid(self) -> bool:
        return self.report.ok

    def require_valid(self) -> Lattice:
        if not self.report.ok:
            raise InvalidLatticeError(self.report)
        return self

    def canonical(self) -> tuple[int, tuple[tuple[int, ...], ...]]:
        """Face-order independent form: each face rotated to start at its
        smallest vertex, faces sorted."""
        rotated = []
        for f in self.faces:
            i = f.index(min(f)) if f else 0
            rotated.append(f[i:] + f[:i])
        return self.vertex_count, tuple(sorted(rotated))

    def is_equivalent(self, other: Lattice) -> bool:
        return self.canonical() == other.canonical()

    @cached_property
    def fingerprint(self) -> str:
        import hashlib

        n, faces = self.canonical()
        text = f"{n};" + ";".join(",".join(map(str, f)) for f in faces)
        return hashlib.sha256(text.encode()).hexdigest()

    def relabel(self, **labels: str) -> Lattice:
        merged = {**self.labels, **labels}
        return Lattice(self.vertex_count, self.faces, merged)

    def __repr__(self) -> str:
        return f"Lattice(name={self.name!r}, V={self.vertex_count}, F={len(self.faces)})"


class Violation(NamedTuple):
    rule: str
    detail: str
    element: object = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {v.rule for v in self.violations}

    def __bool__(self) -> bool:
        return self.ok


def _reorientable(lattice: Lattice) -> bool:
    """Whether flipping some faces yields a consistent orientation.

    Only meaningful when every edge lies in exactly two faces.
    """
    faces_of: dict[tuple[int, int], list[tuple[int, bool]]] = {}
    for fi, f in enumerate(lattice.faces):
        for i in range(len(f)):
            u, v = f[i], f[(i + 1) % len(f)]
            faces_of.setdefault((min(u, v), max(u, v)), []).append((fi, u < v))
    flip: dict[int, bool] = {}
    for start in range(len(lattice.faces)):
        if start in flip:
            continue
        flip[start] = False
        queue = deque([start])
        while queue:
            fi = queue.popleft()
            f = lattice.faces[fi]
            for i in range(len(f)):
                u, v = f[i], f[(i + 1) % len(f)]
                key = (min(u, v), max(u, v))
                uses = faces_of[key]
                (f1, d1), (f2, d2) = uses
                other, od = (f2, d2) if f1 == fi else (f1, d1)
                mine = d1 if f1 == fi else d2
                # neighbours must traverse the shared edge in opposite directions
                want = flip[fi] ^ (mine == od)
                if other in flip:
                    if flip[other] != want:
                        return False
                else:
                    flip[other] = want
                    queue.append(other)
    return True


def validate(lattice: Lattice) -> ValidationReport:
    """List every way ``lattice`` fails to be a closed orientable trivalent map.

    Rule identifiers: ``vertex-count``, ``vertex-range``, ``face-length``,
    ``face-repeat``, ``edge-faces``, ``orientation``, ``non-orientable``,
    ``vertex-degree``, ``connectivity``.
    """
    out: list[Violation] = []
    n = lattice.vertex_count
    if n < 0:
        out.append(Violation("vertex-count", f"negative vertex count {n}", n))
        return ValidationReport(tuple(out))

    for fi, f in enumerate(lattice.faces):
        if len(f) < 3:
            out.append(Violation("face-length", f"face {fi} has {len(f)} < 3 sides", fi))
        bad = [v for v in f if not 0 <= v < n]
        if bad:
            out.append(Violation("vertex-range", f"face {fi} references vertices {bad} outside [0, {n})", fi))
        dup = [v for v, c in Counter(f).items() if c > 1]
        if dup:
            out.append(Violation("face-repeat", f"face {fi} repeats vertices {dup}", fi))

    directed = Counter(lattice.directed_edges)
    undirected = Counter((min(u, v), max(u, v)) for u, v in lattice.directed_edges)
    edge_ok = True
    for e, c in sorted(undirected.items()):
        if c != 2:
            edge_ok = False
            out.append(Violation("edge-faces", f"edge {e} in {c} faces, expected 2 (edge in ≠2 faces)", e))
    oriented = True
    for (u, v), c in sorted(directed.items()):
        if c > 1 or (undirected[(min(u, v), max(u, v))] == 2 and (v, u) not in directed):
            oriented = False
            break
    if not oriented:
        if edge_ok and all(len(set(f)) == len(f) >= 3 for f in lattice.faces) and _reorientable(lattice):
            out.append(Violation("orientation", "faces are not consistently oriented (surface is orientable)", None))
        else:
            out.append(Violation("non-orientable", "no consistent orientation of the faces exists", None))

    nbrs = lattice.neighbors
    for v in range(n):
        d = len(nbrs[v])
        if d != 3:
            out.append(Violation("vertex-degree", f"vertex {v} has degree {d} (vertex degree ≠ 3)", v))

    if n > 0:
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        if len(seen) != n:
            out.append(Violation("connectivity", f"graph has unreachable vertices ({n - len(seen)} of {n})", n - len(seen)))
    return ValidationReport(tuple(out))


def euler_characteristic(lattice: Lattice) -> int:
    """``V - E + F``."""
    lattice.require_valid()
    return lattice.V - lattice.E + lattice.F


def genus_of(lattice: Lattice) -> int:
    """Genus of the closed orientable surface carrying ``lattice``."""
    report = lattice.report
    if "non-orientable" in report.rules():
        raise NonOrientableError("lattice is not orientable; genus from χ is undefined")
    chi = euler_characteristic(lattice)
    return genus_from_chi(chi)


def genus_from_chi(chi: int) -> int:
    if chi % 2 or chi > 2:
        raise TopologyError(f"χ = {chi} is not the Euler characteristic of a closed orientable surface")
    return 1 - chi // 2


class FaceCensus(Mapping[int, int]):
    """Number of faces of each size.

    Behaves as a read-only mapping ``size -> count`` that returns 0 for
    absent sizes.
    """

    __slots__ = ("_counts",)

    def __init__(self, counts: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = dict(counts)
        clean = {}
        for p, c in items.items():
            p, c = int(p), int(c)
            if p < 3:
                raise ValueError(f"face size {p} < 3")
            if c < 0:
                raise ValueError(f"negative count {c} for size {p}")
            if c:
                clean[p] = c
        self._counts = dict(sorted(clean.items()))

    def __getitem__(self, p: int) -> int:
        return self._counts.get(p, 0)

    def __iter__(self):
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __contains__(self, p: object) -> bool:
        return p in self._counts

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Mapping):
            return self._counts == {int(k): int(v) for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._counts.items()))

    def __repr__(self) -> str:
        return f"FaceCensus({self._counts})"

    @property
    def total(self) -> int:
        return sum(self._counts.values())

    @property
    def edge_count(self) -> int:
        s = sum(p * c for p, c in self._counts.items())
        if s % 2:
            raise TopologyError("odd total of face sides")
        return s // 2

    def shifted(self, **delta: int) -> FaceCensus:
        """Copy with counts changed, e.g. ``shifted(n5=2, n7=2)``."""
        counts = dict(self._counts)
        for key, d in delta.items():
            p = int(key.lstrip("n"))
            counts[p] = counts.get(p, 0) + d
        return FaceCensus(counts)

    def as_dict(self) -> dict[int, int]:
        return dict(self._counts)

    def line(self) -> str:
        """Compact text form, ``5:12 6:20``."""
        return " ".join(f"{p}:{c}" for p, c in self._counts.items())


def defect_census(lattice: Lattice) -> FaceCensus:
    return FaceCensus(Counter(len(f) for f in lattice.faces))


@dataclass(frozen=True)
class Bipartition:
    part_a: frozenset[int]
    part_b: frozenset[int]

    @property
    def imbalance(self) -> int:
        return len(self.part_a) - len(self.part_b)

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Frustration:
    """Returned instead of a bipartition; ``cycle`` is an odd closed walk."""

    cycle: tuple[int, ...]

    def __bool__(self) -> bool:
        return False


def bipartition(lattice: Lattice) -> Bipartition | Frustration:
    """Two-colour the sites, or return an odd cycle showing it is impossible.

    An odd face is preferred as the witness since it is the local source of
    frustration; otherwise the odd cycle closes a BFS tree.
    """
    lattice.require_valid()
    for f in lattice.faces:
        if len(f) % 2:
            return Frustration(tuple(f))
    nbrs = lattice.neighbors
    color = [-1] * lattice.V
    parent = [-1] * lattice.V
    color[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in sorted(nbrs[u]):
            if color[w] < 0:
                color[w] = 1 - color[u]
                parent[w] = u
                queue.append(w)
            elif color[w] == color[u]:
                return Frustration(_tree_cycle(parent, u, w))
    a = frozenset(v for v in range(lattice.V) if color[v] == 0)
    b = frozenset(v for v in range(lattice.V) if color[v] == 1)
    return Bipartition(a, b)


def _tree_cycle(parent: list[int], u: int, w: int) -> tuple[int, ...]:
    path_u = [u]
    while parent[path_u[-1]] >= 0:
        path_u.append(parent[path_u[-1]])
    path_w = [w]
    while parent[path_w[-1]] >= 0:
        path_w.append(parent[path_w[-1]])
    anc_u = set(path_u)
    lca = next(x for x in path_w if x in anc_u)
    left = path_u[: path_u.index(lca) + 1]
    right = path_w[: path_w.index(lca)]
    return tuple(left + right[::-1])


class DefectRelation(NamedTuple):
    holds: bool
    residual: int


def defect_relation_check(census: Mapping[int, int], genus: int) -> DefectRelation:
    """Check ``sum_p (6 - p) n_p == 12 (1 - g)``.

    With only pentagons, hexagons and heptagons this is ``n5 - n7 = 12(1-g)``.
    """
    residual = sum((6 - int(p)) * int(c) for p, c in census.items()) - 12 * (1 - int(genus))
    return DefectRelation(residual == 0, residual)
