"""Constructors for the case-study lattices and the lattice text format.

Conventions
-----------
Bond length is 1.  Honeycomb Bravais vectors are ``a1 = (3/2, sqrt(3)/2)``
and ``a2 = (3/2, -sqrt(3)/2)``; the A site of cell ``R = x a1 + y a2`` sits
at ``R`` and its B partner at ``R + (1, 0)``.  Torus wrapping vectors are
integer pairs ``(x, y)`` in this basis.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .lattice import InvalidLatticeError, Lattice, validate
from .triangulations import dual, geodesic

__all__ = [
    "TorusWrapping",
    "WrappingError",
    "LatticeParseError",
    "build_honeycomb_torus",
    "build_goldberg_fullerene",
    "build_octahedral_graphenoid",
    "load_lattice",
    "save_lattice",
    "hermite_rows",
]


class WrappingError(ValueError):
    """Degenerate wrapping, or a quotient that is not a simple graph."""


class LatticeParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


def hermite_rows(r1: tuple[int, int], r2: tuple[int, int]) -> tuple[int, int, int]:
    """Row Hermite form ``[[p, q], [0, s]]`` of the lattice spanned by two
    integer rows, with ``p, s > 0`` and ``0 <= q < s``."""
    (a, b), (c, d) = r1, r2
    while c != 0:
        k = a // c
        a, b, c, d = c, d, a - k * c, b - k * d
    if a < 0:
        a, b = -a, -b
    if d < 0:
        d = -d
    if a == 0 or d == 0:
        raise WrappingError("wrapping vectors are linearly dependent")
    return a, b % d, d


@dataclass(frozen=True)
class TorusWrapping:
    a: tuple[int, int]
    b: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if len(self.a) != 2 or len(self.b) != 2:
            raise WrappingError("wrapping vectors must be integer pairs")
        if self.det == 0:
            raise WrappingError(f"degenerate wrapping {self.a}, {self.b}: zero determinant")

    @property
    def det(self) -> int:
        return self.a[0] * self.b[1] - self.a[1] * self.b[0]

    @property
    def cells(self) -> int:
        return abs(self.det)

    def reducer(self):
        """Return ``(reduce, p, s)``: ``reduce(x, y)`` maps a cell to its index
        in ``range(p * s)``."""
        p, q, s = hermite_rows(self.a, self.b)

        def reduce(x: int, y: int) -> int:
            k = x // p
            x, y = x - k * p, (y - k * q) % s
            return x * s + y

        return reduce, p, s

    def contains_fermi_points(self) -> bool:
        """Whether both Dirac points are allowed momenta of the quotient.

        They sit at fractional reciprocal coordinates ``(1/3, -1/3)`` and
        ``(-1/3, 1/3)``, so the test is ``x - y = 0 (mod 3)`` for both
        wrapping vectors.
        """
        return (self.a[0] - self.a[1]) % 3 == 0 and (self.b[0] - self.b[1]) % 3 == 0

    def __str__(self) -> str:
        return f"{self.a[0]},{self.a[1]};{self.b[0]},{self.b[1]}"


def build_honeycomb_torus(w: TorusWrapping | tuple) -> Lattice:
    """Honeycomb lattice modulo two wrapping translations.

    Site ``2c`` is the A site and ``2c + 1`` the B site of cell ``c``.
    Quotients with repeated bonds (e.g. 1x1) raise :class:`WrappingError`.
    """
    if not isinstance(w, TorusWrapping):
        w = TorusWrapping(*w)
    reduce, p, s = w.reducer()
    # bonds from A(R) go to B(R), B(R - a1), B(R - a2); they collapse iff a1, a2 or a1 - a2 is a period
    if reduce(1, 0) == 0 or reduce(0, 1) == 0 or reduce(1, -1) == 0:
        raise WrappingError(f"wrapping {w} folds the lattice onto repeated bonds")
    faces = []
    for x in range(p):
        for y in range(s):
            def A(dx, dy):
                return 2 * reduce(x + dx, y + dy)

            def B(dx, dy):
                return 2 * reduce(x + dx, y + dy) + 1

            faces.append((B(0, 0), A(0, 1), B(0, 1), A(1, 1), B(1, 0), A(1, 0)))
    lattice = Lattice(2 * p * s, faces, {"name": f"torus({w})", "builder": "torus", "wrapping": str(w)})
    report = validate(lattice)
    if not report.ok:
        raise WrappingError(f"wrapping {w} does not give a simple trivalent map: {report.violations[0].detail}")
    return lattice


def build_goldberg_fullerene(m: int, n: int = 0) -> Lattice:
    """Goldberg polyhedron GP(m, n): 12 pentagons, ``10 (T - 1)`` hexagons,
    ``20 T`` sites with ``T = m^2 + m n + n^2``."""
    if m < 1 or n < 0:
        raise ValueError(f"invalid Goldberg parameters ({m}, {n}): need m >= 1, n >= 0")
    t = m * m + m * n + n * n
    return dual(geodesic(m, n, "icosahedron"),
                {"name": f"goldberg({m},{n})", "builder": "goldberg", "m": str(m), "n": str(n), "atoms": f"C{20 * t}"})


def build_octahedral_graphenoid(f: int) -> Lattice:
    """Dual of the frequency-``f`` subdivided octahedron: six squares at the
    octahedron corners, hexagons elsewhere, ``8 f^2`` sites.  ``f = 1`` is the
    cube."""
    if f < 1:
        raise ValueError(f"invalid subdivision frequency {f}")
    return dual(geodesic(f, 0, "octahedron"), {"name": f"octahedral({f})", "builder": "octahedral", "f": str(f)})


_HEADER = "lattice"
_VERSION = "v1"


def format_lattice(lattice: Lattice) -> str:
    lines = [f"# {k}: {v}" for k, v in sorted(lattice.labels.items()) if "\n" not in f"{k}{v}"]
    lines.append(f"{_HEADER} {_VERSION} {lattice.vertex_count}")
    lines += ["f " + " ".join(map(str, f)) for f in lattice.faces]
    return "\n".join(lines) + "\n"


def parse_lattice(text: str, check: bool = True) -> Lattice:
    if text and not text.endswith("\n"):
        raise LatticeParseError("missing trailing newline", text.count("\n") + 1)
    labels: dict[str, str] = {}
    n = None
    faces = []
    for lineno, raw in enumerate(text.split("\n")[:-1], start=1):
        line = raw.rstrip("\r")
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep and key.strip() and " " not in key.strip():
                labels[key.strip()] = value.strip()
            continue
        tokens = line.split()
        if not tokens:
            continue
        if n is None:
            if len(tokens) != 3 or tokens[0] != _HEADER:
                raise LatticeParseError(f"expected header 'lattice v1 <vertex_count>', got {line!r}", lineno)
            if tokens[1] != _VERSION:
                raise LatticeParseError(f"unsupported format version {tokens[1]!r}", lineno)
            try:
                n = int(tokens[2])
            except ValueError:
                raise LatticeParseError(f"bad vertex count {tokens[2]!r}", lineno) from None
            if n < 0:
                raise LatticeParseError("negative vertex count", lineno)
            continue
        if tokens[0] != "f":
            raise LatticeParseError(f"unknown record {tokens[0]!r}", lineno)
        try:
            face = tuple(int(t) for t in tokens[1:])
        except ValueError:
            raise LatticeParseError(f"non-integer vertex index in {line!r}", lineno) from None
        for v in face:
            if not 0 <= v < n:
                raise LatticeParseError(f"vertex index out of range: {v} not in [0, {n})", lineno)
        faces.append(face)
    if n is None:
        raise LatticeParseError("missing header line")
    lattice = Lattice(n, faces, labels)
    if check:
        lattice.require_valid()
    return lattice


def load_lattice(path: str | os.PathLike, check: bool = True) -> Lattice:
    """Read a lattice file.

    Raises :class:`LatticeParseError` on malformed text and, when ``check``
    is true, :class:`~zeromodes.lattice.InvalidLatticeError` (carrying the
    validation report) on a well-formed file describing an invalid map.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        text = fh.read()
    lattice = parse_lattice(text, check=check)
    if "name" not in lattice.labels:
        lattice = lattice.relabel(name=Path(path).stem)
    return lattice


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_lattice(lattice: Lattice, path: str | os.PathLike) -> None:
    if not lattice.is_valid:
        raise InvalidLatticeError(lattice.report)
    atomic_write(path, format_lattice(lattice))
