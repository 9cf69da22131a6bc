"""Named lattices shipped with the package."""

from __future__ import annotations

from importlib import resources
from typing import Callable

from .builders import (
    TorusWrapping,
    build_goldberg_fullerene,
    build_honeycomb_torus,
    build_octahedral_graphenoid,
    load_lattice,
)
from .lattice import Lattice

TORUS_WRAPPINGS: dict[str, TorusWrapping] = {
    "torus-3x3": TorusWrapping((3, 0), (0, 3)),
    "torus-4x4": TorusWrapping((4, 0), (0, 4)),
    "torus-6x6": TorusWrapping((6, 0), (0, 6)),
    "torus-5x3": TorusWrapping((5, 0), (0, 3)),
    "torus-chiral-13": TorusWrapping((4, 1), (-1, 3)),
    "torus-12x12": TorusWrapping((12, 0), (0, 12)),
}


def data_path(filename: str):
    return resources.files("zeromodes") / "data" / filename


def _file(filename: str) -> Callable[[], Lattice]:
    def load() -> Lattice:
        with resources.as_file(data_path(filename)) as path:
            return load_lattice(path)
    return load


def _torus(name: str) -> Callable[[], Lattice]:
    return lambda: build_honeycomb_torus(TORUS_WRAPPINGS[name]).relabel(name=name)


FIXTURES: dict[str, Callable[[], Lattice]] = {
    "C20": lambda: build_goldberg_fullerene(1, 0).relabel(name="C20"),
    "C60": lambda: build_goldberg_fullerene(1, 1).relabel(name="C60"),
    "C80": lambda: build_goldberg_fullerene(2, 0).relabel(name="C80"),
    "cube": lambda: build_octahedral_graphenoid(1).relabel(name="cube"),
    "octahedral-2": lambda: build_octahedral_graphenoid(2).relabel(name="octahedral-2"),
    "octahedral-3": lambda: build_octahedral_graphenoid(3).relabel(name="octahedral-3"),
    **{name: _torus(name) for name in TORUS_WRAPPINGS},
    "genus2": _file("genus2.lat"),
    "genus3": _file("genus3.lat"),
}


def fixture_names() -> list[str]:
    return sorted(FIXTURES)


def load_fixture(name: str) -> Lattice:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}") from None
