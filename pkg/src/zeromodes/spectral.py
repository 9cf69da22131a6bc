"""Tight-binding spectra and zero-mode counting.

Energies are in units of the hopping ``J`` unless stated otherwise.  The
Hamiltonian is ``H = -J A`` with ``A`` the adjacency matrix of the lattice.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .builders import TorusWrapping, atomic_write, hermite_rows
from .exact_rank import exact_rank
from .lattice import Bipartition, Lattice, bipartition

__all__ = [
    "Hamiltonian",
    "Spectrum",
    "ZeroModeReport",
    "CapacityError",
    "FrustrationError",
    "ExactZeroCount",
    "DEFAULT_ZERO_TOL",
    "LOW_ENERGY_WINDOW",
    "CLUSTER_GAP",
    "dense_limit",
    "assemble_hamiltonian",
    "full_spectrum",
    "cluster",
    "dispersion_energy",
    "allowed_momenta",
    "bloch_spectrum",
    "count_zero_modes",
    "count_zero_modes_sparse",
    "biadjacency",
    "exact_zero_count_bipartite",
    "zero_mode_report",
    "spectrum_csv",
    "clusters_csv",
    "write_spectrum_csv",
    "write_clusters_csv",
]

DEFAULT_ZERO_TOL = 1e-8
CLUSTER_GAP = 1e-6
DEFAULT_DENSE_LIMIT = 4096
DENSE_LIMIT_ENV = "ZEROMODES_DENSE_LIMIT"
NEAR_ZERO_CLUSTERS = 4
# states with |E| <= LOW_ENERGY_WINDOW * J count as low-energy for continuum comparisons
LOW_ENERGY_WINDOW = 0.5

SQRT3 = np.sqrt(3.0)
BRAVAIS = np.array([[1.5, SQRT3 / 2], [1.5, -SQRT3 / 2]])
RECIPROCAL = 2 * np.pi * np.linalg.inv(BRAVAIS).T


class CapacityError(RuntimeError):
    """Lattice too large for dense diagonalization."""


class FrustrationError(ValueError):
    """A bipartite-only method was given a frustrated lattice."""


def dense_limit() -> int:
    value = os.environ.get(DENSE_LIMIT_ENV)
    return int(value) if value else DEFAULT_DENSE_LIMIT


@dataclass(frozen=True)
class Hamiltonian:
    matrix: sp.csr_matrix
    J: float
    lattice_name: str = ""

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()


def assemble_hamiltonian(lattice: Lattice, J: float = 1.0) -> Hamiltonian:
    """``H[i, j] = -J`` for every bond ``{i, j}``."""
    if not J > 0:
        raise ValueError(f"coupling must be positive, got {J}")
    lattice.require_valid()
    edges = np.array(sorted(lattice.edges), dtype=np.int64).reshape(-1, 2)
    rows = np.concatenate([edges[:, 0], edges[:, 1]])
    cols = np.concatenate([edges[:, 1], edges[:, 0]])
    data = np.full(rows.size, -float(J))
    m = sp.csr_matrix((data, (rows, cols)), shape=(lattice.V, lattice.V))
    m.sort_indices()
    return Hamiltonian(m, float(J), lattice.name)


def cluster(eigenvalues: np.ndarray, gap: float) -> list[tuple[float, int]]:
    """Group sorted eigenvalues; a new group starts where the gap exceeds ``gap``."""
    ev = np.asarray(eigenvalues, dtype=float)
    if ev.size == 0:
        return []
    breaks = np.nonzero(np.diff(ev) > gap)[0] + 1
    return [(float(g.mean()), int(g.size)) for g in np.split(ev, breaks)]


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    J: float = 1.0
    clusters: list[tuple[float, int]] = field(default=None)

    def __post_init__(self):
        ev = np.sort(np.asarray(self.eigenvalues, dtype=float))
        object.__setattr__(self, "eigenvalues", ev)
        if self.clusters is None:
            object.__setattr__(self, "clusters", cluster(ev, CLUSTER_GAP * self.J))

    def __len__(self) -> int:
        return self.eigenvalues.size

    def nearest_clusters(self, count: int = NEAR_ZERO_CLUSTERS) -> list[tuple[float, int]]:
        """The ``count`` clusters closest to zero, ordered by ``|mean|``."""
        # rounding makes +-E ties resolve the same way regardless of solver noise
        order = sorted(self.clusters, key=lambda c: (round(abs(c[0]) / self.J, 9), c[0]))
        return order[:count]


def full_spectrum(h: Hamiltonian, limit: int | None = None) -> Spectrum:
    """All eigenvalues of ``h`` by dense symmetric diagonalization."""
    limit = dense_limit() if limit is None else limit
    if h.dimension > limit:
        raise CapacityError(
            f"dimension {h.dimension} exceeds the dense limit {limit}; "
            f"use count_zero_modes_sparse or raise {DENSE_LIMIT_ENV}"
        )
    ev = np.linalg.eigvalsh(h.dense())
    return Spectrum(ev, h.J)


def dispersion_energy(p, J: float = 1.0):
    """Both branches ``(E+, E-)`` of the honeycomb band at momentum ``p``.

    ``p`` may be a 2-vector or an array of shape ``(..., 2)``.
    """
    p = np.asarray(p, dtype=float)
    px, py = p[..., 0], p[..., 1]
    cy = np.cos(SQRT3 * py / 2)
    arg = 1 + 4 * cy**2 + 4 * np.cos(3 * px / 2) * cy
    e = J * np.sqrt(np.maximum(arg, 0.0))
    return e, -e


class Momenta(NamedTuple):
    fractional: list[tuple[Fraction, Fraction]]
    cartesian: np.ndarray


def allowed_momenta(w: TorusWrapping) -> Momenta:
    """Momenta ``p`` with ``p . a`` and ``p . b`` in ``2 pi Z``.

    With ``p = k1 b1 + k2 b2`` (reciprocal basis) the condition reads
    ``M k in Z^2`` for ``M = [[a_x, a_y], [b_x, b_y]]``, so the allowed ``k``
    are ``M^{-1} z`` for ``z`` running over ``Z^2 / M Z^2``.  Representatives
    of that quotient come from the Hermite form of the columns of ``M``.
    """
    (ax, ay), (bx, by) = w.a, w.b
    p, q, s = hermite_rows((ax, bx), (ay, by))
    det = w.det
    ks = []
    for x in range(p):
        for y in range(s):
            # M^{-1} = [[by, -ay], [-bx, ax]] / det
            k1 = Fraction(by * x - ay * y, det) % 1
            k2 = Fraction(-bx * x + ax * y, det) % 1
            ks.append((k1, k2))
    frac = np.array([[float(a), float(b)] for a, b in ks]).reshape(-1, 2)
    return Momenta(ks, frac @ RECIPROCAL)


def bloch_spectrum(w: TorusWrapping, J: float = 1.0) -> Spectrum:
    """Spectrum of the honeycomb torus from the band formula alone."""
    mom = allowed_momenta(w)
    plus, minus = dispersion_energy(mom.cartesian, J)
    return Spectrum(np.concatenate([plus, minus]), J)


@dataclass(frozen=True)
class ZeroModeReport:
    numeric_count: int
    tolerance: float
    near_zero_clusters: list[tuple[float, int]]
    exact_count: int | None = None
    lattice_name: str = ""
    method: str = "dense"
    sublattice_nullity: tuple[int, int] | None = None
    # (window in units of J, number of states with |E| <= window J); a lower bound for sparse runs
    low_energy: tuple[float, int] | None = None


def count_zero_modes(s: Spectrum, tau: float | None = None, n_clusters: int = NEAR_ZERO_CLUSTERS,
                     lattice_name: str = "", window: float = LOW_ENERGY_WINDOW) -> ZeroModeReport:
    """Count eigenvalues with ``|E| <= tau`` (default ``1e-8 J``)."""
    tau = DEFAULT_ZERO_TOL * s.J if tau is None else tau
    if not tau > 0:
        raise ValueError("zero tolerance must be positive")
    absval = np.abs(s.eigenvalues)
    count = int(np.count_nonzero(absval <= tau))
    low = (float(window), int(np.count_nonzero(absval <= window * s.J)))
    return ZeroModeReport(count, float(tau), s.nearest_clusters(n_clusters), lattice_name=lattice_name,
                          low_energy=low)


def count_zero_modes_sparse(h: Hamiltonian, tau: float | None = None, k: int = 16,
                            n_clusters: int = NEAR_ZERO_CLUSTERS,
                            window: float = LOW_ENERGY_WINDOW) -> ZeroModeReport:
    """Zero-mode count for lattices beyond the dense limit.

    Shift-invert Lanczos near a small positive shift finds the eigenvalues
    closest to zero; ``k`` doubles until the farthest one found lies outside
    the tolerance window, so every in-window eigenvalue has been seen.
    """
    tau = DEFAULT_ZERO_TOL * h.J if tau is None else tau
    n = h.dimension
    shift = 1e-3 * h.J
    while True:
        k_eff = min(k, n - 2)
        vals = spla.eigsh(h.matrix.tocsc(), k=k_eff, sigma=shift, which="LM",
                          return_eigenvectors=False, v0=np.ones(n) / np.sqrt(n))
        vals = np.sort(vals)
        # every eigenvalue within shift + tau of the shift is found once the farthest one is beyond it
        if np.max(np.abs(vals - shift)) > tau + shift or k_eff >= n - 2:
            break
        k *= 2
    count = int(np.count_nonzero(np.abs(vals) <= tau))
    part = Spectrum(vals, h.J)
    low = (float(window), int(np.count_nonzero(np.abs(vals) <= window * h.J)))
    return ZeroModeReport(count, float(tau), part.nearest_clusters(n_clusters),
                          lattice_name=h.lattice_name, method="shift-invert", low_energy=low)


def biadjacency(lattice: Lattice, bp: Bipartition) -> np.ndarray:
    """0/1 matrix with rows in ``part_a`` and columns in ``part_b`` (sorted)."""
    a = sorted(bp.part_a)
    b = sorted(bp.part_b)
    col = {v: j for j, v in enumerate(b)}
    out = np.zeros((len(a), len(b)), dtype=np.int64)
    nbrs = lattice.neighbors
    for i, u in enumerate(a):
        for v in nbrs[u]:
            out[i, col[v]] = 1
    return out


class ExactZeroCount(NamedTuple):
    count: int
    rank: int
    imbalance: int  # |A| - |B|; |imbalance| <= count

    @property
    def nullity_a(self) -> int:
        """Zero modes living on sublattice A: ``|A| - rank``."""
        return (self.count + self.imbalance) // 2

    @property
    def nullity_b(self) -> int:
        return (self.count - self.imbalance) // 2


def exact_zero_count_bipartite(lattice: Lattice, bp: Bipartition | None = None) -> ExactZeroCount:
    """Nullity of the adjacency matrix, ``V - 2 rank(B_AB)``, in exact arithmetic."""
    if bp is None:
        bp = bipartition(lattice)
    if not isinstance(bp, Bipartition):
        raise FrustrationError(f"lattice {lattice.name} is not bipartite (odd cycle of length {len(bp.cycle)})")
    r = exact_rank(biadjacency(lattice, bp))
    return ExactZeroCount(lattice.V - 2 * r, r, bp.imbalance)


def zero_mode_report(lattice: Lattice, J: float = 1.0, tau: float | None = None,
                     exact: bool = True, window: float = LOW_ENERGY_WINDOW) -> tuple[ZeroModeReport, Spectrum | None]:
    """Numeric count (dense or sparse by size) plus the exact count when bipartite."""
    h = assemble_hamiltonian(lattice, J)
    spectrum = None
    if h.dimension <= dense_limit():
        spectrum = full_spectrum(h)
        rep = count_zero_modes(spectrum, tau, lattice_name=lattice.name, window=window)
    else:
        rep = count_zero_modes_sparse(h, tau, window=window)
    bp = bipartition(lattice)
    if exact and isinstance(bp, Bipartition):
        ex = exact_zero_count_bipartite(lattice, bp)
        rep = replace(rep, exact_count=ex.count, sublattice_nullity=(ex.nullity_a, ex.nullity_b))
    return rep, spectrum


def spectrum_csv(s: Spectrum) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "eigenvalue"])
    for i, e in enumerate(s.eigenvalues / s.J):
        w.writerow([i, f"{e:.17g}"])
    return buf.getvalue()


def clusters_csv(s: Spectrum) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["mean", "multiplicity"])
    for mean, mult in s.clusters:
        w.writerow([f"{mean / s.J:.17g}", mult])
    return buf.getvalue()


def write_spectrum_csv(s: Spectrum, path) -> None:
    atomic_write(path, spectrum_csv(s))


def write_clusters_csv(s: Spectrum, path) -> None:
    atomic_write(path, clusters_csv(s))
