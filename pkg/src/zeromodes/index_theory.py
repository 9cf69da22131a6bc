"""Index of the lattice Dirac operator from defect flux bookkeeping.

Each odd face exchanges the two sublattices and carries a gauge-field
circulation of ``+pi/2`` (pentagon) or ``-pi/2`` (heptagon) in sector
``k = 1``; sector ``k = 2`` has the opposite sign.  Even faces carry none.
The index in sector ``k`` is the total flux divided by ``2 pi``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .lattice import (
    Bipartition,
    FaceCensus,
    Lattice,
    TopologyError,
    bipartition,
    defect_census,
    defect_relation_check,
    genus_of,
)
from .spectral import LOW_ENERGY_WINDOW, ZeroModeReport, zero_mode_report

__all__ = [
    "UnsupportedDefectError",
    "DefectFluxTable",
    "FLUX_TABLE",
    "IndexPrediction",
    "LatticeClass",
    "Verdict",
    "VerificationReport",
    "flux_integral",
    "predicted_index",
    "compare",
    "verify_lattice",
]


class UnsupportedDefectError(ValueError):
    def __init__(self, size: int):
        self.size = size
        super().__init__(f"no flux rule for {size}-sided faces (supported: 4, 5, 6, 7, 8)")


@dataclass(frozen=True)
class DefectFluxTable:
    """Circulation per face, in units of pi, for sector ``k = 1``."""

    k1: Mapping[int, Fraction] = field(default_factory=lambda: {
        4: Fraction(0), 5: Fraction(1, 2), 6: Fraction(0), 7: Fraction(-1, 2), 8: Fraction(0),
    })

    def circulation(self, p: int, k: int = 1) -> Fraction:
        """Circulation of one ``p``-gon in sector ``k``, as a multiple of pi."""
        if k not in (1, 2):
            raise ValueError(f"sector must be 1 or 2, got {k}")
        if p not in self.k1:
            raise UnsupportedDefectError(p)
        c = self.k1[p]
        return c if k == 1 else -c


FLUX_TABLE = DefectFluxTable()


def flux_integral(census: Mapping[int, int], k: int = 1, table: DefectFluxTable = FLUX_TABLE) -> Fraction:
    """Total flux over ``2 pi``, exact.

    Summing ``pi/2`` per pentagon and ``-pi/2`` per heptagon gives
    ``(n5 - n7) / 4`` in sector 1.
    """
    total = sum((table.circulation(int(p), k) * int(n) for p, n in census.items()), Fraction(0))
    return total / 2


@dataclass(frozen=True)
class IndexPrediction:
    lattice: str
    genus: int
    census: FaceCensus
    index_k1: int
    index_k2: int
    min_zero_modes: int
    flux_integral_k1: float
    relation_residual: int = 0

    @property
    def consistent_topology(self) -> bool:
        return self.relation_residual == 0


def predicted_index(source: Lattice | Mapping[int, int], genus: int | None = None,
                    name: str = "", strict: bool = True) -> IndexPrediction:
    """Index in both sectors and the minimum number of zero modes.

    ``source`` is a lattice, or a census together with ``genus``.  When
    pentagons and heptagons carry all the curvature (equal numbers of
    squares and octagons) the index equals ``3 (1 - g)`` and the minimum
    count is ``6 |1 - g|``; this is asserted.

    With ``strict=False`` a census that contradicts ``genus`` is returned
    with a nonzero ``relation_residual`` instead of raising.
    """
    if isinstance(source, Lattice):
        census = defect_census(source)
        genus = genus_of(source)
        name = name or source.name
    else:
        if genus is None:
            raise TypeError("genus is required with a census")
        census = FaceCensus(source)
    relation = defect_relation_check(census, genus)
    if not relation.holds and strict:
        raise TopologyError(f"census {census.line()} is inconsistent with genus {genus} "
                            f"(residual {relation.residual})")
    f1 = flux_integral(census, 1)
    f2 = flux_integral(census, 2)
    if f1.denominator != 1 or f2.denominator != 1:
        # only reachable when the census does not come from a closed surface
        if strict:
            raise TopologyError(f"flux integral {f1} is not an integer")
    assert f2 == -f1
    if relation.holds and census[4] == census[8]:
        assert f1 == 3 * (1 - genus), (f1, genus)
    i1 = int(f1) if f1.denominator == 1 else round(float(f1))
    return IndexPrediction(
        lattice=name,
        genus=int(genus),
        census=census,
        index_k1=i1,
        index_k2=-i1,
        min_zero_modes=2 * abs(i1),
        flux_integral_k1=float(f1),
        relation_residual=relation.residual,
    )


class LatticeClass(str, enum.Enum):
    BIPARTITE = "bipartite"
    FRUSTRATED = "frustrated"


class Verdict(str, enum.Enum):
    CONSISTENT = "consistent"
    ASYMPTOTIC = "consistent-asymptotically"
    INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class VerificationReport:
    lattice: str
    genus: int
    census: FaceCensus
    prediction: IndexPrediction
    measured: ZeroModeReport
    verdict: Verdict
    notes: tuple[str, ...] = ()
    J: float = 1.0

    def to_dict(self) -> dict:
        """JSON-ready form; energies in units of ``J``."""
        p, m = self.prediction, self.measured
        return {
            "lattice": self.lattice,
            "genus": self.genus,
            "census": {str(k): v for k, v in self.census.items()},
            "index_k1": p.index_k1,
            "index_k2": p.index_k2,
            "min_zero_modes": p.min_zero_modes,
            "numeric_zero_count": m.numeric_count,
            "exact_zero_count": m.exact_count,
            "near_zero_clusters": [[_stable(mean / self.J), mult] for mean, mult in m.near_zero_clusters],
            "verdict": self.verdict.value,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _stable(x: float) -> float:
    # solver noise lives far below 1e-12; rounding keeps reports byte-stable
    y = round(float(x), 12)
    return 0.0 if y == 0 else y


def compare(prediction: IndexPrediction, measured: ZeroModeReport, lattice_class: LatticeClass | str,
            window: float = LOW_ENERGY_WINDOW, J: float = 1.0) -> VerificationReport:
    """Judge a measured zero-mode report against the predicted index.

    Bipartite lattices are held to exact statements: with index zero the
    chiral zero modes pair up (``nu+ = nu-``), so the count must be even.
    Frustrated lattices have no exact lattice chirality; the prediction is
    a continuum statement, checked by counting the states in the
    low-energy window ``|E| <= window * J``.
    """
    if measured.lattice_name and prediction.lattice and measured.lattice_name != prediction.lattice:
        raise ValueError(f"prediction for {prediction.lattice!r} compared with measurement of "
                         f"{measured.lattice_name!r}")
    lattice_class = LatticeClass(lattice_class)
    notes: list[str] = []
    verdict: Verdict
    if not prediction.consistent_topology:
        verdict = Verdict.INCONSISTENT
        notes.append(f"defect relation fails: residual {prediction.relation_residual}")
    elif lattice_class is LatticeClass.BIPARTITE:
        count = measured.exact_count if measured.exact_count is not None else measured.numeric_count
        verdict = Verdict.CONSISTENT
        if measured.exact_count is not None and measured.exact_count != measured.numeric_count:
            verdict = Verdict.INCONSISTENT
            notes.append(f"exact count {measured.exact_count} differs from numeric count "
                         f"{measured.numeric_count}")
        if prediction.index_k1 == 0:
            if count % 2:
                verdict = Verdict.INCONSISTENT
                notes.append(f"odd zero-mode count {count} with index 0 cannot pair as nu+ = nu-")
            elif count:
                notes.append(f"{count} zero modes pair as nu+ = nu- = {count // 2}")
            else:
                notes.append("no zero modes")
        elif count < prediction.min_zero_modes or (count - prediction.min_zero_modes) % 2:
            verdict = Verdict.INCONSISTENT
            notes.append(f"count {count} incompatible with index +-{abs(prediction.index_k1)}")
        if measured.sublattice_nullity is not None:
            na, nb = measured.sublattice_nullity
            notes.append(f"sublattice split A/B = {na}/{nb}")
    else:
        if measured.low_energy is not None:
            window, in_window = measured.low_energy
        else:
            in_window = sum(mult for mean, mult in measured.near_zero_clusters if abs(mean) <= window * J)
        summary = ", ".join(f"{_stable(mean / J):.6g}x{mult}" for mean, mult in measured.near_zero_clusters)
        notes.append(f"{measured.numeric_count} zero modes at lattice scale (tolerance {measured.tolerance / J:g} J)")
        notes.append(f"near-zero clusters: {summary}")
        if in_window >= prediction.min_zero_modes:
            verdict = Verdict.ASYMPTOTIC
            notes.append(f"{in_window} states with |E| <= {window:g} J cover the continuum minimum "
                         f"{prediction.min_zero_modes}")
        else:
            verdict = Verdict.CONSISTENT
            notes.append(f"only {in_window} states with |E| <= {window:g} J, below the continuum minimum "
                         f"{prediction.min_zero_modes}; the lattice is too small to resolve it")
    notes.append(f"energies in units of J = {J:g}")
    return VerificationReport(prediction.lattice, prediction.genus, prediction.census, prediction,
                              measured, verdict, tuple(notes), J)


def verify_lattice(lattice: Lattice, J: float = 1.0, tau: float | None = None,
                   window: float = LOW_ENERGY_WINDOW) -> VerificationReport:
    """Prediction, measurement and verdict for one lattice."""
    lattice.require_valid()
    prediction = predicted_index(lattice, strict=False)
    measured, _ = zero_mode_report(lattice, J, tau, window=window)
    cls = LatticeClass.BIPARTITE if isinstance(bipartition(lattice), Bipartition) else LatticeClass.FRUSTRATED
    return compare(prediction, measured, cls, window=window, J=J)
