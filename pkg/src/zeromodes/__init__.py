"""Zero modes of trivalent carbon lattices on closed surfaces.

Build lattices (fullerenes, nanotube tori, octahedral graphenoids, or any
closed trivalent map from a file), diagonalize their tight-binding
Hamiltonian, and compare zero-mode counts with the index predicted from
the defect census.
"""

from .builders import (
    TorusWrapping,
    build_goldberg_fullerene,
    build_honeycomb_torus,
    build_octahedral_graphenoid,
    load_lattice,
    save_lattice,
)
from .index_theory import compare, flux_integral, predicted_index, verify_lattice
from .lattice import (
    FaceCensus,
    Lattice,
    bipartition,
    defect_census,
    defect_relation_check,
    euler_characteristic,
    genus_of,
    validate,
)
from .spectral import (
    allowed_momenta,
    assemble_hamiltonian,
    bloch_spectrum,
    count_zero_modes,
    dispersion_energy,
    exact_zero_count_bipartite,
    full_spectrum,
    zero_mode_report,
)

__version__ = "0.1.0"
