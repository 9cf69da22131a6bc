# %% [markdown]
# # Honeycomb tori and the Bloch oracle
#
# A torus is fixed by two wrapping vectors in the Bravais basis. Its
# spectrum is the band formula sampled at the momenta the wrapping allows,
# and zero modes appear exactly when the Fermi points are among them.

# %%
import numpy as np

from zeromodes import (
    TorusWrapping, allowed_momenta, assemble_hamiltonian, bloch_spectrum, build_honeycomb_torus,
    exact_zero_count_bipartite, full_spectrum,
)

# %%
for a, b in [((3, 0), (0, 3)), ((4, 0), (0, 4)), ((4, 1), (-1, 3)), ((9, 3), (-3, 9)), ((7, 2), (-2, 5))]:
    w = TorusWrapping(a, b)
    lat = build_honeycomb_torus(w)
    real = full_spectrum(assemble_hamiltonian(lat)).eigenvalues
    bloch = bloch_spectrum(w).eigenvalues
    zeros = exact_zero_count_bipartite(lat)
    print(f"{str(w):14s} V={lat.V:4d} fermi={w.contains_fermi_points()!s:5s} "
          f"zeros={zeros.count} (A/B {zeros.nullity_a}/{zeros.nullity_b})  "
          f"max|real-bloch|={np.max(np.abs(real - bloch)):.1e}")

# %% [markdown]
# The allowed momenta in fractional reciprocal coordinates:

# %%
print(sorted(allowed_momenta(TorusWrapping((3, 0), (0, 3))).fractional))
