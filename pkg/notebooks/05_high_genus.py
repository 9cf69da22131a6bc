# %% [markdown]
# # Surfaces of higher genus
#
# Heptagons carry negative curvature. Gluing tori and relaxing the
# triangulation gives carbon networks with only hexagons and heptagons,
# twelve heptagons per extra handle.

# %%
import numpy as np

from zeromodes import defect_census, genus_of, verify_lattice
from zeromodes.fixtures import load_fixture
from zeromodes.triangulations import random_lattice

# %%
for name in ("genus2", "genus3"):
    lat = load_fixture(name)
    report = verify_lattice(lat)
    print(name, "genus", genus_of(lat), defect_census(lat).line())
    for note in report.notes:
        print("   ", note)

# %% [markdown]
# Random networks on the same surfaces: whatever mix of faces the flips
# produce, the defect sum stays at ``12 (1 - g)``.

# %%
rng = np.random.default_rng(3)
for g in range(4):
    lat = random_lattice(rng, g, steps=300)
    census = defect_census(lat)
    print(g, census.line(), "sum (6-p) n_p =", sum((6 - p) * n for p, n in census.items()))
