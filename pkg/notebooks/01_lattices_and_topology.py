# %% [markdown]
# # Lattices, validation and topology
#
# A lattice is a list of oriented faces over numbered sites. Everything
# else (edges, neighbours, genus, the defect census) is derived from it.

# %%
from zeromodes import (
    Lattice, build_goldberg_fullerene, build_honeycomb_torus, build_octahedral_graphenoid,
    defect_census, defect_relation_check, euler_characteristic, genus_of, validate,
)
from zeromodes.fixtures import load_fixture

# %% [markdown]
# The cube by hand: eight sites, six squares, every face counterclockwise
# seen from outside.

# %%
cube = Lattice(8, [(0, 2, 3, 1), (4, 5, 7, 6), (0, 1, 5, 4), (2, 6, 7, 3), (0, 4, 6, 2), (1, 3, 7, 5)])
print(validate(cube))
print("chi", euler_characteristic(cube), "genus", genus_of(cube))

# %% [markdown]
# Dropping a face leaves an open surface; validation lists what broke.

# %%
report = validate(Lattice(8, cube.faces[1:]))
for v in report.violations[:4]:
    print(v.rule, "|", v.detail)

# %% [markdown]
# Builders cover spheres, tori and the square-defect family.

# %%
for lat in (build_goldberg_fullerene(1, 1), build_honeycomb_torus(((4, 1), (-1, 3))),
            build_octahedral_graphenoid(3), load_fixture("genus2")):
    census = defect_census(lat)
    g = genus_of(lat)
    print(f"{lat.name:22s} V={lat.V:4d} g={g}  {census.line():14s} relation {defect_relation_check(census, g)}")
