# %% [markdown]
# # Index prediction against measured zero modes
#
# The defect census gives the flux, the flux gives the index, and the index
# bounds the number of zero modes from below. ``verify_lattice`` puts the
# prediction next to the measurement and issues a verdict.

# %%
from zeromodes import flux_integral, predicted_index, verify_lattice
from zeromodes.fixtures import fixture_names, load_fixture

# %%
print("C60 flux / 2pi:", flux_integral({5: 12, 6: 20}, 1), flux_integral({5: 12, 6: 20}, 2))
print(predicted_index(load_fixture("genus2")))

# %%
for name in fixture_names():
    r = verify_lattice(load_fixture(name))
    d = r.to_dict()
    print(f"{name:16s} g={d['genus']} index=({d['index_k1']:+d},{d['index_k2']:+d}) "
          f"min={d['min_zero_modes']} numeric={d['numeric_zero_count']:2d} "
          f"exact={d['exact_zero_count']!s:4s} -> {d['verdict']}")

# %% [markdown]
# A report is plain JSON with energies in units of ``J``.

# %%
print(verify_lattice(load_fixture("C60"), J=2.7).to_json())
