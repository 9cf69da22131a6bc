# %% [markdown]
# # Tight-binding spectra of fullerenes
#
# ``H = -J A`` on the carbon network. Spheres carry twelve pentagons, so the
# continuum theory asks for six states near zero energy.

# %%
import numpy as np

from zeromodes import assemble_hamiltonian, build_goldberg_fullerene, full_spectrum

# %%
c60 = full_spectrum(assemble_hamiltonian(build_goldberg_fullerene(1, 1)))
print("lowest |E| clusters of C60:")
for mean, mult in c60.nearest_clusters(4):
    print(f"  E = {mean:+.6f} J  x{mult}")

# %% [markdown]
# In C60 the two levels nearest zero are triplets. Not every Goldberg cage
# looks like this: the dodecahedron has a fourfold level at exactly zero.

# %%
for m, n in [(1, 0), (1, 1), (2, 0), (3, 0), (2, 2), (4, 0), (3, 3)]:
    s = full_spectrum(assemble_hamiltonian(build_goldberg_fullerene(m, n)))
    shells = ", ".join(f"{mean:+.4f}x{mult}" for mean, mult in s.nearest_clusters(3))
    print(f"GP({m},{n}) C{len(s):<4d} {shells}")

# %% [markdown]
# Leapfrog cages (``m = n``) keep the two triplets and they close in on
# zero as the cage grows.

# %%
for m in range(1, 6):
    s = full_spectrum(assemble_hamiltonian(build_goldberg_fullerene(m, m)))
    (e1, k1), (e2, k2) = s.nearest_clusters(2)
    print(f"C{len(s):<5d} |E| = {abs(e1):.4f} (x{k1}), {abs(e2):.4f} (x{k2})   V * |E1| = {len(s) * abs(e1):.2f}")
print("sum of eigenvalues", np.sum(s.eigenvalues))
