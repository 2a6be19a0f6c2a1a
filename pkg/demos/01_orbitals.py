"""
Orbitals that all carry the same density
========================================

Every orbital ``sqrt(rho/N) exp(i k f)`` has density ``rho/N``; the phase ``f`` winds
once around the circle as ``x`` crosses the support, which makes the family orthonormal.
"""

import numpy as np

from thermorep import dirichlet_energy, gram, harriman_phase, named_density, orbital_kinetic, orbital_kinetic_bound
from thermorep.orbitals import gram_deviation

# a unit-mass gaussian on [-8, 8] with 4001 nodes
rho = named_density("gaussian:1", mass=1.0, points=4001)
D = dirichlet_energy(rho)
print(f"Dirichlet energy D = {D:.6f} (exact 1/4)")

# the phase runs from 0 to 2 pi
f = harriman_phase(rho).values
print(f"phase at the ends: {f[0]:.3g} .. {f[-1]:.12f}")

# the Gram matrix of k = -3..3 is the identity up to quadrature error
ks = range(-3, 4)
g = gram(rho, ks)
print(f"largest |<phi_j, phi_k> - delta_jk| = {gram_deviation(g):.2e}")

# kinetic energy grows like k^2 and stays below the closed-form bound
print(" k   kinetic        bound")
for k in range(5):
    print(f"{k:2d}  {orbital_kinetic(rho, k):12.4f} {orbital_kinetic_bound(k, 1, D):12.4f}")

# narrowing the density by 2 multiplies D by 4
narrow = named_density("gaussian:0.5", mass=1.0, points=4001)
print(f"D(sigma=1/2) / D(sigma=1) = {dirichlet_energy(narrow) / D:.4f}")
assert np.isclose(dirichlet_energy(narrow) / D, 4, rtol=1e-3)
