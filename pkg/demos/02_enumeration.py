"""
Enumerating configurations
==========================

Canonical configurations are sorted momentum sets, listed either by the largest
``|k|`` (shell order) or by ``sum k^2`` (kinetic order).  Grand-canonical configurations
are Fock states with at most one determinant per particle number.
"""

import itertools

from thermorep import (
    BOSON,
    FERMION,
    Ordering,
    enumerate_canonical,
    enumerate_grand_canonical,
    iter_canonical,
    j_bound,
    max_momentum,
)

# two fermions: shell order, then kinetic order
print("shell  :", enumerate_canonical(2, FERMION, 8))
print("kinetic:", enumerate_canonical(2, FERMION, 8, Ordering.KINETIC))

# bosons may repeat a momentum
print("bosons :", enumerate_canonical(2, BOSON, 6))

# the first grand-canonical fermion states: phi_0, phi_1, phi_-1, then pairs, ...
for i, c in enumerate(enumerate_grand_canonical(FERMION, 9), 1):
    print(f"psi_{i:<2d} {c.as_dict()}")

# the largest momentum among the first k configurations stays below the closed-form bound
for k in (10, 100, 1000):
    J = max(max_momentum(c) for c in itertools.islice(iter_canonical(3, FERMION), k))
    print(f"first {k:5d} three-fermion configurations: J = {J}, bound {j_bound(k, 3, FERMION):.3f}")
