"""Explicit thermal representability: mixed states with prescribed density and entropy.

The package builds, from a one-dimensional density sampled on a uniform grid, explicit
canonical and grand-canonical mixed states with a given density, entropy (and mean
particle number), and certifies their kinetic energy against closed-form bounds.

Modules
-------
grid             densities on a uniform grid, trapezoidal quadrature, Dirichlet energy
densities        named analytic densities (gaussian, exponential, cosine-bump)
orbitals         Harriman orbitals ``sqrt(rho/N) exp(i k f)``
configurations   ordered enumeration of determinant / permanent / Fock configurations
states           mixed states and their observables, entropy helpers
representability constructors and certificates
cli              command-line front end
"""
from .configurations import (
    BOSON,
    CANONICAL,
    FERMION,
    GRAND,
    VACUUM,
    CountingReport,
    FockConfig,
    Ordering,
    enumerate_canonical,
    enumerate_grand_canonical,
    iter_canonical,
    iter_grand_canonical,
    j_bound,
    max_momentum,
    sum_of_squares,
    verify_counting_identities,
)
from .densities import named_density
from .errors import *  # noqa: F401,F403
from .grid import GridDensity, GridFunction, cubed_integral, dirichlet_energy, harriman_phase, load_density, load_density_csv
from .orbitals import OrbitalSet, gram, orbital_kinetic, orbital_kinetic_bound, orbital_values
from .representability import (
    Certificate,
    canonical_bound,
    certify,
    construct_canonical,
    construct_gc_density_entropy,
    construct_gc_full,
    gc_bound_thm3,
    gc_entropy_kinetic_bound,
    gc_entropy_particle_bound,
    hoffmann_ostenhof_check,
)
from .states import (
    MixedState,
    assemble,
    exact_entropy,
    kinetic_energy,
    mean_particles,
    nominal_entropy,
    s,
    s_inverse,
    state_density,
    xi_S,
)

__version__ = "0.1.0"
