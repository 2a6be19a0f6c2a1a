"""Harriman orbitals ``phi_k = sqrt(rho/N) exp(i k f)`` and their one-body quantities."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import trapezoid

from .grid import GridDensity, cubed_integral, dirichlet_energy, harriman_phase

__all__ = [
    "Orbital",
    "OrbitalSet",
    "orbital_values",
    "gram",
    "gram_deviation",
    "orbital_kinetic",
    "orbital_kinetic_bound",
]


@dataclass(frozen=True, eq=False)
class Orbital:
    """Samples of one orbital kept in polar form.

    ``density`` is stored as ``rho / N`` itself (the phase factor is unimodular), so it
    is identical for every ``k``; ``values`` gives the complex samples.
    """

    k: int
    nodes: np.ndarray
    density: np.ndarray
    phase: np.ndarray

    @property
    def modulus(self) -> np.ndarray:
        return np.sqrt(self.density)

    @property
    def values(self) -> np.ndarray:
        return self.modulus * np.exp(1j * self.phase)


def orbital_values(rho: GridDensity, k: int) -> Orbital:
    rho.require_1d()
    f = harriman_phase(rho).values
    return Orbital(int(k), rho.nodes, rho.normalized, k * f)


def gram(rho: GridDensity, indices) -> np.ndarray:
    """Overlap matrix ``<phi_l, phi_m>`` by the trapezoidal rule, rows/cols in ``indices`` order.

    Only the upper triangle is integrated; the lower one is its conjugate, so the result
    is Hermitian exactly.
    """
    rho.require_1d()
    indices = [int(k) for k in indices]
    if len(set(indices)) != len(indices):
        raise ValueError("orbital indices must be distinct")
    p = rho.normalized
    f = harriman_phase(rho).values
    n = len(indices)
    out = np.empty((n, n), dtype=complex)
    for a in range(n):
        out[a, a] = trapezoid(p, rho.nodes)
        for b in range(a + 1, n):
            v = trapezoid(p * np.exp(1j * (indices[b] - indices[a]) * f), rho.nodes)
            out[a, b] = v
            out[b, a] = np.conj(v)
    return out


def gram_deviation(g: np.ndarray) -> float:
    """Largest off-diagonal modulus of a square matrix (0 for 1x1)."""
    g = np.asarray(g)
    if g.shape[0] < 2:
        return 0.0
    off = g - np.diag(np.diag(g))
    return float(np.abs(off).max())


def orbital_kinetic(rho: GridDensity, k: int) -> float:
    """``int |phi_k'|^2 = D/N + k^2 (4 pi^2 / N^3) int rho^3`` with ``D`` the Dirichlet energy.

    Differentiating ``sqrt(rho/N) exp(i k f)`` and using ``f' = 2 pi rho / N`` splits the
    kinetic energy into the modulus part and a phase part, so no oscillatory samples
    are differenced.
    """
    rho.require_1d()
    n = rho.mass
    return dirichlet_energy(rho) / n + k * k * (4 * np.pi**2 / n**3) * cubed_integral(rho)


def orbital_kinetic_bound(k: int, N: float, dirichlet: float) -> float:
    return (1 + 16 * np.pi**2 * k * k) * dirichlet / N


@dataclass(frozen=True, eq=False)
class OrbitalSet:
    density: GridDensity
    indices: tuple

    def __post_init__(self):
        idx = tuple(int(k) for k in self.indices)
        if len(set(idx)) != len(idx):
            raise ValueError("orbital indices must be distinct")
        object.__setattr__(self, "indices", idx)

    def orbitals(self):
        return [orbital_values(self.density, k) for k in self.indices]

    def gram(self) -> np.ndarray:
        return gram(self.density, self.indices)

    def kinetic(self) -> np.ndarray:
        d = dirichlet_energy(self.density)
        c = cubed_integral(self.density)
        n = self.density.mass
        k = np.array(self.indices, dtype=float)
        return d / n + k**2 * (4 * np.pi**2 / n**3) * c
