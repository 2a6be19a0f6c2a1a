"""Densities sampled on a uniform one-dimensional grid, and the quadratures built on them.

Every integral in the package is a trapezoidal sum on the grid and every derivative a
central difference (one-sided at the two end nodes). The types carry a ``dimension``
tag; the numerical routines refuse anything other than ``dimension == 1``.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from .errors import DimensionUnsupported, NegativeDensity, NonUniformGrid, ZeroMass

__all__ = [
    "GridDensity",
    "GridFunction",
    "load_density",
    "load_density_csv",
    "harriman_phase",
    "dirichlet_energy",
    "cubed_integral",
    "MASS_RTOL",
    "SPACING_RTOL",
]

SPACING_RTOL = 1e-12
MASS_RTOL = 1e-8


def _frozen(a, dtype=float):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


def _check_uniform(nodes):
    if nodes.ndim != 1 or nodes.size < 3:
        raise NonUniformGrid(f"need at least 3 nodes, got {nodes.size}")
    steps = np.diff(nodes)
    h = (nodes[-1] - nodes[0]) / (nodes.size - 1)
    if h <= 0 or np.any(steps <= 0):
        raise NonUniformGrid("nodes must be strictly increasing")
    # relative to the node magnitude: linspace itself is only exact to a few ulps of max|x|
    scale = max(h, np.finfo(float).eps * np.abs(nodes).max() / SPACING_RTOL)
    if np.max(np.abs(steps - h)) > SPACING_RTOL * scale:
        raise NonUniformGrid("grid spacing is not constant")
    return h


@dataclass(frozen=True, eq=False)
class GridDensity:
    """Nonnegative density samples on a uniform grid.

    Attributes
    ----------
    nodes : ndarray
        Strictly increasing, uniformly spaced abscissae.
    values : ndarray
        Density samples, all nonnegative.
    mass : float
        Declared integral of the density (particle number ``N``, or 1 for a
        normalized density ``p``). Must agree with the trapezoidal integral.
    dimension : int
        Physical dimension. Only 1 is supported by the numeric routines.
    raw_mass : float or None
        Trapezoidal mass of the samples before rescaling in :func:`load_density`.
    tail_fraction : float or None
        Fraction of the mass the grid misses, when the sampled profile has a known
        total (set for the named analytic densities).
    """

    nodes: np.ndarray
    values: np.ndarray
    mass: float
    dimension: int = 1
    raw_mass: float | None = field(default=None)
    tail_fraction: float | None = field(default=None)

    def __post_init__(self):
        nodes = _frozen(self.nodes)
        values = _frozen(self.values)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "mass", float(self.mass))
        if values.shape != nodes.shape:
            raise ValueError("nodes and values must have the same shape")
        _check_uniform(nodes)
        if np.any(values < 0) or not np.all(np.isfinite(values)):
            raise NegativeDensity("density samples must be finite and nonnegative")
        if not self.mass > 0:
            raise ZeroMass("mass must be positive")
        integral = trapezoid(values, nodes)
        if abs(integral - self.mass) > MASS_RTOL * self.mass:
            raise ValueError(
                f"trapezoidal integral {integral!r} does not match declared mass {self.mass!r}"
            )
        if self.dimension < 1:
            raise ValueError("dimension must be a positive integer")

    @property
    def spacing(self) -> float:
        return float((self.nodes[-1] - self.nodes[0]) / (self.nodes.size - 1))

    @property
    def normalized(self) -> np.ndarray:
        """Samples of ``rho / N``, the common modulus squared of every orbital."""
        return self.values / self.mass

    def scaled(self, mass: float) -> "GridDensity":
        """The same profile rescaled to total mass ``mass``."""
        return GridDensity(self.nodes, self.values * (mass / self.mass), mass, self.dimension)

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.nodes).tobytes())
        h.update(np.ascontiguousarray(self.values).tobytes())
        return h.hexdigest()[:16]

    def require_1d(self):
        if self.dimension != 1:
            raise DimensionUnsupported(
                f"numeric evaluation needs dimension 1, density has dimension {self.dimension}"
            )


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Real or complex samples living on the grid of a :class:`GridDensity`."""

    nodes: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nodes", _frozen(self.nodes))
        values = np.array(self.values)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.shape != self.nodes.shape:
            raise ValueError("nodes and values must have the same shape")

    def integral(self):
        return trapezoid(self.values, self.nodes)


def load_density(samples, target_mass: float, dimension: int = 1, profile_mass=None) -> GridDensity:
    """Build a :class:`GridDensity` from ``(x, rho(x))`` pairs, rescaled to ``target_mass``.

    Parameters
    ----------
    samples : sequence of pairs or array of shape (n, 2)
        Sorted abscissae and density samples on a uniform grid.
    target_mass : float
        Desired integral, e.g. the particle number ``N``.
    profile_mass : float, optional
        Exact integral of the sampled profile over the real line, if known; the missing
        fraction ``1 - raw/profile_mass`` is kept as ``tail_fraction``.

    Raises
    ------
    NonUniformGrid, NegativeDensity, ZeroMass
    """
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("samples must be a sequence of (x, rho) pairs")
    x, rho = arr[:, 0], arr[:, 1]
    _check_uniform(x)
    if np.any(rho < 0):
        raise NegativeDensity("density samples must be nonnegative")
    if not target_mass > 0:
        raise ZeroMass("target mass must be positive")
    raw = trapezoid(rho, x)
    if not np.any(rho > 0) or raw <= 0:
        raise ZeroMass("density vanishes identically")
    tail = None if profile_mass is None else float(1.0 - raw / profile_mass)
    return GridDensity(x, rho * (target_mass / raw), target_mass, dimension, raw_mass=float(raw),
                       tail_fraction=tail)


def load_density_csv(path, target_mass: float) -> GridDensity:
    """Read a two-column ``x,rho`` CSV file (optional ``#`` or ``x,`` header line)."""
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if lineno == 1 and line.lower().startswith("x,"):
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected two columns")
        rows.append((float(parts[0]), float(parts[1])))
    return load_density(rows, target_mass)


def harriman_phase(rho: GridDensity) -> GridFunction:
    """Cumulative density scaled to run from 0 to ``2*pi``.

    ``f(x) = (2 pi / N) * int_{-inf}^{x} rho``; the integral starts at the first grid node.
    """
    rho.require_1d()
    f = (2 * np.pi / rho.mass) * cumulative_trapezoid(rho.values, rho.nodes, initial=0.0)
    return GridFunction(rho.nodes, f)


def _sqrt_gradient_squared(values, h):
    sq = np.sqrt(values)
    grad = np.gradient(sq, h)
    out = grad**2
    zero = np.flatnonzero(values[1:-1] == 0) + 1
    if zero.size:
        left = (sq[zero] - sq[zero - 1]) / h
        right = (sq[zero + 1] - sq[zero]) / h
        lnz = values[zero - 1] > 0
        rnz = values[zero + 1] > 0
        out[zero] = np.where(
            lnz & rnz,
            0.5 * (left**2 + right**2),
            np.where(lnz, left**2, np.where(rnz, right**2, 0.0)),
        )
    return out


def dirichlet_energy(rho: GridDensity) -> float:
    """``int |d sqrt(rho)/dx|^2`` by central differences and the trapezoidal rule.

    At interior nodes where ``rho == 0`` the central difference is replaced by the
    one-sided difference from the nonzero side (mean of both squares if both
    neighbours are nonzero), so kinks at the edge of a support are not smoothed away.
    """
    rho.require_1d()
    return float(trapezoid(_sqrt_gradient_squared(rho.values, rho.spacing), rho.nodes))


def cubed_integral(rho: GridDensity) -> float:
    rho.require_1d()
    return float(trapezoid(rho.values**3, rho.nodes))
