"""Mixed states built from Harriman-orbital configurations, and their observables.

A :class:`MixedState` is ``sum_i w_i |psi_i><psi_i|`` where every ``psi_i`` is a
:class:`~thermorep.configurations.FockConfig`: a canonical ``N``-particle determinant
(or permanent) is a Fock configuration with a single occupied sector. A configuration
occupying ``r`` sectors carries amplitude ``1/sqrt(r)`` on each of them.

All observables use only the analytic structure of the orbitals: every orbital has the
same density ``rho / N``, distinct momentum sets are orthogonal, and kinetic energies are
additive over occupied orbitals.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .configurations import FERMION, FockConfig, check_statistics
from .entropy import s, s_inverse, xi_S  # noqa: F401  (re-exported)
from .errors import BudgetExceeded, DuplicateConfig, PauliViolation, WeightSumInvalid
from .grid import GridDensity, GridFunction, cubed_integral, dirichlet_energy
from .orbitals import gram_deviation

__all__ = [
    "MixedState",
    "assemble",
    "state_density",
    "nominal_entropy",
    "fock_gram",
    "state_gram_deviation",
    "exact_entropy",
    "mean_particles",
    "kinetic_energy",
    "state_to_dict",
    "state_from_dict",
    "s",
    "s_inverse",
    "xi_S",
    "WEIGHT_TOL",
    "EIGEN_BUDGET",
]

WEIGHT_TOL = 1e-12
EIGEN_BUDGET = 5000


def _as_fock(config):
    if isinstance(config, FockConfig):
        return config
    return FockConfig.canonical(config)


@dataclass(frozen=True, eq=False)
class MixedState:
    """Weighted configurations over the orbitals of ``density``.

    ``density`` is the canonical density ``rho`` (mass ``N``) or the normalized
    grand-canonical density ``p`` (mass 1); the orbitals are the same either way.
    """

    entries: tuple
    density: GridDensity
    statistics: str

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _ in self.entries])

    @property
    def configs(self) -> list:
        return [c for _, c in self.entries]

    def __len__(self):
        return len(self.entries)


def assemble(entries, rho: GridDensity, statistics: str, renormalize: bool = True) -> MixedState:
    """Validate ``(weight, config)`` pairs and renormalize the weights to sum to 1.

    With ``renormalize=False`` the weights are kept bit for bit (used when reading a
    serialized state back).

    Raises
    ------
    WeightSumInvalid
        A negative weight, or a total further than ``1e-12`` from 1.
    DuplicateConfig
        The same configuration appears twice.
    PauliViolation
        A fermionic sector repeats a momentum.
    """
    check_statistics(statistics)
    pairs = [(float(w), _as_fock(c)) for w, c in entries]
    if not pairs:
        raise WeightSumInvalid("a state needs at least one entry")
    weights = np.array([w for w, _ in pairs])
    if np.any(weights < 0) or not np.all(np.isfinite(weights)):
        raise WeightSumInvalid("weights must be finite and nonnegative")
    total = math.fsum(weights)
    if abs(total - 1.0) > WEIGHT_TOL:
        raise WeightSumInvalid(f"weights sum to {total!r}")
    configs = [c for _, c in pairs]
    if len(set(configs)) != len(configs):
        raise DuplicateConfig("configurations must be pairwise distinct")
    if statistics == FERMION:
        for c in configs:
            for n, m in c.sectors:
                if len(set(m)) != n:
                    raise PauliViolation(f"repeated momentum in fermionic sector {n}: {m}")
    if renormalize and total != 1.0:
        pairs = [(w / total, c) for w, c in pairs]
    return MixedState(tuple(pairs), rho, statistics)


def _amp2(config):
    return 1.0 / len(config.sectors) if config.sectors else 0.0


def mean_particles(state: MixedState) -> float:
    """``sum_i w_i sum_n n / r_i`` over the occupied sectors of each entry."""
    return math.fsum(w * _amp2(c) * sum(n for n, _ in c.sectors) for w, c in state.entries)


def state_density(state: MixedState) -> GridFunction:
    """One-body density ``sum_i w_i sum_n |c_n|^2 sum_{k in sector n} |phi_k|^2``.

    Every orbital density equals ``rho / N``, so this reduces to ``(mean / N) * rho``;
    for a pure ``N``-particle state the factor is exactly 1 and the result is ``rho``
    bit for bit.
    """
    rho = state.density
    return GridFunction(rho.nodes, (mean_particles(state) / rho.mass) * rho.values)


def nominal_entropy(state: MixedState) -> float:
    """``-sum w ln w`` (the von Neumann entropy when the entries are orthonormal)."""
    w = state.weights
    return max(0.0, -math.fsum(xlogy(w, w))) if w.size else 0.0


def fock_gram(configs, statistics: str = FERMION) -> np.ndarray:
    """Analytic overlap matrix of Fock configurations.

    Two single-sector components overlap iff they hold the same momentum set (or
    multiset for bosons), with overlap 1; the vacuum overlaps only itself.
    """
    check_statistics(statistics)
    configs = [_as_fock(c) for c in configs]
    n = len(configs)
    g = np.zeros((n, n))
    groups = defaultdict(list)
    for i, c in enumerate(configs):
        if c.is_vacuum:
            groups[(0, ())].append((i, 1.0))
            continue
        amp = 1.0 / math.sqrt(len(c.sectors))
        for key in c.sectors:
            groups[key].append((i, amp))
    for members in groups.values():
        for i, a in members:
            for j, b in members:
                g[i, j] += a * b
    return g


def state_gram_deviation(state: MixedState) -> float:
    return gram_deviation(fock_gram(state.configs, state.statistics))


def exact_entropy(state: MixedState, budget: int = EIGEN_BUDGET) -> float:
    """``-tr G ln G`` computed from the spectrum of ``W^1/2 G W^1/2``.

    ``G`` is the analytic Gram matrix of the entries and ``W`` the diagonal of weights.
    Equals :func:`nominal_entropy` when the entries are orthonormal.
    """
    if len(state) > budget:
        raise BudgetExceeded(f"{len(state)} entries exceed the eigensolver budget {budget}")
    g = fock_gram(state.configs, state.statistics)
    r = np.sqrt(state.weights)
    lam = np.linalg.eigvalsh(r[:, None] * g * r[None, :])
    lam = np.clip(lam, 0.0, None)
    return max(0.0, float(-xlogy(lam, lam).sum()))


def kinetic_energy(state: MixedState) -> float:
    """``tr K Gamma`` with per-orbital energies ``D/N + k^2 (4 pi^2/N^3) int rho^3``."""
    rho = state.density
    rho.require_1d()
    N = rho.mass
    d = dirichlet_energy(rho) / N
    c = 4 * np.pi**2 * cubed_integral(rho) / N**3
    total = 0.0
    for w, cfg in state.entries:
        if cfg.is_vacuum or w == 0:
            continue
        per = sum(len(m) * d + c * sum(k * k for k in m) for _, m in cfg.sectors)
        total += w * _amp2(cfg) * per
    return float(total)


def state_to_dict(state: MixedState, density_ref=None) -> dict:
    return {
        "statistics": state.statistics,
        "entries": [
            {"weight": w, "sectors": {str(n): list(m) for n, m in c.sectors}}
            for w, c in state.entries
        ],
        "density_ref": density_ref,
    }


def state_from_dict(d: dict, density: GridDensity) -> MixedState:
    entries = [(e["weight"], FockConfig.from_dict(e["sectors"])) for e in d["entries"]]
    return assemble(entries, density, d["statistics"], renormalize=False)
