"""Explicit mixed states with prescribed density and entropy, with certified kinetic bounds.

Three constructions are provided:

``construct_canonical``
    ``N``-particle state with density ``rho`` and entropy ``S``: the first ``M`` shell
    configurations share weight ``cos^2(theta)``, the ``(M+1)``-th gets ``sin^2(theta)``,
    with ``M = floor(e^S) + 1`` and ``theta`` fixed by the entropy.
``construct_gc_density_entropy``
    The same two-level mixture over the grand-canonical Fock configurations; only the
    normalized density ``p`` and ``S`` are prescribed.
``construct_gc_full``
    ``lambda |psi_{M+1}><psi_{M+1}| + (alpha/M) sum_{k<=M} |psi_k><psi_k| + (1-lambda-alpha)|vac><vac|``
    over ``N``-particle configurations, which fixes ``p``, the mean particle number and ``S``.

Each constructor returns the state together with a :class:`Certificate` that recomputes
every observable from the state and compares it with the targets and the closed-form bounds.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.integrate import trapezoid
from scipy.optimize import bisect
from scipy.special import xlogy

from .configurations import (
    BOSON,
    FERMION,
    VACUUM,
    Ordering,
    check_statistics,
    enumerate_canonical,
    enumerate_grand_canonical,
)
from .entropy import BISECT_MAXITER, LN2, s, s_inverse, xi_S
from .errors import BudgetExceeded, InfeasibleTarget, TargetOutOfRange
from .grid import GridDensity, dirichlet_energy
from .states import (
    EIGEN_BUDGET,
    MixedState,
    assemble,
    exact_entropy,
    kinetic_energy,
    mean_particles,
    nominal_entropy,
    state_density,
    state_gram_deviation,
)

__all__ = [
    "Certificate",
    "BoundCheck",
    "HoffmannOstenhofReport",
    "theta_entropy",
    "match_entropy_theta",
    "lambda_entropy",
    "match_entropy_lambda",
    "canonical_bound",
    "canonical_proof_chain_bound",
    "gc_entropy_kinetic_bound",
    "gc_entropy_particle_bound",
    "gc_bound_thm3",
    "construct_canonical",
    "construct_gc_density_entropy",
    "construct_gc_full",
    "hoffmann_ostenhof_check",
    "certify",
    "gc_full_parameters",
    "CERTIFICATE_VERSION",
    "ENTROPY_TOL",
    "DENSITY_TOL",
    "MAX_STATES",
]

CERTIFICATE_VERSION = "1.0"
MAX_STATES = 10**6
ENTROPY_TOL = 1e-8
DENSITY_TOL = 1e-6
MEAN_TOL = 1e-12
MARGIN_RTOL = 1e-12
HO_TOL = 1e-6
XI_NOTE = "xi_S branch: s_inverse(S) for S < ln 2, 1 for S >= ln 2"
_RTOL = 4 * 2.220446049250313e-16


def _bisect(fun, a, b):
    return bisect(fun, a, b, xtol=1e-300, rtol=_RTOL, maxiter=BISECT_MAXITER)


# ---------------------------------------------------------------------------
# entropy matching

def _two_level_entropy(c, M):
    return float(-xlogy(c, c / M) - xlogy(1.0 - c, 1.0 - c))


def theta_entropy(theta: float, M: int) -> float:
    """Entropy of ``cos^2/M`` on ``M`` states plus ``sin^2`` on one more."""
    return _two_level_entropy(math.cos(theta) ** 2, M)


def _match_cos2(M, S_target):
    if M < 1:
        raise TargetOutOfRange("M must be a positive integer")
    if not 0.0 <= S_target <= math.log(M):
        raise TargetOutOfRange(f"entropy {S_target!r} outside [0, ln {M}]")
    # c = cos^2(theta): c = 0 is theta = pi/2 (entropy 0), c = 1 is theta = 0 (entropy ln M)
    if S_target == 0.0:
        return 0.0
    if S_target == math.log(M):
        return 1.0
    return _bisect(lambda c: _two_level_entropy(c, M) - S_target, 0.0, 1.0)


def match_entropy_theta(M: int, S_target: float) -> float:
    """``theta_0`` in ``[0, pi/2]`` with ``theta_entropy(theta_0, M) == S_target``.

    Bisection only uses the signs at the two ends, so no monotonicity is needed.
    """
    return math.acos(math.sqrt(_match_cos2(M, S_target)))


def lambda_entropy(lam: float, N: int, M: int, Nbar: float) -> float:
    """Entropy of ``Gamma(lambda, Nbar/N - lambda)``."""
    r = Nbar / N
    alpha = max(r - lam, 0.0)
    return float(
        xlogy(alpha, M) - xlogy(lam, lam) - xlogy(alpha, alpha) - xlogy(1.0 - r, 1.0 - r)
    )


def match_entropy_lambda(N: int, M: int, Nbar: float, S_target: float) -> float:
    """``lambda*`` in ``[0, Nbar/N]`` matching ``S_target`` by bisection.

    Raises
    ------
    TargetOutOfRange
        Unless ``s(Nbar/N) <= S_target <= (Nbar/N) ln M + s(Nbar/N)``.
    """
    r = Nbar / N
    if not 0 < r <= 1:
        raise TargetOutOfRange(f"need 0 < Nbar <= N, got Nbar={Nbar!r}, N={N}")
    lo, hi = lambda_entropy(r, N, M, Nbar), lambda_entropy(0.0, N, M, Nbar)
    if not lo - 1e-14 <= S_target <= hi + 1e-14:
        raise TargetOutOfRange(f"entropy {S_target!r} outside [{lo!r}, {hi!r}]")
    if S_target >= hi:
        return 0.0
    if S_target <= lo:
        return r
    return _bisect(lambda x: lambda_entropy(x, N, M, Nbar) - S_target, 0.0, r)


# ---------------------------------------------------------------------------
# closed-form bounds

def canonical_bound(N: int, S: float, statistics: str, dirichlet: float) -> float:
    """``(1 + 4 pi^2 N^2 (e^{S/N} + 2^{1/N} + 2/N + xi)^2) D`` with ``xi = 1`` (fermions) or 0."""
    xi = 1.0 if check_statistics(statistics) == FERMION else 0.0
    inner = math.exp(S / N) + 2.0 ** (1.0 / N) + 2.0 / N + xi
    return (1.0 + 4 * math.pi**2 * N**2 * inner**2) * dirichlet


def canonical_proof_chain_bound(N: int, M: int, statistics: str, dirichlet: float) -> float:
    """Intermediate bound through ``T(psi_{M+1})`` and ``J(M+1)``, before ``M`` is eliminated."""
    xi = 1.0 if check_statistics(statistics) == FERMION else 0.0
    inner = (M + 1) ** (1.0 / N) + xi + 2.0 / N
    return (1.0 + 4 * math.pi**2 * N**2 * inner**2) * dirichlet


def gc_entropy_kinetic_bound(S: float, dirichlet: float) -> float:
    return 5 * 2**12 * (S + 3) ** 2 * dirichlet


def gc_entropy_particle_bound(S: float) -> float:
    return 2**4 * (S + 3)


def gc_bound_thm3(Nbar: float, S: float, dirichlet: float) -> float:
    """``5 pi^2 (Nbar/xi + 1)^3 (exp(S (1/xi + 1/Nbar) / max(1, Nbar/xi)) + 5)^2 D``."""
    xi = xi_S(S)
    q = Nbar / xi
    expo = S * (1.0 / xi + 1.0 / Nbar) / max(1.0, q)
    return 5 * math.pi**2 * (q + 1) ** 3 * (math.exp(expo) + 5) ** 2 * dirichlet


# ---------------------------------------------------------------------------
# certificates

@dataclass
class BoundCheck:
    name: str
    value: float
    achieved: float
    margin: float
    enforced: bool = True

    @classmethod
    def make(cls, name, value, achieved, enforced=True):
        return cls(name, float(value), float(achieved), float(value - achieved), enforced)

    @property
    def passed(self) -> bool:
        return self.margin >= -MARGIN_RTOL * max(1.0, abs(self.value))


@dataclass
class HoffmannOstenhofReport:
    dirichlet: float
    kinetic: float
    margin: float
    passed: bool


def hoffmann_ostenhof_check(state: MixedState) -> HoffmannOstenhofReport:
    """Compare the Dirichlet energy of the state's density with its kinetic energy."""
    state.density.require_1d()
    dens = state_density(state)
    mass = float(trapezoid(dens.values, dens.nodes))
    d = dirichlet_energy(GridDensity(dens.nodes, dens.values, mass)) if mass > 0 else 0.0
    t = kinetic_energy(state)
    return HoffmannOstenhofReport(float(d), float(t), float(t - d), bool(t >= d - HO_TOL))


@dataclass
class Certificate:
    """Targets, achieved observables and bound margins of a constructed state."""

    ensemble: str
    statistics: str
    targets: dict
    parameters: dict
    achieved: dict
    bounds: list
    hoffmann_ostenhof: dict
    passed: bool
    notes: list = field(default_factory=list)
    version: str = CERTIFICATE_VERSION

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "ensemble": self.ensemble,
            "statistics": self.statistics,
            "targets": self.targets,
            "parameters": self.parameters,
            "achieved": self.achieved,
            "bounds": [asdict(b) for b in self.bounds],
            "hoffmann_ostenhof": self.hoffmann_ostenhof,
            "pass": self.passed,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def bound(self, name) -> BoundCheck:
        for b in self.bounds:
            if b.name == name:
                return b
        raise KeyError(name)


def _l1(nodes, a, b):
    return float(trapezoid(np.abs(a - b), nodes))


def certify(state: MixedState, ensemble: str, targets: dict, parameters: dict,
            entropy_tol: float = ENTROPY_TOL, density_tol: float = DENSITY_TOL) -> Certificate:
    """Recompute every observable of ``state`` and check it against ``targets``.

    ``ensemble`` is ``"canonical"``, ``"gc-entropy"`` or ``"gc-full"``; ``targets`` holds
    ``S`` and ``N`` (canonical) or ``Nbar`` (gc-full). The entropy residual must be at most
    ``entropy_tol`` and the L1 density residual at most ``density_tol``.
    """
    rho = state.density
    S = float(targets["S"])
    notes = []
    d = dirichlet_energy(rho)
    kin = kinetic_energy(state)
    mean = mean_particles(state)
    s_nom = nominal_entropy(state)
    if len(state) <= EIGEN_BUDGET:
        s_exact = exact_entropy(state)
        gram_dev = state_gram_deviation(state)
    else:
        s_exact = gram_dev = None
        notes.append(f"{len(state)} entries: exact entropy and Gram deviation skipped (budget {EIGEN_BUDGET})")
    dens = state_density(state).values
    full_targets = {k: float(v) if k != "N" else int(v) for k, v in targets.items()}
    full_targets["density_digest"] = rho.digest()
    full_targets["density_mass"] = rho.mass
    full_targets["tail_fraction"] = rho.tail_fraction
    full_targets["entropy_tol"] = float(entropy_tol)
    full_targets["density_tol"] = float(density_tol)

    bounds = []
    ok = True
    if ensemble == "canonical":
        N = int(targets["N"])
        density_dev = _l1(rho.nodes, dens, rho.values)
        bounds.append(BoundCheck.make("canonical_statement", canonical_bound(N, S, state.statistics, d), kin))
        bounds.append(BoundCheck.make(
            "canonical_proof_chain",
            canonical_proof_chain_bound(N, int(parameters["M"]), state.statistics, d), kin, enforced=False))
        entropy_ref = s_nom if s_exact is None else s_exact
    elif ensemble == "gc-entropy":
        density_dev = _l1(rho.nodes, dens / mean, rho.normalized) if mean > 0 else math.inf
        enforced = state.statistics == FERMION
        bounds.append(BoundCheck.make("gc_entropy_kinetic", gc_entropy_kinetic_bound(S, d), kin, enforced))
        bounds.append(BoundCheck.make("gc_entropy_particles", gc_entropy_particle_bound(S), mean, enforced))
        if not enforced:
            notes.append("boson explicit constants are reported, not enforced")
            notes.append(f"boson constant: kinetic / dirichlet = {kin / d!r}")
        entropy_ref = s_nom
    elif ensemble == "gc-full":
        Nbar = float(targets["Nbar"])
        density_dev = _l1(rho.nodes, dens, Nbar * rho.normalized)
        ok &= abs(mean - Nbar) <= MEAN_TOL * max(1.0, Nbar)
        if S > 0:
            bounds.append(BoundCheck.make("gc_full_statement", gc_bound_thm3(Nbar, S, d), kin))
            notes.append(XI_NOTE)
        else:
            N = int(parameters["N"])
            notes.append("zero entropy: pure N-particle state, checked against the canonical bound")
            bounds.append(BoundCheck.make("canonical_statement", canonical_bound(N, 0.0, state.statistics, N * d), kin))
        entropy_ref = s_nom if s_exact is None else s_exact
    else:
        raise ValueError(f"unknown ensemble {ensemble!r}")

    ho = hoffmann_ostenhof_check(state)
    entropy_residual = abs(entropy_ref - S)
    ok &= entropy_residual <= entropy_tol
    ok &= density_dev <= density_tol
    ok &= ho.passed
    ok &= all(b.passed for b in bounds if b.enforced)
    achieved = {
        "entropy_nominal": s_nom,
        "entropy_exact": s_exact,
        "entropy_residual": float(entropy_residual),
        "gram_deviation": gram_dev,
        "mean_particles": float(mean),
        "density_l1_deviation": float(density_dev),
        "kinetic": float(kin),
        "dirichlet_target": float(d),
    }
    return Certificate(
        ensemble=ensemble,
        statistics=state.statistics,
        targets=full_targets,
        parameters=dict(parameters),
        achieved=achieved,
        bounds=bounds,
        hoffmann_ostenhof={"dirichlet": ho.dirichlet, "kinetic": ho.kinetic, "margin": ho.margin,
                           "pass": ho.passed},
        passed=bool(ok),
        notes=notes,
    )


# ---------------------------------------------------------------------------
# constructors

def _two_level_weights(M, c):
    return [c / M] * M + [1.0 - c]


def _check_mass(rho, mass, what):
    if abs(rho.mass - mass) > 1e-8 * mass:
        raise ValueError(f"{what} must have mass {mass}, got {rho.mass}")


def _entropy_M(S):
    if S < 0:
        raise TargetOutOfRange("entropy must be nonnegative")
    if S > math.log(MAX_STATES):
        raise BudgetExceeded(f"S = {S} needs more than {MAX_STATES} states")
    return math.floor(math.exp(S)) + 1


def construct_canonical(rho: GridDensity, N: int, S: float, statistics: str, ordering=Ordering.SHELL,
                        **tolerances):
    """``N``-particle mixed state with density ``rho`` and entropy ``S``.

    Returns
    -------
    state : MixedState
    certificate : Certificate
    """
    check_statistics(statistics)
    rho.require_1d()
    _check_mass(rho, N, "rho")
    ordering = Ordering(ordering)
    M = _entropy_M(S)
    configs = enumerate_canonical(N, statistics, M + 1, ordering)
    c = _match_cos2(M, S)
    state = assemble(zip(_two_level_weights(M, c), configs), rho, statistics)
    params = {"M": M, "N": N, "theta0": math.acos(math.sqrt(c)), "ordering": ordering.value}
    return state, certify(state, "canonical", {"N": N, "S": S}, params, **tolerances)


def construct_gc_density_entropy(p: GridDensity, S: float, statistics: str, **tolerances):
    """Grand-canonical state with normalized density ``p`` and nominal entropy ``S``.

    The Fock configurations are not mutually orthogonal (e.g. ``phi_0`` and
    ``phi_0 + phi_0^phi_1`` share a sector), so the certificate reports the analytic Gram
    deviation and the exact von Neumann entropy next to the nominal one.
    """
    check_statistics(statistics)
    p.require_1d()
    _check_mass(p, 1.0, "p")
    M = _entropy_M(S)
    configs = enumerate_grand_canonical(statistics, M + 1)
    c = _match_cos2(M, S)
    state = assemble(zip(_two_level_weights(M, c), configs), p, statistics)
    params = {"M": M, "N": None, "theta0": math.acos(math.sqrt(c)), "ordering": "grand"}
    return state, certify(state, "gc-entropy", {"S": S}, params, **tolerances)


def gc_full_parameters(Nbar: float, S: float):
    """Particle number ``N`` and family size ``M`` used by :func:`construct_gc_full`."""
    if S >= LN2:
        N = math.ceil(Nbar)
        M = math.ceil(math.exp((1.0 + 1.0 / Nbar) * S))
    else:
        x = s_inverse(S)
        N = math.ceil(Nbar / x)
        M = math.ceil(math.exp(S * (1.0 / x + 1.0 / Nbar)))
    return N, M


def construct_gc_full(p: GridDensity, Nbar: float, S: float, statistics: str, ordering=Ordering.SHELL,
                      **tolerances):
    """Grand-canonical state with normalized density ``p``, mean particle number ``Nbar`` and entropy ``S``.

    Raises
    ------
    InfeasibleTarget
        ``S == 0`` with non-integer ``Nbar``.
    """
    check_statistics(statistics)
    p.require_1d()
    _check_mass(p, 1.0, "p")
    ordering = Ordering(ordering)
    if Nbar <= 0:
        raise TargetOutOfRange("Nbar must be positive")
    if S < 0:
        raise TargetOutOfRange("entropy must be nonnegative")
    if S == 0:
        N = round(Nbar)
        if N < 1 or abs(Nbar - N) > 1e-12:
            raise InfeasibleTarget(f"no zero-entropy state has mean particle number {Nbar!r}")
        (psi1,) = enumerate_canonical(N, statistics, 1, ordering)
        state = assemble([(1.0, psi1)], p, statistics)
        params = {"M": 0, "N": N, "lambda_star": None, "ordering": ordering.value}
        return state, certify(state, "gc-full", {"Nbar": Nbar, "S": S}, params, **tolerances)
    N, M = gc_full_parameters(Nbar, S)
    if M + 1 > MAX_STATES:
        raise BudgetExceeded(f"M = {M} exceeds the state budget")
    lam = match_entropy_lambda(N, M, Nbar, S)
    alpha = Nbar / N - lam
    configs = enumerate_canonical(N, statistics, M + 1, ordering)
    weights = [alpha / M] * M + [lam, max(1.0 - lam - alpha, 0.0)]
    state = assemble(zip(weights, configs + [VACUUM]), p, statistics)
    params = {"M": M, "N": N, "lambda_star": lam, "alpha_star": alpha, "ordering": ordering.value}
    return state, certify(state, "gc-full", {"Nbar": Nbar, "S": S}, params, **tolerances)
