"""Occupation patterns of Harriman orbitals: enumeration, ordering and counting.

A canonical configuration is a sorted tuple of integer momenta: strictly increasing for
fermions (a Slater determinant), non-decreasing for bosons (a permanent). A Fock-space
configuration (:class:`FockConfig`) puts at most one such tuple in each particle-number
sector ``n >= 1``; the empty one is the vacuum.

Canonical orders
    ``shell``   (default) sort by ``J = max|k|``, then ``sum k^2``, then the tuple itself.
    ``kinetic`` sort by ``sum k^2``, then the tuple itself.

Grand-canonical order
    States are produced step by step: step ``l`` appends every selection over the sectors
    ``1..2l+1`` (fermions) or ``1..l`` (bosons) built from orbitals with ``|k| <= l`` that
    was not already produced. Inside a step, selections are ordered by their highest
    occupied sector, then recursively by the selection below it, then by the option in
    the highest sector. Sector options are sorted by ``(J, sum k^2)`` and ties broken in
    the order ``0, 1, -1, 2, -2, ...``. For ``l = 1`` this gives
    ``phi_0; phi_1; phi_-1; phi_0^phi_1; phi_-1^phi_0; ...``.
"""
from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from scipy.optimize import bisect

from .errors import BudgetExceeded, VacuumHasNoMomentum

__all__ = [
    "FERMION",
    "BOSON",
    "CANONICAL",
    "GRAND",
    "Ordering",
    "FockConfig",
    "VACUUM",
    "binomial",
    "multiset_count",
    "g_product",
    "h_product",
    "iter_canonical",
    "enumerate_canonical",
    "iter_grand_canonical",
    "enumerate_grand_canonical",
    "sector_options",
    "max_momentum",
    "sum_of_squares",
    "block_counts",
    "j_bound",
    "xi_inverse_x2lnx",
    "IdentityCheck",
    "CountingReport",
    "verify_counting_identities",
]

FERMION = "fermion"
BOSON = "boson"
CANONICAL = "canonical"
GRAND = "grand"


def check_statistics(statistics):
    if statistics not in (FERMION, BOSON):
        raise ValueError(f"statistics must be 'fermion' or 'boson', got {statistics!r}")
    return statistics


def check_ensemble(ensemble):
    if ensemble not in (CANONICAL, GRAND):
        raise ValueError(f"ensemble must be 'canonical' or 'grand', got {ensemble!r}")
    return ensemble


class Ordering(str, Enum):
    SHELL = "shell"
    KINETIC = "kinetic"


@dataclass(frozen=True, order=True)
class FockConfig:
    """At most one configuration per particle-number sector.

    ``sectors`` is a tuple of ``(n, momenta)`` pairs sorted by ``n`` with
    ``len(momenta) == n``. The empty tuple is the vacuum.
    """

    sectors: tuple = ()

    def __post_init__(self):
        sectors = tuple(sorted((int(n), tuple(int(k) for k in m)) for n, m in self.sectors))
        seen = set()
        for n, m in sectors:
            if n < 1 or n != len(m):
                raise ValueError(f"sector {n} holds {len(m)} momenta")
            if n in seen:
                raise ValueError(f"sector {n} occupied twice")
            seen.add(n)
            if list(m) != sorted(m):
                raise ValueError("momenta inside a sector must be sorted")
        object.__setattr__(self, "sectors", sectors)

    @classmethod
    def canonical(cls, momenta) -> "FockConfig":
        momenta = tuple(sorted(momenta))
        return cls(((len(momenta), momenta),)) if momenta else cls()

    @classmethod
    def from_dict(cls, d) -> "FockConfig":
        return cls(tuple((int(n), tuple(m)) for n, m in d.items()))

    def as_dict(self) -> dict:
        return {n: list(m) for n, m in self.sectors}

    @property
    def is_vacuum(self) -> bool:
        return not self.sectors

    @property
    def n_max(self) -> int:
        return self.sectors[-1][0] if self.sectors else 0

    @property
    def occupied(self) -> tuple:
        return tuple(n for n, _ in self.sectors)

    def __len__(self):
        return len(self.sectors)


VACUUM = FockConfig()


def _momenta(config):
    if isinstance(config, FockConfig):
        return [k for _, m in config.sectors for k in m]
    return list(config)


def max_momentum(config) -> int:
    """``J``: the largest ``|k|`` over every occupied orbital, in every sector."""
    ks = _momenta(config)
    if not ks:
        raise VacuumHasNoMomentum("the vacuum has no occupied orbital")
    return max(abs(k) for k in ks)


def sum_of_squares(config) -> int:
    return sum(k * k for k in _momenta(config))


# ---------------------------------------------------------------------------
# counting

def binomial(p: int, q: int) -> int:
    """``q! / (p! (q-p)!)``, and 0 whenever ``q < p`` or ``q < 0``."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    if q < 0 or q < p:
        return 0
    return math.comb(q, p)


def multiset_count(m: int, N: int) -> int:
    """Number of ways to put ``N`` indistinguishable balls of ``m`` types in a row."""
    return binomial(N, N + m - 1)


def g_product(n: int) -> int:
    """``prod_{k=0}^{n} C(n, k)``."""
    return math.prod(binomial(k, n) for k in range(n + 1))


def h_product(ell: int, subtract_vacuum: bool = True) -> int:
    """``prod_{n=1}^{l} (1 + C(2l+n, 2l))``, minus one if the vacuum is not counted."""
    h = math.prod(1 + binomial(2 * ell, 2 * ell + n) for n in range(1, ell + 1))
    return h - 1 if subtract_vacuum else h


def block_counts(N: int, ell: int, statistics: str, ensemble: str = CANONICAL) -> int:
    """Number of states whose largest momentum is at most the shell-``l`` value.

    canonical fermions: configurations with ``J <= N//2 + l``;
    canonical bosons: configurations with ``J <= l``;
    grand fermions / bosons: non-vacuum states produced up to step ``l`` (``N`` unused).
    """
    check_statistics(statistics)
    check_ensemble(ensemble)
    if ell < 0:
        return 0
    if ensemble == CANONICAL:
        if statistics == BOSON:
            return binomial(N, N + 2 * ell)
        return binomial(N, N + 2 * ell + 1) if N % 2 == 0 else binomial(N, N + 2 * ell)
    if statistics == FERMION:
        return math.prod(1 + binomial(n, 2 * ell + 1) for n in range(1, 2 * ell + 2)) - 1
    return h_product(ell)


# ---------------------------------------------------------------------------
# canonical enumeration

def _shell(N, J, statistics):
    """All configurations with ``max|k| == J``, sorted by ``(sum k^2, tuple)``."""
    if N == 1:
        # avoid materializing the O(J) pool that combinations() builds even for r = 0
        return [(-J,), (J,)] if J else [(0,)]
    if statistics == FERMION:
        inner = range(-J + 1, J)
        found = [(-J,) + c for c in itertools.combinations(inner, N - 1)]
        found += [c + (J,) for c in itertools.combinations(inner, N - 1)]
        if J > 0 and N >= 2:
            found += [(-J,) + c + (J,) for c in itertools.combinations(inner, N - 2)]
        if J == 0:
            found = [(0,)] if N == 1 else []
    else:
        # smallest entry -J, or smallest entry > -J and largest entry J
        found = [(-J,) + c for c in itertools.combinations_with_replacement(range(-J, J + 1), N - 1)]
        found += [c + (J,) for c in itertools.combinations_with_replacement(range(-J + 1, J + 1), N - 1)]
    found = sorted(set(found), key=lambda c: (sum(k * k for k in c), c))
    return found


def iter_canonical(N: int, statistics: str, ordering=Ordering.SHELL):
    """Endless iterator over ``N``-particle configurations in the requested order."""
    check_statistics(statistics)
    if N < 1:
        raise ValueError("N must be positive")
    ordering = Ordering(ordering)
    strict = statistics == FERMION
    if ordering is Ordering.SHELL:
        J = N // 2 if strict else 0
        while True:
            yield from _shell(N, J, statistics)
            J += 1
    else:
        # merge the shells through a heap: once shells 0..J are in, every configuration
        # still missing has max|k| >= J+1 and hence sum k^2 >= (J+1)^2
        heap = []
        J = 0
        while True:
            for c in _shell(N, J, statistics):
                heapq.heappush(heap, (sum(k * k for k in c), c))
            J += 1
            while heap and heap[0][0] < J * J:
                yield heapq.heappop(heap)[1]


def enumerate_canonical(N: int, statistics: str, count: int, ordering=Ordering.SHELL) -> list:
    """The first ``count`` configurations (sorted tuples) of :func:`iter_canonical`."""
    if count < 1:
        raise ValueError("count must be positive")
    return list(itertools.islice(iter_canonical(N, statistics, ordering), count))


# ---------------------------------------------------------------------------
# grand-canonical enumeration

def _zigzag(k):
    return 2 * abs(k) - (k > 0)


def _option_key(c):
    return (max(abs(k) for k in c), sum(k * k for k in c), tuple(sorted(_zigzag(k) for k in c)))


def sector_options(n: int, ell: int, statistics: str) -> list:
    """All ``n``-particle configurations with ``max|k| <= l``, in sector order."""
    check_statistics(statistics)
    pool = range(-ell, ell + 1)
    if statistics == FERMION:
        opts = itertools.combinations(pool, n)
    else:
        opts = itertools.combinations_with_replacement(pool, n)
    return sorted(opts, key=_option_key)


def _selections(options, m):
    """Every selection over sectors ``1..m`` (vacuum first) as tuples of ``(n, momenta)``."""
    yield ()
    for top in range(1, m + 1):
        for prefix in _selections(options, top - 1):
            for opt in options[top]:
                yield prefix + ((top, opt),)


def _step_sectors(ell, statistics):
    return 2 * ell + 1 if statistics == FERMION else ell


def _is_new(sel, ell, statistics):
    if not sel:
        return False
    J = max(abs(k) for _, m in sel for k in m)
    if statistics == FERMION:
        return J == ell
    return J == ell or sel[-1][0] == ell


def iter_grand_canonical(statistics: str):
    """Endless iterator over non-vacuum Fock configurations (index 1, 2, ...)."""
    check_statistics(statistics)
    ell = 0
    while True:
        m = _step_sectors(ell, statistics)
        options = {n: sector_options(n, ell, statistics) for n in range(1, m + 1)}
        for sel in _selections(options, m):
            if _is_new(sel, ell, statistics):
                yield FockConfig(sel)
        ell += 1


def enumerate_grand_canonical(statistics: str, count: int) -> list:
    if count < 1:
        raise ValueError("count must be positive")
    return list(itertools.islice(iter_grand_canonical(statistics), count))


# ---------------------------------------------------------------------------
# bounds on J

_XI_UPPER = 1e9


def xi_inverse_x2lnx(y: float) -> float:
    """Reciprocal of ``x -> x^2 ln x`` on ``[1, 1e9]``, by bisection."""
    if y < 0:
        raise ValueError("x^2 ln x is nonnegative on [1, inf)")
    if y == 0:
        return 1.0
    return bisect(lambda x: x * x * math.log(x) - y, 1.0, _XI_UPPER, xtol=1e-300, rtol=4 * 2.2205e-16,
                  maxiter=200)


def j_bound(t: float, N: int, statistics: str, ensemble: str = CANONICAL) -> float:
    """Closed-form upper bound on the largest momentum of the ``t``-th state.

    canonical fermions  ``N/2 (t^(1/N) + 1 + 2/N)``
    canonical bosons    ``N/2 (t^(1/N) + 2/N)``
    grand fermions      ``sqrt(2) sqrt(1 + ln t) + 1/2``
    grand bosons        ``xi(ln(t) / 2)`` with ``xi`` the reciprocal of ``x^2 ln x``
    """
    check_statistics(statistics)
    check_ensemble(ensemble)
    if t < 1:
        raise ValueError("t must be at least 1")
    if ensemble == CANONICAL:
        extra = 1.0 if statistics == FERMION else 0.0
        return 0.5 * N * (t ** (1.0 / N) + extra + 2.0 / N)
    if statistics == FERMION:
        return math.sqrt(2.0) * math.sqrt(1.0 + math.log(t)) + 0.5
    return xi_inverse_x2lnx(math.log(t) / 2.0)


# ---------------------------------------------------------------------------
# exhaustive verification of the counting statements

@dataclass
class IdentityCheck:
    name: str
    params: dict
    expected: object
    observed: object
    passed: bool

    def line(self) -> str:
        p = ", ".join(f"{k}={v}" for k, v in self.params.items())
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] {self.name}({p}): expected {self.expected}, observed {self.observed}"


@dataclass
class CountingReport:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def by_name(self, name):
        return [c for c in self.checks if c.name == name]

    def format(self) -> str:
        lines = [c.line() for c in self.checks]
        n_fail = len(self.failures())
        lines.append(f"{len(self.checks) - n_fail}/{len(self.checks)} checks passed")
        return "\n".join(lines)


GRAND_CENSUS_BUDGET = 100_000


def _canonical_block_checks(N, ell_max, statistics, out):
    total = block_counts(N, ell_max, statistics)
    configs = enumerate_canonical(N, statistics, total)
    Js = [max_momentum(c) for c in configs]
    base = N // 2 if statistics == FERMION else 0
    for ell in range(ell_max + 1):
        J = base + ell
        cnt = sum(1 for j in Js if j <= J)
        closed = block_counts(N, ell, statistics)
        out.append(IdentityCheck(f"{statistics}_block_count", {"N": N, "l": ell}, closed, cnt, closed == cnt))
        # index range of shell l as written in the proofs (1-based)
        if statistics == FERMION:
            shift = 1 if N % 2 == 0 else 0
            lo = binomial(N, N + 2 * ell - 2 + shift) + 1
            hi = binomial(N, N + 2 * ell + shift)
        else:
            lo = binomial(N, N + 2 * ell - 1) + 1 if ell > 0 else 1
            hi = binomial(N, N + 2 * ell)
        block = set(Js[lo - 1 : hi])
        out.append(IdentityCheck(f"{statistics}_block_J", {"N": N, "l": ell, "index": f"{lo}..{hi}"},
                                 {J}, block, block == {J}))


def _grand_checks(ell_max, statistics, out):
    for ell in range(ell_max + 1):
        m = _step_sectors(ell, statistics)
        per_sector = math.prod(1 + len(sector_options(n, ell, statistics)) for n in range(1, m + 1)) - 1
        closed = block_counts(0, ell, statistics, GRAND)
        out.append(IdentityCheck(f"grand_{statistics}_product", {"l": ell}, closed, per_sector,
                                 closed == per_sector))
    census_max = max(ell for ell in range(ell_max + 1)
                     if block_counts(0, ell, statistics, GRAND) <= GRAND_CENSUS_BUDGET)
    total = block_counts(0, census_max, statistics, GRAND)
    states = enumerate_grand_canonical(statistics, total + 1)
    for ell in range(census_max + 1):
        hi = block_counts(0, ell, statistics, GRAND)
        lo = block_counts(0, ell - 1, statistics, GRAND)
        if hi == 0:
            continue
        step = states[lo:hi]
        distinct = len(set(step)) == len(step)
        nxt_J = max_momentum(states[hi])
        Js = [max_momentum(s) for s in step]
        if statistics == FERMION:
            ok = distinct and set(Js) == {ell} and nxt_J == ell + 1
            ok = ok and all(s.n_max <= 2 * max_momentum(s) + 1 for s in step)
        else:
            ok = distinct and max(Js) == ell and max(s.n_max for s in step) <= ell
        out.append(IdentityCheck(f"grand_{statistics}_census", {"l": ell, "index": f"{lo + 1}..{hi}"},
                                 hi - lo, len(step) if ok else f"{len(step)} (J={sorted(set(Js))})", ok))


def verify_counting_identities(N_max: int, ell_max: int) -> CountingReport:
    """Check every counting statement of the construction by exhaustive enumeration.

    Grand-canonical censuses are enumerated only for steps whose cumulative count stays
    below ``GRAND_CENSUS_BUDGET``; the product formulas are checked for every step
    against the per-sector option counts.
    """
    if not (1 <= N_max <= 8 and 1 <= ell_max <= 6):
        raise BudgetExceeded("exhaustive enumeration is limited to N_max <= 8, l_max <= 6")
    out = []
    for N in range(1, N_max + 1):
        _canonical_block_checks(N, ell_max, FERMION, out)
        _canonical_block_checks(N, ell_max, BOSON, out)
    for m in range(1, 2 * ell_max + 2):
        for N in range(1, N_max + 1):
            brute = sum(1 for _ in itertools.combinations_with_replacement(range(m), N))
            out.append(IdentityCheck("multiset_count", {"m": m, "N": N}, multiset_count(m, N), brute,
                                     brute == multiset_count(m, N)))
    out.append(IdentityCheck("multiset_count", {"m": 3, "N": 3}, 10, multiset_count(3, 3),
                             multiset_count(3, 3) == 10))
    for N in range(1, N_max + 1):
        for ell in range(ell_max + 1):
            lower = Fraction((2 * ell) ** N, math.factorial(N))
            a, b = binomial(N, N + 2 * ell), binomial(N, N + 2 * ell + 1)
            out.append(IdentityCheck("binomial_chain", {"N": N, "l": ell}, f"{float(lower):.6g} <= {a} <= {b}",
                                     f"{lower <= a} {a <= b}", lower <= a <= b))
    _grand_checks(ell_max, FERMION, out)
    _grand_checks(ell_max, BOSON, out)
    for n in range(1, 2 * ell_max + 2):
        lg = math.log(g_product(n))
        out.append(IdentityCheck("ln_g_lower", {"n": n}, f">= {n * n / 8 - 1:.6g}", f"{lg:.6g}",
                                 lg >= n * n / 8 - 1))
    for ell in range(ell_max + 1):
        prod = block_counts(0, ell, FERMION, GRAND) + 1
        g = g_product(2 * ell + 1)
        out.append(IdentityCheck("grand_product_ge_g", {"l": ell}, f">= {1 + g}", prod, prod >= 1 + g))
    for ell in range(2, ell_max + 1):
        target = 2 * ell * ell * math.log(ell)
        for sub in (False, True):
            lh = math.log(h_product(ell, subtract_vacuum=sub))
            out.append(IdentityCheck("ln_h_lower", {"l": ell, "vacuum_removed": sub}, f">= {target:.6g}",
                                     f"{lh:.6g}", lh >= target))
    return CountingReport(out)
