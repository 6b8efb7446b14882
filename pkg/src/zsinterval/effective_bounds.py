"""Jacobsthal's function and the explicit bounds built on it.

``g(n)`` is the least ``L`` such that every ``L`` consecutive integers contain
one coprime to ``n``, i.e. the largest difference between consecutive
integers coprime to ``n``.  It only depends on the radical of ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .arith import omega, prime_divisors
from .rho_chi import Interval, _as_interval, rho

ROBIN_C0 = 1.3841
GUARD = 1e-9
SCAN_LIMIT = 4_000_000
SMALL_MIN_BOUND = 15
SMALL_MIN_LIMIT = 2309


def _scan_gap(primes: Sequence[int]) -> int:
    r = math.prod(primes)
    coprime = np.ones(r + 2, dtype=bool)
    for p in primes:
        coprime[::p] = False
    hits = np.flatnonzero(coprime[1:]) + 1
    return int(np.diff(hits).max()) if len(hits) > 1 else 1


def max_covered_run(primes: Sequence[int]) -> int:
    """Longest run of consecutive integers each divisible by one of ``primes``.

    Backtracking over residues: position ``k`` of the run is either already hit
    by a prime whose residue is fixed, or it fixes the residue of a new prime.
    Any residue choice is realised by CRT, so the search is exact.
    """
    primes = list(primes)
    best = 0
    residue: dict[int, int] = {}

    def dfs(pos: int) -> None:
        nonlocal best
        best = max(best, pos)
        if any(pos % p == r for p, r in residue.items()):
            dfs(pos + 1)
            return
        for p in primes:
            if p in residue:
                continue
            residue[p] = pos % p
            dfs(pos + 1)
            del residue[p]

    dfs(0)
    return best


@lru_cache(maxsize=1 << 16)
def _g_of_primes(primes: tuple[int, ...]) -> int:
    if not primes:
        return 1
    if math.prod(primes) <= SCAN_LIMIT:
        return _scan_gap(primes)
    return max_covered_run(primes) + 1


def jacobsthal_g(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return _g_of_primes(prime_divisors(n))


def jacobsthal_by_covering(n: int) -> int:
    """Same value as :func:`jacobsthal_g`, by the residue backtracking instead of a scan."""
    return max_covered_run(prime_divisors(n)) + 1


def stevens_bound(w: int) -> float:
    if w == 0:
        return math.inf
    return 2.0 * w ** (2.0 + 2.0 * math.e * math.log(w))


def robin_omega_bound(n: int) -> Optional[float]:
    if n < 3:
        return None
    return ROBIN_C0 * math.log(n) / math.log(math.log(n))


@dataclass(frozen=True)
class JacobsthalReport:
    n: int
    g: int
    omega: int
    kanold_bound: int
    stevens_bound: float
    robin_omega_bound: Optional[float]

    @property
    def kanold_holds(self) -> bool:
        return self.g <= self.kanold_bound

    @property
    def robin_holds(self) -> Optional[bool]:
        if self.robin_omega_bound is None:
            return None
        return self.omega <= self.robin_omega_bound * (1 + GUARD)


def jacobsthal(n: int) -> JacobsthalReport:
    w = omega(n)
    return JacobsthalReport(n, jacobsthal_g(n), w, 2**w, stevens_bound(w), robin_omega_bound(n))


def jacobsthal_window_check(n: int) -> bool:
    """Every window of ``g(n)`` consecutive integers meets a coprime; some window of ``g(n) - 1`` does not.

    Checked over every start ``1..n`` with prefix sums of the coprimality
    indicator, independently of how ``g`` was obtained.
    """
    g = jacobsthal_g(n)
    span = n + g + 1
    idx = np.arange(span + 1)
    ind = np.gcd(idx, n) == 1
    ind[0] = False
    cum = np.concatenate(([0], np.cumsum(ind)))
    starts = np.arange(1, n + 1)
    full = cum[starts + g] - cum[starts]
    if (full == 0).any():
        return False
    if n == 1:
        return True
    short = cum[starts + g - 1] - cum[starts]
    return bool((short == 0).any())


@dataclass(frozen=True)
class RhoUpperBound:
    sharp: int
    small_min_bound: Optional[int]
    large_min_bound: Optional[float]


def rho_upper_bound(iv: Interval | tuple[int, int]) -> RhoUpperBound:
    """``min(g(m), g(M)) - 1`` plus the two explicit fallback bounds.

    The constant 15 applies when ``min(m, M) <= 2309``; the exponential bound
    ``2**(c0 ln x / ln ln x) - 1`` when ``x = min(m, M) >= 16``.
    """
    iv = _as_interval(iv)
    x = min(iv.m, iv.M)
    sharp = min(jacobsthal_g(iv.m), jacobsthal_g(iv.M)) - 1
    small = SMALL_MIN_BOUND if x <= SMALL_MIN_LIMIT else None
    large = 2.0 ** (ROBIN_C0 * math.log(x) / math.log(math.log(x))) - 1 if x >= 16 else None
    return RhoUpperBound(sharp, small, large)


def deng_zeng_gate(iv: Interval | tuple[int, int], t: Optional[int] = None) -> bool:
    """Whether ``rho <= sqrt(min(m, M) + 5) - 3``, decided as ``(rho + 3)^2 <= min + 5``."""
    iv = _as_interval(iv)
    if t is None:
        t = rho(iv).t
    return (t + 3) ** 2 <= min(iv.m, iv.M) + 5


def exp_bound(x: float) -> float:
    return 2.0 ** (ROBIN_C0 * math.log(x) / math.log(math.log(x)))


@dataclass(frozen=True)
class CrossoverReport:
    constant_range_ok: bool
    constant_boundary: int
    below_boundary_fails: bool
    at_1150_ok: bool
    grid_ok: bool
    monotone: bool
    grid_points: int
    min_margin: float

    @property
    def passed(self) -> bool:
        return (self.constant_range_ok and self.below_boundary_fails and self.at_1150_ok
                and self.grid_ok and self.monotone)


def crossover_report(grid_points: int = 2000, top: float = 1e9) -> CrossoverReport:
    """Check where the explicit bounds fall under the gate threshold.

    With ``15 <= sqrt(x + 5) - 3`` exactly equivalent to ``x + 5 >= 324``, the
    constant part is integer arithmetic.  The exponential part compares
    ``2**(c0 ln x / ln ln x)`` with ``sqrt(x + 5) - 2`` in floating point with
    a relative guard of 1e-9, on a log grid from 1150 to ``top``, and requires
    the margin to grow from each grid point to the next.
    """
    constant_ok = all(18 * 18 <= x + 5 for x in range(319, 2401))
    boundary = next(x for x in range(1, 2401) if 18 * 18 <= x + 5)
    below_fails = not 18 * 18 <= 318 + 5

    def margin(x: float) -> float:
        return (math.sqrt(x + 5) - 2) - exp_bound(x)

    def holds(x: float) -> bool:
        return exp_bound(x) <= (math.sqrt(x + 5) - 2) * (1 + GUARD)

    xs = np.geomspace(1150.0, top, grid_points)
    margins = [margin(float(x)) for x in xs]
    grid_ok = all(holds(float(x)) for x in xs)
    monotone = all(b > a for a, b in zip(margins, margins[1:]))
    return CrossoverReport(constant_ok, boundary, below_fails, holds(1150.0), grid_ok,
                           monotone, grid_points, min(margins))


def prop4_crossover_check() -> bool:
    return crossover_report().passed
