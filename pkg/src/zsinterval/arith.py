"""Exact integer helpers: gcd, factorization, omega, CRT.

Factorization uses a smallest-prime-factor sieve for n up to ``SIEVE_CAP`` and
trial division above it.  The sieve is grown lazily (doubling) and each
published array is never mutated afterwards.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ArithmeticOverflow, Conflict

SIEVE_CAP = 10**7
BUDGET_BITS = 128
BUDGET = 1 << BUDGET_BITS

_spf: np.ndarray = np.zeros(0, dtype=np.int32)
_spf_lock = threading.Lock()


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def _build_spf(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int32)
    if limit >= 1:
        spf[1] = 1
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest] = rest
    spf[0] = 0
    return spf


def spf_table(limit: int) -> np.ndarray:
    """Smallest-prime-factor array covering ``0..limit`` (``limit <= SIEVE_CAP``)."""
    global _spf
    if limit > SIEVE_CAP:
        raise ValueError(f"sieve limit {limit} exceeds cap {SIEVE_CAP}")
    table = _spf
    if len(table) > limit:
        return table
    with _spf_lock:
        if len(_spf) <= limit:
            size = max(1 << 16, len(_spf))
            while size <= limit:
                size *= 2
            _spf = _build_spf(min(size, SIEVE_CAP))
        return _spf


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError("smallest prime factor needs n >= 2")
    if n <= SIEVE_CAP:
        return int(spf_table(n)[n])
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_factor(n) == n


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(str(p) if e == 1 else f"{p}^{e}" for p, e in self.factors)


def factorize(n: int) -> Factorization:
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: list[tuple[int, int]] = []
    rest = n
    while rest > 1:
        p = smallest_prime_factor(rest)
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        out.append((p, e))
    return Factorization(n, tuple(out))


def prime_divisors(n: int) -> tuple[int, ...]:
    return factorize(n).primes


def radical(n: int) -> int:
    return math.prod(prime_divisors(n))


def omega(n: int) -> int:
    """Number of distinct primes dividing ``n``; ``omega(1) == 0``."""
    return len(factorize(n).factors)


def omega_table(limit: int) -> np.ndarray:
    """``omega(n)`` for every ``0 <= n <= limit`` by an additive sieve."""
    counts = np.zeros(limit + 1, dtype=np.int8)
    spf = spf_table(limit)
    primes = np.flatnonzero(spf[: limit + 1] == np.arange(limit + 1))
    for p in primes:
        if p >= 2:
            counts[p::p] += 1
    return counts


def primes_up_to(limit: int) -> list[int]:
    spf = spf_table(max(limit, 2))
    idx = np.arange(limit + 1)
    return [int(p) for p in np.flatnonzero(spf[: limit + 1] == idx) if p >= 2]


@dataclass(frozen=True)
class CrtSystem:
    congruences: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> "CrtSystem":
        return cls(tuple((int(r), int(mod)) for r, mod in pairs))


def crt_solve(system: CrtSystem | Iterable[Sequence[int]]) -> tuple[int, int]:
    """Least non-negative simultaneous solution and the combined modulus.

    Duplicate ``(residue, modulus)`` pairs are merged first; the remaining
    moduli must be pairwise coprime.

    Raises:
        Conflict: two congruences with a shared modulus factor disagree.
        ArithmeticOverflow: the combined modulus exceeds 2**128.
    """
    if not isinstance(system, CrtSystem):
        system = CrtSystem.of(system)
    if not system.congruences:
        raise ValueError("empty congruence system")
    seen: dict[tuple[int, int], None] = {}
    for r, mod in system.congruences:
        if mod < 2:
            raise ValueError(f"modulus must be >= 2, got {mod}")
        if not 0 <= r < mod:
            raise ValueError(f"residue {r} not reduced modulo {mod}")
        seen[(r, mod)] = None
    pairs = list(seen)
    for i, (r1, m1) in enumerate(pairs):
        for r2, m2 in pairs[i + 1 :]:
            g = math.gcd(m1, m2)
            if g == 1:
                continue
            if (r1 - r2) % g:
                raise Conflict(f"x = {r1} mod {m1} contradicts x = {r2} mod {m2}")
            raise ValueError(f"moduli {m1} and {m2} are not coprime")

    x, modulus = 0, 1
    for r, mod in pairs:
        # x + modulus*k = r (mod mod)
        k = (r - x) * pow(modulus, -1, mod) % mod
        x += modulus * k
        modulus *= mod
        if modulus > BUDGET:
            raise ArithmeticOverflow(f"combined modulus exceeds 2^{BUDGET_BITS}")
    return x, modulus


def lcm_upto(m: int) -> int:
    """lcm(1, ..., m), raising once it passes the 128-bit budget."""
    out = 1
    for k in range(2, m + 1):
        out = math.lcm(out, k)
        if out > BUDGET:
            raise ArithmeticOverflow(f"lcm(1..{m}) exceeds 2^{BUDGET_BITS}")
    return out
