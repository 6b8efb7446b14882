"""The covering defect rho(m, M) and the ratio supremum chi over ``[-m, M]``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import lcm_upto


@dataclass(frozen=True, order=True)
class Interval:
    """The integers from ``-m`` to ``M``; both magnitudes are at least 1."""

    m: int
    M: int

    def __post_init__(self):
        if self.m < 1 or self.M < 1:
            raise ValueError(f"interval endpoints must be >= 1, got m={self.m}, M={self.M}")

    def mirror(self) -> "Interval":
        return Interval(self.M, self.m)

    def __contains__(self, value: int) -> bool:
        return value != 0 and -self.m <= value <= self.M

    def __str__(self) -> str:
        return f"[-{self.m}, {self.M}]"


@dataclass(frozen=True)
class RhoWitness:
    """Minimal ``t`` and the split ``t = t_prime + t_second`` achieving it.

    The split satisfies ``gcd(M - t_prime, m - t_second) == 1``.
    """

    t: int
    t_prime: int
    t_second: int


def _as_interval(iv: Interval | tuple[int, int]) -> Interval:
    return iv if isinstance(iv, Interval) else Interval(*iv)


def rho(iv: Interval | tuple[int, int]) -> RhoWitness:
    """Scan ``t`` upward and, for each ``t``, ``t_prime`` upward.

    The first coprime split found is returned, so among minimal splits the one
    with the smallest ``t_prime`` wins.
    """
    iv = _as_interval(iv)
    m, M = iv.m, iv.M
    gcd = math.gcd
    last = min(m, M) - 1
    for t in range(last + 1):
        for tp in range(t + 1):
            if gcd(M - tp, m - t + tp) == 1:
                return RhoWitness(t, tp, t - tp)
    # unreachable: at t = min(m, M) - 1 one side of the split equals 1
    raise AssertionError(f"no coprime split for {iv}")


def rho_value(m: int, M: int) -> int:
    return rho(Interval(m, M)).t


def chi(iv: Interval | tuple[int, int]) -> int:
    """Sup of ``(x + |y|) / gcd(x, |y|)`` over ``1 <= x <= M``, ``-m <= y <= -1``.

    Evaluated over every pair.  The ratio is always an integer because the gcd
    divides both terms.
    """
    iv = _as_interval(iv)
    xs = np.arange(1, iv.M + 1, dtype=np.int64)
    ys = np.arange(1, iv.m + 1, dtype=np.int64)
    ratio = (xs[:, None] + ys[None, :]) // np.gcd.outer(xs, ys)
    return int(ratio.max())


def chi_grid(m_max: int, M_max: int) -> np.ndarray:
    """``table[m, M] == chi([-m, M])`` for ``1 <= m <= m_max``, ``1 <= M <= M_max``.

    Each pair ratio is computed once; the supremum over the box is the running
    maximum along both axes.  Row and column 0 are unused and left at 0.
    """
    xs = np.arange(1, M_max + 1, dtype=np.int64)
    ys = np.arange(1, m_max + 1, dtype=np.int64)
    ratio = (ys[:, None] + xs[None, :]) // np.gcd.outer(ys, xs)
    best = np.maximum.accumulate(np.maximum.accumulate(ratio, axis=0), axis=1)
    out = np.zeros((m_max + 1, M_max + 1), dtype=np.int64)
    out[1:, 1:] = best
    return out


def rho_period(m: int) -> int:
    """A period of ``M -> rho(m, M)`` on ``M >= m``: lcm(1, ..., m).

    With ``M >= m`` every split keeps ``t_second <= m - 1``, and
    ``gcd(M - t', m - t'')`` only depends on ``M`` modulo ``m - t''``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    return lcm_upto(m)
