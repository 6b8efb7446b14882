"""Multiset sequences of nonzero integers and their basic predicates.

A :class:`ZSeq` is stored as ``(value, multiplicity)`` pairs with values
ascending, which is also the canonical text form::

    >>> str(parse_seq("10^3,-6^5"))
    '-6^5,10^3'
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from .errors import BudgetExceeded, NotPresent, NotZeroSum, ParseError, ZeroMultiplicity, ZeroValue
from .rho_chi import Interval, rho

DEFAULT_BUDGET = 40

_TERM = re.compile(r"^([+-]?\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class ZSeq:
    items: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = None
        for value, mult in self.items:
            if value == 0:
                raise ZeroValue("value 0 is not allowed in a sequence")
            if mult < 1:
                raise ZeroMultiplicity(f"multiplicity of {value} must be >= 1")
            if prev is not None and value <= prev:
                raise ValueError("items must be strictly ascending by value")
            prev = value

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "ZSeq":
        for v, c in counts.items():
            if v == 0:
                raise ZeroValue("value 0 is not allowed in a sequence")
            if c < 1:
                raise ZeroMultiplicity(f"multiplicity of {v} must be >= 1")
        return cls(tuple(sorted(counts.items())))

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "ZSeq":
        counts: dict[int, int] = {}
        for v in values:
            counts[v] = counts.get(v, 0) + 1
        return cls.from_counts(counts)

    @property
    def counts(self) -> dict[int, int]:
        return dict(self.items)

    @cached_property
    def length(self) -> int:
        return sum(c for _, c in self.items)

    @cached_property
    def total(self) -> int:
        return sum(v * c for v, c in self.items)

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        for v, c in self.items:
            for _ in range(c):
                yield v

    def __contains__(self, value: int) -> bool:
        return any(v == value for v, _ in self.items)

    def multiplicity(self, value: int) -> int:
        for v, c in self.items:
            if v == value:
                return c
        return 0

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.items)

    def negate(self) -> "ZSeq":
        return ZSeq(tuple((-v, c) for v, c in reversed(self.items)))

    def within(self, iv: Interval) -> bool:
        return all(v in iv for v, _ in self.items)

    def __str__(self) -> str:
        return ",".join(str(v) if c == 1 else f"{v}^{c}" for v, c in self.items)


def parse_seq(text: str) -> ZSeq:
    """Parse ``term (',' term)*`` with ``term := int ('^' uint)?``.

    The exponent applies to the signed value, so ``-6^5`` is five copies of -6.
    Both ``-`` and the Unicode minus sign are accepted.
    """
    cleaned = text.replace("−", "-").strip()
    if not cleaned:
        raise ParseError("empty sequence")
    counts: dict[int, int] = {}
    for raw in cleaned.split(","):
        term = raw.strip()
        match = _TERM.match(term)
        if not match:
            raise ParseError(f"malformed term {raw!r}")
        value = int(match.group(1))
        mult = int(match.group(2)) if match.group(2) is not None else 1
        if value == 0:
            raise ZeroValue(f"term {raw!r} has value 0")
        if mult == 0:
            raise ZeroMultiplicity(f"term {raw!r} has multiplicity 0")
        counts[value] = counts.get(value, 0) + mult
    return ZSeq.from_counts(counts)


def is_zero_sum(s: ZSeq) -> bool:
    return s.total == 0


def has_zero_subsum(s: ZSeq, *, proper_only: bool = True, half: bool = True,
                    budget: int = DEFAULT_BUDGET) -> bool:
    """Whether some nonempty sub-multiset (proper when ``proper_only``) sums to 0.

    Depth-first over count vectors, values by descending magnitude, pruned by
    the range of sums the undecided values can still contribute.  With ``half``
    only sub-multisets of size at most ``len(s) // 2`` are visited; for a
    zero-sum ``s`` that loses nothing, since complements of zero-sum parts are
    zero-sum too.
    """
    n = s.length
    if n > budget:
        raise BudgetExceeded(f"sequence length {n} exceeds enumeration budget {budget}")
    items = sorted(s.items, key=lambda vc: (-abs(vc[0]), vc[0]))
    size_cap = n // 2 if half else (n - 1 if proper_only else n)
    k = len(items)
    # suffix masses: the most positive / most negative sum the tail can add
    pos_tail = [0] * (k + 1)
    neg_tail = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        v, c = items[i]
        pos_tail[i] = pos_tail[i + 1] + (v * c if v > 0 else 0)
        neg_tail[i] = neg_tail[i + 1] + (v * c if v < 0 else 0)

    def dfs(i: int, total: int, size: int) -> bool:
        if size and total == 0:
            return True
        if i == k or size == size_cap:
            return False
        if total + pos_tail[i] < 0 or total + neg_tail[i] > 0:
            return False
        v, c = items[i]
        top = min(c, size_cap - size)
        for take in range(top, -1, -1):
            if dfs(i + 1, total + take * v, size + take):
                return True
        return False

    return dfs(0, 0, 0)


def is_minimal(s: ZSeq, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff ``s`` is zero-sum and no proper nonempty part of it is.

    Non-zero-sum input returns False.
    """
    if not is_zero_sum(s) or s.length == 0:
        return False
    return not has_zero_subsum(s, half=True, budget=budget)


def _gcd_without_one(s: ZSeq, excluded_value: int) -> int:
    if not is_zero_sum(s):
        raise NotZeroSum(f"sequence {s} does not sum to zero")
    if excluded_value not in s:
        raise NotPresent(f"value {excluded_value} does not occur in {s}")
    d = 0
    for v, c in s.items:
        if v == excluded_value:
            c -= 1
        if c:
            d = math.gcd(d, v)
    return d if d else abs(excluded_value)


def reduce_by_gcd(s: ZSeq, excluded_value: int) -> ZSeq:
    """Divide every element by the gcd of all elements but one copy of ``excluded_value``.

    That gcd divides the left-out element too (the sum is zero), and the
    quotient sequence is minimal whenever ``s`` is.
    """
    d = _gcd_without_one(s, excluded_value)
    return ZSeq(tuple((v // d, c) for v, c in s.items))


def seq_length_bound(s: ZSeq, excluded_value: int) -> int:
    """``(max s - min s) / d`` with ``d`` as in :func:`reduce_by_gcd`; at least ``len(s)``."""
    d = _gcd_without_one(s, excluded_value)
    return (s.items[-1][0] - s.items[0][0]) // d


def two_value_check(m: int, M: int, alpha: int, beta: int) -> bool:
    """Closed test for ``M^alpha . (-m)^beta`` being minimal zero-sum."""
    d = math.gcd(m, M)
    return alpha == m // d and beta == M // d


def two_value_seq(m: int, M: int, alpha: int, beta: int) -> ZSeq:
    return ZSeq.from_counts({M: alpha, -m: beta})


def extremal_construct(iv: Interval | tuple[int, int]) -> ZSeq:
    """The coprime two-value sequence of length ``m + M - rho(m, M)``.

    With the rho witness split ``(t', t'')``: ``M - t'`` copies of ``-(m - t'')``
    and ``m - t''`` copies of ``M - t'``.
    """
    iv = iv if isinstance(iv, Interval) else Interval(*iv)
    w = rho(iv)
    pos = iv.M - w.t_prime
    neg = iv.m - w.t_second
    return ZSeq.from_counts({pos: neg, -neg: pos})
