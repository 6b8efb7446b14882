"""Davenport constant over ``[-m, M]``: closed formula and exhaustive oracle.

The oracle never consults rho.  It scans candidate lengths downward from
``m + M`` and decides each by a depth-first search over count vectors.  A
branch is cut as soon as the partial multiset contains a nonempty zero-sum
part that is not the whole (every extension would keep that part), or when
the remaining values cannot bring the sum back to zero.  Terminal candidates
still go through :func:`is_minimal`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExceeded, PreconditionViolated
from .rho_chi import Interval, _as_interval, rho
from .zsseq import ZSeq, extremal_construct, is_minimal

DESK_LIMIT = 16
NODE_BUDGET = 200_000_000


@dataclass(frozen=True)
class DavenportReport:
    iv: Interval
    formula_value: int
    oracle_value: int | None = None
    extremal_count: int | None = None

    @property
    def agrees(self) -> bool | None:
        if self.oracle_value is None:
            return None
        return self.oracle_value == self.formula_value


def davenport_formula(iv: Interval | tuple[int, int]) -> int:
    iv = _as_interval(iv)
    return iv.m + iv.M - rho(iv).t


def _search_order(iv: Interval) -> list[int]:
    values = [v for v in range(-iv.m, iv.M + 1) if v]
    return sorted(values, key=lambda v: (-abs(v), -v))


class _Search:
    """Count-vector DFS for minimal zero-sum multisets over an interval."""

    def __init__(self, iv: Interval, min_len: int, max_len: int,
                 node_budget: int = NODE_BUDGET, seq_budget: int = 40):
        self.iv = iv
        self.min_len = min_len
        self.max_len = max_len
        self.values = _search_order(iv)
        self.offset = iv.m * max_len
        self.node_budget = node_budget
        self.seq_budget = seq_budget
        self.nodes = 0
        k = len(self.values)
        # most positive / most negative single value still available from index i on
        self.max_rest = [0] * (k + 1)
        self.min_rest = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            v = self.values[i]
            self.max_rest[i] = max(self.max_rest[i + 1], v)
            self.min_rest[i] = min(self.min_rest[i + 1], v)

    def run(self) -> Iterator[dict[int, int]]:
        yield from self._dfs(0, 0, 0, 1 << self.offset, {})

    def _feasible(self, i: int, total: int, size: int) -> bool:
        slots = self.max_len - size
        if slots <= 0:
            return False
        if total > 0:
            return total + slots * self.min_rest[i] <= 0
        if total < 0:
            return total + slots * self.max_rest[i] >= 0
        return True

    def _dfs(self, i: int, total: int, size: int, sums: int,
             counts: dict[int, int]) -> Iterator[dict[int, int]]:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceeded(f"oracle search exceeded {self.node_budget} nodes on {self.iv}")
        if i == len(self.values) or not self._feasible(i, total, size):
            return
        v = self.values[i]
        off = self.offset
        # branch on 0, 1, 2, ... copies of v
        yield from self._dfs(i + 1, total, size, sums, counts)
        c = 0
        while size + c < self.max_len:
            zero_hit = (sums >> (off - v)) & 1 if 0 <= off - v else 0
            c += 1
            new_total = total + c * v
            new_size = size + c
            if zero_hit:
                if new_total == 0 and new_size >= self.min_len:
                    counts[v] = c
                    cand = ZSeq.from_counts(counts)
                    del counts[v]
                    if is_minimal(cand, budget=self.seq_budget):
                        yield dict(cand.items)
                return
            sums = sums | (sums << v if v > 0 else sums >> -v)
            counts[v] = c
            yield from self._dfs(i + 1, new_total, new_size, sums, counts)
            del counts[v]


def _check_desk(iv: Interval, desk_limit: int) -> None:
    if iv.m + iv.M > desk_limit:
        raise BudgetExceeded(
            f"m + M = {iv.m + iv.M} exceeds the desk-scale limit {desk_limit}")


def iter_minimal_sequences(iv: Interval | tuple[int, int], min_len: int = 1,
                           max_len: int | None = None,
                           node_budget: int = NODE_BUDGET) -> Iterator[ZSeq]:
    """Every minimal zero-sum multiset over ``iv`` with length in the given range.

    Order follows the search, not the canonical order.
    """
    iv = _as_interval(iv)
    if max_len is None:
        max_len = iv.m + iv.M
    for counts in _Search(iv, min_len, max_len, node_budget).run():
        yield ZSeq.from_counts(counts)


def exists_minimal_of_length(iv: Interval, length: int, node_budget: int = NODE_BUDGET) -> bool:
    return next(iter_minimal_sequences(iv, length, length, node_budget), None) is not None


def davenport_oracle(iv: Interval | tuple[int, int], budget: int = NODE_BUDGET,
                     desk_limit: int = DESK_LIMIT) -> int:
    """Longest minimal zero-sum multiset over ``iv``, found by exhaustive search."""
    iv = _as_interval(iv)
    _check_desk(iv, desk_limit)
    for length in range(iv.m + iv.M, 1, -1):
        if exists_minimal_of_length(iv, length, budget):
            return length
    raise AssertionError(f"no minimal zero-sum sequence over {iv}")


def enumerate_extremal(iv: Interval | tuple[int, int], budget: int = NODE_BUDGET,
                       desk_limit: int = DESK_LIMIT) -> list[ZSeq]:
    """All minimal zero-sum multisets of maximal length, canonically ordered."""
    iv = _as_interval(iv)
    d = davenport_oracle(iv, budget, desk_limit)
    found = list(iter_minimal_sequences(iv, d, d, budget))
    return sorted(found, key=lambda s: s.items)


def davenport_report(iv: Interval | tuple[int, int], oracle: bool = False,
                     extremal: bool = False, budget: int = NODE_BUDGET,
                     desk_limit: int = DESK_LIMIT) -> DavenportReport:
    iv = _as_interval(iv)
    formula = davenport_formula(iv)
    oracle_value = count = None
    if extremal:
        seqs = enumerate_extremal(iv, budget, desk_limit)
        oracle_value, count = len(seqs[0]), len(seqs)
    elif oracle:
        oracle_value = davenport_oracle(iv, budget, desk_limit)
    return DavenportReport(iv, formula, oracle_value, count)


def check_inverse_rho0(iv: Interval | tuple[int, int], budget: int = NODE_BUDGET,
                       desk_limit: int = DESK_LIMIT) -> bool:
    """If the oracle reaches ``m + M``, then ``gcd(m, M) == 1`` and ``M^m (-m)^M`` is the only extremal sequence."""
    iv = _as_interval(iv)
    m, M = iv.m, iv.M
    if davenport_oracle(iv, budget, desk_limit) != m + M:
        return True
    expected = [ZSeq.from_counts({M: m, -m: M})]
    return math.gcd(m, M) == 1 and enumerate_extremal(iv, budget, desk_limit) == expected


def rho1_forms(iv: Interval) -> list[ZSeq]:
    """The (at most two) candidate extremal sequences when the defect is 1."""
    m, M = iv.m, iv.M
    forms = []
    if m >= 2 and math.gcd(m - 1, M) == 1:
        forms.append(ZSeq.from_counts({M: m - 1, -(m - 1): M}))
    if M >= 2 and math.gcd(m, M - 1) == 1:
        forms.append(ZSeq.from_counts({M - 1: m, -m: M - 1}))
    return forms


def check_inverse_rho1(iv: Interval | tuple[int, int], budget: int = NODE_BUDGET,
                       desk_limit: int = DESK_LIMIT) -> bool:
    """If the oracle gives ``m + M - 1``, every extremal sequence is one of :func:`rho1_forms`."""
    iv = _as_interval(iv)
    if davenport_oracle(iv, budget, desk_limit) != iv.m + iv.M - 1:
        return True
    forms = rho1_forms(iv)
    return all(s in forms for s in enumerate_extremal(iv, budget, desk_limit))


def mm1_sequences(m: int, M: int) -> Iterator[tuple[int, int, int, ZSeq]]:
    """Minimal zero-sum sequences ``M^a (M-1)^b (-m)^c`` with ``a + b + c <= m + M``."""
    bound = m + M
    for a in range(bound + 1):
        for b in range(bound + 1 - a):
            mass = a * M + b * (M - 1)
            if mass == 0 or mass % m:
                continue
            c = mass // m
            if a + b + c > bound:
                continue
            counts: dict[int, int] = {}
            for value, mult in ((M, a), (M - 1, b), (-m, c)):
                if mult and value:
                    counts[value] = counts.get(value, 0) + mult
            seq = ZSeq.from_counts(counts)
            if is_minimal(seq, budget=bound + 1):
                yield a, b, c, seq


def structure_MM1_check(m: int, M: int) -> bool:
    """Length bounds for minimal sequences built from ``M``, ``M - 1`` and ``-m``.

    Each such sequence must have length at most ``m + M - 2`` when ``M`` occurs
    and at most ``m + M - 3`` when ``gcd(m, M - 1) != 1``.
    """
    if math.gcd(m, M) == 1:
        raise PreconditionViolated(f"gcd({m}, {M}) = 1; the structure bound needs a common factor")
    shared_below = math.gcd(m, M - 1) != 1
    for a, _b, _c, seq in mm1_sequences(m, M):
        if a > 0 and len(seq) > m + M - 2:
            return False
        if shared_below and len(seq) > m + M - 3:
            return False
    return True


def lower_bound_length(iv: Interval | tuple[int, int]) -> int:
    return len(extremal_construct(_as_interval(iv)))
