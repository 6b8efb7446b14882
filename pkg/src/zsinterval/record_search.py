"""Partners M forcing rho(m, M) >= r, found through prime tables.

``rho(m, M) >= r`` means every cell ``(t', t'')`` with ``t' + t'' <= r - 1``
has ``gcd(M - t', m - t'') > 1``.  Pick a prime ``p`` dividing ``m - t''`` for
each cell; the choice is realisable iff every prime used in several rows sees
row offsets congruent modulo ``p`` (then ``M = t' (mod p)`` is one condition
per prime and CRT produces ``M``).  Enumerating these tables is therefore
complete for the question "does some M work?".
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterator, Optional

from .arith import crt_solve, prime_divisors
from .errors import PreconditionViolated
from .rho_chi import rho

Cell = tuple[int, int]  # (t_prime, t_second)

SPORADIC = (255, 286)


@dataclass(frozen=True)
class GcdCellGrid:
    m: int
    r: int
    cells: tuple[Cell, ...]

    @classmethod
    def build(cls, m: int, r: int) -> "GcdCellGrid":
        # column-major: t_second ascending, then t_prime ascending
        cells = tuple((tp, ts) for ts in range(r) for tp in range(r - ts))
        return cls(m, r, cells)

    @property
    def feasible(self) -> bool:
        return self.m - (self.r - 1) >= 2


@dataclass(frozen=True)
class PrimeTable:
    m: int
    r: int
    assignment: tuple[tuple[Cell, int], ...]

    def prime(self, t_prime: int, t_second: int) -> int:
        return dict(self.assignment)[(t_prime, t_second)]

    def residues(self) -> dict[int, int]:
        """``p -> M mod p`` implied by the table."""
        out: dict[int, int] = {}
        for (tp, _ts), p in self.assignment:
            out[p] = tp % p
        return out

    def consistent(self) -> bool:
        seen: dict[int, int] = {}
        for (tp, ts), p in self.assignment:
            if (self.m - ts) % p:
                return False
            if p in seen and (seen[p] - tp) % p:
                return False
            seen.setdefault(p, tp)
        return True

    def rows(self) -> list[list[Optional[int]]]:
        """Grid with rows ``M - t'`` and columns ``m - t''``; ``None`` marks cells outside the table."""
        cells = dict(self.assignment)
        return [[cells.get((tp, ts)) for ts in range(self.r)] for tp in range(self.r)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["row"] + [f"m-{ts}" if ts else "m" for ts in range(self.r)])
        for tp, row in enumerate(self.rows()):
            label = f"M-{tp}" if tp else "M"
            writer.writerow([label] + ["" if p is None else p for p in row])
        return buf.getvalue()


def iter_tables(m: int, r: int) -> Iterator[PrimeTable]:
    """All consistent prime tables for ``(m, r)``, in a deterministic order."""
    if m < 2 or r < 1:
        raise PreconditionViolated("prime tables need m >= 2 and r >= 1")
    grid = GcdCellGrid.build(m, r)
    if not grid.feasible:
        return
    column_primes = {ts: prime_divisors(m - ts) for ts in range(r)}
    cells = grid.cells
    chosen: list[int] = []
    residue: dict[int, int] = {}

    def dfs(k: int) -> Iterator[PrimeTable]:
        if k == len(cells):
            yield PrimeTable(m, r, tuple(zip(cells, chosen)))
            return
        tp, ts = cells[k]
        for p in column_primes[ts]:
            fixed = residue.get(p)
            if fixed is not None and fixed != tp % p:
                continue
            if fixed is None:
                residue[p] = tp % p
            chosen.append(p)
            yield from dfs(k + 1)
            chosen.pop()
            if fixed is None:
                del residue[p]

    yield from dfs(0)


def exists_partner(m: int, r: int) -> Optional[PrimeTable]:
    return next(iter_tables(m, r), None)


def partner_for_table(table: PrimeTable) -> tuple[int, int]:
    """Least ``M >= m`` satisfying the table's congruences, and their modulus."""
    x, modulus = crt_solve((res, p) for p, res in sorted(table.residues().items()))
    if x < table.m:
        x += -(-(table.m - x) // modulus) * modulus
    return x, modulus


def min_partner(m: int, r: int) -> Optional[tuple[int, PrimeTable]]:
    """Smallest ``M >= m`` with ``rho(m, M) >= r``, minimised over every table.

    Each candidate is re-checked with a direct rho evaluation.
    """
    best: Optional[tuple[int, PrimeTable]] = None
    tried: set[frozenset] = set()
    for table in iter_tables(m, r):
        key = frozenset(table.residues().items())
        if key in tried:
            continue
        tried.add(key)
        M, _ = partner_for_table(table)
        if rho((m, M)).t < r:
            raise AssertionError(f"table for m={m} gave M={M} with rho < {r}")
        if best is None or M < best[0]:
            best = (M, table)
    return best


def min_argument_scan(r: int, m_max: int) -> list[int]:
    """Every ``2 <= m <= m_max`` for which some partner reaches level ``r``."""
    if r < 1:
        raise PreconditionViolated("r must be >= 1")
    if m_max > 10**4:
        raise PreconditionViolated("m_max is limited to 10^4")
    return [m for m in range(2, m_max + 1) if exists_partner(m, r) is not None]


def sporadic_rho_exact_check(m: int) -> bool:
    """For the two sporadic arguments, no partner reaches level 5."""
    if m not in SPORADIC:
        raise PreconditionViolated(f"m must be one of {SPORADIC}, got {m}")
    return exists_partner(m, 5) is None
