"""Independent brute-force helpers shared by the test modules."""

import itertools
import math

import pytest

from zsinterval.zsseq import ZSeq


def naive_has_zero_part(values, proper=True):
    """Exhaustive check over index subsets."""
    n = len(values)
    top = n - 1 if proper else n
    for size in range(1, top + 1):
        for combo in itertools.combinations(values, size):
            if sum(combo) == 0:
                return True
    return False


def naive_is_minimal(values):
    return sum(values) == 0 and len(values) > 0 and not naive_has_zero_part(values)


def all_multisets(m, M, max_len, min_len=1):
    """Every multiset over [-m, M] without 0, of length min_len..max_len, as sorted tuples."""
    alphabet = [v for v in range(-m, M + 1) if v]
    for n in range(min_len, max_len + 1):
        yield from itertools.combinations_with_replacement(alphabet, n)


def naive_minimal_sequences(m, M, max_len):
    return [ZSeq.from_values(c) for c in all_multisets(m, M, max_len) if naive_is_minimal(c)]


def naive_davenport(m, M):
    return max(len(s) for s in naive_minimal_sequences(m, M, m + M))


def naive_rho(m, M):
    for t in range(min(m, M)):
        for tp in range(t + 1):
            if math.gcd(M - tp, m - (t - tp)) == 1:
                return t
    raise AssertionError("unreachable")


def naive_chi(m, M):
    best = 0
    for x in range(1, M + 1):
        for y in range(1, m + 1):
            best = max(best, (x + y) / math.gcd(x, y))
    return best


@pytest.fixture(scope="session")
def minimal_upto5():
    """All minimal zero-sum sequences over [-5, 5], from the library search, keyed by (m, M)."""
    from zsinterval.davenport import iter_minimal_sequences

    return {(m, M): list(iter_minimal_sequences((m, M), 1, m + M))
            for m in range(1, 6) for M in range(1, 6)}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import REPORT
    except ImportError:
        return
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
