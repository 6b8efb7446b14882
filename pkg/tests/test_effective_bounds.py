import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from zsinterval.arith import omega, omega_table, primes_up_to
from zsinterval.effective_bounds import (
    GUARD, ROBIN_C0, crossover_report, deng_zeng_gate, exp_bound, jacobsthal,
    jacobsthal_by_covering, jacobsthal_g, jacobsthal_window_check, max_covered_run,
    prop4_crossover_check, rho_upper_bound, robin_omega_bound, stevens_bound,
)
from zsinterval.rho_chi import rho_value


def naive_g(n):
    """Largest difference between consecutive integers coprime to n, over one period."""
    hits = [k for k in range(1, 2 * n + 2) if math.gcd(k, n) == 1]
    return max(b - a for a, b in zip(hits, hits[1:])) if len(hits) > 1 else 1


def test_jacobsthal_examples():
    assert [jacobsthal_g(n) for n in range(1, 8)] == [1, 2, 2, 2, 2, 4, 2]
    assert jacobsthal_g(30) == 6
    assert jacobsthal_g(10) == 4
    rep = jacobsthal(6)
    assert (rep.g, rep.omega, rep.kanold_bound) == (4, 2, 4)
    assert jacobsthal(1).stevens_bound == math.inf
    assert jacobsthal(2).robin_omega_bound is None


def test_jacobsthal_against_naive_scan():
    assert all(jacobsthal_g(n) == naive_g(n) for n in range(1, 3000))


def test_scan_and_covering_agree():
    assert all(jacobsthal_g(n) == jacobsthal_by_covering(n) for n in range(1, 5000))


def test_primorials():
    # known values of g on primorials
    known = {2: 2, 6: 4, 30: 6, 210: 10, 2310: 14, 30030: 22, 510510: 26, 9699690: 34}
    for n, g in known.items():
        assert jacobsthal_g(n) == g
    assert max_covered_run((2, 3, 5, 7, 11, 13, 17, 19)) == 33


def test_window_property_to_ten_thousand():
    assert all(jacobsthal_window_check(n) for n in range(1, 10**4 + 1))


def test_kanold_and_stevens_to_1e5():
    for n in range(1, 10**5 + 1):
        g = jacobsthal_g(n)
        w = omega(n)
        assert g <= 2**w
        if n >= 2:
            assert g <= stevens_bound(w) * (1 + GUARD)


def test_robin_to_1e6():
    omegas = omega_table(10**6)
    n = np.arange(3, 10**6 + 1)
    bound = ROBIN_C0 * np.log(n) / np.log(np.log(n))
    assert (omegas[3:] <= bound * (1 + GUARD)).all()
    assert jacobsthal(9699690).robin_holds
    assert robin_omega_bound(3) == pytest.approx(ROBIN_C0 * math.log(3) / math.log(math.log(3)))


def test_stevens_formula_reading():
    assert stevens_bound(1) == 2.0
    assert stevens_bound(2) == pytest.approx(2 * 2 ** (2 + 2 * math.e * math.log(2)))


def test_rho_bounded_by_jacobsthal_to_1000():
    g = [0] + [jacobsthal_g(n) for n in range(1, 1001)]
    for m in range(1, 1001):
        for M in range(m, 1001):
            assert rho_value(m, M) <= min(g[m], g[M]) - 1


def test_rho_upper_bound_examples():
    assert rho_upper_bound((6, 10)).sharp == 3
    assert rho_upper_bound((5, 7)).sharp == 1
    b = rho_upper_bound((2309, 2309))
    assert b.small_min_bound == 15
    assert b.large_min_bound == pytest.approx(exp_bound(2309) - 1)
    assert rho_upper_bound((2310, 5000)).small_min_bound is None
    assert rho_upper_bound((15, 20)).large_min_bound is None


def test_gate_examples():
    assert deng_zeng_gate((255, 8573136))
    assert not deng_zeng_gate((6, 10))
    assert not deng_zeng_gate((1, 1))


@given(st.integers(1, 10**6), st.integers(0, 40))
def test_gate_is_exact(x, t):
    assert deng_zeng_gate((x, x + 1), t) == ((t + 3) ** 2 <= x + 5)


def test_crossover():
    rep = crossover_report()
    assert rep.constant_boundary == 319
    assert 18**2 == 324 == 319 + 5
    assert rep.below_boundary_fails and rep.constant_range_ok
    assert rep.at_1150_ok and rep.grid_ok and rep.monotone
    assert rep.min_margin > 0
    assert prop4_crossover_check()
    assert exp_bound(1150) <= math.sqrt(1155) - 2


def test_first_hundred_primes():
    primes = primes_up_to(541)
    assert len(primes) == 100
    assert all(jacobsthal_g(p) == 2 for p in primes)
