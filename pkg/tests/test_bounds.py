import math

import pytest

from nonrep.bounds import (
    EXACT_CATALAN_LIMIT,
    block_product_base,
    bound_gap,
    catalan,
    count_logs_upper_bound,
    crossing_M,
    log2_catalan,
    log2_catalan_asymptotic,
    log2_catalan_stirling,
    max_block_product_log2,
    peak_bound,
)

# first computed with crossing_M and confirmed by exact_crossing_holds below
CROSSING_K1_N1000_Q12 = 15038


def test_small_catalan_numbers():
    assert [catalan(m) for m in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_catalan_counts_dyck_paths():
    from itertools import product

    for m in range(1, 7):
        paths = 0
        for steps in product((1, -1), repeat=2 * m):
            h, ok = 0, True
            for s in steps:
                h += s
                if h < 0:
                    ok = False
                    break
            paths += ok and h == 0
        assert paths == catalan(m)


def test_stirling_matches_exact_at_switchover():
    m = EXACT_CATALAN_LIMIT
    assert abs(log2_catalan_stirling(m) - math.log2(catalan(m))) < 1e-6
    assert abs(log2_catalan_stirling(50) - math.log2(catalan(50))) < 1e-6
    assert log2_catalan(m + 1) == log2_catalan_stirling(m + 1)


def test_leading_order_asymptotic_is_coarser():
    m = 1000
    err = abs(log2_catalan_asymptotic(m) - log2_catalan(m))
    assert 1e-4 < err < 1e-2


def test_block_product_maximum():
    assert round(block_product_base(), 5) == 1.44467
    grid = max(x ** (1 / x) for x in (i / 1000 for i in range(1, 10000)))
    assert grid == pytest.approx(block_product_base(), abs=1e-6)
    assert block_product_base() < 1.5
    assert max_block_product_log2(10) == pytest.approx(10 / math.e * math.log2(math.e))


def test_peak_bound():
    assert peak_bound(7) == 3 and peak_bound(8) == 4


def test_count_logs_formula():
    # q^n C_M k^(M/2) 2^(M/2) 1.5^M at M=3, n=2, k=4, q=5
    expected = math.log2(5**2 * 5 * 4**1.5 * 2**1.5 * 1.5**3)
    assert count_logs_upper_bound(3, 2, 4, 5) == pytest.approx(expected)
    with pytest.raises(ValueError):
        count_logs_upper_bound(0, 1, 1, 1)


def exact_crossing_holds(M, n=1000, q=12):
    """(10)^M > 12^n C_M 2^(M/2) 1.5^M for k=1, squared to stay in integers."""
    lhs = 10 ** (2 * M) * 2 ** (2 * M)
    rhs = q ** (2 * n) * catalan(M) ** 2 * 2**M * 3 ** (2 * M)
    return lhs > rhs


def test_crossing_regression():
    M = crossing_M(1000, 1, 12)
    assert M == CROSSING_K1_N1000_Q12
    assert exact_crossing_holds(M) and not exact_crossing_holds(M - 1)


@pytest.mark.parametrize("k", [1, 2, 3, 5, 10])
def test_gap_is_increasing(k):
    q = math.ceil(2 * k + 10 * math.sqrt(k))
    gaps = [bound_gap(M, 500, k, q) for M in range(1, 20000, 97)]
    assert all(b > a for a, b in zip(gaps, gaps[1:]))
    M = crossing_M(500, k)
    assert bound_gap(M, 500, k, q) > 0 >= bound_gap(M - 1, 500, k, q)
