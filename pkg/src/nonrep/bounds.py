"""Counting bounds behind the termination argument, in log2 scale."""

from __future__ import annotations

import math

# Catalan numbers are computed exactly up to here, by Stirling's series above.
EXACT_CATALAN_LIMIT = 1000


def catalan(m: int) -> int:
    if m < 0:
        raise ValueError("m must be non-negative")
    return math.comb(2 * m, m) // (m + 1)


def _ln_factorial_stirling(n: int) -> float:
    # Stirling series with four correction terms; error below 1e-20 for n >= 1000
    x = float(n)
    return (x * math.log(x) - x + 0.5 * math.log(2 * math.pi * x)
            + 1 / (12 * x) - 1 / (360 * x**3) + 1 / (1260 * x**5) - 1 / (1680 * x**7))


def log2_catalan_stirling(m: int) -> float:
    if m < 1:
        raise ValueError("Stirling form needs m >= 1")
    ln = _ln_factorial_stirling(2 * m) - 2 * _ln_factorial_stirling(m) - math.log(m + 1)
    return ln / math.log(2)


def log2_catalan(m: int) -> float:
    if m <= EXACT_CATALAN_LIMIT:
        return math.log2(catalan(m))
    return log2_catalan_stirling(m)


def log2_catalan_asymptotic(m: int) -> float:
    """Leading-order growth 4^m / (m^{3/2} sqrt(pi)); coarser than the series."""
    return 2 * m - 1.5 * math.log2(m) - 0.5 * math.log2(math.pi)


def block_product_base() -> float:
    """max over x > 0 of x^(1/x), attained at x = e."""
    return math.exp(1 / math.e)


def max_block_product_log2(m: int) -> float:
    """log2 of max x^(m/x): bound on the number of P sequences for a route."""
    return m * math.log2(block_product_base())


def peak_bound(m: int) -> int:
    """Each erasure clears at least two cells, so a route has at most m/2 peaks."""
    return m // 2


def count_logs_upper_bound(M: int, n: int, k: int, q: int) -> float:
    """log2 of q^n * C_M * k^(M/2) * 2^(M/2) * 1.5^M."""
    for name, v in (("M", M), ("n", n), ("k", k), ("q", q)):
        if v < 1:
            raise ValueError(f"{name} must be >= 1")
    return (n * math.log2(q) + log2_catalan(M) + 0.5 * M * math.log2(k)
            + 0.5 * M + M * math.log2(1.5))


def random_choices_log2(M: int, k: int) -> float:
    """log2 of (10 sqrt k)^M, the number of rank sequences of length M."""
    return M * math.log2(10 * math.sqrt(k))


def bound_gap(M: int, n: int, k: int, q: int) -> float:
    """Positive once there are more rank sequences than possible logs."""
    return random_choices_log2(M, k) - count_logs_upper_bound(M, n, k, q)


def crossing_M(n: int, k: int, q: int | None = None) -> int:
    """Smallest M at which bound_gap turns positive.

    The gap grows by more than log2(10/(sqrt(2) * 1.5 * 4)) > 0.23 per step,
    so it is increasing and a bisection is valid.
    """
    if q is None:
        q = math.ceil(2 * k + 10 * math.sqrt(k))
    lo, hi = 1, 2
    if bound_gap(lo, n, k, q) > 0:
        return lo
    while bound_gap(hi, n, k, q) <= 0:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound_gap(mid, n, k, q) > 0:
            hi = mid
        else:
            lo = mid
    return hi
