"""Binomial and trinomial coefficients, exact and in the log domain.

Trinomial coefficients here are indexed by offset from the centre:
``trinomial(n, k)`` is the coefficient of ``x**(n + k)`` in ``(x**2 + x + 1)**n``.
"""
from __future__ import annotations

import math
from typing import Iterator


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def log_binomial(n: int, k: int) -> float:
    """Natural log of C(n, k) via log-gamma."""
    if not 0 <= k <= n:
        raise ValueError(f"log_binomial requires 0 <= k <= n, got n={n}, k={k}")
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def trinomial_rows(n_max: int) -> Iterator[list[int]]:
    """Yield dense coefficient lists of (x^2 + x + 1)^n for n = 0..n_max.

    Row ``n`` has length ``2n + 1``; index ``j`` holds the coefficient of ``x**j``.
    """
    row = [1]
    yield row
    for _ in range(n_max):
        padded = [0, 0] + row + [0, 0]
        row = [padded[j] + padded[j + 1] + padded[j + 2] for j in range(len(row) + 2)]
        yield row


def trinomial(n: int, k: int) -> int:
    """Trinomial coefficient by direct polynomial expansion.

    Quadratic in ``n``; meant as a reference for ``n`` up to a few thousand.
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if abs(k) > n:
        return 0
    row = [1]
    for row in trinomial_rows(n):
        pass
    return row[n + k]


def _central_pair(n: int) -> tuple[int, int]:
    # (T(n), T(n+1)) from m*T(m) = (2m-1)*T(m-1) + 3(m-1)*T(m-2), T(0) = T(1) = 1
    prev, cur = 1, 1
    for m in range(2, n + 2):
        prev, cur = cur, ((2 * m - 1) * cur + 3 * (m - 1) * prev) // m
    return prev, cur


def central_trinomial(n: int) -> int:
    """Central trinomial coefficient (n 0)_2 by linear recurrence."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return _central_pair(n)[0]


def next_central_trinomial(n: int) -> int:
    """(n 1)_2, obtained as (T(n+1) - T(n)) / 2 from central coefficients."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    t_n, t_next = _central_pair(n)
    diff = t_next - t_n
    assert diff % 2 == 0
    return diff // 2


def central_trinomial_pair(n: int) -> tuple[int, int]:
    """Return ((n 0)_2, (n 1)_2) with a single recurrence pass."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    t_n, t_next = _central_pair(n)
    return t_n, (t_next - t_n) // 2
