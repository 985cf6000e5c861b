"""Probability that a single voter is decisive when everyone else votes at random.

``n_others`` is the number of other voters, so the electorate has
``n_others + 1`` members. A voter is decisive when the motion (strict majority
of yes over no) passes if they vote yes and fails if they vote no.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.stats import binom

from .combinatorics import binomial, central_trinomial_pair

# Measured as N * |exact/asymptotic - 1| at N = 4096 (0.249947 binary,
# 0.0624785 ternary), rounded up to three significant digits.
ERROR_CONSTANT = {"binary": 0.250, "ternary": 0.0625}

BINARY_CONSTANT = math.sqrt(2 / math.pi)
TERNARY_CONSTANT = math.sqrt(3 / math.pi)


class VotingScheme(enum.Enum):
    BINARY = "binary"
    TERNARY = "ternary"

    @property
    def options(self) -> int:
        """Number of choices available to each voter."""
        return 2 if self is VotingScheme.BINARY else 3


class Method(enum.Enum):
    EXACT_RATIONAL = "exact"
    EXACT_FLOAT = "float"
    ASYMPTOTIC = "asymptotic"


class Strategy(enum.Enum):
    AUTO = "auto"
    EXACT = "exact"
    ASYMPTOTIC = "asymptotic"
    FLOAT = "float"


class ResourceLimitError(RuntimeError):
    """Exact evaluation refused because N exceeds the configured cap."""


@dataclass(frozen=True)
class PowerConfig:
    exact_threshold: int = 5000
    exact_cap: int = 10**6
    two_term: bool = False


DEFAULT_CONFIG = PowerConfig()


@dataclass(frozen=True)
class PowerResult:
    n_others: int
    scheme: VotingScheme
    value: Fraction | float
    method: Method
    error_hint: float | None = None

    def __post_init__(self):
        if not 0 < self.value <= 1:
            raise ValueError(f"power must lie in (0, 1], got {self.value}")
        if self.method is Method.ASYMPTOTIC and self.error_hint is None:
            raise ValueError("asymptotic results need an error_hint")

    def __float__(self) -> float:
        return float(self.value)

    @property
    def population(self) -> int:
        return self.n_others + 1


def _check_n(n_others: int) -> None:
    if isinstance(n_others, bool) or not isinstance(n_others, (int, np.integer)):
        raise TypeError(f"n_others must be an integer, got {n_others!r}")
    if n_others < 0:
        raise ValueError(f"n_others must be non-negative, got {n_others}")


def _check_cap(n_others: int, config: PowerConfig) -> None:
    if n_others > config.exact_cap:
        raise ResourceLimitError(
            f"exact evaluation refused for N={n_others} (cap {config.exact_cap}); "
            "use the asymptotic strategy"
        )


def binary_power_exact(n_others: int, config: PowerConfig = DEFAULT_CONFIG) -> PowerResult:
    _check_n(n_others)
    _check_cap(n_others, config)
    value = Fraction(binomial(n_others, n_others // 2), 2**n_others)
    return PowerResult(n_others, VotingScheme.BINARY, value, Method.EXACT_RATIONAL)


def ternary_sum_direct(n_others: int) -> int:
    """Number of decisive outcomes, summed over the count K of non-abstainers."""
    _check_n(n_others)
    return sum(binomial(n_others, k) * binomial(k, k // 2) for k in range(n_others + 1))


def ternary_sum_via_trinomials(n_others: int) -> int:
    """Decisive-outcome count as (N 0)_2 + (N 1)_2. Requires N >= 1."""
    _check_n(n_others)
    if n_others < 1:
        raise ValueError("trinomial form of the decisive count needs N >= 1")
    central, next_central = central_trinomial_pair(n_others)
    return central + next_central


def ternary_power_exact(n_others: int, config: PowerConfig = DEFAULT_CONFIG) -> PowerResult:
    _check_n(n_others)
    _check_cap(n_others, config)
    count = 1 if n_others == 0 else ternary_sum_via_trinomials(n_others)
    value = Fraction(count, 3**n_others)
    return PowerResult(n_others, VotingScheme.TERNARY, value, Method.EXACT_RATIONAL)


def _asymptotic(n_others: int, scheme: VotingScheme, constant: float, two_term: bool) -> PowerResult:
    _check_n(n_others)
    if n_others < 1:
        raise ValueError("the square-root approximation is undefined for N = 0")
    if two_term:
        value = 0.5 * constant * (1 / math.sqrt(n_others) + 1 / math.sqrt(n_others + 1))
    else:
        value = constant / math.sqrt(n_others + 1)
    hint = ERROR_CONSTANT[scheme.value] / n_others
    return PowerResult(n_others, scheme, value, Method.ASYMPTOTIC, hint)


def binary_power_asymptotic(n_others: int) -> PowerResult:
    """sqrt(2/pi) / sqrt(N + 1)."""
    return _asymptotic(n_others, VotingScheme.BINARY, BINARY_CONSTANT, False)


def ternary_power_asymptotic(n_others: int, two_term: bool = False) -> PowerResult:
    """sqrt(3/pi) / sqrt(N + 1), or the averaged 1/sqrt(N), 1/sqrt(N+1) form."""
    return _asymptotic(n_others, VotingScheme.TERNARY, TERNARY_CONSTANT, two_term)


def power_float(n_others: int, scheme: VotingScheme) -> PowerResult:
    """Floating-point evaluation of the exact decisive probability at any N.

    Binary is a single binomial pmf. Ternary conditions on the number K of
    non-abstainers, K ~ Binomial(N, 2/3), and sums P(K) * P(tie or yes+1 | K)
    over a window of +-40 standard deviations, where the rest is below 1e-300.
    """
    _check_n(n_others)
    n = int(n_others)
    if scheme is VotingScheme.BINARY:
        value = float(binom.pmf(n // 2, n, 0.5))
    else:
        half_width = int(40 * math.sqrt(2 * n / 9)) + 10
        centre = 2 * n // 3
        k = np.arange(max(0, centre - half_width), min(n, centre + half_width) + 1)
        value = float(np.sum(binom.pmf(k, n, 2 / 3) * binom.pmf(k // 2, k, 0.5)))
    return PowerResult(n, scheme, value, Method.EXACT_FLOAT)


def power_exact(n_others: int, scheme: VotingScheme, config: PowerConfig = DEFAULT_CONFIG) -> PowerResult:
    if scheme is VotingScheme.BINARY:
        return binary_power_exact(n_others, config)
    return ternary_power_exact(n_others, config)


def power_asymptotic(n_others: int, scheme: VotingScheme, two_term: bool = False) -> PowerResult:
    if scheme is VotingScheme.BINARY:
        return binary_power_asymptotic(n_others)
    return ternary_power_asymptotic(n_others, two_term)


def power(
    n_others: int,
    scheme: VotingScheme = VotingScheme.TERNARY,
    strategy: Strategy = Strategy.AUTO,
    config: PowerConfig = DEFAULT_CONFIG,
) -> PowerResult:
    """Voting power of one voter among ``n_others + 1``.

    AUTO runs the exact rational path up to ``config.exact_threshold`` and the
    square-root law above it.
    """
    _check_n(n_others)
    if strategy is Strategy.AUTO:
        strategy = Strategy.EXACT if n_others <= config.exact_threshold else Strategy.ASYMPTOTIC
    if strategy is Strategy.EXACT:
        return power_exact(n_others, scheme, config)
    if strategy is Strategy.FLOAT:
        return power_float(n_others, scheme)
    return power_asymptotic(n_others, scheme, config.two_term)
