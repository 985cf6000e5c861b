#!/usr/bin/env python3
"""Relative error of the square-root law against the exact power, and N * error.

The N = 4096 row is where the error constants in pivotal.power were measured.
"""
import argparse

from pivotal.power import (
    ERROR_CONSTANT,
    Strategy,
    VotingScheme,
    power,
    power_exact,
    ternary_power_asymptotic,
)

parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
parser.add_argument("--max-exponent", type=int, default=7, help="largest N is 4**max_exponent")
args = parser.parse_args()

print(f"{'N':>8} {'scheme':>8} {'exact':>14} {'sqrt law':>14} {'rel err':>11} {'N*err':>9} {'two-term N*err':>15}")
for e in range(1, args.max_exponent + 1):
    n = 4**e
    for scheme in VotingScheme:
        exact = float(power_exact(n, scheme).value)
        approx = power(n, scheme, Strategy.ASYMPTOTIC).value
        err = abs(exact / approx - 1)
        two = ""
        if scheme is VotingScheme.TERNARY:
            two = f"{n * abs(exact / ternary_power_asymptotic(n, two_term=True).value - 1):15.6f}"
        print(f"{n:8d} {scheme.value:>8} {exact:14.8e} {approx:14.8e} {err:11.3e} {n * err:9.6f} {two:>15}")
print("stored error constants:", ERROR_CONSTANT)
