#!/usr/bin/env python3
"""Smooth numbers: exact Psi(x, y) against the x/u^u law.

Psi(x, y) counts integers up to x with no prime factor above y.  The
scan divides every integer in a window by the primes up to min(y,
sqrt(x)); whatever remains is either 1 or a single large prime, so
smoothness is one comparison.  The comparator x * u^(-u) with
u = log x / log y captures the leading decay.
"""

from phisigma import psi_smooth_count


def main():
    print("=" * 72)
    print("SMOOTH NUMBER COUNTS")
    print("=" * 72)
    print()
    print(f"  {'x':>10}  {'y':>6}  {'u':>6}  {'Psi exact':>10}  "
          f"{'x/u^u':>12}  {'ratio':>7}")
    for x, y in [
        (10**4, 7), (10**4, 31), (10**4, 100),
        (10**6, 31), (10**6, 100), (10**6, 1000),
        (10**7, 100), (10**7, 1000),
    ]:
        sc = psi_smooth_count(x, y)
        ratio = sc.psi_exact / sc.cep_estimate
        print(f"  {x:>10,}  {y:>6}  {sc.u:>6.2f}  {sc.psi_exact:>10,}  "
              f"{sc.cep_estimate:>12.1f}  {ratio:>7.2f}")
    print()
    print("The ratio stays within a modest factor: u^u captures the decay")
    print("while the o(u) in the exponent moves the constant around.")


if __name__ == "__main__":
    main()
