#!/usr/bin/env python3
"""The nine-condition membership test for value preimages.

At level x, membership of n asks: is n big enough, squarefull-light,
built from S-normal primes, factor-count bounded, unitary-divisor
tame, simplex-bound, odd-factor rich, top-prime heavy, and weighted
strictly under 1?  The census then asks how many values <= x have a
preimage that escapes.
"""

from phisigma import af_params, capture_census, classify

X = 10**4
EPSILON = 0.1

CONDITION_NAMES = [
    "(0) n >= x/log x",
    "(1) squarefull divisors <= log^2 x",
    "(2) all primes S-normal",
    "(3) Omega bounds",
    "(4) unitary divisor Omega growth",
    "(5) renormalized vector in simplex",
    "(6) >= L+1 odd prime factors",
    "(7) P+(f(p_0)) large, p_1 small",
    "(8) weighted sum <= 1 - omega",
]


def main():
    print("=" * 72)
    print(f"PREIMAGE CLASSIFICATION AT x = {X:,}, epsilon = {EPSILON}")
    print("=" * 72)
    print()
    params = af_params(float(X), EPSILON)
    print(f"S formula: exp({params.s_formula_log:.3e})  ->  effective "
          f"{params.s_effective:.2f} (overridden: {params.s_overridden})")
    print(f"delta = {params.delta:.4f}   omega = {params.omega:.4f}   "
          f"L = {params.L} (formula {params.l_formula})   xi = {params.xi}")
    print()

    for n in (9699, 4620, 2**10, 9973):
        rep = classify(n, "phi", params)
        print(f"n = {n}: member = {rep.member}")
        for name, ok in zip(CONDITION_NAMES, rep.cond):
            mark = "ok" if ok else "FAIL"
            print(f"    {mark:>4}  {name}")
        print()

    census = capture_census("phi", X, EPSILON)
    print(f"capture census: {census.values_with_outside_preimage} of "
          f"{census.total_values} totient values <= {X:,} have a preimage")
    print(f"outside the set (fraction {census.fraction:.4f}).")
    print()
    print("At desk scale condition (7) wants p_1 below x^(1/(100 loglog x)),")
    print("which is barely above 1, so membership is empty and the fraction")
    print("is 1; the conditions only become selective at asymptotic x.")


if __name__ == "__main__":
    main()
