import math
import random

import numpy as np
import pytest

from phisigma import (
    DomainError,
    Factorization,
    OutOfWindowError,
    build_factor_sieve,
    factorize,
    factorize_small,
    phi_of,
    primes_up_to,
    segment_map,
    sigma_of,
)
from phisigma.sieve import segment_scan

from conftest import factor_pairs_naive, phi_trial, sigma_trial


def test_primes_up_to_small():
    assert primes_up_to(1).tolist() == []
    assert primes_up_to(10).tolist() == [2, 3, 5, 7]
    assert len(primes_up_to(100)) == 25


def test_primes_up_to_rejects_negative():
    with pytest.raises(DomainError):
        primes_up_to(-1)


def test_factor_sieve_single_prime():
    sv = build_factor_sieve(2, 3)
    assert sv.spf_of(2) == 2


def test_factor_sieve_window_10_20():
    sv = build_factor_sieve(10, 20)
    assert sv.spf_of(15) == 3
    assert sv.spf_of(17) == 17
    assert sv.spf_of(16) == 2


def test_factor_sieve_high_window_matches_trial_division():
    lo = 10**6
    sv = build_factor_sieve(lo, lo + 10)
    for n in range(lo, lo + 10):
        assert sv.spf_of(n) == factor_pairs_naive(n)[0][0]


def test_factor_sieve_rejects_bad_window():
    with pytest.raises(DomainError):
        build_factor_sieve(5, 5)
    with pytest.raises(DomainError):
        build_factor_sieve(1, 10)


def test_factor_sieve_base_primes_exact():
    sv = build_factor_sieve(10, 50)
    assert sv.base_primes.tolist() == [2, 3, 5, 7]  # primes <= floor(sqrt(50))


def test_segment_map_random_high_window_vs_oracle():
    lo = 837421
    phi, sigma = segment_map(lo, lo + 1000, "both")
    for k in range(0, 1000, 7):
        assert phi[k] == phi_trial(lo + k)
        assert sigma[k] == sigma_trial(lo + k)


def test_factorize_examples(small_sieve):
    assert factorize(1, small_sieve).pairs == ()
    assert factorize(12, small_sieve).pairs == ((2, 2), (3, 1))
    assert factorize(97, small_sieve).pairs == ((97, 1),)


def test_factorize_out_of_window():
    sv = build_factor_sieve(10, 20)
    with pytest.raises(OutOfWindowError):
        factorize(25, sv)


def test_factorize_in_high_window_without_full_table():
    # quotients leave the window; trial division over base primes finishes
    sv = build_factor_sieve(10**6, 10**6 + 100)
    for n in (10**6, 10**6 + 3, 10**6 + 81):
        fact = factorize(n, sv)
        assert fact.n == n
        assert fact.pairs == tuple(factor_pairs_naive(n))


def test_factorization_invariants_reject_garbage():
    with pytest.raises(DomainError):
        Factorization(((3, 1), (2, 1)))  # not ascending
    with pytest.raises(DomainError):
        Factorization(((2, 0),))


def test_phi_sigma_of_examples():
    one = Factorization(())
    assert phi_of(one) == 1 and sigma_of(one) == 1
    ten = factorize_small(10)
    assert phi_of(ten) == 4 and sigma_of(ten) == 18
    p101 = factorize_small(101)
    assert phi_of(p101) == 100 and sigma_of(p101) == 102


def test_segment_map_examples():
    phi, sigma = segment_map(2, 6, "both")
    assert phi.tolist() == [1, 2, 2, 4]
    assert sigma.tolist() == [3, 4, 7, 6]
    assert segment_map(2, 3, "phi").tolist() == [1]


def test_segment_map_exhaustive_to_1e5():
    phi, sigma = segment_map(2, 10**5 + 1, "both")
    for n in range(2, 10**5 + 1, 997):  # dense spot checks against trial division
        assert phi[n - 2] == phi_trial(n)
        assert sigma[n - 2] == sigma_trial(n)
    # full equality against an independently coded vector oracle
    N = 10**5
    phi_o = np.arange(N + 1, dtype=np.int64)
    for p in primes_up_to(N):
        phi_o[p::p] -= phi_o[p::p] // int(p)
    assert (phi == phi_o[2:]).all()
    sig_o = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        sig_o[d::d] += d
    assert (sigma == sig_o[2:]).all()


def test_phi_sigma_prime_characterization():
    phi, sigma = segment_map(2, 10**4 + 1, "both")
    n = np.arange(2, 10**4 + 1, dtype=np.int64)
    prime_mask = np.zeros(10**4 + 1, dtype=bool)
    prime_mask[primes_up_to(10**4)] = True
    assert (phi <= n - 1).all()
    assert ((phi == n - 1) == prime_mask[2:]).all()
    assert (sigma >= n + 1).all()
    assert ((sigma == n + 1) == prime_mask[2:]).all()


def test_multiplicativity_on_coprime_pairs(small_sieve):
    rng = random.Random(7)
    for _ in range(200):
        m = rng.randrange(2, 1000)
        n = rng.randrange(2, 1000)
        if math.gcd(m, n) != 1:
            continue
        fm, fn, fmn = (factorize(v, small_sieve) for v in (m, n, m * n))
        assert phi_of(fmn) == phi_of(fm) * phi_of(fn)
        assert sigma_of(fmn) == sigma_of(fm) * sigma_of(fn)


def test_segment_independence():
    lo, hi, mid = 1000, 5000, 2718
    whole_phi, whole_sig = segment_map(lo, hi, "both")
    a_phi, a_sig = segment_map(lo, mid, "both")
    b_phi, b_sig = segment_map(mid, hi, "both")
    assert (whole_phi == np.concatenate([a_phi, b_phi])).all()
    assert (whole_sig == np.concatenate([a_sig, b_sig])).all()


def test_segment_scan_omega_against_trial_division():
    got = segment_scan(2, 2001, primes_up_to(44), want_omega=True)["omega"]
    for n in range(2, 2001):
        assert got[n - 2] == sum(e for _, e in factor_pairs_naive(n)), n


def test_input_cap_enforced():
    from phisigma import ResourceError

    with pytest.raises(ResourceError):
        segment_map(10**12 + 10, 10**12 + 20, "phi")


def test_memory_budget_env_var(monkeypatch):
    from phisigma import ResourceError
    from phisigma.errors import MEMORY_BUDGET_ENV

    monkeypatch.setenv(MEMORY_BUDGET_ENV, "1000")
    with pytest.raises(ResourceError):
        primes_up_to(10**6)
    monkeypatch.setenv(MEMORY_BUDGET_ENV, "1e9")
    assert len(primes_up_to(10**6)) == 78498
