"""Segmented sieving primitives.

Prime generation, smallest-prime-factor windows, per-integer
factorization, and bulk evaluation of the multiplicative functions
phi (Euler totient) and sigma (sum of divisors) over ranges.

All bulk arithmetic is carried in int64 arrays.  Inputs are capped at
10**12 so that sigma(n) cannot overflow (sigma(n) < 7n in that range).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, OutOfWindowError, ResourceError, check_allocation

INPUT_CAP = 10**12

DEFAULT_SEGMENT_SIZE = 1 << 22

SPF_PRIME_SENTINEL = 0  # spf entry meaning "no base prime divides; n is prime"


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit, ascending, as an int64 array.

    Parameters
    ----------
    limit : int
        Upper bound (inclusive).  limit < 2 yields an empty array.
    """
    if limit < 0:
        raise DomainError(f"limit must be >= 0, got {limit}")
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    check_allocation(limit + 1, f"prime sieve to {limit}")
    composite = np.zeros(limit + 1, dtype=bool)
    composite[:2] = True
    for p in range(2, math.isqrt(limit) + 1):
        if not composite[p]:
            composite[p * p :: p] = True
    return np.flatnonzero(~composite).astype(np.int64)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (prime, exponent) pairs, primes ascending."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = 1
        for p, e in self.pairs:
            if p <= last or e < 1:
                raise DomainError(f"invalid factorization pairs {self.pairs}")
            last = p

    @property
    def n(self) -> int:
        """The factored integer (empty product is 1)."""
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def big_omega(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(e for _, e in self.pairs)

    def primes_descending(self) -> list[int]:
        """Prime factors repeated by multiplicity, largest first."""
        out: list[int] = []
        for p, e in reversed(self.pairs):
            out.extend([p] * e)
        return out


@dataclass(frozen=True)
class FactorSieve:
    """Smallest-prime-factor table for the window [window_lo, window_hi).

    spf holds one uint32 per integer in the window; the sentinel 0 means
    the integer has no prime factor <= sqrt(window_hi - 1), i.e. it is
    prime.  Immutable after construction; safe for concurrent reads.
    """

    window_lo: int
    window_hi: int
    spf: np.ndarray = field(repr=False)
    base_primes: np.ndarray = field(repr=False)

    def covers(self, n: int) -> bool:
        return self.window_lo <= n < self.window_hi

    def spf_of(self, n: int) -> int:
        """Smallest prime factor of n (n itself when n is prime)."""
        if not self.covers(n):
            raise OutOfWindowError(
                f"{n} outside window [{self.window_lo}, {self.window_hi})"
            )
        v = int(self.spf[n - self.window_lo])
        return n if v == SPF_PRIME_SENTINEL else v


def build_factor_sieve(lo: int, hi: int) -> FactorSieve:
    """Build the smallest-prime-factor table for [lo, hi).

    Parameters
    ----------
    lo, hi : int
        Window bounds, 2 <= lo < hi <= 10**12 + 1.
    """
    if not 2 <= lo < hi:
        raise DomainError(f"need 2 <= lo < hi, got [{lo}, {hi})")
    if hi - 1 > INPUT_CAP:
        raise ResourceError(f"window end {hi} exceeds the 10^12 input cap")
    size = hi - lo
    check_allocation(4 * size, f"spf window [{lo}, {hi})")
    base = primes_up_to(math.isqrt(hi))
    spf = np.zeros(size, dtype=np.uint32)
    for p in base:
        p = int(p)
        start = (-lo) % p
        if start >= size:
            continue
        sub = spf[start::p]
        sub[sub == SPF_PRIME_SENTINEL] = p
    return FactorSieve(window_lo=lo, window_hi=hi, spf=spf, base_primes=base)


def factorize(n: int, sieve: FactorSieve) -> Factorization:
    """Factor n using the sieve's spf table and base primes.

    n must lie in the sieve window.  Quotients that fall outside the
    window are finished by trial division over base_primes; the final
    remainder, if any, has no factor <= sqrt(window_hi) and is prime.
    """
    if n == 1:
        return Factorization(())
    if not sieve.covers(n):
        raise OutOfWindowError(
            f"{n} outside window [{sieve.window_lo}, {sieve.window_hi})"
        )
    powers: dict[int, int] = {}
    m = n
    while m > 1:
        if sieve.covers(m):
            p = sieve.spf_of(m)
        else:
            p = _smallest_base_factor(m, sieve.base_primes)
        while m % p == 0:
            m //= p
            powers[p] = powers.get(p, 0) + 1
    return Factorization(tuple(sorted(powers.items())))


def _smallest_base_factor(m: int, base_primes: np.ndarray) -> int:
    root = math.isqrt(m)
    for p in base_primes:
        p = int(p)
        if p > root:
            break
        if m % p == 0:
            return p
    return m


def factorize_small(n: int) -> Factorization:
    """Trial-division factorization; independent of any sieve table."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    pairs = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            pairs.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        pairs.append((m, 1))
    return Factorization(tuple(pairs))


def phi_of(fact: Factorization) -> int:
    """Euler totient from a factorization, exact."""
    out = 1
    for p, e in fact.pairs:
        out *= p ** (e - 1) * (p - 1)
    return out


def sigma_of(fact: Factorization) -> int:
    """Sum of divisors from a factorization, exact."""
    out = 1
    for p, e in fact.pairs:
        out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def segment_scan(
    lo: int,
    hi: int,
    base_primes: np.ndarray,
    *,
    want_phi: bool = False,
    want_sigma: bool = False,
    want_omega: bool = False,
    smooth_bound: int | None = None,
):
    """Vectorized factor scan of [lo, hi).

    Divides every integer in the window by the supplied base primes
    (all primes <= sqrt(hi-1) must be present for exact phi/sigma;
    a smaller prime set is allowed when only the divided remainder
    matters, e.g. smoothness tests with smooth_bound set).

    Returns a dict with any of:
      'phi', 'sigma' : int64 arrays of exact values,
      'omega'        : int16 array of Omega(n) (with multiplicity),
      'rem'          : int64 array of remainders after dividing out the
                       base primes (only when smooth_bound is set).
    """
    size = hi - lo
    if size <= 0 or lo < 2:
        raise DomainError(f"need 2 <= lo < hi, got [{lo}, {hi})")
    if hi - 1 > INPUT_CAP:
        raise ResourceError(f"window end {hi} exceeds the 10^12 input cap")
    per_entry = 8 * (1 + want_phi + want_sigma) + 2 * want_omega
    check_allocation(per_entry * size, f"segment scan [{lo}, {hi})")

    rem = np.arange(lo, hi, dtype=np.int64)
    phi = rem.copy() if want_phi else None
    sigma = np.ones(size, dtype=np.int64) if want_sigma else None
    omega = np.zeros(size, dtype=np.int16) if want_omega else None

    top = smooth_bound if smooth_bound is not None else math.isqrt(hi - 1)
    for p in base_primes:
        p = int(p)
        if p > top:
            break
        start = (-lo) % p
        if start >= size:
            continue
        sl = slice(start, size, p)
        r = rem[sl]
        r //= p
        if want_sigma:
            pw = np.full(r.shape, p, dtype=np.int64)
            s = pw + 1
        if want_omega:
            o = omega[sl]
            o += 1
        m = r % p == 0
        while m.any():
            r[m] //= p
            if want_sigma:
                pw[m] *= p
                s[m] += pw[m]
            if want_omega:
                o[m] += 1
            m = r % p == 0
        if want_sigma:
            sigma[sl] *= s
        if want_phi:
            phi[sl] = phi[sl] // p * (p - 1)

    big = rem > 1
    if want_phi:
        phi[big] = phi[big] // rem[big] * (rem[big] - 1)
    if want_sigma:
        sigma[big] *= rem[big] + 1
    if want_omega:
        omega[big] += 1

    out = {}
    if want_phi:
        out["phi"] = phi
    if want_sigma:
        out["sigma"] = sigma
    if want_omega:
        out["omega"] = omega
    if smooth_bound is not None:
        out["rem"] = rem
    return out


def segment_map(lo: int, hi: int, which: str = "both"):
    """Exact phi and/or sigma over [lo, hi).

    Parameters
    ----------
    lo, hi : int
        Range bounds, 2 <= lo < hi.
    which : {'phi', 'sigma', 'both'}
        Which arrays to produce.

    Returns
    -------
    np.ndarray or (np.ndarray, np.ndarray)
        Element k holds f(lo + k).  For 'both', the pair (phi, sigma).
    """
    if which not in ("phi", "sigma", "both"):
        raise DomainError(f"which must be phi|sigma|both, got {which!r}")
    base = primes_up_to(math.isqrt(hi - 1))
    got = segment_scan(
        lo,
        hi,
        base,
        want_phi=which in ("phi", "both"),
        want_sigma=which in ("sigma", "both"),
    )
    if which == "phi":
        return got["phi"]
    if which == "sigma":
        return got["sigma"]
    return got["phi"], got["sigma"]
