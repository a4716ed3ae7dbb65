"""The fundamental simplex and its surroundings.

Renormalized prime-factor vectors on the doubly-logarithmic scale,
membership in the weighted simplex S_L(xi), Monte Carlo and exact
small-L volumes, the geometric comparison inequalities, and the
reciprocal sums R_L over integers whose renormalized vector lands in
the simplex.

Conventions: x_i = loglog(p_i)/loglog(x) where p_0 >= p_1 >= ... are
the prime factors with multiplicity, and x_i = 0 once i >= Omega(n) or
p_i = 2 (loglog 2 < 0 would break monotonicity).  S_L(xi) lives inside
the ordered cell 0 <= x_L <= ... <= x_1 <= 1 and is cut out by

    (I_0)    a_1 x_1 + a_2 x_2 + ... + a_L x_L <= xi_0
    (I_k)    a_1 x_{k+1} + ... + a_{L-k} x_L  <= xi_k x_k   (1 <= k <= L-2)

with the a_i from constants.series_coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import iterated_log, l0_of, series_coefficient, structure_constants
from .errors import DomainError, ResourceError
from .sieve import FactorSieve, Factorization, build_factor_sieve, factorize, factorize_small

MC_BATCH = 1 << 19  # fixed batch size keeps the Philox stream worker-independent

MIN_MC_SAMPLES = 1000

RL_SCAN_CAP = 10**8

XI_PRODUCT_CAP = 1.1

OFFSETS = ("from_p0", "from_p1")


@dataclass(frozen=True)
class RenormalizedVector:
    """Doubly-logarithmic prime exponents of source_n at level level_x."""

    entries: tuple[float, ...]
    source_n: int
    level_x: float


@dataclass(frozen=True)
class SimplexSpec:
    """Dimension L >= 2 plus the weights xi_0..xi_{L-2}, all >= 1.

    l0 and l_formula carry provenance when built by default_xi: the
    level L_0(x) and the unclamped floor(L_0 - 2 sqrt(log3 x)).
    """

    L: int
    xi: tuple[float, ...]
    l0: int | None = field(default=None, compare=False)
    l_formula: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.L < 2:
            raise DomainError(f"need L >= 2, got {self.L}")
        if len(self.xi) != self.L - 1:
            raise DomainError(
                f"need {self.L - 1} weights for L={self.L}, got {len(self.xi)}"
            )
        if any(w < 1.0 for w in self.xi):
            raise DomainError(f"weights must be >= 1, got {self.xi}")

    def xi_product(self) -> float:
        """xi_0^L * xi_1^(L-1) * ... * xi_{L-2}^2."""
        return math.prod(w ** (self.L - i) for i, w in enumerate(self.xi))


@dataclass(frozen=True)
class VolumeEstimate:
    """Monte Carlo volume with its binomial standard error."""

    mean: float
    std_error: float
    samples: int
    seed: int


def unit_spec(L: int) -> SimplexSpec:
    """The fundamental simplex: every weight equal to 1."""
    return SimplexSpec(L=L, xi=(1.0,) * (L - 1))


def renormalize(
    n: int,
    x: float,
    L: int,
    offset: str = "from_p1",
    sieve: FactorSieve | None = None,
) -> RenormalizedVector:
    """The L renormalized exponents of n starting at p_0 or p_1.

    offset 'from_p0' yields (x_0, ..., x_{L-1}); 'from_p1' yields
    (x_1, ..., x_L).  Requires x >= e^e so loglog x >= 1.
    """
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    if x < math.exp(math.e):
        raise DomainError(f"need x >= e^e, got {x}")
    if L < 1:
        raise DomainError(f"need L >= 1, got {L}")
    if offset not in OFFSETS:
        raise DomainError(f"offset must be one of {OFFSETS}, got {offset!r}")
    fact = factorize(n, sieve) if sieve is not None and sieve.covers(n) else factorize_small(n)
    return _renormalize_fact(fact, n, x, L, offset)


def _renormalize_fact(
    fact: Factorization, n: int, x: float, L: int, offset: str
) -> RenormalizedVector:
    primes = fact.primes_descending()
    llx = math.log(math.log(x))
    start = 0 if offset == "from_p0" else 1
    entries = []
    for i in range(start, start + L):
        if i >= len(primes) or primes[i] == 2:
            entries.append(0.0)
        else:
            entries.append(math.log(math.log(primes[i])) / llx)
    return RenormalizedVector(entries=tuple(entries), source_n=n, level_x=float(x))


def default_xi(x: float, *, min_l: int = 2) -> SimplexSpec:
    """Level and weights at x: L = floor(L_0 - 2 sqrt(log3 x)) and
    xi_i = 1 + 1/(10 (L_0 - i)^3).

    The formula value of L is negative for every x representable in
    double precision (the asymptotic regime starts far beyond), so the
    returned dimension is clamped below at min_l; the unclamped value
    is kept on the spec as l_formula.
    """
    consts = structure_constants()
    l3 = iterated_log(x, 3)
    if l3 <= 0.0:
        raise DomainError(f"need log3 x > 0 (x > e^e), got x={x}")
    l0 = l0_of(x, consts)
    l_formula = math.floor(l0 - 2.0 * math.sqrt(l3))
    L = max(l_formula, min_l)
    # i <= L-2 <= max(l_formula, min_l) - 2 < l0 always, so l0 - i >= 1
    xi = tuple(1.0 + 1.0 / (10.0 * (l0 - i) ** 3) for i in range(L - 1))
    return SimplexSpec(L=L, xi=xi, l0=l0, l_formula=l_formula)


def _coeffs(L: int) -> np.ndarray:
    return np.array([series_coefficient(i) for i in range(1, L + 1)])


def simplex_contains(v, spec: SimplexSpec) -> bool:
    """Membership of a vector in S_L(xi): ordering plus (I_0)..(I_{L-2})."""
    vec = v.entries if isinstance(v, RenormalizedVector) else tuple(v)
    L = spec.L
    if len(vec) != L:
        raise DomainError(f"vector length {len(vec)} != L = {L}")
    if vec[-1] < 0.0 or vec[0] > 1.0:
        return False
    for a, b in zip(vec, vec[1:]):
        if b > a:
            return False
    a = [series_coefficient(i) for i in range(1, L + 1)]
    for k in range(L - 1):
        # (I_k) sums a_1..a_{L-k} against x_{k+1}..x_L
        lhs = sum(a[j - 1] * vec[k + j - 1] for j in range(1, L - k + 1))
        rhs = spec.xi[k] * (vec[k - 1] if k >= 1 else 1.0)
        if lhs > rhs:
            return False
    return True


def _accept_mask(X: np.ndarray, spec: SimplexSpec, a: np.ndarray) -> np.ndarray:
    ok = X @ a <= spec.xi[0]
    for k in range(1, spec.L - 1):
        ok &= X[:, k:] @ a[: spec.L - k] <= spec.xi[k] * X[:, k - 1]
    return ok


def _ordered_batch(seed: int, index: int, m: int, L: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(key=seed).jumped(index))
    u = rng.random((m, L))
    u.sort(axis=1)
    return u[:, ::-1]


def simplex_volume_mc(spec: SimplexSpec, samples: int, seed: int) -> VolumeEstimate:
    """Volume of S_L(xi) by rejection from the ordered cell.

    Sorted uniforms are exactly uniform on the ordered cell of volume
    1/L!, so the estimate is (acceptance rate)/L!.  Batches of fixed
    size MC_BATCH each use the counter-based Philox stream jumped to
    the batch index, making the result bit-reproducible and independent
    of any worker partitioning.
    """
    if samples < MIN_MC_SAMPLES:
        raise DomainError(f"need samples >= {MIN_MC_SAMPLES}, got {samples}")
    a = _coeffs(spec.L)
    hits = 0
    done = 0
    index = 0
    while done < samples:
        m = min(MC_BATCH, samples - done)
        X = _ordered_batch(seed, index, m, spec.L)
        hits += int(_accept_mask(X, spec, a).sum())
        done += m
        index += 1
    rate = hits / samples
    scale = 1.0 / math.factorial(spec.L)
    return VolumeEstimate(
        mean=rate * scale,
        std_error=math.sqrt(rate * (1.0 - rate) / samples) * scale,
        samples=samples,
        seed=seed,
    )


def simplex_volume_exact(spec: SimplexSpec, *, abs_tol: float = 1e-9) -> float:
    """Exact volume for L in {2, 3} by nested adaptive integration."""
    from scipy.integrate import dblquad, quad

    a1 = series_coefficient(1)
    a2 = series_coefficient(2)
    if spec.L == 2:
        xi0 = spec.xi[0]

        def inner2(x1: float) -> float:
            return max(0.0, min(x1, (xi0 - a1 * x1) / a2))

        breaks = sorted(
            t for t in (xi0 / (a1 + a2), xi0 / a1) if 0.0 < t < 1.0
        )
        val, _ = quad(inner2, 0.0, 1.0, points=breaks or None, limit=400,
                      epsabs=abs_tol / 10, epsrel=1e-12)
        return val
    if spec.L == 3:
        a3 = series_coefficient(3)
        xi0, xi1 = spec.xi

        def inner3(x2: float, x1: float) -> float:
            ub = min(x2, (xi0 - a1 * x1 - a2 * x2) / a3, (xi1 * x1 - a1 * x2) / a2)
            return max(0.0, ub)

        val, _ = dblquad(inner3, 0.0, 1.0, 0.0, lambda x1: x1,
                         epsabs=abs_tol / 10, epsrel=1e-11)
        return val
    raise DomainError(f"exact volume supports L in {{2, 3}}, got L={spec.L}")


def sample_simplex(
    spec: SimplexSpec, count: int, seed: int, *, max_draws: int | None = None
) -> np.ndarray:
    """Exactly `count` uniform points of S_L(xi), by rejection.

    Raises ResourceError if the acceptance rate is too low to reach
    `count` within max_draws (default 4000 draws per requested point).
    """
    if count < 1:
        raise DomainError(f"need count >= 1, got {count}")
    if max_draws is None:
        max_draws = max(4000 * count, 1 << 22)
    a = _coeffs(spec.L)
    kept = []
    have = 0
    drawn = 0
    index = 0
    while have < count:
        if drawn >= max_draws:
            raise ResourceError(
                f"acceptance too low: {have}/{count} points after {drawn} draws"
            )
        X = _ordered_batch(seed, index, MC_BATCH, spec.L)
        drawn += MC_BATCH
        index += 1
        acc = X[_accept_mask(X, spec, a)]
        kept.append(acc)
        have += len(acc)
    return np.concatenate(kept)[:count]


def check_comparison_lemma(spec: SimplexSpec, trials: int, seed: int) -> bool:
    """Sampling census of the geometric comparison inequalities.

    Under the hypothesis xi_0^L xi_1^(L-1) ... xi_{L-2}^2 <= 1.1, every
    point of S_L(xi) satisfies x_j <= 3 rho^(j-i) x_i for i < j and
    x_j < 3 rho^j.  Samples `trials` points by rejection and returns
    True iff no sampled point violates either inequality.
    """
    product = spec.xi_product()
    if product > XI_PRODUCT_CAP:
        raise DomainError(
            f"hypothesis violated: xi-product {product:.6f} > {XI_PRODUCT_CAP}"
        )
    rho = structure_constants().rho
    X = sample_simplex(spec, trials, seed)
    L = spec.L
    for j in range(1, L + 1):
        if (X[:, j - 1] >= 3.0 * rho**j).any():
            return False
        for i in range(1, j):
            if (X[:, j - 1] > 3.0 * rho ** (j - i) * X[:, i - 1]).any():
                return False
    return True


def r_l_sum(
    f: str,
    spec: SimplexSpec,
    x: int,
    offset: str = "from_p0",
    sieve: FactorSieve | None = None,
) -> float:
    """Sum of 1/f(n) over n <= x with Omega(n) <= L and renormalized
    vector (starting at the given offset) inside S_L(xi).

    The scan is exhaustive over [1, x]; terms are accumulated with
    exact summation, so the relative error is a few ulp.
    """
    if f not in ("phi", "sigma"):
        raise DomainError(f"f must be 'phi' or 'sigma', got {f!r}")
    if x < 1:
        raise DomainError(f"need x >= 1, got {x}")
    if x > RL_SCAN_CAP:
        raise ResourceError(f"x={x} beyond the {RL_SCAN_CAP} scan budget")
    if offset not in OFFSETS:
        raise DomainError(f"offset must be one of {OFFSETS}, got {offset!r}")
    if x < math.exp(math.e):
        raise DomainError(f"need x >= e^e for the renormalization, got {x}")

    L = spec.L
    a = [series_coefficient(i) for i in range(1, L + 1)]
    xi = spec.xi
    llx = math.log(math.log(x))
    start = 0 if offset == "from_p0" else 1

    if sieve is None or not (sieve.window_lo <= 2 and sieve.window_hi > x):
        sieve = build_factor_sieve(2, x + 1)
    spf = sieve.spf
    lo = sieve.window_lo

    lll_cache: dict[int, float] = {}

    def loglog_scaled(p: int) -> float:
        v = lll_cache.get(p)
        if v is None:
            v = math.log(math.log(p)) / llx
            lll_cache[p] = v
        return v

    terms = [1.0]  # n = 1: zero vector, always a member
    for n in range(2, x + 1):
        # factor n, bailing out as soon as Omega exceeds L
        primes: list[int] = []
        expos: list[int] = []
        m = n
        total = 0
        while m > 1:
            v = int(spf[m - lo])
            p = m if v == 0 else v
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            total += e
            if total > L:
                break
            primes.append(p)
            expos.append(e)
        if total > L:
            continue

        desc: list[int] = []
        for p, e in zip(reversed(primes), reversed(expos)):
            desc.extend([p] * e)
        vec = [
            0.0 if (i >= total or desc[i] == 2) else loglog_scaled(desc[i])
            for i in range(start, start + L)
        ]
        if vec[0] > 1.0:
            continue
        member = True
        for k in range(L - 1):
            lhs = 0.0
            for j in range(1, L - k + 1):
                lhs += a[j - 1] * vec[k + j - 1]
            rhs = xi[k] * (vec[k - 1] if k >= 1 else 1.0)
            if lhs > rhs:
                member = False
                break
        if not member:
            continue

        if f == "phi":
            fn = 1
            for p, e in zip(primes, expos):
                fn *= p ** (e - 1) * (p - 1)
        else:
            fn = 1
            for p, e in zip(primes, expos):
                fn *= (p ** (e + 1) - 1) // (p - 1)
        terms.append(1.0 / fn)
    return math.fsum(terms)
