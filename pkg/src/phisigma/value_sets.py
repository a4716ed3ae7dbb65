"""Value sets of phi and sigma: enumeration, counting, intersection.

A ValueBitmap records one bit per integer v <= x, set exactly when v is
attained by the chosen function.  For sigma the preimage scan stops at
n = x (sigma(n) >= n); for phi the scan extends to an explicit bound
derived from the minimal order of the totient.

Memory: a bitmap over [0, x] costs (x+1)/8 bytes; the default builder
additionally keeps an x+1 byte scratch array during construction.  Pass
streaming=True to drop the scratch and write packed words directly
(slower, 8x smaller peak).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, check_allocation
from .sieve import DEFAULT_SEGMENT_SIZE, primes_up_to, segment_scan

EULER_GAMMA = 0.5772156649015329

_POPCOUNT8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)

_BIT8 = np.array([1 << i for i in range(8)], dtype=np.uint8)


@dataclass(frozen=True)
class ValueBitmap:
    """Bit v set iff v <= limit_x is a value of f (f_tag 'phi' or 'sigma')."""

    limit_x: int
    f_tag: str
    bits: np.ndarray = field(repr=False)  # uint8, little bit order

    def test(self, v: int) -> bool:
        if not 0 <= v <= self.limit_x:
            raise DomainError(f"v={v} outside [0, {self.limit_x}]")
        return bool(self.bits[v >> 3] & (1 << (v & 7)))


def _minimal_order_envelope(n: float) -> float:
    """Lower envelope of phi: phi(n) exceeds this for all n >= 27.

    Uses the explicit minimal-order inequality
    n/phi(n) < e^gamma * loglog n + 3/loglog n   (n >= 27),
    so phi(n) > n / (e^gamma loglog n + 3/loglog n), which is
    increasing in n on [27, inf).
    """
    ll = math.log(math.log(n))
    return n / (math.exp(EULER_GAMMA) * ll + 3.0 / ll)


def phi_preimage_bound(x: int) -> int:
    """A bound B with phi(n) <= x implying n <= B; sound, not tight.

    Binary search for the first integer where the minimal-order
    envelope exceeds x, with a hard floor of 100.
    """
    if x < 1:
        raise DomainError(f"need x >= 1, got {x}")
    lo, hi = 27, 128
    while _minimal_order_envelope(hi) <= x:
        hi *= 2
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if _minimal_order_envelope(mid) > x:
            hi = mid
        else:
            lo = mid
    return max(hi, 100)


def _pack_bool(scratch: np.ndarray) -> np.ndarray:
    return np.packbits(scratch, bitorder="little")


def build_value_bitmap(
    f: str,
    x: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    streaming: bool = False,
) -> ValueBitmap:
    """Enumerate the value set of f up to x into a bitmap.

    Parameters
    ----------
    f : {'phi', 'sigma'}
    x : int
        Value-set frontier, x >= 1.
    segment_size : int
        Preimage window length per scan pass.
    streaming : bool
        Write packed bytes directly instead of via a byte-per-value
        scratch array (8x smaller peak memory, slower).
    """
    if f not in ("phi", "sigma"):
        raise DomainError(f"f must be 'phi' or 'sigma', got {f!r}")
    if x < 1:
        raise DomainError(f"need x >= 1, got {x}")
    if segment_size < 16:
        raise DomainError(f"segment_size too small: {segment_size}")
    nbytes = (x >> 3) + 1
    scan_top = phi_preimage_bound(x) if f == "phi" else x
    check_allocation(
        nbytes + (0 if streaming else x + 1) + 8 * segment_size,
        f"value bitmap build at x={x}",
    )
    bits = np.zeros(nbytes, dtype=np.uint8)
    scratch = None if streaming else np.zeros(x + 1, dtype=bool)

    def record(values: np.ndarray) -> None:
        if streaming:
            np.bitwise_or.at(bits, values >> 3, _BIT8[values & 7])
        else:
            scratch[values] = True

    record(np.array([1], dtype=np.int64))  # f(1) = 1 for both functions
    base = primes_up_to(math.isqrt(scan_top))
    for lo in range(2, scan_top + 1, segment_size):
        hi = min(lo + segment_size, scan_top + 1)
        got = segment_scan(lo, hi, base, want_phi=f == "phi", want_sigma=f == "sigma")
        vals = got["phi"] if f == "phi" else got["sigma"]
        record(vals[vals <= x])

    if not streaming:
        bits = _pack_bool(scratch)
    if bits[0] & 1:
        raise AssertionError("value 0 can never be attained")
    return ValueBitmap(limit_x=x, f_tag=f, bits=bits)


def count_values(bm: ValueBitmap, x: int) -> int:
    """Number of set bits v with 1 <= v <= x (bit 0 is never set)."""
    if x < 0 or x > bm.limit_x:
        raise DomainError(f"x={x} outside bitmap range [0, {bm.limit_x}]")
    if x == 0:
        return 0
    nfull = (x + 1) >> 3
    total = int(_POPCOUNT8[bm.bits[:nfull]].sum(dtype=np.int64))
    rembits = (x + 1) - 8 * nfull
    if rembits:
        last = int(bm.bits[nfull]) & ((1 << rembits) - 1)
        total += bin(last).count("1")
    return total


def intersect_count(bm_phi: ValueBitmap, bm_sigma: ValueBitmap, x: int) -> int:
    """Number of v <= x attained by both functions."""
    if x < 0 or x > min(bm_phi.limit_x, bm_sigma.limit_x):
        raise DomainError(f"x={x} not covered by both bitmaps")
    if x == 0:
        return 0
    nfull = (x + 1) >> 3
    both = bm_phi.bits[:nfull] & bm_sigma.bits[:nfull]
    total = int(_POPCOUNT8[both].sum(dtype=np.int64))
    rembits = (x + 1) - 8 * nfull
    if rembits:
        last = int(bm_phi.bits[nfull]) & int(bm_sigma.bits[nfull])
        total += bin(last & ((1 << rembits) - 1)).count("1")
    return total


@dataclass(frozen=True)
class ValuesTableRow:
    """One row of the value-count table at frontier N."""

    N: int
    v_phi: int
    v_sigma: int
    v_common: int
    ratio_phi: float
    ratio_sigma: float


def values_table(
    limits: list[int],
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    streaming: bool = False,
) -> list[ValuesTableRow]:
    """Counts V_phi, V_sigma, V_common at each limit.

    One bitmap pair is built at max(limits) and every row is read off
    by prefix popcounts.  limits must be ascending positive integers.
    """
    if not limits:
        raise DomainError("need at least one limit")
    if any(b <= a for a, b in zip(limits, limits[1:])):
        raise DomainError(f"limits must be strictly ascending, got {limits}")
    if limits[0] < 1:
        raise DomainError(f"limits must be >= 1, got {limits}")
    top = limits[-1]
    bm_phi = build_value_bitmap("phi", top, segment_size=segment_size, streaming=streaming)
    bm_sigma = build_value_bitmap("sigma", top, segment_size=segment_size, streaming=streaming)
    rows = []
    for n in limits:
        vp = count_values(bm_phi, n)
        vs = count_values(bm_sigma, n)
        vc = intersect_count(bm_phi, bm_sigma, n)
        rows.append(
            ValuesTableRow(
                N=n,
                v_phi=vp,
                v_sigma=vs,
                v_common=vc,
                ratio_phi=vc / vp,
                ratio_sigma=vc / vs,
            )
        )
    return rows


VALUES_CSV_HEADER = "N,V_phi,V_sigma,V_common,ratio_phi,ratio_sigma"


def values_table_csv(rows: list[ValuesTableRow]) -> str:
    """CSV rendering of a values table; ratios carry 7 decimals."""
    lines = [VALUES_CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.N},{r.v_phi},{r.v_sigma},{r.v_common},"
            f"{r.ratio_phi:.7f},{r.ratio_sigma:.7f}"
        )
    return "\n".join(lines) + "\n"
