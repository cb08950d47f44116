"""Segmented Liouville sieve, prime enumeration, and the divisor sum
g = 1 * chi_q (Dirichlet convolution with the Legendre symbol).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SegmentTooLarge
from .modular import PrimeModulus, legendre, legendre_table

# Hard ceiling on a single segment; witness scans use much smaller blocks.
DEFAULT_SEGMENT_BUDGET = 1 << 26


@dataclass(frozen=True)
class LiouvilleTable:
    """Exact Liouville values on [lo, hi): values[i] = lambda(lo + i) in {-1, +1}."""

    lo: int
    hi: int
    values: np.ndarray

    def __getitem__(self, n: int) -> int:
        if not self.lo <= n < self.hi:
            raise IndexError(f"{n} outside [{self.lo}, {self.hi})")
        return int(self.values[n - self.lo])


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes in [lo, hi), ascending."""
    if lo >= hi:
        raise ValueError("need lo < hi")
    lo = max(lo, 2)
    if lo >= hi:
        return []
    mask = _prime_mask(lo, hi)
    return [int(n) for n in np.nonzero(mask)[0] + lo]


def _prime_mask(lo: int, hi: int) -> np.ndarray:
    """Boolean mask over [lo, hi) marking primes (lo >= 2)."""
    n = hi - lo
    mask = np.ones(n, dtype=bool)
    for p in _small_primes(math.isqrt(hi - 1)):
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start < hi:
            mask[start - lo :: p] = False
    if lo <= 1:
        mask[: 2 - lo] = False
    return mask


def _small_primes(n: int) -> list[int]:
    """Primes up to n inclusive, plain sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.nonzero(sieve)[0]]


def liouville_segment(lo: int, hi: int, budget: int = DEFAULT_SEGMENT_BUDGET) -> LiouvilleTable:
    """Sieve lambda(n) = (-1)^Omega(n) for the whole half-open segment.

    For each prime power p^k <= hi with p <= sqrt(hi), every multiple gets
    one factor of p counted and divided out; whatever cofactor remains
    above 1 is a single prime > sqrt(hi).  Exact for every n, including
    lo = 1 (lambda(1) = +1, the empty product).
    """
    if not 1 <= lo < hi:
        raise ValueError("need 1 <= lo < hi")
    n = hi - lo
    if n > budget:
        raise SegmentTooLarge(f"segment of {n} entries exceeds budget {budget}")
    omega = np.zeros(n, dtype=np.int64)
    rem = np.arange(lo, hi, dtype=np.int64)
    for p in _small_primes(math.isqrt(hi - 1)):
        pk = p
        while pk < hi:
            start = ((lo + pk - 1) // pk) * pk
            if start < hi:
                sl = slice(start - lo, n, pk)
                omega[sl] += 1
                rem[sl] //= p
            pk *= p
    omega[rem > 1] += 1
    values = np.where(omega & 1, -1, 1).astype(np.int8)
    return LiouvilleTable(lo=lo, hi=hi, values=values)


def liouville(n: int) -> int:
    """lambda(n) by direct trial-division factorization; the slow oracle
    the segment sieve is checked against.
    """
    if n < 1:
        raise ValueError("Liouville function is defined on positive integers")
    omega = 0
    for p in (2, 3):
        while n % p == 0:
            n //= p
            omega += 1
    f = 5
    while f * f <= n:
        for g in (f, f + 2):
            while n % g == 0:
                n //= g
                omega += 1
        f += 6
    if n > 1:
        omega += 1
    return -1 if omega & 1 else 1


def g_value(n: int, q: PrimeModulus) -> int:
    """g(n) = sum over divisors d of n of (d|q), by divisor enumeration.

    Always a nonnegative integer; vanishes whenever n has an odd-exponent
    prime factor p with (p|q) = -1.
    """
    if n < 1:
        raise ValueError("g is defined on positive integers")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += legendre(d, q)
            if d * d != n:
                total += legendre(n // d, q)
        d += 1
    return total


def g_range(nmax: int, q: PrimeModulus) -> np.ndarray:
    """g(n) for all 0 <= n <= nmax in one convolution sieve: each d adds
    (d|q) to every multiple of d.  out[0] is 0 by convention.
    """
    chi = legendre_table(q)
    out = np.zeros(nmax + 1, dtype=np.int64)
    for d in range(1, nmax + 1):
        c = int(chi[d % q.q])
        if c:
            out[d::d] += c
    return out
