"""Least Liouville-sign witnesses per residue class, and exponent
statistics of the resulting search bounds across primes.

For a residue class a mod q, the witnesses are the least n = a (mod q)
with lambda(n) = +1 and the least with lambda(n) = -1.  A scan covers
every class of one prime under a shared cap ceil(q^(5/2 + eps)) and
reports N(q), the largest witness over all classes, together with the
exponent log N(q) / log q.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded
from .modular import PrimeModulus, make_modulus
from .sieve import liouville_segment, primes_in

DEFAULT_BLOCK = 1 << 20

CSV_HEADER = ("q", "a", "least_plus", "least_minus", "n_of_q", "exponent")


@dataclass(frozen=True)
class WitnessRecord:
    """Least members of the class a mod q carrying each sign, under cap."""

    q: int
    a: int
    least_plus: int
    least_minus: int
    cap: int

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "a": self.a,
            "least_plus": self.least_plus,
            "least_minus": self.least_minus,
            "cap": self.cap,
        }


@dataclass(frozen=True)
class ScanReport:
    """Witness records for every class of one prime, plus the maximum
    witness N(q) and its exponent relative to q."""

    q: int
    n_of_q: int
    exponent: float
    per_class: list[WitnessRecord]

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n_of_q": self.n_of_q,
            "exponent": self.exponent,
            "per_class": [r.to_dict() for r in self.per_class],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def csv_rows(self) -> list[list]:
        return [
            [r.q, r.a, r.least_plus, r.least_minus, self.n_of_q, self.exponent]
            for r in self.per_class
        ]


def least_witness(
    q: PrimeModulus, a: int, sign: int, cap: int, segment_size: int = DEFAULT_BLOCK
) -> int | None:
    """Least n <= cap with n = a (mod q) and lambda(n) = sign, or None.

    Walks the progression through sieved blocks; absence below the cap is
    a value, not an error.
    """
    if sign not in (-1, 1):
        raise ValueError("sign must be -1 or +1")
    if not 1 <= a < q.q:
        raise ValueError(f"residue {a} not in [1, {q.q - 1}]")
    if cap < a:
        raise ValueError("cap must be at least a")
    lo = a
    while lo <= cap:
        hi = min(lo + segment_size, cap + 1)
        seg = liouville_segment(lo, hi)
        n = lo + (a - lo) % q.q
        while n < hi:
            if seg[n] == sign:
                return n
            n += q.q
        lo = hi
    return None


def scan(q: PrimeModulus, epsilon: float = 0.0, segment_size: int = DEFAULT_BLOCK) -> ScanReport:
    """Witness records for every a coprime to q under the shared cap
    ceil(q^(5/2 + epsilon)).  Raises CapExceeded naming the offending
    class if any witness is missing; that would contradict the empirical
    expectation and deserves to be loud.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    cap = math.ceil(q.q ** (2.5 + epsilon))
    absent = cap + 1
    first = {1: np.full(q.q, absent, np.int64), -1: np.full(q.q, absent, np.int64)}
    lo = 1
    while lo <= cap:
        hi = min(lo + segment_size, cap + 1)
        seg = liouville_segment(lo, hi)
        ns = np.arange(lo, hi, dtype=np.int64)
        res = ns % q.q
        for sign in (1, -1):
            hit = seg.values == sign
            np.minimum.at(first[sign], res[hit], ns[hit])
        lo = hi
        if absent not in first[1][1:] and absent not in first[-1][1:]:
            break
    records = []
    for a in range(1, q.q):
        lp, lm = int(first[1][a]), int(first[-1][a])
        if lp > cap:
            raise CapExceeded(q.q, a, 1, cap)
        if lm > cap:
            raise CapExceeded(q.q, a, -1, cap)
        records.append(WitnessRecord(q=q.q, a=a, least_plus=lp, least_minus=lm, cap=cap))
    n_of_q = max(max(r.least_plus, r.least_minus) for r in records)
    return ScanReport(
        q=q.q,
        n_of_q=n_of_q,
        exponent=math.log(n_of_q) / math.log(q.q),
        per_class=records,
    )


def _scan_one(args: tuple[int, float, int]) -> ScanReport:
    qv, epsilon, segment_size = args
    return scan(make_modulus(qv), epsilon, segment_size)


def scan_range(
    qmin: int,
    qmax: int,
    epsilon: float = 0.0,
    workers: int = 1,
    segment_size: int = DEFAULT_BLOCK,
) -> list[ScanReport]:
    """One ScanReport per prime in [qmin, qmax], ascending.  Per-prime
    scans are independent work items; output order is by q regardless of
    completion order, so reruns serialize byte-identically.
    """
    if not 3 <= qmin <= qmax:
        raise ValueError("need 3 <= qmin <= qmax")
    jobs = [(qv, epsilon, segment_size) for qv in primes_in(qmin, qmax + 1)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_scan_one, jobs))
    return [_scan_one(job) for job in jobs]
