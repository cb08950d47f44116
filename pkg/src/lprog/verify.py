"""Numerical certification of the identities, inequalities, and statistics
the progression-scan argument rests on.

Every checker returns a VerificationReport whose pass flag is a pure
function of (lhs, rhs, tolerance).  Identities use residual = |lhs - rhs|;
inequalities use residual = max(0, lhs - rhs).  Quantities whose smallness
would only follow from a counterfactual hypothesis (a constant-sign
progression) are computed as diagnostics and never asserted.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.special import digamma

from .errors import HypothesisViolated, NonPrimitive
from .modular import (
    DirichletCharacter,
    PrimeModulus,
    char_coefficients,
    char_sums,
    gauss_sum,
    legendre_table,
)
from .sieve import g_range, liouville_segment, primes_in
from .windows import SmoothWindow, _window_array, default_window

# Frozen calibration for the divisor-sum asymptotic: the largest normalized
# residual |S - main| / sqrt(q) observed on the grid of all primes q <= 499
# with N in {q, 2q, 4q} was 1.1604 (at q = 41, N = 4q); frozen with margin.
HYPERBOLA_C = 2.5
HYPERBOLA_C_PROVENANCE = "calibrated on primes q<=499, N in {q,2q,4q}; grid max 1.1604"

LEMMAS = (
    "gauss",
    "poisson",
    "large-sieve",
    "parseval",
    "inversion",
    "comb",
    "hyperbola",
    "lfunction",
    "holder",
    "key-identity",
    "census",
    "exceptional",
)


@dataclass(frozen=True)
class VerificationReport:
    """One check: parameters, both sides, residual, tolerance, verdict."""

    lemma: str
    params: dict
    lhs: complex | float
    rhs: complex | float
    residual: float
    tolerance: float
    passed: bool
    runtime_ms: int

    def to_dict(self) -> dict:
        def num(v):
            if isinstance(v, complex):
                return [v.real, v.imag]
            return v

        return {
            "lemma": self.lemma,
            "params": self.params,
            "lhs": num(self.lhs),
            "rhs": num(self.rhs),
            "residual": self.residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _identity(lemma, params, lhs, rhs, tol, t0) -> VerificationReport:
    residual = abs(lhs - rhs)
    return VerificationReport(
        lemma=lemma,
        params=params,
        lhs=lhs,
        rhs=rhs,
        residual=float(residual),
        tolerance=float(tol),
        passed=bool(residual <= tol),
        runtime_ms=int((time.perf_counter() - t0) * 1000),
    )


def _inequality(lemma, params, lhs, rhs, slack, t0) -> VerificationReport:
    residual = max(0.0, float(lhs) - float(rhs))
    return VerificationReport(
        lemma=lemma,
        params=params,
        lhs=lhs,
        rhs=rhs,
        residual=residual,
        tolerance=float(slack),
        passed=bool(residual <= slack),
        runtime_ms=int((time.perf_counter() - t0) * 1000),
    )


def _liouville_units(q: PrimeModulus) -> np.ndarray:
    """lambda(n) for n = 0..q-1 as float (index 0 unused, set to 0)."""
    lam = np.zeros(q.q, dtype=np.float64)
    lam[1:] = liouville_segment(1, q.q).values
    return lam


# ----------------------------------------------------------------------
# Character spectrum of the Liouville values on one period


@dataclass(frozen=True)
class FourierSpectrum:
    """Per-character coefficients sum_{(x,q)=1} lambda(x) conj(chi_k(x)),
    indexed by the character exponent k."""

    q: int
    coefficients: np.ndarray


def fourier_spectrum(q: PrimeModulus) -> FourierSpectrum:
    return FourierSpectrum(q=q.q, coefficients=char_coefficients(q, _liouville_units(q)))


def verify_parseval(q: PrimeModulus, tol: float = 1e-9) -> VerificationReport:
    """Mean square of the spectrum equals phi(q) exactly."""
    t0 = time.perf_counter()
    spec = fourier_spectrum(q)
    lhs = float(np.sum(np.abs(spec.coefficients) ** 2)) / q.phi
    return _identity("parseval", {"q": q.q}, lhs, float(q.phi), tol, t0)


def verify_inversion(q: PrimeModulus, tol: float = 1e-9) -> VerificationReport:
    """The spectrum reconstructs lambda at every unit: worst pointwise
    error of (1/phi) sum_k coeff_k chi_k(n) against lambda(n)."""
    t0 = time.perf_counter()
    lam = _liouville_units(q)
    coeffs = char_coefficients(q, lam)
    recon = np.fft.ifft(coeffs)  # value at g^j, j = 0..phi-1
    worst = float(np.max(np.abs(recon - lam[q._pow])))
    return _identity("inversion", {"q": q.q}, worst, 0.0, tol, t0)


# ----------------------------------------------------------------------
# Dual-sum identity for smooth character sums


def verify_poisson(
    chi: DirichletCharacter,
    N: float,
    A: int = 4,
    tol: float = 1e-8,
    window: SmoothWindow | None = None,
) -> VerificationReport:
    """Compare sum_n chi(n) W(n/N) with its Gauss-sum dual expansion.

    The dual sum is truncated at the smallest M whose dropped tail,
    bounded through the calibrated decay constant C_A, stays below
    tol/10.
    """
    if chi.is_principal:
        raise NonPrimitive("the dual expansion needs a non-principal character")
    if N <= 0:
        raise ValueError("N must be positive")
    t0 = time.perf_counter()
    w = window or default_window()
    pm = chi.modulus
    q = pm.q

    vals = chi.values()
    ns = np.arange(math.ceil(N / 2), math.floor(N) + 1, dtype=np.int64)
    lhs = complex(np.sum(vals[ns % q] * _window_array(ns / N))) if ns.size else 0j

    c_a = w.decay_profile(200.0, A).constant
    delta = N / q
    reach = (20.0 * c_a * math.sqrt(q) / ((A - 1) * tol)) ** (1.0 / (A - 1))
    M = max(1, math.ceil((reach - 1.0) / delta))
    ms = np.arange(1, M + 1, dtype=np.int64)
    ft = w.fourier_batch(ms * delta)
    conj_vals = np.conj(vals)
    dual = np.sum(conj_vals[ms % q] * ft) + np.sum(conj_vals[(-ms) % q] * np.conj(ft))
    rhs = N * gauss_sum(chi) / q * dual

    params = {"q": q, "k": chi.k, "N": N, "A": A, "M": M}
    return _identity("poisson", params, lhs, complex(rhs), tol, t0)


# ----------------------------------------------------------------------
# Mean-square bound for character-twisted sums


def verify_large_sieve(
    q: PrimeModulus, N: int, coeffs, slack: float = 1e-9
) -> VerificationReport:
    """sum over characters of |sum_{n<=N} a_n chi(n)|^2 against
    (N + q) * sum of |a_n|^2 over n coprime to q."""
    t0 = time.perf_counter()
    a = np.asarray(coeffs, dtype=np.complex128)
    if a.shape != (N,):
        raise ValueError(f"need exactly N = {N} coefficients")
    ns = np.arange(1, N + 1, dtype=np.int64)
    per_class = np.zeros(q.q, dtype=np.complex128)
    np.add.at(per_class, ns % q.q, a)
    twisted = char_sums(q, per_class)
    lhs = float(np.sum(np.abs(twisted) ** 2))
    rhs = float((N + q.q) * np.sum(np.abs(a[ns % q.q != 0]) ** 2))
    return _inequality("large-sieve", {"q": q.q, "N": N}, lhs, rhs, slack, t0)


# ----------------------------------------------------------------------
# Product representations from large residue sets


def search_representation(q: PrimeModulus, A, B, n: int) -> tuple[int, int] | None:
    """Some (a, b) in A x B with a*b = n (mod q), or None."""
    bset = set(B)
    for a in sorted(A):
        b = n * pow(a, q.q - 2, q.q) % q.q
        if b in bset:
            return a, b
    return None


def verify_comb(q: PrimeModulus, A, B) -> VerificationReport:
    """Every unit n mod q is a product a*b with a in A, b in B, provided
    |A| + |B| > phi(q).  Raises HypothesisViolated below that threshold."""
    t0 = time.perf_counter()
    A = sorted(set(int(a) % q.q for a in A))
    B = sorted(set(int(b) % q.q for b in B))
    if any(a == 0 for a in A) or any(b == 0 for b in B):
        raise ValueError("A and B must consist of units mod q")
    if len(A) + len(B) <= q.phi:
        raise HypothesisViolated(
            f"|A| + |B| = {len(A) + len(B)} <= phi(q) = {q.phi}; check not applicable"
        )
    bset = set(B)
    inverses = {a: pow(a, q.q - 2, q.q) for a in A}
    represented = 0
    for n in range(1, q.q):
        if any(n * inv % q.q in bset for inv in inverses.values()):
            represented += 1
    params = {"q": q.q, "size_a": len(A), "size_b": len(B)}
    return _identity("comb", params, represented, q.phi, 0.0, t0)


# ----------------------------------------------------------------------
# Smoothed average of the divisor sum g = 1 * chi_q


def verify_hyperbola(
    q: PrimeModulus,
    N: int,
    C: float = HYPERBOLA_C,
    window: SmoothWindow | None = None,
) -> VerificationReport:
    """|sum_n g(n) W(n/N) - L(1,chi_q) N FT(0)| <= C sqrt(q) for N >= q.

    The normalized residual (divided by sqrt(q)) is reported in params for
    calibration scans.
    """
    if N < q.q:
        raise ValueError("need N >= q")
    t0 = time.perf_counter()
    w = window or default_window()
    gs = g_range(N, q)
    ns = np.arange(math.ceil(N / 2), N + 1, dtype=np.int64)
    s = float(np.sum(gs[ns] * _window_array(ns / N)))
    main = compute_L1(q, tol=1e-10) * N * w.fourier(0.0).real
    raw = abs(s - main)
    params = {
        "q": q.q,
        "N": N,
        "C": C,
        "normalized_residual": raw / math.sqrt(q.q),
        "calibration": HYPERBOLA_C_PROVENANCE,
    }
    return _inequality("hyperbola", params, raw, C * math.sqrt(q.q), 0.0, t0)


def compute_L1(q: PrimeModulus, tol: float = 1e-9) -> float:
    """L(1, chi_q) = sum chi_q(n)/n with certified absolute error < tol.

    The series is truncated at T = K*q; the tail is bounded by
    sqrt(q) log(q) / T through the Polya-Vinogradov inequality for the
    partial character sums.  The truncated sum itself is evaluated
    exactly per residue class with digamma differences, so T can be huge
    at no cost.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    pv = math.sqrt(q.q) * math.log(q.q)
    K = max(1, math.ceil(pv / (q.q * tol)))
    chi = legendre_table(q)[1:].astype(np.float64)
    x = np.arange(1, q.q, dtype=np.float64) / q.q
    # sum over n = r + kq, k < K, of 1/n equals (digamma(K + r/q) - digamma(r/q))/q
    per_class = digamma(K + x) - digamma(x)
    return float(np.dot(chi, per_class) / q.q)


# ----------------------------------------------------------------------
# Exact sign identity for square-times-prime grids


def key_identity_check(q: PrimeModulus, N: int, P: int) -> VerificationReport:
    """|sum_{n,p} lambda(n^2 p) W(n/N)| equals sum_{n,p} W(n/N) exactly,
    over n in [N/2, N] and primes p in [P/2, P], both coprime to q.

    Each lambda value is read from the sieve, not assumed; equality holds
    because every n^2 p has an odd factor count.
    """
    if N < 2 or P < 2:
        raise ValueError("need N, P >= 2")
    t0 = time.perf_counter()
    ns = [n for n in range(math.ceil(N / 2), N + 1) if n % q.q != 0]
    ps = [p for p in primes_in(math.ceil(P / 2), P + 1) if p % q.q != 0]
    signed = 0.0
    plain = 0.0
    if ns and ps:
        table = liouville_segment(1, max(ns) ** 2 * max(ps) + 1)
        for n in ns:
            wv = _window_array(np.array([n / N]))[0]
            for p in ps:
                signed += table[n * n * p] * wv
                plain += wv
    params = {"q": q.q, "N": N, "P": P, "pairs": len(ns) * len(ps)}
    tol = 1e-12 * max(1.0, abs(plain))
    return _identity("key-identity", params, abs(signed), plain, tol, t0)


# ----------------------------------------------------------------------
# Triple character sum and its (2,4,4) mean-power bound


@dataclass(frozen=True)
class HolderFactors:
    """The three averaged power sums and the triple sum they dominate."""

    q: int
    N: int
    P: int
    sigma: float
    t1: float
    t2: float
    t3: float
    lhs_triple: float
    bound: float


def holder_factors(q: PrimeModulus, N: int, P: int, sigma: float = 0.5) -> HolderFactors:
    """Compute T1 (spectrum mean square), T2 (fourth moment of smooth
    square-character sums, skipping the two real characters), T3 (fourth
    moment of prime character sums), and the normalized triple sum, whose
    bound T1^(1/2) T2^(1/4) T3^(1/4) is asserted by the caller.

    sigma is carried as configuration metadata; it selects nothing here
    because the inner sums are evaluated in full rather than truncated.
    """
    if not 0 < sigma < 1:
        raise ValueError("sigma must lie in (0, 1)")
    if N < 2 or P < 2:
        raise ValueError("need N, P >= 2")
    phi = q.phi
    coeffs = char_coefficients(q, _liouville_units(q))

    ns = np.arange(math.ceil(N / 2), N + 1, dtype=np.int64)
    per_class = np.zeros(q.q, dtype=np.float64)
    np.add.at(per_class, ns % q.q, _window_array(ns / N))
    smooth = char_sums(q, per_class)  # index k: sum_n chi_k(n) W(n/N)

    pcount = np.zeros(q.q, dtype=np.float64)
    for p in primes_in(math.ceil(P / 2), P + 1):
        if p % q.q:
            pcount[p % q.q] += 1.0
    prime_sums = char_sums(q, pcount)  # index k: sum_p chi_k(p)

    ks = np.array([k for k in range(phi) if k != 0 and 2 * k != phi], dtype=np.int64)
    squares = smooth[(2 * ks) % phi]
    t1 = float(np.sum(np.abs(coeffs) ** 2)) / phi
    t2 = float(np.sum(np.abs(squares) ** 4)) / phi
    t3 = float(np.sum(np.abs(prime_sums) ** 4)) / phi
    triple = abs(np.sum(coeffs[ks] * squares * prime_sums[ks])) / phi
    bound = math.sqrt(t1) * t2**0.25 * t3**0.25
    return HolderFactors(
        q=q.q, N=N, P=P, sigma=sigma, t1=t1, t2=t2, t3=t3,
        lhs_triple=float(triple), bound=float(bound),
    )


# ----------------------------------------------------------------------
# Per-interval sign census


@dataclass(frozen=True)
class IntervalCensus:
    """Counts of units with each Liouville sign in [start, start + q)."""

    start: int
    count_minus: int
    count_plus: int


def interval_census(q: PrimeModulus, X: int) -> list[IntervalCensus]:
    """Census rows for the aligned intervals [M, M+q), M = 1, 1+q, ...
    with M <= X - q.  Each row partitions the phi(q) units in its
    interval by sign."""
    if X < 2 * q.q:
        raise ValueError("need X >= 2q")
    k = (X - q.q - 1) // q.q + 1  # number of interval starts
    vals = liouville_segment(1, 1 + k * q.q).values.reshape(k, q.q)
    # n = 1 + i*q + j is divisible by q exactly at offset j = q - 1
    body = vals[:, : q.q - 1]
    minus = (body == -1).sum(axis=1)
    return [
        IntervalCensus(start=1 + i * q.q, count_minus=int(m), count_plus=int(q.phi - m))
        for i, m in enumerate(minus)
    ]


def census_max_deviation(rows: list[IntervalCensus], q: PrimeModulus) -> float:
    """Diagnostic only: worst |count_minus - phi/2| over the rows.  Equality
    with phi/2 is not asserted; it would require the counterfactual
    constant-sign hypothesis."""
    half = q.phi / 2.0
    return max(abs(r.count_minus - half) for r in rows)


def census_bookkeeping_check(q: PrimeModulus, n: int) -> VerificationReport:
    """Sliding [n, n+q) one step swaps n for n+q in the census: the minus
    count changes by the difference of the two sign indicators.  Exact."""
    if n % q.q == 0:
        raise ValueError("need (n, q) = 1")
    t0 = time.perf_counter()
    table = liouville_segment(n, n + q.q + 1)
    signs = table.values
    units = np.array([(n + j) % q.q != 0 for j in range(q.q + 1)])
    a_i = int(np.sum((signs[:-1] == -1) & units[:-1]))
    a_next = int(np.sum((signs[1:] == -1) & units[1:]))
    rhs = a_i - (signs[0] == -1) + (signs[q.q] == -1)
    return _identity("census", {"q": q.q, "n": n}, a_next, int(rhs), 0.0, t0)


# ----------------------------------------------------------------------
# Statistics of primes with positive quadratic residue symbol


@dataclass(frozen=True)
class ExceptionalStats:
    """Counts and reciprocal-sum statistics of primes p with (p|q) = +1."""

    q: int
    dyadic: list[tuple[int, int]]
    e_star: int
    e_star_dyadic: int
    reciprocal_sum: float
    reciprocal_sum_partial: float
    f_count: int
    g_count: int


def exceptional_stats(q: PrimeModulus) -> ExceptionalStats:
    """Dyadic counts E(2^k) of residue-symbol-+1 primes, their total
    E*(q), the reciprocal sum computed directly and again by partial
    summation (step-function integral, evaluated exactly), and the
    sqrt(q)-level split counts F and G.

    E(N) follows the closed convention [N/2, N], which double counts
    powers of two across consecutive blocks, so the exact cross-check
    total uses half-open blocks (N/2, N] truncated at q.
    """
    chi = legendre_table(q)
    primes = primes_in(2, q.q + 1)
    plus = [p for p in primes if chi[p % q.q] == 1]

    dyadic = []
    npow = 2
    while npow <= 2 * q.q:
        count = sum(1 for p in primes if npow / 2 <= p <= npow and chi[p % q.q] == 1)
        dyadic.append((npow, count))
        npow *= 2
    e_star = len(plus)
    e_star_dyadic = 0
    npow = 2
    while npow // 2 < q.q:
        e_star_dyadic += sum(1 for p in plus if npow // 2 < p <= min(npow, q.q))
        npow *= 2

    direct = float(sum(1.0 / p for p in plus))
    r = len(plus)
    partial = 0.0
    if r:
        partial = r / q.q
        for i in range(r - 1):
            partial += (i + 1) * (1.0 / plus[i] - 1.0 / plus[i + 1])
        partial += r * (1.0 / plus[-1] - 1.0 / q.q)

    root = math.isqrt(q.q)
    f_count = sum(1 for p in primes if p <= root and chi[p % q.q] == 1)
    g_count = sum(1 for p in primes if p <= root and chi[p % q.q] == -1)
    return ExceptionalStats(
        q=q.q,
        dyadic=dyadic,
        e_star=e_star,
        e_star_dyadic=e_star_dyadic,
        reciprocal_sum=direct,
        reciprocal_sum_partial=partial,
        f_count=f_count,
        g_count=g_count,
    )


# ----------------------------------------------------------------------
# One-report wrappers used by the CLI batch runner


def verify_gauss(q: PrimeModulus, rel_tol: float = 1e-9) -> VerificationReport:
    """Worst deviation of |tau(chi)| from sqrt(q) over all non-principal
    characters, at tolerance rel_tol * sqrt(q)."""
    t0 = time.perf_counter()
    root = math.sqrt(q.q)
    worst = max(
        abs(abs(gauss_sum(DirichletCharacter(q, k))) - root) for k in range(1, q.phi)
    )
    params = {"q": q.q, "characters": q.phi - 1}
    return _identity("gauss", params, worst, 0.0, rel_tol * root, t0)


def verify_lfunction(q: PrimeModulus, tol: float = 1e-6) -> VerificationReport:
    """Two truncation levels of the L-value must agree within the sum of
    their certified error bounds; checks the certificate is honored."""
    t0 = time.perf_counter()
    coarse = compute_L1(q, tol)
    fine = compute_L1(q, tol / 100.0)
    return _identity("lfunction", {"q": q.q, "tol": tol}, coarse, fine, tol + tol / 100.0, t0)


def verify_holder(
    q: PrimeModulus, N: int | None = None, P: int | None = None, slack: float = 1e-9
) -> VerificationReport:
    """Triple-sum bound lhs <= T1^(1/2) T2^(1/4) T3^(1/4) at the standard
    grid point N = ceil(q^0.52), P = ceil(q^0.48) unless overridden."""
    t0 = time.perf_counter()
    N = N if N is not None else math.ceil(q.q**0.52)
    P = P if P is not None else math.ceil(q.q**0.48)
    h = holder_factors(q, N, P)
    params = {"q": q.q, "N": N, "P": P, "t1": h.t1, "t2": h.t2, "t3": h.t3}
    return _inequality("holder", params, h.lhs_triple, h.bound, slack, t0)


def verify_census(q: PrimeModulus, X: int | None = None) -> VerificationReport:
    """Batch bookkeeping: for every (n, q) = 1 with n <= X - q the sliding
    census identity holds, and every aligned row partitions its units.
    Reported as the total number of violations (always 0)."""
    t0 = time.perf_counter()
    X = X if X is not None else 10 * q.q
    if X < 2 * q.q:
        raise ValueError("need X >= 2q")
    vals = liouville_segment(1, X + q.q + 1).values
    ns = np.arange(1, X + 1, dtype=np.int64)
    unit = ns % q.q != 0
    ns_all = np.arange(1, X + q.q + 1, dtype=np.int64)
    is_minus = ((vals == -1) & (ns_all % q.q != 0)).astype(np.int64)
    window = np.cumsum(np.concatenate(([0], is_minus)))
    a_counts = window[q.q:] - window[:-q.q]  # A([n, n+q)) for n = 1..X+1
    coprime_ns = ns[unit]
    lhs_counts = a_counts[coprime_ns]  # A at I' = [n+1, n+q+1)
    rhs_counts = (
        a_counts[coprime_ns - 1]
        - is_minus[coprime_ns - 1]
        + is_minus[coprime_ns + q.q - 1]
    )
    violations = int(np.sum(lhs_counts != rhs_counts))
    rows = interval_census(q, X)
    violations += sum(1 for r in rows if r.count_minus + r.count_plus != q.phi)
    params = {"q": q.q, "X": X, "classes_checked": int(coprime_ns.size), "rows": len(rows)}
    return _identity("census", params, violations, 0, 0.0, t0)


def verify_exceptional(q: PrimeModulus, tol: float = 1e-9) -> VerificationReport:
    """Direct reciprocal sum over (p|q) = +1 primes against its partial
    summation evaluation."""
    t0 = time.perf_counter()
    st = exceptional_stats(q)
    params = {
        "q": q.q,
        "e_star": st.e_star,
        "f_count": st.f_count,
        "g_count": st.g_count,
    }
    return _identity("exceptional", params, st.reciprocal_sum, st.reciprocal_sum_partial, tol, t0)


def verify_large_sieve_random(
    q: PrimeModulus, N: int, trials: int = 100, seed: int = 0, slack: float = 1e-9
) -> VerificationReport:
    """Worst case of the mean-square bound over seeded random coefficient
    vectors (complex standard normal entries, pcg64 stream)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst = None
    for _ in range(trials):
        a = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        rep = verify_large_sieve(q, N, a, slack)
        margin = rep.lhs - rep.rhs
        if worst is None or margin > worst[0]:
            worst = (margin, rep)
    rep = worst[1]
    params = dict(rep.params)
    params.update({"trials": trials, "seed": seed, "generator": "pcg64"})
    return _inequality("large-sieve", params, rep.lhs, rep.rhs, slack, t0)


def dominant_sign_correlation(q: PrimeModulus) -> tuple[int, int]:
    """The sign s minimizing #{n <= q, (n,q)=1 : lambda(n) != s*(n|q)} and
    that count.  Diagnostic: for the true Liouville values the count sits
    near phi(q)/2; no smallness is asserted.  Ties resolve to +1."""
    lam = liouville_segment(1, q.q).values
    chi = legendre_table(q)[1:]
    exc_plus = int(np.sum(lam != chi))
    exc_minus = q.phi - exc_plus
    if exc_plus <= exc_minus:
        return 1, exc_plus
    return -1, exc_minus
