"""Prime-modulus arithmetic: primitive roots, discrete logs, Dirichlet
characters, Legendre symbols, and Gauss sums.

Characters mod a prime q form a cyclic group of order q-1.  Fixing the
smallest primitive root g, the character with index k sends g^j to
e(k*j/(q-1)), so conjugation, squaring, and enumeration are index
arithmetic, and sums over all characters are discrete Fourier transforms
over the exponent j = ind(n).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import EvenModulus, NotPrime

# Index tables are materialized up to this q; above it discrete logs fall
# back to baby-step giant-step.
_TABLE_LIMIT = 1 << 26

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all 64-bit integers."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    x, c = 2, 1
    while True:
        y, d = x, 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
        x, c = c + 2, c + 1


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {p: exponent}."""
    out: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 7
    inc = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n and f < 1_000_000:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += inc[i]
        i = (i + 1) % 8
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if is_prime(m):
                out[m] = out.get(m, 0) + 1
            else:
                d = _pollard_rho(m)
                stack.extend((d, m // d))
    return out


@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime q together with its smallest primitive root and the
    discrete-log index table ind: [1, q-1] -> [0, q-2], g^ind(n) = n (mod q).
    Immutable after construction; safe to share across workers.
    """

    q: int
    g: int
    phi: int
    _ind: np.ndarray | None = field(repr=False, default=None)
    _pow: np.ndarray | None = field(repr=False, default=None)

    def ind(self, n: int) -> int:
        """Discrete log of n to base g.  Requires (n, q) = 1."""
        r = n % self.q
        if r == 0:
            raise ValueError(f"{n} is divisible by q = {self.q}")
        if self._ind is not None:
            return int(self._ind[r])
        return self._ind_bsgs(r)

    def power_of_root(self, j: int) -> int:
        """g^j mod q."""
        if self._pow is not None:
            return int(self._pow[j % self.phi])
        return pow(self.g, j % self.phi, self.q)

    def units(self) -> np.ndarray:
        """All residues coprime to q, ascending."""
        return np.arange(1, self.q, dtype=np.int64)

    def _ind_bsgs(self, r: int) -> int:
        baby, m = _baby_table(self.q, self.g)
        giant = pow(self.g, (self.phi - m) % self.phi, self.q)
        cur = r
        for i in range(m + 1):
            j = baby.get(cur)
            if j is not None:
                return (i * m + j) % self.phi
            cur = cur * giant % self.q
        raise ValueError(f"discrete log of {r} mod {self.q} not found")

    def __hash__(self) -> int:
        return hash((self.q, self.g))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeModulus) and other.q == self.q


@lru_cache(maxsize=8)
def _baby_table(q: int, g: int) -> tuple[dict[int, int], int]:
    m = math.isqrt(q - 1) + 1
    table: dict[int, int] = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = cur * g % q
    return table, m


def _smallest_primitive_root(q: int) -> int:
    exponents = [(q - 1) // p for p in factorize(q - 1)]
    for g in range(2, q):
        if all(pow(g, e, q) != 1 for e in exponents):
            return g
    raise NotPrime(f"{q} has no primitive root; it cannot be prime")


def make_modulus(q: int) -> PrimeModulus:
    """Build the full mod-q structure.  Deterministic: the smallest
    primitive root is always chosen, so downstream reports are reproducible.
    """
    if q == 2:
        raise EvenModulus("q = 2 has a trivial character group")
    if q < 2 or not is_prime(q):
        raise NotPrime(f"{q} is not prime")
    g = _smallest_primitive_root(q)
    ind = pw = None
    if q <= _TABLE_LIMIT:
        pw = np.empty(q - 1, dtype=np.int64)
        ind = np.empty(q, dtype=np.int64)
        ind[0] = -1
        cur = 1
        for j in range(q - 1):
            pw[j] = cur
            ind[cur] = j
            cur = cur * g % q
    return PrimeModulus(q=q, g=g, phi=q - 1, _ind=ind, _pow=pw)


def legendre(n: int, q: PrimeModulus | int) -> int:
    """Legendre symbol (n|q) in {-1, 0, +1} via Euler's criterion."""
    qi = q.q if isinstance(q, PrimeModulus) else int(q)
    r = n % qi
    if r == 0:
        return 0
    e = pow(r, (qi - 1) // 2, qi)
    return 1 if e == 1 else -1


def legendre_table(q: PrimeModulus) -> np.ndarray:
    """int8 array t of length q with t[r] = (r|q); t[0] = 0.

    Built by marking the nonzero squares mod q, one pass, no modexp.
    """
    qi = q.q
    t = np.full(qi, -1, dtype=np.int8)
    t[0] = 0
    r = np.arange(1, qi, dtype=np.int64)
    t[(r * r) % qi] = 1
    return t


@dataclass(frozen=True)
class DirichletCharacter:
    """The character mod q with exponent k on the primitive root:
    chi(g^j) = e(k*j/(q-1)), chi(n) = 0 when q | n.

    k = 0 is the principal character; k = (q-1)/2 is the quadratic
    character and agrees with the Legendre symbol everywhere.
    """

    modulus: PrimeModulus
    k: int

    def __post_init__(self):
        if not 0 <= self.k < self.modulus.phi:
            raise ValueError(f"character exponent {self.k} not in [0, {self.modulus.phi - 1}]")

    @property
    def is_principal(self) -> bool:
        return self.k == 0

    @property
    def is_quadratic(self) -> bool:
        return 2 * self.k == self.modulus.phi

    @property
    def order(self) -> int:
        return self.modulus.phi // math.gcd(self.k, self.modulus.phi)

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, (-self.k) % self.modulus.phi)

    def squared(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, (2 * self.k) % self.modulus.phi)

    def __call__(self, n: int) -> complex:
        return char_value(self, n)

    def values(self) -> np.ndarray:
        """chi(n) for n = 0..q-1 as a complex array (chi(0) = 0)."""
        pm = self.modulus
        theta = (self.k * np.arange(pm.phi, dtype=np.int64)) % pm.phi
        roots = np.exp(2j * np.pi * theta / pm.phi)
        # pin the values that must be exactly real
        roots[theta == 0] = 1.0
        roots[2 * theta == pm.phi] = -1.0
        out = np.zeros(pm.q, dtype=np.complex128)
        if pm._pow is not None:
            out[pm._pow] = roots
        else:
            for j in range(pm.phi):
                out[pm.power_of_root(j)] = roots[j]
        return out


def char_value(chi: DirichletCharacter, n: int) -> complex:
    """chi(n): unit-modulus complex for (n, q) = 1, exactly 0 otherwise.
    Periodic with period q; n may be negative.
    """
    pm = chi.modulus
    r = n % pm.q
    if r == 0:
        return 0j
    theta = (chi.k * pm.ind(r)) % pm.phi
    if theta == 0:
        return 1 + 0j
    if 2 * theta == pm.phi:
        return -1 + 0j
    return cmath.exp(2j * math.pi * theta / pm.phi)


def principal_character(q: PrimeModulus) -> DirichletCharacter:
    return DirichletCharacter(q, 0)


def quadratic_character(q: PrimeModulus) -> DirichletCharacter:
    return DirichletCharacter(q, q.phi // 2)


def character_of_order(q: PrimeModulus, d: int) -> DirichletCharacter:
    """The character with exponent (q-1)/d, which has exact order d."""
    if d < 1 or q.phi % d != 0:
        raise ValueError(f"order {d} does not divide {q.phi}")
    return DirichletCharacter(q, q.phi // d)


def characters(q: PrimeModulus):
    """All q-1 characters, in exponent order (principal first)."""
    for k in range(q.phi):
        yield DirichletCharacter(q, k)


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_{a=1}^{q} chi(a) e(a/q), evaluated directly.

    For non-principal chi mod a prime, |tau(chi)| = sqrt(q) up to
    floating-point rounding.
    """
    q = chi.modulus.q
    a = np.arange(q, dtype=np.int64)
    return complex(np.sum(chi.values() * np.exp(2j * np.pi * a / q)))


def char_coefficients(q: PrimeModulus, f: np.ndarray) -> np.ndarray:
    """All conjugate-twisted sums T[k] = sum_{(x,q)=1} f(x) conj(chi_k(x)).

    f is indexed by residue (length q, f[0] ignored).  Reordering x = g^j
    turns the sum into a length-(q-1) DFT, so all coefficients cost
    O(q log q).
    """
    if q._pow is None:
        raise ValueError("character transforms need the materialized index table")
    s = np.asarray(f, dtype=np.complex128)[q._pow]
    return np.fft.fft(s)


def char_sums(q: PrimeModulus, f: np.ndarray) -> np.ndarray:
    """All plain twisted sums T[k] = sum_{(x,q)=1} f(x) chi_k(x)."""
    if q._pow is None:
        raise ValueError("character transforms need the materialized index table")
    s = np.asarray(f, dtype=np.complex128)[q._pow]
    return np.fft.ifft(s) * q.phi
