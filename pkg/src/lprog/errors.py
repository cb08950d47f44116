"""Exception types shared across the library."""


class LprogError(Exception):
    """Base class for all library errors."""


class NotPrime(LprogError):
    """The given modulus failed the deterministic primality test."""


class EvenModulus(LprogError):
    """q = 2 is rejected: the character group mod 2 is trivial."""


class SegmentTooLarge(LprogError):
    """A requested sieve segment exceeds the configured memory budget."""


class QuadratureBudgetExceeded(LprogError):
    """Adaptive quadrature could not reach the accuracy target within its node budget."""


class NonPrimitive(LprogError):
    """The operation requires a non-principal (hence primitive) character."""


class HypothesisViolated(LprogError):
    """A verifier's hypothesis does not hold, so the check is not applicable."""


class CapExceeded(LprogError):
    """A progression scan found no witness of the requested sign below the cap."""

    def __init__(self, q: int, a: int, sign: int, cap: int):
        self.q = q
        self.a = a
        self.sign = sign
        self.cap = cap
        super().__init__(
            f"no n <= {cap} with n = {a} (mod {q}) and Liouville sign {sign:+d}"
        )

    def __reduce__(self):
        return (CapExceeded, (self.q, self.a, self.sign, self.cap))
