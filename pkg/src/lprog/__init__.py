"""Liouville sign statistics in arithmetic progressions: modular core,
segmented sieves, smooth windows, identity verifiers, and witness scans.
"""

from .errors import (
    CapExceeded,
    EvenModulus,
    HypothesisViolated,
    LprogError,
    NonPrimitive,
    NotPrime,
    QuadratureBudgetExceeded,
    SegmentTooLarge,
)
from .modular import (
    DirichletCharacter,
    PrimeModulus,
    char_value,
    character_of_order,
    characters,
    gauss_sum,
    legendre,
    make_modulus,
    principal_character,
    quadratic_character,
)
from .sieve import LiouvilleTable, g_value, liouville, liouville_segment, primes_in
from .verify import (
    ExceptionalStats,
    FourierSpectrum,
    HolderFactors,
    IntervalCensus,
    VerificationReport,
    census_bookkeeping_check,
    compute_L1,
    dominant_sign_correlation,
    exceptional_stats,
    fourier_spectrum,
    holder_factors,
    interval_census,
    key_identity_check,
    search_representation,
    verify_comb,
    verify_hyperbola,
    verify_inversion,
    verify_large_sieve,
    verify_parseval,
    verify_poisson,
)
from .windows import SmoothWindow, decay_profile, default_window, window_fourier, window_value
from .witness import ScanReport, WitnessRecord, least_witness, scan, scan_range

__version__ = "0.1.0"
