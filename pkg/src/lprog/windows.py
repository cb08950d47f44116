"""The fixed smooth test window W and its numerically computed Fourier
transform.

W(x) = exp(16 - 1/((x - 1/2)(1 - x))) on (1/2, 1) and 0 elsewhere: supported
exactly on [1/2, 1], values in [0, 1], peak W(3/4) = 1.  Every derivative
vanishes at both endpoints, so the periodized integrand of the Fourier
integral is smooth and the midpoint rule converges faster than any power of
the node count; node doubling until two refinements agree gives a cheap
adaptive scheme whose aliasing error is controlled by the transform's own
decay.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import QuadratureBudgetExceeded

SUPPORT = (0.5, 1.0)
PEAK = 0.75

# Frozen calibration of the transform's decay, from the canonical probe grid
# t in {0, 0.25, ..., 200} (see decay_profile): |FT(t)| <= C8_BOUND (1+t)^-8
# everywhere on and beyond the grid.  Beyond ZERO_FLOOR_T that bound is under
# 1e-13, a tenth of the quadrature target, so the transform is reported as
# exactly 0 there.
C8_BOUND = 5.0e5
ZERO_FLOOR_T = 220.0


def window_value(x: float) -> float:
    """W(x); exactly 0 outside the open support interval."""
    t = (x - 0.5) * (1.0 - x)
    if t <= 0.0:
        return 0.0
    e = 16.0 - 1.0 / t
    return math.exp(e) if e > -745.0 else 0.0


def _window_array(x: np.ndarray) -> np.ndarray:
    t = (x - 0.5) * (1.0 - x)
    out = np.zeros_like(x)
    inside = t > 1.0 / 761.0  # exponent above the exp underflow floor of -745
    out[inside] = np.exp(16.0 - 1.0 / t[inside])
    return out


@dataclass(frozen=True)
class DecayProfile:
    """Empirical constant C with |FT(t)| <= C (1+|t|)^(-power) on the probe grid."""

    power: int
    t_max: float
    step: float
    constant: float
    peak_t: float


class SmoothWindow:
    """The fixed window plus its quadrature configuration and memo tables.

    node_budget caps the midpoint refinement; target is the absolute
    accuracy each Fourier value is verified to (successive refinements
    must agree within it).
    """

    def __init__(self, node_budget: int = 1 << 20, target: float = 1e-12):
        self.node_budget = node_budget
        self.target = target
        self._weights: dict[int, np.ndarray] = {}
        self._nodes: dict[int, np.ndarray] = {}
        self._probe: dict[float, complex] = {}

    def value(self, x: float) -> float:
        return window_value(x)

    def _rule(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        if n not in self._nodes:
            h = 0.5 / n
            xs = 0.5 + (np.arange(n) + 0.5) * h
            self._nodes[n] = xs
            self._weights[n] = _window_array(xs) * h
        return self._nodes[n], self._weights[n]

    def _midpoint_batch(self, ts: np.ndarray, n: int) -> np.ndarray:
        xs, w = self._rule(n)
        return np.exp(-2j * np.pi * np.outer(ts, xs)) @ w

    def fourier_batch(self, ts) -> np.ndarray:
        """FT(t) = integral of W(xi) e(-t xi) over the support, for each t.

        Computes on |t| and reflects by conjugation, so FT(-t) is exactly
        the conjugate of FT(t) and FT(0) is exactly real.  For |t| above
        ZERO_FLOOR_T the value is 0 with certified error below the target,
        by the frozen decay bound; quadrature runs only below the floor.
        """
        ts = np.asarray(ts, dtype=np.float64)
        flat = np.abs(ts.ravel())
        out = np.zeros(flat.shape, dtype=np.complex128)
        live = flat < ZERO_FLOOR_T
        if np.any(live):
            tl = flat[live]
            t_top = float(tl.max())
            # error aliases sit 2n - |t| away; start well past the bandwidth
            n = 1 << max(9, math.ceil(math.log2(t_top / 2 + 256)))
            vals = self._midpoint_batch(tl, n)
            while True:
                if 2 * n > self.node_budget:
                    raise QuadratureBudgetExceeded(
                        f"no convergence to {self.target} within {self.node_budget} nodes"
                    )
                refined = self._midpoint_batch(tl, 2 * n)
                if np.max(np.abs(refined - vals)) <= self.target:
                    vals = refined
                    break
                vals, n = refined, 2 * n
            out[live] = vals
        out = np.where(ts.ravel() < 0, np.conj(out), out)
        return out.reshape(ts.shape)

    def fourier(self, t: float) -> complex:
        return complex(self.fourier_batch(np.array([t]))[0])

    def _probe_values(self, ts: np.ndarray) -> np.ndarray:
        missing = [t for t in ts if t not in self._probe]
        if missing:
            for t, v in zip(missing, self.fourier_batch(np.array(missing))):
                self._probe[t] = complex(v)
        return np.array([self._probe[t] for t in ts])

    def decay_profile(self, t_max: float, power: int, step: float = 0.25) -> DecayProfile:
        """Calibrate C = max over the probe grid of |FT(t)| (1+t)^power.

        The grid is t in {0, step, 2*step, ..., t_max}; the constant feeds
        the dual-sum truncation logic, where it bounds the dropped tail.
        """
        if power not in (0, 2, 4, 8):
            raise ValueError("calibrated decay powers are 0, 2, 4, and 8")
        grid = np.round(np.arange(0.0, t_max + step / 2, step), 10)
        mags = np.abs(self._probe_values(grid))
        weighted = mags * (1.0 + grid) ** power
        i = int(np.argmax(weighted))
        return DecayProfile(
            power=power,
            t_max=float(t_max),
            step=step,
            constant=float(weighted[i]),
            peak_t=float(grid[i]),
        )


_DEFAULT = SmoothWindow()


def default_window() -> SmoothWindow:
    return _DEFAULT


def window_fourier(t: float) -> complex:
    """FT of W at t via the shared default window."""
    return _DEFAULT.fourier(t)


def decay_profile(t_max: float, power: int) -> DecayProfile:
    return _DEFAULT.decay_profile(t_max, power)
