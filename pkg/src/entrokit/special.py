"""Log-gamma, digamma and trigamma kernels on the positive half-line.

Method: upward recurrence shifts the argument to z >= 10, then a
Stirling-type asymptotic expansion is evaluated at z.  With the
coefficient counts below the expansion truncation error at z = 10 is
under 3e-17 for log-gamma and under 2e-15 (absolute) for digamma and
trigamma, so the delivered accuracy is limited by rounding in the
recurrence, comfortably inside the advertised 1e-13 relative /
1e-12 scaled-absolute contract on x in [1e-6, 1e6].

Arguments below 1e-6 are accepted but the absolute accuracy degrades,
because the leading 1/x (digamma) and 1/x**2 (trigamma) poles amplify
the input rounding; no clamping is performed.

All three functions accept scalars or numpy arrays and are pure and
reentrant.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_{2k} / (2k (2k-1)), k = 1..8
_LGAMMA_COEF = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

# B_{2k} / (2k), k = 1..7
_DIGAMMA_COEF = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)

# B_{2k}, k = 1..7
_TRIGAMMA_COEF = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)

_SHIFT_THRESHOLD = 10.0


def _prepare(x):
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if arr.size and (not np.all(np.isfinite(arr)) or np.any(arr <= 0.0)):
        bad = arr[~(np.isfinite(arr) & (arr > 0.0))].ravel()[0]
        raise DomainError(f"argument must be a finite positive real, got {bad}")
    return arr, scalar


def _shifted(arr):
    """Return (z, js) with z = arr + k >= 10 and js the list of arr + j, j < k."""
    z = arr.copy()
    shifts = []
    # x > 0 reaches 10 in at most ceil(10) = 10 unit steps
    while np.any(z < _SHIFT_THRESHOLD):
        mask = z < _SHIFT_THRESHOLD
        shifts.append((mask, z[mask].copy()))
        z[mask] += 1.0
    return z, shifts


def log_gamma(x):
    """Natural log of the gamma function for x > 0.

    Relative error <= 1e-13 on [1e-6, 1e6] (scaled near the zeros at
    x = 1 and x = 2, where log gamma itself vanishes).
    """
    arr, scalar = _prepare(x)
    z, shifts = _shifted(arr)
    rz2 = 1.0 / (z * z)
    series = np.zeros_like(z)
    for c in reversed(_LGAMMA_COEF):
        series = (series + c) * rz2
    # one factor of 1/z was folded into rz2 too many; series terms are c_k / z^(2k-1)
    series *= z
    out = (z - 0.5) * np.log(z) - z + _HALF_LOG_2PI + series
    for mask, vals in shifts:
        out[mask] -= np.log(vals)
    return float(out[0]) if scalar else out


def digamma(x):
    """Digamma psi(x) for x > 0; satisfies psi(x+1) = psi(x) + 1/x."""
    arr, scalar = _prepare(x)
    z, shifts = _shifted(arr)
    rz2 = 1.0 / (z * z)
    series = np.zeros_like(z)
    for c in reversed(_DIGAMMA_COEF):
        series = (series + c) * rz2
    out = np.log(z) - 0.5 / z - series
    for mask, vals in shifts:
        out[mask] -= 1.0 / vals
    return float(out[0]) if scalar else out


def trigamma(x):
    """Trigamma psi'(x) for x > 0; obeys 1/x < psi'(x) < 1/x + 1/x**2."""
    arr, scalar = _prepare(x)
    z, shifts = _shifted(arr)
    rz2 = 1.0 / (z * z)
    series = np.zeros_like(z)
    for c in reversed(_TRIGAMMA_COEF):
        series = (series + c) * rz2
    # series terms are B_2k / z^(2k+1)
    series /= z
    out = 1.0 / z + 0.5 * rz2 + series
    for mask, vals in shifts:
        out[mask] += 1.0 / (vals * vals)
    return float(out[0]) if scalar else out
