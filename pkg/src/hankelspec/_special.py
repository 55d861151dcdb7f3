"""Log-Gamma and log-Beta with a fixed coefficient table.

Stirling's asymptotic series with Bernoulli-number coefficients, shifted into
its convergence region by the recurrence Gamma(x+1) = x Gamma(x).  The table
is fixed in code so the precision of every downstream coefficient is pinned
by this file alone; no external special-function library is involved.

Accuracy: relative error below 1e-14 for x > 0 (validated against a
high-precision oracle in the test suite at 20 reference points).
"""

from __future__ import annotations

import math

# Coefficients B_{2n} / (2n (2n-1)) of Stirling's series for ln Gamma.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

_HALF_LN_TWO_PI = 0.9189385332046727  # ln(2*pi)/2

# Series truncation error is below 1e-16 relative once x exceeds this shift
# threshold (last retained term ~ 3e-18 at x = 12).
_SHIFT_THRESHOLD = 12.0


def log_gamma(x: float) -> float:
    """Natural log of Gamma(x) for real x > 0."""
    if x <= 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    shift = 0.0
    while x < _SHIFT_THRESHOLD:
        shift += math.log(x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    power = inv
    for coeff in _STIRLING:
        series += coeff * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LN_TWO_PI + series - shift


def log_beta(a: float, b: float) -> float:
    """Natural log of the Beta function B(a, b), a, b > 0."""
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)
