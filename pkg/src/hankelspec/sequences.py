"""Pointwise evaluation of model sequences and kernels, plus decay diagnostics.

The discrete sequence and the continuous kernel defined in `model` are
evaluated here exactly, with smooth cutoffs built from the classic bump
construction, so the asymptotic error terms are identically zero in the
regions the theory constrains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import ContinuousKernelSpec, DiscreteSymbolSpec, m_cap

__all__ = [
    "CutoffPair",
    "smooth_step",
    "eval_discrete",
    "eval_discrete_many",
    "eval_kernel",
    "eval_kernel_many",
    "finite_difference",
    "check_error_decay",
    "DecayReport",
]


def _bump(x: np.ndarray) -> np.ndarray:
    # exp(-1/x) continued by 0 for x <= 0; all derivatives vanish at 0.
    out = np.zeros_like(x)
    pos = x > 0.0
    out[pos] = np.exp(-1.0 / x[pos])
    return out


def smooth_step(x):
    """C-infinity step: exactly 0 for x <= 0, exactly 1 for x >= 1, monotone between.

    s(x) = e(x) / (e(x) + e(1-x)) with e(x) = exp(-1/x) for x > 0, else 0.
    """
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    ex = _bump(x)
    e1x = _bump(1.0 - x)
    out = np.empty_like(x)
    lo = x <= 0.0
    hi = x >= 1.0
    mid = ~(lo | hi)
    out[lo] = 0.0
    out[hi] = 1.0
    out[mid] = ex[mid] / (ex[mid] + e1x[mid])
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class CutoffPair:
    """Smooth cutoffs chi0 (near 0) and chi_inf (near infinity).

    chi0(t) = 1 for t <= c1, 0 for t >= c2, smoothly decreasing between;
    chi_inf(t) = 0 for t <= C1, 1 for t >= C2, smoothly increasing between.
    Requires 0 < c1 < c2 < 1 < C1 < C2 so the two supports stay disjoint
    and away from t = 1.
    """

    c1: float = 0.25
    c2: float = 0.5
    C1: float = 1.5
    C2: float = 2.0

    def __post_init__(self):
        if not (0.0 < self.c1 < self.c2 < 1.0 < self.C1 < self.C2):
            raise ValueError(
                f"cutoffs must satisfy 0 < c1 < c2 < 1 < C1 < C2, got "
                f"({self.c1}, {self.c2}, {self.C1}, {self.C2})"
            )

    def chi0(self, t):
        return smooth_step((self.c2 - np.asarray(t, dtype=float)) / (self.c2 - self.c1))

    def chi_inf(self, t):
        return smooth_step((np.asarray(t, dtype=float) - self.C1) / (self.C2 - self.C1))


def eval_discrete_many(spec: DiscreteSymbolSpec, j) -> np.ndarray:
    """Vectorized h(j) over an integer array. h(0) = h(1) = 0 exactly."""
    j = np.asarray(j)
    if np.any(j < 0):
        raise ValueError("sequence index j must be nonnegative")
    jf = j.astype(float)
    out = np.zeros(j.shape, dtype=float)
    big = j >= 2
    if not np.any(big):
        return out
    jb = jf[big]
    logj = np.log(jb)
    q = 1.0 / (jb * logj**spec.alpha)
    amp = np.full(jb.shape, spec.b_plus1, dtype=float)
    if spec.b_minus1 != 0.0:
        amp += spec.b_minus1 * np.where(j[big] % 2 == 0, 1.0, -1.0)
    for osc in spec.oscillations:
        amp += 2.0 * osc.b * np.cos(osc.phi * jb - osc.psi)
    val = q * amp
    if spec.perturbation is not None:
        pert = spec.perturbation
        val += pert.scale / (jb * logj ** (spec.alpha + pert.beta))
    out[big] = val
    return out


def eval_discrete(spec: DiscreteSymbolSpec, j: int) -> float:
    """Model sequence h(j); zero at j = 0, 1."""
    return float(eval_discrete_many(spec, np.asarray([j]))[0])


def _cutoffs_of(spec: ContinuousKernelSpec) -> CutoffPair:
    c1, c2, C1, C2 = spec.cutoffs
    return CutoffPair(c1, c2, C1, C2)


def eval_kernel_many(spec: ContinuousKernelSpec, t) -> np.ndarray:
    """Vectorized kernel h(t) over a positive array of points."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0.0):
        raise ValueError("kernel argument t must be positive")
    cut = _cutoffs_of(spec)
    out = np.zeros(t.shape, dtype=float)

    if spec.b_zero != 0.0:
        # q0 support is (0, c2); log(1/t) > 0 there.
        mask = t < cut.c2
        ts = t[mask]
        q0 = cut.chi0(ts) / (ts * np.log(1.0 / ts) ** spec.alpha)
        out[mask] += spec.b_zero * q0

    tail_needed = spec.b_inf != 0.0 or spec.oscillations
    if tail_needed:
        # q_inf support is (C1, infinity); log t > 0 there.
        mask = t > cut.C1
        ts = t[mask]
        qinf = cut.chi_inf(ts) / (ts * np.log(ts) ** spec.alpha)
        amp = np.full(ts.shape, spec.b_inf, dtype=float)
        for osc in spec.oscillations:
            amp += 2.0 * osc.b * np.cos(osc.rho * ts - osc.psi)
        out[mask] += amp * qinf

    for sing in spec.local_singularities:
        mask = t <= sing.t0
        out[mask] += sing.coeff * (sing.t0 - t[mask]) ** sing.m

    return out


def eval_kernel(spec: ContinuousKernelSpec, t: float) -> float:
    """Model kernel h(t), t > 0."""
    return float(eval_kernel_many(spec, np.asarray([t]))[0])


def finite_difference(values, m: int):
    """m-fold forward difference; output length shrinks by m."""
    values = np.asarray(values, dtype=float)
    if m < 0:
        raise ValueError(f"difference order m must be nonnegative, got {m}")
    if m > len(values) - 1:
        raise ValueError(
            f"sequence of length {len(values)} is too short for difference order {m}"
        )
    if m == 0:
        return values.copy()
    return np.diff(values, n=m)


@dataclass(frozen=True)
class DecayRow:
    m: int
    window_starts: tuple
    maxima: tuple
    decreasing: bool


@dataclass(frozen=True)
class DecayReport:
    """Windowed maxima of |g^(m)(j)| j^{1+m} (log j)^alpha over dyadic windows."""

    alpha: float
    j0: int
    rows: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(row.decreasing for row in self.rows)


def _dyadic_maxima(ratios: np.ndarray, j_index: np.ndarray):
    if len(j_index) == 0:
        return (), ()
    starts = []
    maxima = []
    s = max(int(math.floor(math.log2(j_index[0]))), 1)
    while 2**s <= j_index[-1]:
        lo, hi = 2**s, 2 ** (s + 1)
        mask = (j_index >= lo) & (j_index < hi)
        if np.any(mask):
            starts.append(lo)
            maxima.append(float(np.max(ratios[mask])))
        s += 1
    return tuple(starts), tuple(maxima)


def check_error_decay(values, j0: int, alpha: float, m_max: int) -> DecayReport:
    """Numerical proxy for the small-o decay conditions on an error sequence.

    For each m <= m_max the m-fold forward difference g^(m)(j) is scaled by
    j^{1+m} (log j)^alpha and its maxima over dyadic windows [2^s, 2^{s+1})
    are reported; a decreasing sequence of maxima is the pass signal.  Entries
    with j < 2 are skipped (the log weight is not usable there).
    """
    if m_max > m_cap(alpha):
        raise ValueError(
            f"m_max={m_max} exceeds the controlled difference order m_cap={m_cap(alpha)}"
        )
    values = np.asarray(values, dtype=float)
    rows = []
    for m in range(m_max + 1):
        diff = finite_difference(values, m)
        j = np.arange(j0, j0 + len(diff))
        keep = j >= 2
        jk = j[keep].astype(float)
        ratios = np.abs(diff[keep]) * jk ** (1 + m) * np.log(jk) ** alpha
        starts, maxima = _dyadic_maxima(ratios, j[keep])
        # Strict decrease with a small relative margin, so a constant ratio
        # cannot sneak through on rounding noise; an identically zero tail
        # passes by definition.
        decreasing = all(
            b <= a * (1.0 - 1e-9) or (a == 0.0 and b == 0.0)
            for a, b in zip(maxima, maxima[1:])
        )
        rows.append(DecayRow(m, starts, maxima, decreasing))
    return DecayReport(alpha, j0, tuple(rows))
