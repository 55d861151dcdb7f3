"""Turns computed spectra into verdicts about the asymptotic laws.

The fits quantify how close the windowed eigenvalue data sits to the
predicted power law lambda_n ~ a n^-alpha: the plain model takes the median
of n^alpha lambda_n over the window (robust against the slowly decaying
1/log n bias and stray unconverged values), the log-corrected model fits
n^alpha lambda_n ~ a + c/log n by least squares because the error terms of
the underlying expansions are one logarithm weaker than the main term.

Eigenvalue lists are extended by zero past their converged length when the
caller asks for it: a finite symmetric truncation of a compact operator has
lambda_n := 0 once n exceeds the count of (numerically) nonzero eigenvalues
of that sign, which is the standard min-max convention.  The strict mode
raises instead, reporting the available counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .eigensolve import SpectrumResult, dense_spectrum, lanczos_extremes
from .hankel_core import DENSE_LIMIT, build_discrete, dense_matrix, matvec
from .model import (
    AsymptoticPrediction,
    DiscreteSymbolSpec,
    predict_discrete,
)

__all__ = [
    "SolverParams",
    "FitReport",
    "fit_coefficient",
    "window_scaled_median",
    "SymmetryStats",
    "symmetry_ratio",
    "LocalizationReport",
    "compare_localization",
    "TruncationReport",
    "truncation_study",
    "discrete_spectrum",
]

DENSE_SOLVE_LIMIT = 2048


@dataclass(frozen=True)
class SolverParams:
    """Eigensolver knobs shared by the pipeline helpers."""

    k: int = 64
    tol: float = 1e-8
    max_iter: int = 2000
    seed: int = 0
    basis_cap: int = 600

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.tol <= 0.0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")


def discrete_spectrum(spec: DiscreteSymbolSpec, N: int, params: SolverParams):
    """Build the order-N truncation of the spec and solve for both ends.

    Dense route below DENSE_SOLVE_LIMIT (cheap and exhaustive there),
    Lanczos above it.
    """
    H = build_discrete(spec, N)
    if N <= DENSE_SOLVE_LIMIT:
        return dense_spectrum(dense_matrix(H))
    return lanczos_extremes(
        lambda v: matvec(H, v),
        N,
        k=params.k,
        tol=params.tol,
        max_iter=params.max_iter,
        seed=params.seed,
        basis_cap=params.basis_cap,
    )


def _window_values(values, n_lo, n_hi, extend_by_zero, channel):
    if len(values) < n_hi and not extend_by_zero:
        raise ValueError(
            f"window [{n_lo}, {n_hi}] exceeds the {len(values)} converged "
            f"{channel} eigenvalues; pass extend_by_zero=True to treat the "
            f"missing tail as zero"
        )
    out = np.zeros(n_hi - n_lo + 1)
    for i, n in enumerate(range(n_lo, n_hi + 1)):
        out[i] = values[n - 1] if n <= len(values) else 0.0
    return out


def window_scaled_median(
    S: SpectrumResult,
    alpha: float,
    window,
    sign: str,
    extend_by_zero: bool = False,
) -> float:
    """Median of n^alpha lambda_n over the window for one sign channel."""
    n_lo, n_hi = _check_window(window)
    if sign not in ("plus", "minus"):
        raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")
    values = S.lambda_plus if sign == "plus" else S.lambda_minus
    lam = _window_values(values, n_lo, n_hi, extend_by_zero, sign)
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    return float(np.median(n**alpha * lam))


def _check_window(window):
    n_lo, n_hi = int(window[0]), int(window[1])
    if not (1 <= n_lo <= n_hi):
        raise ValueError(f"window must satisfy 1 <= n_min <= n_max, got {window}")
    return n_lo, n_hi


@dataclass
class FitReport:
    """Windowed fit of lambda_n ~ a n^-alpha for both sign channels."""

    alpha: float
    window: tuple
    a_hat_plus: float
    a_hat_minus: float
    model: str
    c_hat: tuple | None
    per_n: list
    drift: float

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "window": list(self.window),
            "a_hat_plus": self.a_hat_plus,
            "a_hat_minus": self.a_hat_minus,
            "model": self.model,
            "c_hat": list(self.c_hat) if self.c_hat is not None else None,
            "drift": self.drift,
            "per_n": [list(row) for row in self.per_n],
        }


def _fit_channel(scaled, n, model):
    if model == "plain":
        return float(np.median(scaled)), None
    design = np.column_stack([np.ones_like(n), 1.0 / np.log(n)])
    coef, *_ = np.linalg.lstsq(design, scaled, rcond=None)
    return max(float(coef[0]), 0.0), float(coef[1])


def _channel_drift(scaled):
    top = float(np.max(scaled) - np.min(scaled))
    mid = abs(float(np.median(scaled)))
    if top == 0.0:
        return 0.0
    return top / mid if mid > 0.0 else math.inf


def fit_coefficient(
    S: SpectrumResult,
    alpha: float,
    window,
    model: str = "plain",
    extend_by_zero: bool = False,
) -> FitReport:
    """Fit the windowed power-law coefficient for both sign channels.

    model='plain' takes the median of n^alpha lambda_n; 'log_corrected'
    solves the least-squares system n^alpha lambda_n ~ a + c/log n and
    reports a (clamped at 0).  drift is the worse over the two channels of
    the relative spread (max - min) / |median| of the scaled values.
    """
    if model not in ("plain", "log_corrected"):
        raise ValueError(f"model must be 'plain' or 'log_corrected', got {model!r}")
    n_lo, n_hi = _check_window(window)
    n = np.arange(n_lo, n_hi + 1, dtype=float)
    lam_p = _window_values(S.lambda_plus, n_lo, n_hi, extend_by_zero, "positive")
    lam_m = _window_values(S.lambda_minus, n_lo, n_hi, extend_by_zero, "negative")
    scaled_p = n**alpha * lam_p
    scaled_m = n**alpha * lam_m
    a_plus, c_plus = _fit_channel(scaled_p, n, model)
    a_minus, c_minus = _fit_channel(scaled_m, n, model)
    per_n = [
        (int(n[i]), lam_p[i], lam_m[i], scaled_p[i], scaled_m[i])
        for i in range(len(n))
    ]
    return FitReport(
        alpha=alpha,
        window=(n_lo, n_hi),
        a_hat_plus=a_plus,
        a_hat_minus=a_minus,
        model=model,
        c_hat=None if model == "plain" else (c_plus, c_minus),
        per_n=per_n,
        drift=max(_channel_drift(scaled_p), _channel_drift(scaled_m)),
    )


@dataclass
class SymmetryStats:
    """Per-n ratios lambda_n+ / lambda_n- and their window statistics."""

    window: tuple
    ratios: np.ndarray
    median: float
    lo: float
    hi: float


def symmetry_ratio(S: SpectrumResult, window) -> SymmetryStats:
    """Ratios of the two sign channels over the window.

    Both channels must cover the window; otherwise this is a domain error
    reporting how many eigenvalues each channel has.
    """
    n_lo, n_hi = _check_window(window)
    if len(S.lambda_plus) < n_hi or len(S.lambda_minus) < n_hi:
        raise ValueError(
            f"window [{n_lo}, {n_hi}] needs both channels: have "
            f"{len(S.lambda_plus)} positive and {len(S.lambda_minus)} "
            f"negative eigenvalues"
        )
    lp = S.lambda_plus[n_lo - 1 : n_hi]
    lm = S.lambda_minus[n_lo - 1 : n_hi]
    ratios = lp / lm
    return SymmetryStats(
        window=(n_lo, n_hi),
        ratios=ratios,
        median=float(np.median(ratios)),
        lo=float(np.min(ratios)),
        hi=float(np.max(ratios)),
    )


def _support_markers(spec: DiscreteSymbolSpec):
    markers = []
    if spec.b_plus1 != 0.0:
        markers.append(("point", 1.0))
    if spec.b_minus1 != 0.0:
        markers.append(("point", -1.0))
    for osc in spec.oscillations:
        markers.append(("pair", float(osc.phi)))
    return markers


def _markers_overlap(a, b) -> bool:
    for kind_a, val_a in a:
        for kind_b, val_b in b:
            if kind_a == kind_b and abs(val_a - val_b) < 1e-12:
                return True
    return False


def _merge_specs(specs):
    alpha = specs[0].alpha
    for s in specs[1:]:
        if s.alpha != alpha:
            raise ValueError(
                f"all specs must share alpha; got {alpha} and {s.alpha}"
            )
    if any(s.perturbation is not None for s in specs):
        raise ValueError("perturbed specs cannot be combined")
    return DiscreteSymbolSpec(
        alpha=alpha,
        b_plus1=sum(s.b_plus1 for s in specs),
        b_minus1=sum(s.b_minus1 for s in specs),
        oscillations=tuple(o for s in specs for o in s.oscillations),
    )


@dataclass
class LocalizationReport:
    """Additivity check: spectrum of a sum vs its singular-support parts."""

    prediction_sum: AsymptoticPrediction
    predictions: list
    fit_sum: FitReport
    fits: list
    additivity_gap_plus: float
    additivity_gap_minus: float


def compare_localization(
    specs,
    N: int,
    params: SolverParams = SolverParams(),
    window=(8, 32),
    model: str = "plain",
    spectrum_fn=None,
) -> LocalizationReport:
    """Fit the summed spec and each component; report additivity in p-th powers.

    The singular supports ({1} for the b_plus1 point, {-1} for b_minus1,
    conjugate pairs e^{+-i phi} per oscillation) must be pairwise disjoint
    across the specs; the predicted coefficients of the sum then combine the
    component contributions additively in the p = 1/alpha powers, which is
    exactly how predict_discrete computes them.  spectrum_fn(spec, N, params)
    may replace the build-and-solve step (testing seam).
    """
    specs = list(specs)
    if not specs:
        raise ValueError("need at least one spec")
    markers = [_support_markers(s) for s in specs]
    for i in range(len(specs)):
        for j in range(i + 1, len(specs)):
            if _markers_overlap(markers[i], markers[j]):
                raise ValueError(
                    f"singular supports of specs {i} and {j} overlap; "
                    f"localization needs disjoint supports"
                )
    if spectrum_fn is None:
        spectrum_fn = discrete_spectrum
    merged = _merge_specs(specs)
    prediction_sum = predict_discrete(merged)
    predictions = [predict_discrete(s) for s in specs]
    fit_sum = fit_coefficient(
        spectrum_fn(merged, N, params), merged.alpha, window, model,
        extend_by_zero=True,
    )
    fits = [
        fit_coefficient(
            spectrum_fn(s, N, params), s.alpha, window, model,
            extend_by_zero=True,
        )
        for s in specs
    ]
    p = 1.0 / merged.alpha
    gap_plus = abs(
        fit_sum.a_hat_plus**p - sum(f.a_hat_plus**p for f in fits)
    )
    gap_minus = abs(
        fit_sum.a_hat_minus**p - sum(f.a_hat_minus**p for f in fits)
    )
    return LocalizationReport(
        prediction_sum=prediction_sum,
        predictions=predictions,
        fit_sum=fit_sum,
        fits=fits,
        additivity_gap_plus=gap_plus,
        additivity_gap_minus=gap_minus,
    )


@dataclass
class TruncationReport:
    """Fitted coefficients across truncation orders vs the prediction."""

    N_list: list
    fits: list
    deviations: list
    improving: bool
    prediction: AsymptoticPrediction


def truncation_study(
    spec: DiscreteSymbolSpec,
    N_list,
    params: SolverParams = SolverParams(),
    window=(8, 32),
    model: str = "plain",
    spectrum_fn=None,
) -> TruncationReport:
    """Run the pipeline at each N; deviations are max over sign channels of
    |a_hat - a_predicted|.  Flags runs whose deviation sequence is not
    non-increasing."""
    N_list = [int(N) for N in N_list]
    if not N_list:
        raise ValueError("N_list must not be empty")
    if any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ValueError(f"N_list must be strictly increasing, got {N_list}")
    if spectrum_fn is None:
        spectrum_fn = discrete_spectrum
    prediction = predict_discrete(spec)
    fits = [
        fit_coefficient(
            spectrum_fn(spec, N, params), spec.alpha, window, model,
            extend_by_zero=True,
        )
        for N in N_list
    ]
    deviations = [
        max(
            abs(f.a_hat_plus - prediction.a_plus),
            abs(f.a_hat_minus - prediction.a_minus),
        )
        for f in fits
    ]
    improving = all(
        deviations[i + 1] <= deviations[i] for i in range(len(deviations) - 1)
    )
    return TruncationReport(
        N_list=N_list,
        fits=fits,
        deviations=deviations,
        improving=improving,
        prediction=prediction,
    )
