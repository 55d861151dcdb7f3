"""Problem specifications and closed-form eigenvalue-asymptotics coefficients.

Discrete side: a symbol sequence on the half-line lattice,

    h(j) = (b_plus1 + b_minus1 (-1)^j + 2 sum_l b_l cos(phi_l j - psi_l))
           * j^{-1} (log j)^{-alpha},        j >= 2,   h(0) = h(1) = 0,

whose Hankel matrix Gamma(h)[j][k] = h(j+k) has extreme eigenvalues obeying
lambda_n^{+-} = a^{+-} n^{-alpha} + o(n^{-alpha}).  The leading coefficients
combine additively in p-th powers, p = 1/alpha:

    a^{+-} = kappa(alpha) * ((b_minus1)_{+-}^p + (b_plus1)_{+-}^p
                              + sum_l |b_l|^p)^alpha,

with x_{+-} = (|x| +- x)/2 and the universal constant

    kappa(alpha) = 2^{-alpha} pi^{1-2 alpha} B(1/(2 alpha), 1/2)^alpha.

Continuous side: an integral kernel on (0, infinity) built from the model
pieces q0(t) = chi0(t) t^{-1} (log(1/t))^{-alpha} (singular at t=0),
q_inf(t) = chi_inf(t) t^{-1} (log t)^{-alpha} (slow tail), oscillations
cos(rho t - psi) riding q_inf, and finitely supported local singularities
(t0 - t)^m on [0, t0].  A local singularity alone yields the exact law
lambda_n^{+-} ~ m! t0^{m+1} (2 pi n)^{-m-1}; combined specs (requiring
alpha = m + 1) enter the same p-th power combination with weight
(2 pi)^{-1} t0 (m! |coeff|)^{1/alpha}.

Everything here is closed-form arithmetic; no operator is ever built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ._special import log_beta

__all__ = [
    "Oscillation",
    "KernelOscillation",
    "LocalSingularity",
    "Perturbation",
    "DiscreteSymbolSpec",
    "ContinuousKernelSpec",
    "AsymptoticPrediction",
    "UnsupportedCombinationError",
    "kappa",
    "m_cap",
    "predict_discrete",
    "predict_continuous",
    "predict_local_term",
]

DEFAULT_CUTOFFS = (0.25, 0.5, 1.5, 2.0)


class UnsupportedCombinationError(ValueError):
    """Parameter combination the asymptotic theory does not cover."""


@dataclass(frozen=True)
class Oscillation:
    """One oscillating term 2 b cos(phi j - psi) of a discrete symbol."""

    phi: float
    psi: float
    b: float

    def __post_init__(self):
        if not 0.0 < self.phi < math.pi:
            raise ValueError(
                f"oscillation frequency phi must lie strictly inside (0, pi), got {self.phi}"
            )


@dataclass(frozen=True)
class KernelOscillation:
    """One oscillating term 2 b cos(rho t - psi) riding the q_inf tail."""

    rho: float
    psi: float
    b: float

    def __post_init__(self):
        if self.rho <= 0.0:
            raise ValueError(f"kernel oscillation frequency rho must be positive, got {self.rho}")


@dataclass(frozen=True)
class LocalSingularity:
    """Kernel term coeff * (t0 - t)^m on [0, t0], zero beyond t0."""

    t0: float
    m: int
    coeff: float

    def __post_init__(self):
        if self.t0 <= 0.0:
            raise ValueError(f"singularity location t0 must be positive, got {self.t0}")
        if self.m < 0 or self.m != int(self.m):
            raise ValueError(f"singularity order m must be a nonnegative integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True)
class Perturbation:
    """Additive error term scale * j^{-1} (log j)^{-alpha-beta}, beta > 0."""

    scale: float
    beta: float

    def __post_init__(self):
        if self.beta <= 0.0:
            raise ValueError(f"perturbation decay exponent beta must be positive, got {self.beta}")


def _as_oscillations(items, cls):
    out = []
    for item in items:
        if isinstance(item, cls):
            out.append(item)
        else:
            out.append(cls(*item))
    return tuple(out)


@dataclass(frozen=True)
class DiscreteSymbolSpec:
    """Parameters of the discrete model sequence h(j)."""

    alpha: float
    b_plus1: float = 0.0
    b_minus1: float = 0.0
    oscillations: tuple = ()
    perturbation: Perturbation | None = None

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        object.__setattr__(
            self, "oscillations", _as_oscillations(self.oscillations, Oscillation)
        )
        phis = [osc.phi for osc in self.oscillations]
        for i in range(len(phis)):
            for j in range(i + 1, len(phis)):
                if phis[i] == phis[j]:
                    raise ValueError(
                        f"oscillation frequencies must be pairwise distinct, phi={phis[i]} repeats"
                    )
        if self.perturbation is not None and not isinstance(self.perturbation, Perturbation):
            object.__setattr__(self, "perturbation", Perturbation(*self.perturbation))


@dataclass(frozen=True)
class ContinuousKernelSpec:
    """Parameters of the continuous model kernel h(t)."""

    alpha: float
    b_zero: float = 0.0
    b_inf: float = 0.0
    oscillations: tuple = ()
    local_singularities: tuple = ()
    cutoffs: tuple = DEFAULT_CUTOFFS

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        object.__setattr__(
            self, "oscillations", _as_oscillations(self.oscillations, KernelOscillation)
        )
        object.__setattr__(
            self,
            "local_singularities",
            _as_oscillations(self.local_singularities, LocalSingularity),
        )
        rhos = [osc.rho for osc in self.oscillations]
        if len(set(rhos)) != len(rhos):
            raise ValueError("kernel oscillation frequencies rho must be pairwise distinct")
        t0s = [s.t0 for s in self.local_singularities]
        if len(set(t0s)) != len(t0s):
            raise ValueError("local singularity locations t0 must be pairwise distinct")
        c1, c2, C1, C2 = self.cutoffs
        if not (0.0 < c1 < c2 < 1.0 < C1 < C2):
            raise ValueError(
                f"cutoffs must satisfy 0 < c1 < c2 < 1 < C1 < C2, got {self.cutoffs}"
            )
        if self.local_singularities and self.b_zero != 0.0:
            raise UnsupportedCombinationError(
                "a t->0 singular term (b_zero != 0) cannot be combined with local "
                "singularities; the two contributions are not independent"
            )


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Leading coefficients of lambda_n^{+-} = a^{+-} n^{-alpha} + o(n^{-alpha}).

    terms lists each contributing summand as (label, share of a_plus^p,
    share of a_minus^p) with p = 1/alpha; the shares sum to a_plus^p and
    a_minus^p respectively.  a_singular is the coefficient of the merged
    singular-value sequence, tied to a_plus and a_minus by the exact identity
    a_singular = (a_plus^{1/alpha} + a_minus^{1/alpha})^alpha.
    """

    alpha: float
    a_plus: float
    a_minus: float
    a_singular: float
    terms: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "a_plus": self.a_plus,
            "a_minus": self.a_minus,
            "a_singular": self.a_singular,
            "terms": [
                {"label": label, "plus_pth": tp, "minus_pth": tm}
                for (label, tp, tm) in self.terms
            ],
        }


def kappa(alpha: float) -> float:
    """Universal leading coefficient 2^{-a} pi^{1-2a} B(1/(2a), 1/2)^a."""
    if alpha <= 0.0:
        raise ValueError(f"kappa requires alpha > 0, got {alpha}")
    lb = log_beta(1.0 / (2.0 * alpha), 0.5)
    return math.exp(
        -alpha * math.log(2.0) + (1.0 - 2.0 * alpha) * math.log(math.pi) + alpha * lb
    )


def m_cap(alpha: float) -> int:
    """Highest finite-difference order the error terms must control."""
    if alpha <= 0.0:
        raise ValueError(f"m_cap requires alpha > 0, got {alpha}")
    if alpha < 0.5:
        return 0
    return int(math.floor(alpha)) + 1


def _positive_part(x: float) -> float:
    # (|x| + x)/2 with an exact zero for the non-matching sign.
    return x if x > 0.0 else 0.0


def _negative_part(x: float) -> float:
    return -x if x < 0.0 else 0.0


def _combine(alpha: float, plus_terms, minus_terms):
    p = 1.0 / alpha
    total_plus = math.fsum(plus_terms)
    total_minus = math.fsum(minus_terms)
    a_plus = total_plus**alpha if total_plus > 0.0 else 0.0
    a_minus = total_minus**alpha if total_minus > 0.0 else 0.0
    # Exact identity for the merged sequence; p-th powers add.
    a_singular = 0.0
    if total_plus + total_minus > 0.0:
        a_singular = (a_plus**p + a_minus**p) ** alpha
    return a_plus, a_minus, a_singular


def predict_discrete(spec: DiscreteSymbolSpec) -> AsymptoticPrediction:
    """Leading eigenvalue coefficients for the discrete symbol spec."""
    alpha = spec.alpha
    p = 1.0 / alpha
    kap_p = kappa(alpha) ** p

    terms = []
    if spec.b_minus1 != 0.0:
        terms.append(
            (
                "point mu=-1",
                kap_p * _positive_part(spec.b_minus1) ** p,
                kap_p * _negative_part(spec.b_minus1) ** p,
            )
        )
    if spec.b_plus1 != 0.0:
        terms.append(
            (
                "point mu=+1",
                kap_p * _positive_part(spec.b_plus1) ** p,
                kap_p * _negative_part(spec.b_plus1) ** p,
            )
        )
    for osc in spec.oscillations:
        share = kap_p * abs(osc.b) ** p
        terms.append((f"oscillation phi={osc.phi:.12g}", share, share))

    a_plus, a_minus, a_singular = _combine(
        alpha, [t[1] for t in terms], [t[2] for t in terms]
    )
    return AsymptoticPrediction(alpha, a_plus, a_minus, a_singular, tuple(terms))


def predict_continuous(spec: ContinuousKernelSpec) -> AsymptoticPrediction:
    """Leading eigenvalue coefficients for the continuous kernel spec."""
    alpha = spec.alpha
    p = 1.0 / alpha
    kap_p = kappa(alpha) ** p

    for sing in spec.local_singularities:
        if alpha != sing.m + 1:
            raise UnsupportedCombinationError(
                f"a local singularity of order m={sing.m} is only covered at "
                f"alpha = m + 1 = {sing.m + 1}, got alpha = {alpha}"
            )

    terms = []
    for sing in spec.local_singularities:
        share = (
            sing.t0 / (2.0 * math.pi) * (math.factorial(sing.m) * abs(sing.coeff)) ** p
        )
        terms.append((f"local singularity t0={sing.t0:.12g}", share, share))
    if spec.b_zero != 0.0:
        terms.append(
            (
                "t->0 singularity",
                kap_p * _positive_part(spec.b_zero) ** p,
                kap_p * _negative_part(spec.b_zero) ** p,
            )
        )
    if spec.b_inf != 0.0:
        terms.append(
            (
                "slow tail",
                kap_p * _positive_part(spec.b_inf) ** p,
                kap_p * _negative_part(spec.b_inf) ** p,
            )
        )
    for osc in spec.oscillations:
        share = kap_p * abs(osc.b) ** p
        terms.append((f"oscillation rho={osc.rho:.12g}", share, share))

    a_plus, a_minus, a_singular = _combine(
        alpha, [t[1] for t in terms], [t[2] for t in terms]
    )
    return AsymptoticPrediction(alpha, a_plus, a_minus, a_singular, tuple(terms))


def predict_local_term(t0: float, m: int, n: int) -> float:
    """Exact leading eigenvalue law m! t0^{m+1} (2 pi n)^{-m-1} of one local singularity."""
    if t0 <= 0.0:
        raise ValueError(f"t0 must be positive, got {t0}")
    if m < 0 or m != int(m):
        raise ValueError(f"m must be a nonnegative integer, got {m}")
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    m = int(m)
    return math.factorial(m) * t0 ** (m + 1) * (2.0 * math.pi * n) ** (-(m + 1))
