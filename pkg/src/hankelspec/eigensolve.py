"""Eigensolvers and counting functions for symmetric truncations.

Two routes to the spectrum:

  * dense_spectrum: full symmetric eigendecomposition, the reference route,
    usable up to the dense materialization limit;
  * lanczos_extremes: matrix-free Lanczos with full reorthogonalization and
    thick restarts, returning converged eigenvalues at both spectral ends,
    usable at orders around 2^18 where dense storage is impossible.

Both report eigenvalues as two positive, non-increasing lists: lambda_plus
for the positive end and lambda_minus for the magnitudes of the negative
end.  Eigenvalues inside the zero band |theta| <= 1e-13 * ||A|| are dropped
from the lists and counted separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hankel_core import DENSE_LIMIT

__all__ = [
    "SpectrumResult",
    "dense_spectrum",
    "lanczos_extremes",
    "counting",
    "delta_p_proxy",
]

ZERO_BAND_REL = 1e-13
ASYMMETRY_REL = 1e-12


@dataclass
class SpectrumResult:
    """Converged spectrum of one symmetric truncation.

    lambda_plus / lambda_minus are positive and sorted non-increasing;
    residuals_* are the per-eigenvalue Ritz residual norms (zero for the
    dense route).  converged is False when the solver hit its iteration
    budget before securing the requested count at both ends; the partial
    lists are still valid converged prefixes.
    """

    lambda_plus: np.ndarray
    lambda_minus: np.ndarray
    residuals_plus: np.ndarray
    residuals_minus: np.ndarray
    order: int
    solver_id: str
    seed: int
    tol: float
    converged: bool = True
    n_dropped: int = 0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "solver_id": self.solver_id,
            "seed": self.seed,
            "tol": self.tol,
            "converged": self.converged,
            "n_dropped": self.n_dropped,
            "lambda_plus": [float(x) for x in self.lambda_plus],
            "lambda_minus": [float(x) for x in self.lambda_minus],
            "residuals_plus": [float(x) for x in self.residuals_plus],
            "residuals_minus": [float(x) for x in self.residuals_minus],
            "details": {k: v for k, v in sorted(self.details.items())},
        }


def dense_spectrum(A) -> SpectrumResult:
    """Full spectrum by symmetric eigendecomposition (reference route)."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    if n > DENSE_LIMIT:
        raise ValueError(f"order {n} exceeds the dense limit {DENSE_LIMIT}")
    amax = float(np.max(np.abs(A))) if n else 0.0
    if amax > 0.0:
        asym = float(np.max(np.abs(A - A.T)))
        if asym > ASYMMETRY_REL * amax:
            raise ValueError(
                f"matrix is not symmetric: max asymmetry {asym:.3e} exceeds "
                f"{ASYMMETRY_REL:.0e} * max entry {amax:.3e}"
            )
    evals = np.linalg.eigvalsh(A)
    anorm = float(np.max(np.abs(evals))) if n else 0.0
    band = ZERO_BAND_REL * anorm
    pos = evals[evals > band]
    neg = evals[evals < -band]
    lam_plus = np.sort(pos)[::-1].copy()
    lam_minus = np.sort(-neg)[::-1].copy()
    dropped = n - len(pos) - len(neg)
    return SpectrumResult(
        lambda_plus=lam_plus,
        lambda_minus=lam_minus,
        residuals_plus=np.zeros(len(lam_plus)),
        residuals_minus=np.zeros(len(lam_minus)),
        order=n,
        solver_id="dense",
        seed=0,
        tol=0.0,
        converged=True,
        n_dropped=dropped,
        details={"norm_est": anorm},
    )


def _estimate_norm(apply, rng, n: int, steps: int = 20) -> float:
    v = rng.standard_normal(n)
    nv = float(np.linalg.norm(v))
    if nv == 0.0:
        return 0.0
    v /= nv
    est = 0.0
    for _ in range(steps):
        w = np.asarray(apply(v), dtype=float)
        nw = float(np.linalg.norm(w))
        if nw == 0.0:
            return 0.0
        est = nw
        v = w / nw
    return est


def _converged_prefixes(theta, res, tol, norm_est):
    """Contiguous converged position counts inward from both spectral ends."""
    m = len(theta)
    thresh = tol * np.maximum(np.abs(theta), norm_est)
    ok = res <= thresh
    top = 0
    for i in range(m - 1, -1, -1):
        if ok[i]:
            top += 1
        else:
            break
    bot = 0
    for i in range(m):
        if ok[i]:
            bot += 1
        else:
            break
    return top, bot


def lanczos_extremes(
    apply,
    n: int,
    k: int,
    tol: float = 1e-10,
    max_iter: int = 2000,
    seed: int = 0,
    basis_cap: int = 600,
    check_every: int = 8,
) -> SpectrumResult:
    """Extreme eigenvalues at both spectral ends of a symmetric operator.

    apply(v) must implement the symmetric matvec for vectors of length n.
    The solver runs one Lanczos recurrence with full reorthogonalization
    against every stored basis vector, extracting Ritz pairs at both ends
    from the same basis; when the basis reaches basis_cap vectors it is
    thick-restarted around the wanted ends.  A Ritz pair (theta, y) counts
    as converged when its residual ||A y - theta y|| = |beta * s_last| is
    at most tol * max(|theta|, ||A||_est), counted contiguously inward from
    each end.  max_iter bounds the number of Lanczos operator applications
    (the 20 power-method steps estimating ||A|| are separate).

    Deterministic for a fixed seed: the start vector and every subsequent
    decision depend only on the seed, the dimension, and the operator.
    """
    if k < 1:
        raise ValueError(f"count per end k must be at least 1, got {k}")
    if n < 1:
        raise ValueError(f"dimension must be positive, got {n}")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")

    rng = np.random.default_rng(seed)
    k_eff = min(k, n)
    cap = max(min(basis_cap, n), min(n, 2 * k_eff + 2))
    keep_per_end = min(k_eff + 32, (cap - 2) // 2 if cap >= 6 else cap // 2)

    v0 = rng.standard_normal(n)
    v0 /= np.linalg.norm(v0)
    norm_est = _estimate_norm(apply, rng, n)
    zero_band = ZERO_BAND_REL * norm_est
    breakdown = max(norm_est, 1.0) * 1e-14

    V = np.empty((cap + 1, n))
    T = np.zeros((cap + 1, cap + 1))
    V[0] = v0
    m = 1
    applies = 0
    restarts = 0
    beta = 0.0
    flagged_converged = False
    exhausted = False

    while True:
        if applies >= max_iter:
            break
        cur = m - 1
        w = np.asarray(apply(V[cur]), dtype=float)
        applies += 1
        w_pre = float(np.linalg.norm(w))
        c = V[:m] @ w
        w = w - V[:m].T @ c
        beta = float(np.linalg.norm(w))
        if beta < 0.70710678 * w_pre:
            c2 = V[:m] @ w
            w = w - V[:m].T @ c2
            c = c + c2
            beta = float(np.linalg.norm(w))
        T[:m, cur] = c
        T[cur, :m] = c

        if m == n:
            exhausted = True
            break

        at_cap = m == cap
        if at_cap or m % check_every == 0:
            theta, S = np.linalg.eigh(T[:m, :m])
            res = beta * np.abs(S[m - 1, :])
            top, bot = _converged_prefixes(theta, res, tol, norm_est)
            if top >= k_eff and bot >= k_eff:
                flagged_converged = True
                break
            if at_cap:
                # Thick restart: lock both spectral ends plus a buffer and
                # continue the recurrence from the current residual direction.
                keep_idx = np.concatenate(
                    [np.arange(keep_per_end), np.arange(m - keep_per_end, m)]
                )
                kept_theta = theta[keep_idx]
                kept_b = beta * S[m - 1, keep_idx]
                Y = S[:, keep_idx].T @ V[:m]
                s = len(keep_idx)
                V[:s] = Y
                T[:, :] = 0.0
                T[:s, :s] = np.diag(kept_theta)
                if beta > breakdown:
                    V[s] = w / beta
                    T[s, :s] = kept_b
                    T[:s, s] = kept_b
                else:
                    V[s] = _fresh_direction(rng, V[:s], n)
                m = s + 1
                restarts += 1
                continue

        if beta <= breakdown:
            # Invariant subspace found early; continue in a fresh direction.
            V[m] = _fresh_direction(rng, V[:m], n)
            T[m, cur] = 0.0
            T[cur, m] = 0.0
            beta = 0.0
            m += 1
            continue

        V[m] = w / beta
        T[m, cur] = beta
        T[cur, m] = beta
        m += 1

    theta, S = np.linalg.eigh(T[:m, :m])
    if exhausted:
        # The basis spans the whole space, so T is exact and residuals vanish.
        res = np.zeros(m)
        top = bot = m
    else:
        res = beta * np.abs(S[m - 1, :])
        top, bot = _converged_prefixes(theta, res, tol, norm_est)
    converged = (top >= k_eff and bot >= k_eff) or exhausted

    lam_plus, res_plus, dropped_top = [], [], 0
    for i in range(m - 1, m - 1 - top, -1):
        if theta[i] > zero_band:
            lam_plus.append(theta[i])
            res_plus.append(res[i])
        elif abs(theta[i]) <= zero_band:
            dropped_top += 1
        else:
            break
    lam_minus, res_minus, dropped_bot = [], [], 0
    for i in range(bot):
        if theta[i] < -zero_band:
            lam_minus.append(-theta[i])
            res_minus.append(res[i])
        elif abs(theta[i]) <= zero_band:
            dropped_bot += 1
        else:
            break

    return SpectrumResult(
        lambda_plus=np.asarray(lam_plus),
        lambda_minus=np.asarray(lam_minus),
        residuals_plus=np.asarray(res_plus),
        residuals_minus=np.asarray(res_minus),
        order=n,
        solver_id="lanczos_full_reorth_thick_restart",
        seed=seed,
        tol=tol,
        converged=converged,
        n_dropped=dropped_top + dropped_bot,
        details={
            "applies": applies,
            "restarts": restarts,
            "basis_final": m,
            "basis_cap": cap,
            "norm_est": norm_est,
            "top_converged": top,
            "bot_converged": bot,
            "requested_per_end": k_eff,
        },
    )


def _fresh_direction(rng, basis, n):
    for _ in range(5):
        v = rng.standard_normal(n)
        v -= basis.T @ (basis @ v)
        v -= basis.T @ (basis @ v)
        nv = float(np.linalg.norm(v))
        if nv > 1e-8 * math.sqrt(n):
            return v / nv
    raise RuntimeError("could not generate a direction orthogonal to the basis")


def counting(S: SpectrumResult, lam: float):
    """Counting functions (n_plus, n_minus, n) at level lam > 0."""
    if lam <= 0.0:
        raise ValueError(f"counting level must be positive, got {lam}")
    n_plus = int(np.count_nonzero(S.lambda_plus > lam))
    n_minus = int(np.count_nonzero(S.lambda_minus > lam))
    return n_plus, n_minus, n_plus + n_minus


def merged_singular_values(S: SpectrumResult) -> np.ndarray:
    """Non-increasing union of lambda_plus and lambda_minus."""
    merged = np.concatenate([S.lambda_plus, S.lambda_minus])
    return np.sort(merged)[::-1].copy()


def delta_p_proxy(S: SpectrumResult, p: float, window):
    """Windowed sup/inf of n * (lambda_n^{+-})^p and n * s_n^p.

    window is an inclusive 1-based index range (n_min, n_max).  Each of the
    three channels (plus, minus, merged) is evaluated over the part of the
    window its list covers; a channel with no data in the window is an error.
    Returns (sup_plus, inf_plus, sup_minus, inf_minus, sup_s, inf_s).
    """
    if p <= 0.0:
        raise ValueError(f"power p must be positive, got {p}")
    n_min, n_max = int(window[0]), int(window[1])
    if n_min < 1 or n_max < n_min:
        raise ValueError(f"window must satisfy 1 <= n_min <= n_max, got {window}")

    def channel(values, name):
        hi = min(n_max, len(values))
        if hi < n_min:
            raise ValueError(
                f"window [{n_min}, {n_max}] has no {name} eigenvalues "
                f"(only {len(values)} available)"
            )
        idx = np.arange(n_min, hi + 1)
        scaled = idx * values[idx - 1] ** p
        return float(np.max(scaled)), float(np.min(scaled))

    sup_p, inf_p = channel(S.lambda_plus, "positive")
    sup_m, inf_m = channel(S.lambda_minus, "negative")
    sup_s, inf_s = channel(merged_singular_values(S), "merged")
    return sup_p, inf_p, sup_m, inf_m, sup_s, inf_s
