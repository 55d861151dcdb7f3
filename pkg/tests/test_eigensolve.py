"""Eigensolver cross-checks: dense oracle, Lanczos agreement, spectral counting."""

import math

import mpmath
import numpy as np
import pytest

from hankelspec.eigensolve import (
    SpectrumResult,
    counting,
    delta_p_proxy,
    dense_spectrum,
    lanczos_extremes,
    merged_singular_values,
)
from hankelspec.hankel_core import HankelTruncation, dense_matrix, matvec

mpmath.mp.dps = 30


def _hilbert_truncation(N):
    return HankelTruncation(N, 1.0 / (np.arange(2 * N - 1) + 1.0))


def _result(lp, lm):
    lp = np.asarray(lp, dtype=float)
    lm = np.asarray(lm, dtype=float)
    return SpectrumResult(
        lambda_plus=lp,
        lambda_minus=lm,
        residuals_plus=np.zeros(len(lp)),
        residuals_minus=np.zeros(len(lm)),
        order=len(lp) + len(lm),
        solver_id="synthetic",
        seed=0,
        tol=0.0,
    )


# --------------------------------------------------------------------- dense


def test_dense_spectrum_swap_matrix():
    S = dense_spectrum([[0.0, 1.0], [1.0, 0.0]])
    assert np.allclose(S.lambda_plus, [1.0])
    assert np.allclose(S.lambda_minus, [1.0])


def test_dense_spectrum_diagonal():
    S = dense_spectrum([[2.0, 0.0], [0.0, -3.0]])
    assert np.allclose(S.lambda_plus, [2.0])
    assert np.allclose(S.lambda_minus, [3.0])
    assert S.n_dropped == 0


def test_dense_spectrum_hilbert_5x5():
    A = dense_matrix(_hilbert_truncation(5))
    S = dense_spectrum(A)
    top = S.lambda_plus[0]
    # Higher-precision oracle for the leading eigenvalue.
    M = mpmath.matrix(5, 5)
    for i in range(5):
        for j in range(5):
            M[i, j] = mpmath.mpf(1) / (i + j + 1)
    oracle = max(float(v) for v in mpmath.eigsy(M, eigvals_only=True))
    assert top == pytest.approx(oracle, rel=1e-12)
    assert abs(top - 1.5670507) < 5e-8


def test_dense_spectrum_rejects_asymmetry():
    with pytest.raises(ValueError, match="not symmetric"):
        dense_spectrum([[0.0, 1.0], [0.5, 0.0]])


def test_dense_spectrum_zero_matrix():
    S = dense_spectrum(np.zeros((4, 4)))
    assert len(S.lambda_plus) == 0
    assert len(S.lambda_minus) == 0
    assert S.n_dropped == 4


# -------------------------------------------------------------------- lanczos


def test_lanczos_matches_dense_hilbert_1024():
    H = _hilbert_truncation(1024)
    dense = dense_spectrum(dense_matrix(H))
    S = lanczos_extremes(lambda v: matvec(H, v), 1024, k=10, tol=1e-12, seed=0)
    assert S.converged
    got = S.lambda_plus[:10]
    want = dense.lambda_plus[:10]
    assert len(got) == 10
    assert np.max(np.abs(got - want) / want) < 1e-10
    # Residual invariant: every reported eigenvalue meets the tolerance.
    norm = max(S.lambda_plus[0], 1.0)
    assert np.all(S.residuals_plus <= 1e-12 * norm * 1.0000001)


def test_lanczos_two_by_two_closure():
    A = np.array([[0.0, 1.0], [1.0, 0.0]])
    S = lanczos_extremes(lambda v: A @ v, 2, k=1, seed=3)
    assert np.allclose(S.lambda_plus, [1.0], rtol=1e-12)
    assert np.allclose(S.lambda_minus, [1.0], rtol=1e-12)
    assert S.converged


def test_lanczos_zero_operator():
    S = lanczos_extremes(lambda v: np.zeros_like(v), 16, k=2, seed=0)
    assert S.converged
    assert len(S.lambda_plus) == 0
    assert len(S.lambda_minus) == 0


def test_lanczos_deterministic_given_seed():
    H = _hilbert_truncation(512)
    runs = [
        lanczos_extremes(lambda v: matvec(H, v), 512, k=6, tol=1e-10, seed=42)
        for _ in range(2)
    ]
    assert runs[0].lambda_plus.tobytes() == runs[1].lambda_plus.tobytes()
    assert runs[0].lambda_minus.tobytes() == runs[1].lambda_minus.tobytes()
    assert runs[0].details["applies"] == runs[1].details["applies"]


def test_lanczos_seed_changes_start_but_not_values():
    H = _hilbert_truncation(512)
    a = lanczos_extremes(lambda v: matvec(H, v), 512, k=6, tol=1e-10, seed=1)
    b = lanczos_extremes(lambda v: matvec(H, v), 512, k=6, tol=1e-10, seed=2)
    n = min(len(a.lambda_plus), len(b.lambda_plus), 6)
    assert np.allclose(a.lambda_plus[:n], b.lambda_plus[:n], rtol=1e-9)


def test_lanczos_flags_nonconvergence():
    H = _hilbert_truncation(2048)
    S = lanczos_extremes(
        lambda v: matvec(H, v), 2048, k=40, tol=1e-14, max_iter=12, seed=0
    )
    assert not S.converged
    # Partial results are still valid converged prefixes, never padded.
    assert len(S.lambda_plus) < 40


def test_lanczos_vs_dense_random_hankel_ensemble():
    # 50 random symmetric Hankel truncations at N = 256: top-5 at both ends.
    for seed in range(50):
        rng = np.random.default_rng(seed)
        H = HankelTruncation(256, rng.standard_normal(511))
        dense = dense_spectrum(dense_matrix(H))
        S = lanczos_extremes(lambda v: matvec(H, v), 256, k=5, tol=1e-12, seed=seed)
        for got, want in ((S.lambda_plus, dense.lambda_plus), (S.lambda_minus, dense.lambda_minus)):
            m = min(5, len(want))
            assert len(got) >= m
            assert np.max(np.abs(got[:m] - want[:m]) / want[:m]) < 1e-9


def test_lanczos_rejects_bad_args():
    with pytest.raises(ValueError):
        lanczos_extremes(lambda v: v, 16, k=0)
    with pytest.raises(ValueError):
        lanczos_extremes(lambda v: v, 0, k=1)


# ------------------------------------------------------------------- counting


def test_counting_examples():
    S = _result([3.0, 2.0, 1.0], [1.0])
    assert counting(S, 1.5) == (2, 0, 2)
    assert counting(S, 0.5) == (3, 1, 4)
    empty = _result([], [])
    assert counting(empty, 1.0) == (0, 0, 0)


def test_counting_identity_and_domain():
    S = _result([0.9, 0.5, 0.1], [0.7, 0.2])
    for lam in [0.05, 0.15, 0.3, 0.6, 0.8, 1.0]:
        n_plus, n_minus, n = counting(S, lam)
        assert n == n_plus + n_minus
        merged = merged_singular_values(S)
        assert n == int(np.sum(merged > lam))
    with pytest.raises(ValueError):
        counting(S, 0.0)


def test_merged_singular_values_sorted():
    S = _result([1.0, 0.5], [0.75])
    assert np.array_equal(merged_singular_values(S), [1.0, 0.75, 0.5])


# -------------------------------------------------------------------- delta_p


def test_delta_p_exact_power():
    n = np.arange(1, 33)
    S = _result(1.0 / n, 1.0 / n)
    sup_p, inf_p, sup_m, inf_m, sup_s, inf_s = delta_p_proxy(S, 1.0, (1, 32))
    assert sup_p == pytest.approx(1.0, rel=1e-12)
    assert inf_p == pytest.approx(1.0, rel=1e-12)
    assert sup_m == pytest.approx(1.0, rel=1e-12)


def test_delta_p_merged_example():
    S = _result([1.0, 0.5], [0.75])
    sup_p, inf_p, sup_m, inf_m, sup_s, inf_s = delta_p_proxy(S, 1.0, (1, 3))
    # Merged sequence is (1, 3/4, 1/2); n * s_n = (1, 1.5, 1.5).
    assert sup_s == pytest.approx(1.5, rel=1e-12)
    assert inf_s == pytest.approx(1.0, rel=1e-12)


def test_delta_p_empty_window_rejected():
    S = _result([], [])
    with pytest.raises(ValueError):
        delta_p_proxy(S, 1.0, (1, 4))


# ------------------------------------------------------------ Weyl inequality


def test_weyl_counting_inequality_sample():
    # n_+(l1+l2; A+B) <= n_+(l1; A) + n_+(l2; B) on random pairs.
    rng = np.random.default_rng(123)
    for _ in range(40):
        n = int(rng.integers(2, 65))
        A = rng.standard_normal((n, n))
        A = (A + A.T) / 2.0
        B = rng.standard_normal((n, n))
        B = (B + B.T) / 2.0
        l1, l2 = rng.uniform(0.05, 2.0, size=2)
        nAB = counting(dense_spectrum(A + B), l1 + l2)[0]
        nA = counting(dense_spectrum(A), l1)[0]
        nB = counting(dense_spectrum(B), l2)[0]
        assert nAB <= nA + nB
