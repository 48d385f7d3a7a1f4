"""Majorization order, Schur-convexity, and the spectrum inequality."""

from __future__ import annotations

import numpy as np
import pytest

from gausscap.majorization import (
    SpectrumVector,
    case_inequality_check,
    eigenvalue_sum_majorization_holds,
    majorizes,
    random_majorized_pairs,
    schur_convexity_check,
    weakly_majorizes,
)
from gausscap.multimode import waterfill


def test_spectrum_vector_sorts_and_validates():
    v = SpectrumVector(np.array([3.0, 1.0, 2.0]))
    assert np.array_equal(v.values, [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        SpectrumVector(np.array([-1.0, 2.0]))


def test_majorizes_examples():
    assert majorizes([0.5, 2.5], [1.0, 2.0])
    assert majorizes([1.0, 2.0], [1.0, 2.0])
    assert not majorizes([1.0, 2.0], [0.5, 2.5])
    # Different totals: no relation either way.
    assert not majorizes([1.0, 2.0], [1.0, 3.0])
    with pytest.raises(ValueError):
        majorizes([1.0, 2.0], [1.0])


def test_weakly_majorizes_examples():
    assert weakly_majorizes([0.5, 2.0], [1.0, 2.0])
    assert not weakly_majorizes([0.5, 2.5], [0.4, 2.0])
    # Majorization implies weak majorization.
    rng = np.random.default_rng(3)
    x, y = random_majorized_pairs(50, 5, rng)
    for i in range(50):
        assert majorizes(y[i], x[i])
        assert weakly_majorizes(y[i], x[i])


def test_majorizes_is_partial_order_on_samples():
    rng = np.random.default_rng(4)
    # Transitivity: build chains bottom < mid < top with T-transforms.
    for _ in range(30):
        d = int(rng.integers(2, 7))
        mid, top = random_majorized_pairs(1, d, rng)
        t = rng.uniform(0.0, 1.0)
        bottom = mid[0].copy()
        bottom[0], bottom[1] = (
            t * bottom[0] + (1 - t) * bottom[1],
            (1 - t) * bottom[0] + t * bottom[1],
        )
        assert majorizes(top[0], mid[0])
        assert majorizes(mid[0], bottom)
        assert majorizes(top[0], bottom)
    # Antisymmetry: mutual majorization forces equality (as sorted vectors).
    a = np.array([1.0, 2.0, 3.0])
    b = np.array([1.0, 2.0, 3.0])
    assert majorizes(a, b) and majorizes(b, a)
    c = np.array([0.5, 2.0, 3.5])
    assert majorizes(c, a) and not majorizes(a, c)


def test_schur_convexity_no_violation():
    for k in (2, 4, 8):
        worst = schur_convexity_check(k, budget=3.0, trials=500, seed=11)
        assert worst < 1e-7


def test_schur_convexity_validation():
    with pytest.raises(ValueError):
        schur_convexity_check(1, 1.0, 10)
    with pytest.raises(ValueError):
        schur_convexity_check(3, 0.0, 10)


def test_waterfill_value_permutation_symmetric():
    rng = np.random.default_rng(6)
    for _ in range(20):
        lam = rng.uniform(0.2, 3.0, size=5)
        budget = 4.0
        a = waterfill(lam, budget).mutual_info_bits
        b = waterfill(rng.permutation(lam), budget).mutual_info_bits
        assert a == pytest.approx(b, abs=1e-12)


def test_waterfill_value_decreasing_in_noise():
    # Raising any active eigenvalue lowers the rate.
    lam = np.array([0.5, 1.0, 1.5])
    budget = 5.0
    base = waterfill(lam, budget).mutual_info_bits
    for j in range(3):
        bumped = lam.copy()
        bumped[j] += 0.05
        assert waterfill(bumped, budget).mutual_info_bits < base


def test_case_inequality_examples():
    # Equal vectors: equality.
    assert case_inequality_check([1.0, 2.0], [1.0, 2.0], 1.5)
    # k_mu < k_lam (case iii): budget small, mu's lowest entry hogs it.
    lam = np.array([1.5, 1.5, 3.0])
    mu = np.array([1.0, 2.0, 3.0])
    budget = 0.4
    assert waterfill(mu, budget).k_active < waterfill(lam, budget).k_active
    assert case_inequality_check(lam, mu, budget)
    # k_mu > k_lam (case ii) on a crafted instance.
    lam2 = np.array([1.0, 3.0, 8.0])
    mu2 = np.array([0.9, 2.0, 9.1])
    assert waterfill(mu2, 1.5).k_active > waterfill(lam2, 1.5).k_active
    assert case_inequality_check(lam2, mu2, 1.5)
    # Precondition enforced.
    with pytest.raises(ValueError):
        case_inequality_check([0.5, 2.5], [1.0, 2.0], 1.0)


def test_case_inequality_randomized_sample():
    rng = np.random.default_rng(13)
    for _ in range(30):
        d = int(rng.integers(2, 9))
        x, y = random_majorized_pairs(100, d, rng)
        for i in range(100):
            budget = float(rng.uniform(0.05, 10.0))
            assert case_inequality_check(x[i], y[i], budget)


def test_eigenvalue_sum_majorization_sample():
    rng = np.random.default_rng(17)
    for _ in range(200):
        d = int(rng.integers(2, 9))
        a = rng.normal(size=(d, d))
        b = rng.normal(size=(d, d))
        x = 0.5 * (a + a.T)
        y = 0.5 * (b + b.T)
        assert eigenvalue_sum_majorization_holds(x, y)
