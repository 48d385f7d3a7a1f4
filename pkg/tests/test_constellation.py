"""QAM alphabet geometry, priors, energy accounting, propagation."""

from __future__ import annotations

import json
import math

import numpy as np
import pytest

from gausscap.constellation import (
    QamConstellation,
    build_qam,
    mean_photon_number,
    optimize_sigma,
    propagate,
    solve_delta_for_energy,
)


def brute_force_energy(order, delta, sigma):
    side = int(round(math.sqrt(order)))
    coords = [delta * (k - (side - 1) / 2) for k in range(side)]
    pts = [complex(a, b) for a in coords for b in coords]
    if math.isinf(sigma):
        w = [1.0] * order
    else:
        w = [math.exp(-abs(p) ** 2 / sigma**2) for p in pts]
    z = sum(w)
    return sum(wi * abs(p) ** 2 for wi, p in zip(w, pts)) / z


def test_build_4qam_uniform():
    c = build_qam(4, 1.0, math.inf)
    assert c.order == 4
    assert np.allclose(c.prior, 0.25)
    expected = {0.5 + 0.5j, 0.5 - 0.5j, -0.5 + 0.5j, -0.5 - 0.5j}
    assert {complex(p) for p in c.points} == expected
    assert mean_photon_number(c) == pytest.approx(0.5, abs=1e-15)


def test_uniform_energies_match_brute_force():
    for order in (4, 16, 64):
        c = build_qam(order, 1.0, math.inf)
        assert mean_photon_number(c) == pytest.approx(
            brute_force_energy(order, 1.0, math.inf), abs=1e-12
        )
    assert mean_photon_number(build_qam(16, 1.0, math.inf)) == pytest.approx(2.5)
    assert mean_photon_number(build_qam(64, 1.0, math.inf)) == pytest.approx(10.5)


def test_gaussian_prior_matches_direct_evaluation():
    c = build_qam(16, 2.0, 2.0)
    expect = np.exp(-np.abs(c.points) ** 2 / 4.0)
    expect = expect / expect.sum()
    assert np.allclose(c.prior, expect, atol=1e-14)
    # Inner ring carries more weight than any outer point.
    r2 = np.abs(c.points) ** 2
    inner = c.prior[np.isclose(r2, r2.min())]
    assert inner.min() > c.prior[~np.isclose(r2, r2.min())].max()
    assert mean_photon_number(c) == pytest.approx(
        brute_force_energy(16, 2.0, 2.0), abs=1e-12
    )


def test_small_sigma_concentrates_on_inner_ring():
    c = build_qam(16, 1.0, 1e-4)
    r2 = np.abs(c.points) ** 2
    inner = np.isclose(r2, r2.min())
    assert inner.sum() == 4
    assert np.allclose(c.prior[inner], 0.25, atol=1e-12)
    assert np.all(c.prior[~inner] < 1e-12)
    assert mean_photon_number(c) == pytest.approx(0.5, abs=1e-9)


def test_points_sorted_by_radius_then_angle():
    c = build_qam(64, 1.0, math.inf)
    r = np.abs(c.points)
    assert np.all(np.diff(np.round(r, 12)) >= 0)
    for shell in np.unique(np.round(r, 12)):
        angles = np.angle(c.points[np.isclose(np.round(r, 12), shell)])
        assert np.all(np.diff(angles) > 0)


def test_equal_radius_shells_share_prior():
    c = build_qam(64, 0.8, 1.7)
    r2 = np.round(np.abs(c.points) ** 2, 12)
    for shell in np.unique(r2):
        vals = c.prior[r2 == shell]
        assert np.ptp(vals) < 1e-15


def test_build_validation():
    with pytest.raises(ValueError):
        build_qam(8, 1.0, math.inf)
    with pytest.raises(ValueError):
        build_qam(4, 0.0, math.inf)
    with pytest.raises(ValueError):
        build_qam(4, 1.0, 0.0)
    with pytest.raises(ValueError):
        build_qam(4, 1.0, -2.0)


def test_type_invariants_enforced():
    c = build_qam(4, 1.0, math.inf)
    bad_prior = np.array([0.4, 0.1, 0.4, 0.1])
    with pytest.raises(ValueError):
        QamConstellation(4, 1.0, 2.0, c.points, bad_prior)
    with pytest.raises(ValueError):
        QamConstellation(4, 1.0, math.inf, c.points, np.array([0.3, 0.3, 0.2, 0.2]))
    off_lattice = c.points + 0.1
    with pytest.raises(ValueError):
        QamConstellation(4, 1.0, math.inf, off_lattice, c.prior)
    dupes = np.array([0.5 + 0.5j, 0.5 + 0.5j, -0.5 - 0.5j, -0.5 - 0.5j])
    with pytest.raises(ValueError):
        QamConstellation(4, 1.0, math.inf, dupes, c.prior)


def test_solve_delta_uniform_examples():
    assert solve_delta_for_energy(4, math.inf, 0.5) == pytest.approx(1.0, abs=1e-7)
    assert solve_delta_for_energy(16, math.inf, 2.5) == pytest.approx(1.0, abs=1e-7)
    d1 = solve_delta_for_energy(64, math.inf, 3.0)
    d2 = solve_delta_for_energy(64, math.inf, 12.0)
    assert d2 == pytest.approx(2.0 * d1, rel=1e-7)


def test_solve_delta_finite_sigma():
    for order, sigma, target in ((16, 1.3, 2.0), (64, 0.5, 0.7), (16, 8.0, 9.0)):
        delta = solve_delta_for_energy(order, sigma, target)
        got = mean_photon_number(build_qam(order, delta, sigma))
        assert got == pytest.approx(target, abs=1e-9)
    with pytest.raises(ValueError):
        solve_delta_for_energy(16, 1.0, 0.0)


def test_energy_monotone_in_delta():
    # The prior drifts inward as delta grows; net energy still rises.
    for order in (16, 64):
        for sigma in (0.25, 0.5, 1.0, 2.0, 4.0, 8.0, math.inf):
            deltas = np.geomspace(1e-3, 50.0, 120)
            vals = [
                mean_photon_number(build_qam(order, d, sigma)) for d in deltas
            ]
            assert np.all(np.diff(vals) > 0)


def test_propagate_scaling():
    c = build_qam(16, 1.0, 2.0)
    assert propagate(c, 1.0).delta == pytest.approx(1.0)
    out = propagate(c, 0.49)
    assert out.delta == pytest.approx(0.7, abs=1e-12)
    assert out.sigma == pytest.approx(0.7 * 2.0, abs=1e-12)
    assert np.allclose(out.prior, c.prior)
    assert mean_photon_number(out) == pytest.approx(
        0.49 * mean_photon_number(c), abs=1e-12
    )
    uniform = propagate(build_qam(4, 1.0, math.inf), 0.3)
    assert math.isinf(uniform.sigma)


def test_propagate_composes():
    c = build_qam(16, 1.2, 1.5)
    a = propagate(propagate(c, 0.8), 0.5)
    b = propagate(c, 0.4)
    assert np.allclose(a.points, b.points, atol=1e-12)
    assert a.delta == pytest.approx(b.delta, abs=1e-12)
    assert a.sigma == pytest.approx(b.sigma, abs=1e-12)


def test_propagate_validation():
    c = build_qam(4, 1.0, math.inf)
    for eta in (0.0, -0.5, 1.2):
        with pytest.raises(ValueError):
            propagate(c, eta)


def test_json_roundtrip():
    for c in (build_qam(16, 0.9, 1.75), build_qam(4, 2.0, math.inf)):
        blob = json.dumps(c.to_json_dict())
        back = QamConstellation.from_json_dict(json.loads(blob))
        assert back.order == c.order
        assert back.delta == pytest.approx(c.delta)
        assert back.sigma == c.sigma or back.sigma == pytest.approx(c.sigma)
        assert np.allclose(back.points, c.points)
        assert np.allclose(back.prior, c.prior)
    as_dict = build_qam(4, 1.0, math.inf).to_json_dict()
    assert as_dict["sigma"] == "inf"


def test_single_point_alphabet():
    c = QamConstellation.single_point(0.3 + 0.4j)
    assert c.order == 1
    assert c.prior[0] == 1.0
    assert mean_photon_number(c) == pytest.approx(0.25)


def test_optimize_sigma_smooth_objective():
    target = 1.7

    def objective(s):
        return -((math.log2(s) - math.log2(target)) ** 2)

    sigma, value = optimize_sigma(objective)
    assert sigma == pytest.approx(target, rel=1e-3)
    assert value == pytest.approx(0.0, abs=1e-6)
    # Decreasing objective pins the best sigma to the low edge of the grid.
    sigma_lo, _ = optimize_sigma(lambda s: -s)
    assert sigma_lo == pytest.approx(0.25, rel=1e-9)
