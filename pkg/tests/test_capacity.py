"""Closed-form capacities: values, crossover, thresholds, grids."""

from __future__ import annotations

import math

import numpy as np
import pytest

from gausscap.channel import PhaseInsensitiveChannel
from gausscap.capacity import (
    capacity_report,
    coherent_capacity,
    crossover_energy,
    efficiency_grid,
    gaussian_capacity,
    gordon_g,
    holevo_capacity,
    squeezed_capacity,
    threshold_energy,
)


def random_channels(n, rng, m_min=1e-3):
    """Valid channels with m in [max(m_min, |tau-1|/2), 5], tau in [0.1, 3]."""
    out = []
    while len(out) < n:
        tau = rng.uniform(0.1, 3.0)
        m = rng.uniform(m_min, 5.0)
        if m >= 0.5 * abs(tau - 1.0):
            out.append(PhaseInsensitiveChannel(tau, m))
    return out


def test_gordon_g_values():
    assert gordon_g(0.0) == 0.0
    assert gordon_g(1.0) == pytest.approx(2.0, abs=1e-12)
    # g(3) = 4 log2 4 - 3 log2 3.
    assert gordon_g(3.0) == pytest.approx(8.0 - 3.0 * math.log2(3.0), abs=1e-12)
    with pytest.raises(ValueError):
        gordon_g(-0.5)


def test_coherent_capacity_examples():
    ch = PhaseInsensitiveChannel(0.5, 0.25)
    assert coherent_capacity(ch, 0.0) == 0.0
    # 2*0.5*2 / (1+0.5+0.5) = 1, so log2(2) = 1.
    assert coherent_capacity(ch, 2.0) == pytest.approx(1.0, abs=1e-12)


def test_pure_loss_coherent_simplification():
    # With m = (1-eta)/2 the denominator is exactly 2: C = log2(1 + eta*nbar).
    rng = np.random.default_rng(5)
    for _ in range(50):
        eta = rng.uniform(0.05, 1.0)
        n_bar = rng.uniform(0.0, 20.0)
        ch = PhaseInsensitiveChannel.from_loss(eta)
        assert coherent_capacity(ch, n_bar) == pytest.approx(
            math.log2(1.0 + eta * n_bar), abs=1e-12
        )


def test_squeezed_capacity_examples():
    ch = PhaseInsensitiveChannel(0.5, 0.25)
    c1, r1 = squeezed_capacity(ch, 1.0)
    assert c1 == pytest.approx(math.log2((-0.5 + math.sqrt(2.0)) / 0.5), abs=1e-12)
    assert c1 == pytest.approx(0.870603, abs=1e-6)
    c8, _ = squeezed_capacity(ch, 8.0)
    assert c8 == pytest.approx(math.log2(5.0), abs=1e-12)
    # Ideal channel: log2(1 + 2 nbar).
    ideal = PhaseInsensitiveChannel(1.0, 0.0)
    c_ideal, r_ideal = squeezed_capacity(ideal, 1.0)
    assert c_ideal == pytest.approx(math.log2(3.0), abs=1e-12)
    assert math.exp(2.0 * r_ideal) == pytest.approx(3.0, abs=1e-12)


def test_squeezed_m_to_zero_continuity():
    # The rationalized form is continuous through m = 0.
    for n_bar in (0.1, 1.0, 5.0, 40.0):
        near = PhaseInsensitiveChannel(1.0, 1e-8)
        c, _ = squeezed_capacity(near, n_bar)
        assert abs(c - math.log2(1.0 + 2.0 * n_bar)) < 1e-5


def test_squeezed_energy_budget_respected():
    # sinh^2(r_opt) never exceeds the available energy.
    rng = np.random.default_rng(17)
    for ch in random_channels(200, rng, m_min=0.0):
        n_bar = rng.uniform(0.0, 30.0)
        _, r = squeezed_capacity(ch, n_bar)
        assert math.sinh(r) ** 2 <= n_bar + 1e-9


def test_holevo_capacity_examples():
    ch = PhaseInsensitiveChannel.from_loss(0.5)
    assert holevo_capacity(ch, 0.0) == 0.0
    # Pure loss: second term vanishes, C = g(eta*nbar) = g(1) = 2.
    assert holevo_capacity(ch, 2.0) == pytest.approx(2.0, abs=1e-12)


def test_gaussian_bounded_by_holevo():
    rng = np.random.default_rng(23)
    for ch in random_channels(300, rng, m_min=0.0):
        n_bar = rng.uniform(0.0, 30.0)
        assert gaussian_capacity(ch, n_bar) <= holevo_capacity(ch, n_bar) + 1e-9


def test_capacities_monotone_in_energy():
    grid = np.linspace(0.0, 50.0, 400)
    for ch in (
        PhaseInsensitiveChannel.from_loss(0.7, 1.0),
        PhaseInsensitiveChannel.from_amplifier(1.5, 0.5),
        PhaseInsensitiveChannel(1.0, 0.0),
    ):
        coh = np.array([coherent_capacity(ch, x) for x in grid])
        sq = np.array([squeezed_capacity(ch, x)[0] for x in grid])
        hol = np.array([holevo_capacity(ch, x) for x in grid])
        for curve in (coh, sq, hol):
            assert np.all(np.diff(curve) >= -1e-12)


def test_crossover_energy_example():
    ch = PhaseInsensitiveChannel(0.5, 0.25)
    assert crossover_energy(ch) == pytest.approx(8.0, abs=1e-12)
    assert crossover_energy(PhaseInsensitiveChannel(1.0, 0.0)) == math.inf


def test_crossover_identity_and_ordering():
    rng = np.random.default_rng(31)
    for ch in random_channels(200, rng):
        n_c = crossover_energy(ch)
        c_coh = coherent_capacity(ch, n_c)
        c_sq, _ = squeezed_capacity(ch, n_c)
        assert abs(c_coh - c_sq) < 1e-9
        # Both equal log2(1 + 1/m) at the crossover.
        assert c_coh == pytest.approx(math.log2(1.0 + 1.0 / ch.m), rel=1e-9)
        # Strict ordering on either side.
        assert squeezed_capacity(ch, 0.5 * n_c)[0] > coherent_capacity(ch, 0.5 * n_c)
        assert coherent_capacity(ch, 2.0 * n_c) > squeezed_capacity(ch, 2.0 * n_c)[0]


def test_capacity_report_fields():
    ch = PhaseInsensitiveChannel(0.5, 0.25)
    rep = capacity_report(ch, 1.0)  # below crossover (8): squeezed optimal
    assert rep.optimal_scheme == "squeezed"
    assert rep.c_gauss == pytest.approx(rep.c_sq)
    rep2 = capacity_report(ch, 20.0)  # above crossover: coherent optimal
    assert rep2.optimal_scheme == "coherent"
    assert rep2.c_gauss == pytest.approx(rep2.c_coh)
    assert 0.0 <= rep.efficiency <= 1.0
    # n_bar = 0 corner: everything 0, efficiency pinned to 1.
    rep0 = capacity_report(ch, 0.0)
    assert rep0.c_gauss == 0.0
    assert rep0.efficiency == 1.0


def test_threshold_energy_paper_points():
    x80 = threshold_energy(0.8)
    assert 51.0 <= x80 <= 53.0
    x90 = threshold_energy(0.9)
    assert abs(x90 - 8098.0) / 8098.0 < 0.02
    assert threshold_energy(0.5) < x80
    with pytest.raises(ValueError):
        threshold_energy(1.0)


def test_efficiency_grid_shape_and_regions():
    grid = efficiency_grid(0.7, (0.01, 100.0), (0.01, 100.0), 15)
    assert len(grid.reports) == 15 and len(grid.reports[0]) == 15
    assert grid.crossover.shape == (15,)
    effs = np.array([[r.efficiency for r in row] for row in grid.reports])
    assert np.all(effs <= 1.0 + 1e-9)
    # Squeezed-optimal cells with efficiency > 0.9 exist at small n_bar,
    # large n_th.
    hits = [
        (i, j)
        for i, row in enumerate(grid.reports)
        for j, r in enumerate(row)
        if r.optimal_scheme == "squeezed" and r.efficiency > 0.9
    ]
    assert hits
    # Amplifier grid has a broad high-efficiency region.
    grid_amp = efficiency_grid(2.0, (0.01, 100.0), (0.01, 100.0), 15)
    n_high = sum(r.efficiency > 0.9 for row in grid_amp.reports for r in row)
    assert n_high > 15 * 15 / 4


def test_efficiency_grid_validation():
    with pytest.raises(ValueError):
        efficiency_grid(0.7, (0.0, 1.0), (0.1, 1.0), 5)
    with pytest.raises(ValueError):
        efficiency_grid(0.7, (0.1, 1.0), (0.1, 1.0), 1)
    with pytest.raises(ValueError):
        efficiency_grid(0.7, (0.1, 1.0), (0.1, 1.0), 5, spacing="cubic")
