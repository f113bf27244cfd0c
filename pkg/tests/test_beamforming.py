import cmath
import math

import numpy as np
import pytest

from masr import (
    BeamformingVector,
    PositionVector,
    RatePoint,
    Scene,
    average_snr_primary,
    beam_gain,
    bd_pu_channel,
    channel_pt_bd,
    channel_pt_pu,
    fpa_beam_gain,
    mrt_beamformer,
    primary_rate_approx,
    primary_rate_exact,
    secondary_rate,
)
from masr.placement import closed_form_positions, fpa_positions, optimal_ma_positions


def _scene(**overrides):
    params = dict(
        wavelength_m=0.5,
        num_antennas=4,
        theta_p=math.pi / 3,
        theta_b=3 * math.pi / 4,
        d_p_m=40.0,
        d_b_m=20.0 * math.sqrt(3.0),
        transmit_power_w=1.0,
        noise_power_w=1e-11,
        spread_factor=15,
    )
    params.update(overrides)
    return Scene(**params)


def _random_positions(rng, n, span=8.0):
    return PositionVector(tuple(np.sort(rng.uniform(0.0, span, n)) + np.arange(n) * 1e-6))


class TestMrtBeamformer:
    def test_uniform_weight_magnitude(self):
        w = mrt_beamformer(PositionVector((0.0, 0.3, 0.7, 1.9)), _scene())
        np.testing.assert_allclose(np.abs(w.weights), 0.5, rtol=1e-12)

    def test_spends_full_budget(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            scene = _scene(transmit_power_w=float(rng.uniform(0.01, 10.0)))
            w = mrt_beamformer(_random_positions(rng, scene.num_antennas), scene)
            assert w.norm_sq == pytest.approx(scene.transmit_power_w, rel=1e-12)

    def test_matched_gain_for_any_positions(self):
        scene = _scene()
        rng = np.random.default_rng(11)
        beta_p = scene.wavelength_m / (4.0 * math.pi * scene.d_p_m)
        expected = beta_p**2 * scene.transmit_power_w * scene.num_antennas
        for _ in range(20):
            xs = _random_positions(rng, scene.num_antennas)
            w = mrt_beamformer(xs, scene)
            hp = channel_pt_pu(scene, xs).coeffs
            assert abs(np.vdot(hp, w.weights)) ** 2 == pytest.approx(expected, rel=1e-9)

    def test_zero_power_allowed(self):
        w = mrt_beamformer(PositionVector((0.0, 0.25)), _scene(transmit_power_w=0.0))
        assert w.norm_sq == 0.0

    def test_budget_enforced(self):
        with pytest.raises(ValueError):
            BeamformingVector(weights=np.array([1.0 + 0j, 1.0 + 0j]), power_budget_w=1.0)


class TestBeamGain:
    def test_closed_form_positions_reach_upper_bound(self):
        xs = closed_form_positions(0.5, 4, 0.5)
        assert beam_gain(xs, math.pi / 3, math.pi / 2, 0.5) == pytest.approx(4.0, abs=1e-9)

    def test_single_antenna_is_flat(self):
        xs = PositionVector((0.37,))
        for theta in np.linspace(0.05, math.pi - 0.05, 11):
            assert beam_gain(xs, math.pi / 3, float(theta), 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_half_wavelength_grid_null(self):
        # four half-wavelength phasors a quarter turn apart cancel exactly
        xs = fpa_positions(_scene(theta_p=math.pi / 2, theta_b=2 * math.pi / 3))
        gain = beam_gain(xs, math.pi / 2, 2 * math.pi / 3, 0.5)
        assert gain == pytest.approx(0.0, abs=1e-9)

    def test_bounds(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            n = int(rng.integers(1, 9))
            xs = _random_positions(rng, n)
            tp = float(rng.uniform(0.01, math.pi - 0.01))
            th = float(rng.uniform(0.01, math.pi - 0.01))
            g = beam_gain(xs, tp, th, 0.5)
            assert -1e-12 <= g <= n + 1e-9

    def test_translation_invariance(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            xs = _random_positions(rng, 5)
            shift = float(rng.uniform(-4.0, 4.0))
            shifted = PositionVector(tuple(x + shift for x in xs.xs_m))
            tp = float(rng.uniform(0.01, math.pi - 0.01))
            th = float(rng.uniform(0.01, math.pi - 0.01))
            a = beam_gain(xs, tp, th, 0.5)
            b = beam_gain(shifted, tp, th, 0.5)
            assert b == pytest.approx(a, abs=1e-9)

    def test_even_in_angle_swap(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            xs = _random_positions(rng, 4)
            tp = float(rng.uniform(0.01, math.pi - 0.01))
            th = float(rng.uniform(0.01, math.pi - 0.01))
            assert beam_gain(xs, tp, th, 0.5) == pytest.approx(
                beam_gain(xs, th, tp, 0.5), abs=1e-12
            )


class TestFpaBeamGain:
    def test_known_null(self):
        assert fpa_beam_gain(4, 0.5) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 5, 16])
    def test_aligned_at_zero_separation(self, n):
        assert fpa_beam_gain(n, 0.0) == pytest.approx(float(n), rel=1e-12)

    def test_six_element_reference_value(self):
        # direct six-term complex summation, independent of the implementation
        expected = abs(sum(cmath.exp(1j * k * math.pi * 1.2071) for k in range(1, 7)))
        assert expected == pytest.approx(0.9796466989328518, rel=1e-12)
        assert fpa_beam_gain(6, 1.2071) == pytest.approx(expected, rel=1e-12)

    def test_matches_dirichlet_closed_form(self):
        rng = np.random.default_rng(29)
        for _ in range(200):
            n = int(rng.integers(2, 17))
            delta = float(rng.uniform(0.001, 1.999))
            s = math.sin(math.pi * delta / 2.0)
            if abs(s) <= 1e-6:
                continue
            closed = abs(math.sin(n * math.pi * delta / 2.0) / s)
            assert fpa_beam_gain(n, delta) == pytest.approx(closed, abs=1e-9)

    def test_strictly_below_bound_sampled(self):
        for n in (2, 4, 8):
            for delta in np.arange(0.05, 2.0, 0.05):
                assert fpa_beam_gain(n, float(delta)) < n


class TestAverageSnr:
    def test_zero_power(self):
        scene = _scene(transmit_power_w=0.0)
        xs = optimal_ma_positions(scene).positions
        w = mrt_beamformer(xs, scene)
        assert average_snr_primary(scene, xs, w) == 0.0

    def test_reference_operating_point(self):
        scene = _scene()
        xs = optimal_ma_positions(scene).positions
        w = mrt_beamformer(xs, scene)
        snr = average_snr_primary(scene, xs, w)
        direct_only = 3.9578587360288195e5  # beta_p^2 * P * N / sigma^2
        assert snr / direct_only - 1.0 == pytest.approx(1.0135006651731919e-6, rel=1e-6)
        assert snr / direct_only - 1.0 < 1e-4

    def test_backscatter_term_bounded_by_cauchy_schwarz(self):
        scene = _scene()
        rng = np.random.default_rng(31)
        g2 = abs(bd_pu_channel(scene)) ** 2
        for _ in range(10):
            xs = _random_positions(rng, scene.num_antennas)
            w = mrt_beamformer(xs, scene)
            hp = channel_pt_pu(scene, xs).coeffs
            hb = channel_pt_bd(scene, xs).coeffs
            backscatter_term = average_snr_primary(scene, xs, w) - (
                abs(np.vdot(hp, w.weights)) ** 2 / scene.noise_power_w
            )
            bound = g2 * np.sum(np.abs(hb) ** 2) * w.norm_sq / scene.noise_power_w
            assert backscatter_term <= bound * (1.0 + 1e-9)


class TestPrimaryRates:
    def test_zero_power(self):
        scene = _scene(transmit_power_w=0.0)
        xs = optimal_ma_positions(scene).positions
        w = mrt_beamformer(xs, scene)
        assert primary_rate_exact(scene, xs, w) == 0.0
        assert primary_rate_approx(scene, xs, w) == 0.0

    def test_reference_operating_point(self):
        scene = _scene()
        xs = optimal_ma_positions(scene).positions
        w = mrt_beamformer(xs, scene)
        assert primary_rate_exact(scene, xs, w) == pytest.approx(18.594365702345275, rel=1e-12)
        assert primary_rate_approx(scene, xs, w) == pytest.approx(18.594364240177327, rel=1e-12)

    def test_exact_dominates_approx(self):
        scene = _scene()
        rng = np.random.default_rng(37)
        for _ in range(20):
            xs = _random_positions(rng, scene.num_antennas)
            w = mrt_beamformer(xs, scene)
            assert primary_rate_exact(scene, xs, w) >= primary_rate_approx(scene, xs, w)

    def test_monotone_in_power(self):
        xs = optimal_ma_positions(_scene()).positions
        rates = []
        for p in (1e-3, 1e-2, 0.1, 1.0, 10.0):
            scene = _scene(transmit_power_w=p)
            rates.append(primary_rate_exact(scene, xs, mrt_beamformer(xs, scene)))
        assert all(b > a for a, b in zip(rates, rates[1:]))

    def test_relative_gap_small_across_powers(self):
        for positions_of in (lambda s: optimal_ma_positions(s).positions, fpa_positions):
            for exponent in np.linspace(-3.0, 1.0, 17):
                scene = _scene(transmit_power_w=float(10.0**exponent))
                xs = positions_of(scene)
                w = mrt_beamformer(xs, scene)
                exact = primary_rate_exact(scene, xs, w)
                approx = primary_rate_approx(scene, xs, w)
                assert (exact - approx) / exact < 1e-3


class TestSecondaryRate:
    def test_zero_power(self):
        scene = _scene(transmit_power_w=0.0)
        xs = optimal_ma_positions(scene).positions
        assert secondary_rate(scene, xs, mrt_beamformer(xs, scene)) == 0.0

    def test_reference_operating_point_against_raw_recomputation(self):
        scene = _scene()
        xs = optimal_ma_positions(scene).positions
        w = mrt_beamformer(xs, scene)
        expected = _secondary_rate_from_raw_geometry(xs.xs_m)
        assert expected == pytest.approx(0.18738945050156716, rel=1e-12)
        assert secondary_rate(scene, xs, w) == pytest.approx(expected, rel=1e-12)

    def test_null_geometry_gives_zero(self):
        scene = _scene(theta_p=math.pi / 2, theta_b=2 * math.pi / 3)
        xs = fpa_positions(scene)
        assert secondary_rate(scene, xs, mrt_beamformer(xs, scene)) == pytest.approx(0.0, abs=1e-12)

    def test_strictly_increasing_in_power(self):
        xs = optimal_ma_positions(_scene()).positions
        rates = []
        for p in (0.01, 0.1, 0.5, 1.0, 5.0):
            scene = _scene(transmit_power_w=p)
            rates.append(secondary_rate(scene, xs, mrt_beamformer(xs, scene)))
        assert all(b > a for a, b in zip(rates, rates[1:]))


def _secondary_rate_from_raw_geometry(xs):
    """Recompute the secondary rate with cmath only, from raw coordinates."""
    lam, d_p, d_b, p_t, sigma2, spread = 0.5, 40.0, 20.0 * math.sqrt(3.0), 1.0, 1e-11, 15
    theta_p, theta_b = math.pi / 3, 3 * math.pi / 4
    n = len(xs)
    pu = (-d_p * math.cos(theta_p), d_p * math.sin(theta_p))
    bd = (-d_b * math.cos(theta_b), d_b * math.sin(theta_b))
    d_s = math.hypot(bd[0] - pu[0], bd[1] - pu[1])
    g = lam / (4 * math.pi * d_s) * cmath.exp(-2j * math.pi * d_s / lam)
    beta_b = lam / (4 * math.pi * d_b)
    h_b = [
        beta_b * cmath.exp(-2j * math.pi * d_b / lam) * cmath.exp(-2j * math.pi / lam * x * math.cos(theta_b))
        for x in xs
    ]
    w = [math.sqrt(p_t / n) * cmath.exp(-2j * math.pi / lam * x * math.cos(theta_p)) for x in xs]
    hb_w = sum(h.conjugate() * ww for h, ww in zip(h_b, w))
    snr = spread * abs(g) ** 2 * abs(hb_w) ** 2 / sigma2
    return math.log2(1.0 + snr) / spread


class TestRatePoint:
    def test_rejects_negative_or_non_finite(self):
        with pytest.raises(ValueError):
            RatePoint(primary_rate_bpshz=-1.0, secondary_rate_bpshz=0.0)
        with pytest.raises(ValueError):
            RatePoint(primary_rate_bpshz=math.nan, secondary_rate_bpshz=0.0)
