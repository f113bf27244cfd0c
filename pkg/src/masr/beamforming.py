"""Transmit beamforming, beam gain, and achievable-rate formulas.

The beamformer is always matched to the primary user direction (maximum
ratio transmission). Rates are evaluated in closed form from the channel
inner products; nothing here simulates symbols.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scene import PositionVector, Scene, array_response, bd_pu_channel, channel_pt_bd, channel_pt_pu


@dataclass(frozen=True)
class BeamformingVector:
    """Complex transmit weights under a total power budget (watts)."""

    weights: np.ndarray
    power_budget_w: float

    def __post_init__(self) -> None:
        weights = np.asarray(self.weights, dtype=complex)
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        if not (math.isfinite(self.power_budget_w) and self.power_budget_w >= 0.0):
            raise ValueError("power_budget_w must be finite and >= 0")
        norm_sq = float(np.sum(np.abs(weights) ** 2))
        if norm_sq > self.power_budget_w * (1.0 + 1e-9):
            raise ValueError(
                f"|weights|^2 = {norm_sq!r} exceeds the power budget "
                f"{self.power_budget_w!r}"
            )

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.weights) ** 2))


@dataclass(frozen=True)
class RatePoint:
    """A pair of simultaneously achieved rates, in bits/s/Hz."""

    primary_rate_bpshz: float
    secondary_rate_bpshz: float

    def __post_init__(self) -> None:
        for name in ("primary_rate_bpshz", "secondary_rate_bpshz"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"{name} must be finite and >= 0, got {v!r}")


def mrt_beamformer(xs: PositionVector, scene: Scene) -> BeamformingVector:
    """Weights proportional to the user-direction steering vector.

    The full budget is spent: |w|^2 equals the scene transmit power.
    """
    scale = math.sqrt(scene.transmit_power_w / scene.num_antennas)
    weights = scale * array_response(xs, scene.theta_p, scene.wavelength_m)
    return BeamformingVector(weights=weights, power_budget_w=scene.transmit_power_w)


def beam_gain(xs: PositionVector, theta_p: float, theta: float, wavelength_m: float) -> float:
    """Magnitude of the steering-vector inner product at angle theta.

    With the beamformer matched to theta_p, the array gain seen at theta is
    |sum_n exp(j*(2*pi/lambda)*x_n*(cos(theta_p) - cos(theta)))|, which lies
    in [0, N].
    """
    delta = math.cos(theta_p) - math.cos(theta)
    phase = (2.0 * math.pi / wavelength_m) * xs.array * delta
    return float(np.abs(np.sum(np.exp(1j * phase))))


def fpa_beam_gain(num_antennas: int, delta: float) -> float:
    """Gain of the half-wavelength-spaced baseline at separation delta.

    Direct complex summation of exp(j*n*pi*delta) for n = 1..N; equals the
    Dirichlet kernel magnitude |sin(N*pi*delta/2)/sin(pi*delta/2)| away from
    the removable singularity, and N at delta = 0.
    """
    if num_antennas < 1:
        raise ValueError("num_antennas must be >= 1")
    n = np.arange(1, num_antennas + 1)
    return float(np.abs(np.sum(np.exp(1j * math.pi * delta * n))))


def average_snr_primary(scene: Scene, xs: PositionVector, w: BeamformingVector) -> float:
    """Average decode SNR at the user: direct link plus backscatter link."""
    h_p = channel_pt_pu(scene, xs).coeffs
    h_b = channel_pt_bd(scene, xs).coeffs
    g = bd_pu_channel(scene)
    direct = abs(np.vdot(h_p, w.weights)) ** 2
    backscatter = abs(g) ** 2 * abs(np.vdot(h_b, w.weights)) ** 2
    return (direct + backscatter) / scene.noise_power_w


def primary_rate_exact(scene: Scene, xs: PositionVector, w: BeamformingVector) -> float:
    """Primary rate including the (tiny) backscatter contribution."""
    return math.log2(1.0 + average_snr_primary(scene, xs, w))


def primary_rate_approx(scene: Scene, xs: PositionVector, w: BeamformingVector) -> float:
    """Primary rate from the direct link alone."""
    h_p = channel_pt_pu(scene, xs).coeffs
    direct = abs(np.vdot(h_p, w.weights)) ** 2
    return math.log2(1.0 + direct / scene.noise_power_w)


def secondary_rate(scene: Scene, xs: PositionVector, w: BeamformingVector) -> float:
    """Backscatter rate with an L-symbol spreading gain.

    One secondary symbol spans L primary symbols, giving a 1/L pre-log and
    an L-fold SNR factor after combining.
    """
    h_b = channel_pt_bd(scene, xs).coeffs
    g = bd_pu_channel(scene)
    snr = (
        scene.spread_factor
        * abs(g) ** 2
        * abs(np.vdot(h_b, w.weights)) ** 2
        / scene.noise_power_w
    )
    return math.log2(1.0 + snr) / scene.spread_factor
