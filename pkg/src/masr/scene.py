"""Physical layout and free-space LoS channel quantities.

Everything here is a pure function of the scene parameters: transmitter
array positions on the x-axis, far-field steering phases, and inverse
distance path gains. Internal power unit is watts throughout; dBm is
converted at the CLI boundary only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Reject cos(theta_p) == cos(theta_b) only at exact degeneracy; small
# separations are legal, they just need a large array aperture.
_COS_EQUALITY_TOL = 1e-12


class DegenerateGeometryError(ValueError):
    """The two steering directions (or node positions) coincide."""


def dbm_to_watt(p_dbm: float) -> float:
    """Convert a dBm power level to watts."""
    if not math.isfinite(p_dbm):
        raise ValueError(f"power in dBm must be finite, got {p_dbm!r}")
    return 10.0 ** ((p_dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class Scene:
    """Complete parameterization of one transmitter/user/backscatter layout.

    Angles are steering angles in radians measured from the array axis,
    restricted to the open interval (0, pi). Distances are in meters,
    powers in watts.
    """

    wavelength_m: float
    num_antennas: int
    theta_p: float
    theta_b: float
    d_p_m: float
    d_b_m: float
    transmit_power_w: float
    noise_power_w: float
    spread_factor: int

    def __post_init__(self) -> None:
        _require_positive("wavelength_m", self.wavelength_m)
        _require_positive_int("num_antennas", self.num_antennas)
        _require_angle("theta_p", self.theta_p)
        _require_angle("theta_b", self.theta_b)
        _require_positive("d_p_m", self.d_p_m)
        _require_positive("d_b_m", self.d_b_m)
        if not (math.isfinite(self.transmit_power_w) and self.transmit_power_w >= 0.0):
            raise ValueError("transmit_power_w must be finite and >= 0")
        _require_positive("noise_power_w", self.noise_power_w)
        _require_positive_int("spread_factor", self.spread_factor)
        if abs(math.cos(self.theta_p) - math.cos(self.theta_b)) <= _COS_EQUALITY_TOL:
            raise DegenerateGeometryError(
                "cos(theta_p) and cos(theta_b) coincide; the user and "
                "backscatter directions are indistinguishable"
            )

    @property
    def delta(self) -> float:
        """Spatial-frequency separation cos(theta_p) - cos(theta_b)."""
        return math.cos(self.theta_p) - math.cos(self.theta_b)


@dataclass(frozen=True)
class NodePositions:
    """Cartesian node coordinates and the user-to-backscatter distance."""

    pu_xy_m: tuple[float, float]
    bd_xy_m: tuple[float, float]
    d_s_m: float


@dataclass(frozen=True)
class PositionVector:
    """Ordered antenna x-coordinates on the linear rail, in meters."""

    xs_m: tuple[float, ...]

    def __post_init__(self) -> None:
        xs = tuple(float(x) for x in self.xs_m)
        object.__setattr__(self, "xs_m", xs)
        if not xs:
            raise ValueError("position vector must contain at least one antenna")
        if not all(math.isfinite(x) for x in xs):
            raise ValueError("antenna positions must be finite")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("antenna positions must be strictly increasing")

    def __len__(self) -> int:
        return len(self.xs_m)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.xs_m, dtype=float)


@dataclass(frozen=True)
class ChannelVector:
    """Complex channel coefficients from the array to a single-antenna node."""

    coeffs: np.ndarray
    node_tag: str

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coeffs, dtype=complex)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        if self.node_tag not in ("pu", "bd"):
            raise ValueError(f"node_tag must be 'pu' or 'bd', got {self.node_tag!r}")
        mags = np.abs(coeffs)
        if mags.size == 0:
            raise ValueError("channel vector must be nonempty")
        # LoS model: a single common path gain for every element.
        if not np.allclose(mags, mags[0], rtol=1e-9, atol=0.0):
            raise ValueError("LoS channel coefficients must share one magnitude")


def node_positions(scene: Scene) -> NodePositions:
    """Place the user and backscatter nodes and measure their separation."""
    pu = (-scene.d_p_m * math.cos(scene.theta_p), scene.d_p_m * math.sin(scene.theta_p))
    bd = (-scene.d_b_m * math.cos(scene.theta_b), scene.d_b_m * math.sin(scene.theta_b))
    d_s = math.hypot(bd[0] - pu[0], bd[1] - pu[1])
    return NodePositions(pu_xy_m=pu, bd_xy_m=bd, d_s_m=d_s)


def array_response(xs: PositionVector, theta: float, wavelength_m: float) -> np.ndarray:
    """Unit-magnitude steering phasors exp(-j*(2*pi/lambda)*x*cos(theta))."""
    if len(xs) == 0:
        raise ValueError("position vector must be nonempty")
    if not (0.0 < theta < math.pi):
        raise ValueError(f"theta must lie in (0, pi), got {theta!r}")
    phase = -(2.0 * math.pi / wavelength_m) * xs.array * math.cos(theta)
    return np.exp(1j * phase)


def channel_pt_pu(scene: Scene, xs: PositionVector) -> ChannelVector:
    """LoS channel from the transmit array to the primary user."""
    beta = scene.wavelength_m / (4.0 * math.pi * scene.d_p_m)
    carrier = np.exp(-2j * math.pi * scene.d_p_m / scene.wavelength_m)
    coeffs = beta * carrier * array_response(xs, scene.theta_p, scene.wavelength_m)
    return ChannelVector(coeffs=coeffs, node_tag="pu")


def channel_pt_bd(scene: Scene, xs: PositionVector) -> ChannelVector:
    """LoS channel from the transmit array to the backscatter device."""
    beta = scene.wavelength_m / (4.0 * math.pi * scene.d_b_m)
    carrier = np.exp(-2j * math.pi * scene.d_b_m / scene.wavelength_m)
    coeffs = beta * carrier * array_response(xs, scene.theta_b, scene.wavelength_m)
    return ChannelVector(coeffs=coeffs, node_tag="bd")


def bd_pu_channel(scene: Scene) -> complex:
    """Scalar backscatter-to-user channel gain over the derived distance."""
    d_s = node_positions(scene).d_s_m
    if d_s < 1e-12:
        raise DegenerateGeometryError("backscatter device and user coincide")
    mag = scene.wavelength_m / (4.0 * math.pi * d_s)
    return mag * complex(math.cos(-2.0 * math.pi * d_s / scene.wavelength_m),
                         math.sin(-2.0 * math.pi * d_s / scene.wavelength_m))


def _require_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")


def _require_positive_int(name: str, value: int) -> None:
    if not (isinstance(value, (int, np.integer)) and value >= 1):
        raise ValueError(f"{name} must be a positive integer, got {value!r}")


def _require_angle(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and 0.0 < value < math.pi):
        raise ValueError(f"{name} must lie in the open interval (0, pi), got {value!r}")
