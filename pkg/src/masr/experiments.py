"""Reproducible experiment sweeps built on the placement and rate layers.

Every function here is deterministic and returns plain values or row
dictionaries ready for delimited output; rendering is left to callers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

import numpy as np

from .beamforming import (
    BeamformingVector,
    RatePoint,
    beam_gain,
    mrt_beamformer,
    primary_rate_exact,
    secondary_rate,
)
from .placement import closed_form_positions, fpa_positions, optimal_ma_positions
from .scene import PositionVector, Scene, channel_pt_bd, channel_pt_pu, dbm_to_watt

SCHEMES = ("ma", "fpa")


@dataclass(frozen=True)
class BeamPattern:
    """Sampled gain-versus-angle curve for one antenna scheme."""

    samples: tuple[tuple[float, float], ...]  # (theta_rad, gain)
    scheme_tag: str

    def __post_init__(self) -> None:
        if self.scheme_tag not in SCHEMES:
            raise ValueError(f"scheme_tag must be one of {SCHEMES}, got {self.scheme_tag!r}")
        thetas = [t for t, _ in self.samples]
        if any(not 0.0 < t < math.pi for t in thetas):
            raise ValueError("pattern angles must lie in (0, pi)")
        if any(b <= a for a, b in zip(thetas, thetas[1:])):
            raise ValueError("pattern angles must be strictly increasing")
        if any(g < 0.0 for _, g in self.samples):
            raise ValueError("gains must be nonnegative")


@dataclass(frozen=True)
class RateRegion:
    """Baseline rate frontier plus the simultaneously-optimal corner point.

    ``bounds`` carries the per-axis maxima over everything in the region;
    the corner attains both bounds at once while the fixed-spacing frontier
    trades one rate against the other.
    """

    fpa_frontier: tuple[RatePoint, ...]
    ma_corner: RatePoint
    bounds: RatePoint


def beam_pattern_sweep(
    scene: Scene, xs: PositionVector, samples: int, scheme_tag: str = "ma"
) -> BeamPattern:
    """Gain over a uniform angle grid, plus exact hits at both node angles.

    Grid points sit at k*pi/(samples+1) for k = 1..samples; theta_p and
    theta_b are appended exactly and duplicates are collapsed.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    thetas = {k * math.pi / (samples + 1) for k in range(1, samples + 1)}
    thetas.add(scene.theta_p)
    thetas.add(scene.theta_b)
    pts = tuple(
        (theta, beam_gain(xs, scene.theta_p, theta, scene.wavelength_m))
        for theta in sorted(thetas)
    )
    return BeamPattern(samples=pts, scheme_tag=scheme_tag)


def rate_vs_power_sweep(
    scene_template: Scene,
    p_dbm_grid: list[float] | tuple[float, ...],
    schemes: tuple[str, ...] = SCHEMES,
) -> list[dict]:
    """Secondary rate per transmit power and scheme, in grid order."""
    if len(p_dbm_grid) == 0:
        raise ValueError("power grid must be nonempty")
    positions = {scheme: _scheme_positions(scene_template, scheme) for scheme in schemes}
    rows = []
    for p_dbm in p_dbm_grid:
        scene = replace(scene_template, transmit_power_w=dbm_to_watt(p_dbm))
        for scheme in schemes:
            w = mrt_beamformer(positions[scheme], scene)
            rows.append(
                {
                    "p_dbm": float(p_dbm),
                    "scheme": scheme,
                    "r_c": secondary_rate(scene, positions[scheme], w),
                }
            )
    return rows


def rate_region(scene: Scene, frontier_samples: int) -> RateRegion:
    """Achievable (primary, secondary) rate pairs under the power budget.

    The movable corner uses the closed-form positions with the matched
    beamformer. The fixed-spacing frontier sweeps beamformers inside
    span{h_p, h_b} (anything orthogonal wastes power for both rates): with
    u1 = h_p/|h_p| and u2 the normalized residual of h_b, the sweep is
    w(t) = sqrt(P)*(cos(t)*u1 + sin(t)*e^{j*phi}*u2) over t in [0, pi/2],
    phi co-phasing the two contributions to h_b^H w. The swept points are
    then reduced to their Pareto boundary, sorted by increasing primary
    rate; points past the backscatter-matched angle are dominated and drop
    out. Collinear channels collapse the frontier to the single matched
    point.
    """
    if frontier_samples < 2:
        raise ValueError("frontier_samples must be >= 2")

    ma = optimal_ma_positions(scene)
    w_ma = mrt_beamformer(ma.positions, scene)
    ma_corner = RatePoint(
        primary_rate_bpshz=primary_rate_exact(scene, ma.positions, w_ma),
        secondary_rate_bpshz=secondary_rate(scene, ma.positions, w_ma),
    )

    fpa = fpa_positions(scene)
    h_p = channel_pt_pu(scene, fpa).coeffs
    h_b = channel_pt_bd(scene, fpa).coeffs
    p_t = scene.transmit_power_w
    u1 = h_p / np.linalg.norm(h_p)
    residual = h_b - u1 * np.vdot(u1, h_b)
    residual_norm = float(np.linalg.norm(residual))
    if residual_norm <= 1e-12 * float(np.linalg.norm(h_b)):
        w0 = mrt_beamformer(fpa, scene)
        frontier: tuple[RatePoint, ...] = (
            RatePoint(
                primary_rate_bpshz=primary_rate_exact(scene, fpa, w0),
                secondary_rate_bpshz=secondary_rate(scene, fpa, w0),
            ),
        )
    else:
        u2 = residual / residual_norm
        toward_u1 = complex(np.vdot(h_b, u1))
        toward_u2 = complex(np.vdot(h_b, u2))  # real and positive by construction
        phi = cmath.phase(toward_u1) - cmath.phase(toward_u2)
        points = []
        for t in np.linspace(0.0, math.pi / 2.0, frontier_samples):
            weights = math.sqrt(p_t) * (
                math.cos(t) * u1 + math.sin(t) * cmath.exp(1j * phi) * u2
            )
            w = BeamformingVector(weights=weights, power_budget_w=p_t)
            points.append(
                RatePoint(
                    primary_rate_bpshz=primary_rate_exact(scene, fpa, w),
                    secondary_rate_bpshz=secondary_rate(scene, fpa, w),
                )
            )
        frontier = _pareto_boundary(points)

    everything = frontier + (ma_corner,)
    bounds = RatePoint(
        primary_rate_bpshz=max(p.primary_rate_bpshz for p in everything),
        secondary_rate_bpshz=max(p.secondary_rate_bpshz for p in everything),
    )
    return RateRegion(fpa_frontier=frontier, ma_corner=ma_corner, bounds=bounds)


def position_table(rows: list[tuple[float, float]], num_antennas: int) -> list[dict]:
    """Optimal-position summary per (theta_p, theta_b) pair.

    Emits the direction separation and positions in wavelength units, both
    rounded to four decimals.
    """
    out = []
    for theta_p, theta_b in rows:
        delta = math.cos(theta_p) - math.cos(theta_b)
        positions = closed_form_positions(delta, num_antennas, wavelength_m=1.0)
        row: dict = {"delta": round(delta, 4)}
        for i, x in enumerate(positions.xs_m, start=1):
            row[f"x{i}_lambda"] = round(x, 4)
        out.append(row)
    return out


def _scheme_positions(scene: Scene, scheme: str) -> PositionVector:
    if scheme == "ma":
        return optimal_ma_positions(scene).positions
    if scheme == "fpa":
        return fpa_positions(scene)
    raise ValueError(f"unknown scheme {scheme!r}")


def _pareto_boundary(points: list[RatePoint]) -> tuple[RatePoint, ...]:
    """Maximal points, sorted by increasing primary rate."""
    ordered = sorted(points, key=lambda p: p.primary_rate_bpshz)
    kept: list[RatePoint] = []
    best_secondary = -math.inf
    for p in reversed(ordered):
        if p.secondary_rate_bpshz > best_secondary:
            kept.append(p)
            best_secondary = p.secondary_rate_bpshz
    kept.reverse()
    return tuple(kept)
