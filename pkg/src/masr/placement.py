"""Antenna placement: closed-form optimum, baseline, and a search oracle.

The closed form places antennas on a uniform grid of pitch
lambda/|cos(theta_p) - cos(theta_b)|, which co-phases every element toward
both directions at once and reaches the gain upper bound N. The randomized
multi-start search exists to verify that claim independently; it never
feeds the closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .beamforming import beam_gain
from .scene import DegenerateGeometryError, PositionVector, Scene

_DELTA_TOL = 1e-12
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class InfeasibleApertureError(ValueError):
    """The search aperture cannot hold N antennas at minimum spacing."""


@dataclass(frozen=True)
class PlacementResult:
    positions: PositionVector
    achieved_gain: float
    method_tag: str  # closed_form | search_oracle | fpa_baseline


def closed_form_positions(delta: float, num_antennas: int, wavelength_m: float) -> PositionVector:
    """Uniform grid of pitch lambda/|delta| starting at the origin."""
    if abs(delta) < _DELTA_TOL:
        raise DegenerateGeometryError(
            "directions are degenerate (|delta| ~ 0); the optimal aperture diverges"
        )
    pitch = wavelength_m / abs(delta)
    return PositionVector(tuple(n * pitch for n in range(num_antennas)))


def optimal_ma_positions(scene: Scene) -> PlacementResult:
    """Closed-form optimal positions; the achieved gain equals N."""
    positions = closed_form_positions(scene.delta, scene.num_antennas, scene.wavelength_m)
    gain = beam_gain(positions, scene.theta_p, scene.theta_b, scene.wavelength_m)
    return PlacementResult(positions=positions, achieved_gain=gain, method_tag="closed_form")


def fpa_positions(scene: Scene) -> PositionVector:
    """Fixed half-wavelength grid x_n = n*lambda/2 for n = 1..N."""
    half = scene.wavelength_m / 2.0
    return PositionVector(tuple(n * half for n in range(1, scene.num_antennas + 1)))


def validate_spacing(xs: PositionVector, wavelength_m: float) -> bool:
    """True iff every pair of antennas is at least lambda/2 apart."""
    gaps = np.diff(xs.array)
    if gaps.size == 0:
        return True
    return bool(np.min(gaps) >= wavelength_m / 2.0 - 1e-12)


def search_oracle(scene: Scene, budget: int, seed: int) -> PlacementResult:
    """Randomized multi-start placement search, deterministic per seed.

    Each start draws positions uniformly inside the aperture
    [0, (N-1)*lambda/|delta| + lambda], repairs the minimum-spacing
    constraint, then runs three passes of per-antenna golden-section
    refinement of the gain while holding the other antennas fixed. The best
    start wins; ties break toward lexicographically smaller positions so
    the result does not depend on evaluation order.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    n = scene.num_antennas
    lam = scene.wavelength_m
    abs_delta = abs(scene.delta)
    if abs_delta < _DELTA_TOL:
        raise DegenerateGeometryError("directions are degenerate (|delta| ~ 0)")
    aperture = (n - 1) * lam / abs_delta + lam
    d_min = lam / 2.0
    if (n - 1) * d_min > aperture + 1e-12:
        raise InfeasibleApertureError(
            f"aperture {aperture!r} m cannot hold {n} antennas at {d_min!r} m spacing"
        )
    omega = 2.0 * math.pi * scene.delta / lam
    tol = 1e-6 * lam

    best_gain = -1.0
    best_xs: tuple[float, ...] = ()
    for start in range(budget):
        rng = np.random.default_rng([seed % 2**63, start])
        xs = np.sort(rng.uniform(0.0, aperture, n)).tolist()
        _repair_spacing(xs, d_min, aperture)
        phasors = [cmath.exp(1j * omega * x) for x in xs]
        for _ in range(3):
            for i in range(n):
                lo = xs[i - 1] + d_min if i > 0 else 0.0
                hi = xs[i + 1] - d_min if i < n - 1 else aperture
                if hi <= lo:
                    continue
                rest = sum(phasors) - phasors[i]

                def score(x: float, rest: complex = rest) -> float:
                    return abs(rest + cmath.exp(1j * omega * x))

                candidate = _golden_max(score, lo, hi, tol)
                if score(candidate) >= score(xs[i]):
                    xs[i] = candidate
                    phasors[i] = cmath.exp(1j * omega * candidate)
        gain = abs(sum(phasors))
        key = tuple(xs)
        if gain > best_gain or (gain == best_gain and key < best_xs):
            best_gain = gain
            best_xs = key

    positions = PositionVector(best_xs)
    achieved = beam_gain(positions, scene.theta_p, scene.theta_b, lam)
    return PlacementResult(positions=positions, achieved_gain=achieved, method_tag="search_oracle")


def _repair_spacing(xs: list[float], d_min: float, aperture: float) -> None:
    """Push sorted positions apart to d_min gaps, staying inside [0, aperture]."""
    for i in range(1, len(xs)):
        if xs[i] - xs[i - 1] < d_min:
            xs[i] = xs[i - 1] + d_min
    if xs[-1] > aperture:
        xs[-1] = aperture
        for i in range(len(xs) - 2, -1, -1):
            if xs[i] > xs[i + 1] - d_min:
                xs[i] = xs[i + 1] - d_min


def _golden_max(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section maximization of f on [lo, hi] to width tol."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return c if fc >= fd else d
