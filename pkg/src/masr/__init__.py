"""Deterministic calculator for movable-antenna arrays serving a backscatter link.

The package models free-space LoS channels from a linear transmit array,
matched-filter beamforming, and the primary/secondary achievable rates of
a backscatter device riding on the primary signal. Antenna placement is
solved in closed form and cross-checked by a randomized search oracle;
experiment sweeps reproduce position tables, beam patterns, rate regions,
and rate-versus-power curves as delimited rows.
"""

from .beamforming import (
    BeamformingVector,
    RatePoint,
    average_snr_primary,
    beam_gain,
    fpa_beam_gain,
    mrt_beamformer,
    primary_rate_approx,
    primary_rate_exact,
    secondary_rate,
)
from .experiments import (
    BeamPattern,
    RateRegion,
    beam_pattern_sweep,
    position_table,
    rate_region,
    rate_vs_power_sweep,
)
from .placement import (
    InfeasibleApertureError,
    PlacementResult,
    closed_form_positions,
    fpa_positions,
    optimal_ma_positions,
    search_oracle,
    validate_spacing,
)
from .scene import (
    ChannelVector,
    DegenerateGeometryError,
    NodePositions,
    PositionVector,
    Scene,
    array_response,
    bd_pu_channel,
    channel_pt_bd,
    channel_pt_pu,
    dbm_to_watt,
    node_positions,
)

__version__ = "0.1.0"

__all__ = [
    "BeamformingVector",
    "BeamPattern",
    "ChannelVector",
    "DegenerateGeometryError",
    "InfeasibleApertureError",
    "NodePositions",
    "PlacementResult",
    "PositionVector",
    "RatePoint",
    "RateRegion",
    "Scene",
    "array_response",
    "average_snr_primary",
    "bd_pu_channel",
    "beam_gain",
    "beam_pattern_sweep",
    "channel_pt_bd",
    "channel_pt_pu",
    "closed_form_positions",
    "dbm_to_watt",
    "fpa_beam_gain",
    "fpa_positions",
    "mrt_beamformer",
    "node_positions",
    "optimal_ma_positions",
    "position_table",
    "primary_rate_approx",
    "primary_rate_exact",
    "rate_region",
    "rate_vs_power_sweep",
    "search_oracle",
    "secondary_rate",
    "validate_spacing",
]
