"""First-person road renderer: flat-ground perspective projection of track grids."""

import math

import numpy as np

from .. import _core
from .dynamics import SimConfig, VehicleState
from .track import Track

# World-space pattern scales (meters).
STRIPE_WIDTH = 0.25
DASH_HALF_WIDTH = 0.10
DASH_PERIOD = 2.0
SLAB_PERIOD = 4.0
BAND_PERIOD = 2.0
FAR_FADE = 60.0
GRID_RESOLUTION = 0.05
GRID_MARGIN = 16.0

_PALETTE = np.zeros((_core.PALETTE_ROWS, 3), dtype=np.float64)
_PALETTE[_core.PAL_ASPHALT] = (0.30, 0.31, 0.34)
_PALETTE[_core.PAL_ASPHALT_ALT] = (0.335, 0.345, 0.375)
_PALETTE[_core.PAL_STRIPE] = (0.92, 0.92, 0.95)
_PALETTE[_core.PAL_DASH] = (0.85, 0.75, 0.25)
_PALETTE[_core.PAL_GREEN_A] = (0.22, 0.48, 0.20)
_PALETTE[_core.PAL_GREEN_B] = (0.17, 0.41, 0.16)
_PALETTE[_core.PAL_FAR_FIELD] = (0.20, 0.44, 0.18)
_PALETTE[_core.PAL_HAZE] = (0.63, 0.71, 0.80)
_PALETTE[_core.PAL_SKY_TOP] = (0.35, 0.52, 0.80)
_PALETTE[_core.PAL_SKY_HORIZON] = (0.63, 0.71, 0.80)


def render_observation(track: Track, state: VehicleState, config: SimConfig) -> np.ndarray:
    """Render the forward camera view for a vehicle state.

    Deterministic: identical (track, state, config) always produce a
    bit-identical float32 image in [0, 1].
    """
    grids = track.field_grids(resolution=GRID_RESOLUTION, margin=GRID_MARGIN)
    h, w = config.image_height, config.image_width
    focal = (w / 2.0) / math.tan(math.radians(config.fov_deg) / 2.0)
    cx, cy = (w - 1) / 2.0, (h - 1) / 2.0

    theta, phi = state.heading, config.camera_pitch
    cos_t, sin_t = math.cos(theta), math.sin(theta)
    cos_p, sin_p = math.cos(phi), math.sin(phi)

    return _core.render_frame(
        grids["dist"],
        grids["arc"],
        _PALETTE,
        h,
        w,
        float(state.position[0]),
        float(state.position[1]),
        config.camera_height,
        sin_t,  # right_x
        -cos_t,  # right_y
        -sin_p * cos_t,  # down_x
        -sin_p * sin_t,  # down_y
        -cos_p,  # down_z
        cos_p * cos_t,  # fwd_x
        cos_p * sin_t,  # fwd_y
        -sin_p,  # fwd_z
        1.0 / focal,
        cx,
        cy,
        grids["x0"],
        grids["y0"],
        1.0 / grids["resolution"],
        track.width / 2.0,
        STRIPE_WIDTH,
        DASH_HALF_WIDTH,
        1.0 / DASH_PERIOD,
        1.0 / SLAB_PERIOD,
        1.0 / BAND_PERIOD,
        1.0 / FAR_FADE,
        1.0 / (config.horizon_fraction * h),
    )
