"""Centerline-following expert: pure pursuit steering + proportional throttle."""

import math

import numpy as np

from .dynamics import ControlAction, SimConfig, VehicleState, wrap_heading
from .track import Track

THROTTLE_IDLE = 0.1
THROTTLE_GAIN = 0.5


def expert_action(track: Track, state: VehicleState, config: SimConfig = SimConfig()) -> ControlAction:
    """Steer toward a lookahead point on the centerline; hold the target speed.

    Lookahead grows with speed: 1.5 * wheelbase * (1 + speed / v_max).
    """
    s_here, _ = track.locate(state.position)
    lookahead = 1.5 * config.wheelbase * (1.0 + state.speed / config.v_max)
    target = track.point_at(s_here + lookahead)

    rel = target - state.position
    alpha = wrap_heading(math.atan2(rel[1], rel[0]) - state.heading)
    dist = max(float(np.linalg.norm(rel)), 1e-6)
    delta = math.atan2(2.0 * config.wheelbase * math.sin(alpha), dist)
    steering = min(max(delta / config.max_steer_angle, -1.0), 1.0)

    throttle = THROTTLE_IDLE + THROTTLE_GAIN * (config.target_speed - state.speed)
    throttle = min(max(throttle, 0.0), 1.0)
    return ControlAction(steering, throttle)
