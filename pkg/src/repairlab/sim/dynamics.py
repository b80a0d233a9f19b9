"""Vehicle state, sim configuration, and the kinematic bicycle step."""

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np


class ControlAction(NamedTuple):
    steering: float  # [-1, 1], maps linearly to +/- max_steer_angle
    throttle: float  # [0, 1]


@dataclass(frozen=True)
class VehicleState:
    position: np.ndarray  # (2,) meters
    heading: float  # radians, wrapped to (-pi, pi]
    speed: float  # m/s, >= 0

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=np.float64))


@dataclass(frozen=True)
class SimConfig:
    dt: float = 0.05
    wheelbase: float = 2.5
    max_steer_angle: float = 0.45  # radians at steering = +/-1
    v_max: float = 8.0
    accel_max: float = 4.0  # m/s^2 at full throttle
    drag_coeff: float = 0.5  # 1/s; v_max = accel_max / drag_coeff at steady state
    image_height: int = 120
    image_width: int = 160
    camera_height: float = 1.2
    camera_pitch: float = 0.15  # radians, positive pitches the camera down
    horizon_fraction: float = 0.42  # sky band extent used by the sky gradient
    fov_deg: float = 100.0
    target_speed: float = 5.0  # expert cruise speed

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.image_height <= 0 or self.image_width <= 0:
            raise ValueError("image dimensions must be positive")


def wrap_heading(theta: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    w = math.remainder(theta, 2.0 * math.pi)
    if w <= -math.pi:
        w += 2.0 * math.pi
    return w


def clamp_action(action) -> ControlAction:
    steering, throttle = float(action[0]), float(action[1])
    return ControlAction(min(max(steering, -1.0), 1.0), min(max(throttle, 0.0), 1.0))


def step_dynamics(state: VehicleState, action, config: SimConfig) -> VehicleState:
    """One Euler step of the kinematic bicycle model.

    Position advances along the current heading before the heading update, so
    zero steering gives exact straight-line motion. Speed follows
    ds/dt = accel_max * throttle - drag_coeff * s, clamped to [0, v_max].
    """
    steering, throttle = clamp_action(action)
    delta = steering * config.max_steer_angle
    s = state.speed

    new_pos = state.position + s * config.dt * np.array([math.cos(state.heading), math.sin(state.heading)])
    new_heading = wrap_heading(state.heading + (s / config.wheelbase) * math.tan(delta) * config.dt)
    new_speed = s + (config.accel_max * throttle - config.drag_coeff * s) * config.dt
    new_speed = min(max(new_speed, 0.0), config.v_max)
    return replace(state, position=new_pos, heading=new_heading, speed=new_speed)
