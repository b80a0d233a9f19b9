"""2D track world: geometry, bicycle dynamics, synthetic camera, expert policy."""

from .dynamics import ControlAction, SimConfig, VehicleState, clamp_action, step_dynamics, wrap_heading
from .expert import expert_action
from .render import render_observation
from .rollout import RolloutError, Trajectory, TrajectoryRecord, rollout
from .track import (
    BUILTIN_TRACKS,
    Track,
    TrackSpec,
    TrackSpecError,
    build_track,
    cross_track_error,
    load_track_spec,
)

__all__ = [
    "BUILTIN_TRACKS",
    "ControlAction",
    "RolloutError",
    "SimConfig",
    "Track",
    "TrackSpec",
    "TrackSpecError",
    "Trajectory",
    "TrajectoryRecord",
    "VehicleState",
    "build_track",
    "clamp_action",
    "cross_track_error",
    "expert_action",
    "load_track_spec",
    "render_observation",
    "rollout",
    "step_dynamics",
    "wrap_heading",
]
