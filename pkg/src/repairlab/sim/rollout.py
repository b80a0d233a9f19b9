"""Closed-loop rollout: render -> (corrupt) -> (repair) -> policy -> step."""

from dataclasses import dataclass, field

import numpy as np

from .dynamics import ControlAction, SimConfig, VehicleState, clamp_action, step_dynamics
from .render import render_observation
from .track import Track, cross_track_error

DEFAULT_OFF_TRACK_MARGIN = 0.5


class RolloutError(RuntimeError):
    pass


@dataclass
class TrajectoryRecord:
    t: int
    state: VehicleState
    action: ControlAction
    cte: float


@dataclass
class Trajectory:
    records: list
    termination_reason: str  # "completed" or "off_track"
    observations: list = field(default_factory=list, repr=False)

    @property
    def cte(self):
        return np.array([r.cte for r in self.records], dtype=np.float64)

    @property
    def positions(self):
        return np.array([r.state.position for r in self.records], dtype=np.float64)

    def padded_cte(self, n_steps: int, pad_value: float):
        """CTE samples padded to the scheduled episode length.

        Episodes that ended off-track contribute the boundary value for every
        unrun step, so crashing early is penalized instead of rewarded.
        """
        cte = self.cte
        if len(cte) >= n_steps:
            return cte[:n_steps]
        return np.concatenate([cte, np.full(n_steps - len(cte), pad_value)])


def rollout(
    policy,
    repair,
    track: Track,
    x0: VehicleState,
    t_max: int,
    config: SimConfig,
    frame_corruption=None,
    off_track_margin: float = DEFAULT_OFF_TRACK_MARGIN,
    record_observations: bool = False,
) -> Trajectory:
    """Run the closed loop for up to t_max steps.

    ``policy`` maps an image to a (steering, throttle) pair. ``repair`` (an
    Image -> Image map) and ``frame_corruption`` (a (step, Image) -> Image
    map, applied before repair) are optional. Terminates early when |cte|
    exceeds width/2 + off_track_margin.
    """
    if t_max <= 0:
        raise ValueError(f"t_max must be positive, got {t_max}")

    state = x0
    records = []
    observations = []
    boundary = track.width / 2.0 + off_track_margin
    reason = "completed"

    for t in range(t_max):
        obs = render_observation(track, state, config)
        if frame_corruption is not None:
            obs = frame_corruption(t, obs)
        if repair is not None:
            obs = repair(obs)
        raw = np.asarray(policy(obs), dtype=np.float64)
        if raw.shape != (2,) or not np.all(np.isfinite(raw)):
            raise RolloutError(f"policy returned invalid action {raw!r} at step {t}")
        action = clamp_action(raw)

        cte = cross_track_error(track, state.position)
        records.append(TrajectoryRecord(t=t, state=state, action=action, cte=cte))
        if record_observations:
            observations.append(obs)

        if abs(cte) > boundary:
            reason = "off_track"
            break
        state = step_dynamics(state, action, config)

    return Trajectory(records=records, termination_reason=reason, observations=observations)
