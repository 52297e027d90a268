"""Seeded synthetic scene generator with per-track ground truth.

Actors move along straight lanes of a fixed camera view. Conforming actors
follow their class's flow; three misbehaviour models deviate from it:
wrong_way reverses the step sign, loiter crawls at a twentieth of the class
speed, dash races at three and a half times it. Observed centers carry
uniform pixel jitter and a uniform confidence in [0.3, 1.0].

A scenario can also describe a stereo rig: the same world rendered through
two viewport crops with per-camera jitter and a clock offset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from .errors import ConfigError, DataError
from .tracklog import Detection, TrackLog

LANE = "lane"
WRONG_WAY = "wrong_way"
LOITER = "loiter"
DASH = "dash"
MODELS = (LANE, WRONG_WAY, LOITER, DASH)
ANOMALOUS_MODELS = frozenset({WRONG_WAY, LOITER, DASH})

LOITER_FACTOR = 0.05
DASH_FACTOR = 3.5

STEREO_TRACK_OFFSET = 10000  # camera B ids, so intersection cannot lean on ids


@dataclass(frozen=True)
class ActorSpec:
    """One object: its class's canonical motion plus an optional misbehaviour."""

    class_label: str
    entry_s: float
    model: str = LANE
    speed_px: float = 8.0          # nominal per-frame step of the class
    lane_y: float = 360.0
    direction: int = 1             # canonical flow of the class along x
    enter_x: float | None = None   # defaults to the edge the flow enters from
    exit_x: float | None = None    # defaults to the opposite edge
    box_w: float = 60.0
    box_h: float = 30.0
    conf_lo: float = 0.3           # detector-confidence range for this actor
    conf_hi: float = 1.0

    @property
    def ground_truth_anomalous(self) -> bool:
        return self.model in ANOMALOUS_MODELS


@dataclass(frozen=True)
class StereoSetup:
    """Two viewport crops of the same world and camera B's clock lead."""

    offset_s: float = 0.0                # camera-B clock minus camera-A clock
    crop_a: tuple[float, float, float, float] = (0.0, 0.0, 1280.0, 720.0)
    crop_b: tuple[float, float, float, float] = (0.0, 0.0, 1280.0, 720.0)


@dataclass(frozen=True)
class Scenario:
    duration_s: float
    fps: float
    frame_w: float = 1280.0
    frame_h: float = 720.0
    rng_seed: int = 0
    jitter_px: float = 2.0
    camera_id: str = "cam0"
    actors: tuple[ActorSpec, ...] = ()
    stereo: StereoSetup | None = None

    def validate(self) -> "Scenario":
        if self.duration_s <= 0:
            raise ConfigError(f"duration_s must be positive, got {self.duration_s}")
        if self.fps <= 0:
            raise ConfigError(f"fps must be positive, got {self.fps}")
        if self.frame_w <= 0 or self.frame_h <= 0:
            raise ConfigError("frame size must be positive")
        if self.jitter_px < 0:
            raise ConfigError(f"jitter_px must be >= 0, got {self.jitter_px}")
        for i, a in enumerate(self.actors):
            if a.model not in MODELS:
                raise ConfigError(f"actor {i}: unknown motion model {a.model!r}")
            if not 0.0 <= a.entry_s < self.duration_s:
                raise ConfigError(
                    f"actor {i}: entry_s {a.entry_s} outside [0, {self.duration_s})")
            if a.speed_px <= 0:
                raise ConfigError(f"actor {i}: speed_px must be positive")
            if a.direction not in (1, -1):
                raise ConfigError(f"actor {i}: direction must be +1 or -1")
            if not 0.3 <= a.conf_lo <= a.conf_hi <= 1.0:
                raise ConfigError(
                    f"actor {i}: confidence range must satisfy "
                    f"0.3 <= conf_lo <= conf_hi <= 1.0")
        if self.stereo is not None:
            frames = self.stereo.offset_s * self.fps
            if abs(frames - round(frames)) > 1e-9:
                raise ConfigError(
                    "stereo offset_s must be a whole number of frame periods")
        return self


def _effective_motion(spec: ActorSpec, frame_w: float) -> tuple[int, float, float, float]:
    """Resolve a spec into (step sign, step length, enter x, exit x)."""
    sign = -spec.direction if spec.model == WRONG_WAY else spec.direction
    if spec.model == LOITER:
        step = LOITER_FACTOR * spec.speed_px
    elif spec.model == DASH:
        step = DASH_FACTOR * spec.speed_px
    else:
        step = spec.speed_px
    enter = spec.enter_x if spec.enter_x is not None else (
        0.0 if sign > 0 else frame_w - 1.0)
    exit_x = spec.exit_x if spec.exit_x is not None else (
        frame_w - 1.0 if sign > 0 else 0.0)
    return sign, step, enter, exit_x


def _true_paths(s: Scenario) -> dict[int, tuple[int, list[tuple[float, float]]]]:
    """Noise-free world positions: track id -> (entry frame, per-frame centers)."""
    n_frames = int(round(s.duration_s * s.fps))
    paths: dict[int, tuple[int, list[tuple[float, float]]]] = {}
    for i, spec in enumerate(s.actors):
        sign, step, x, exit_x = _effective_motion(spec, s.frame_w)
        entry_frame = int(round(spec.entry_s * s.fps))
        centers: list[tuple[float, float]] = []
        for _ in range(entry_frame, n_frames):
            if not 0.0 <= x < s.frame_w:
                break
            if sign > 0 and x > exit_x:
                break
            if sign < 0 and x < exit_x:
                break
            centers.append((x, spec.lane_y))
            x += sign * step
        if centers:
            paths[i + 1] = (entry_frame, centers)
    return paths


def _emit_camera(s: Scenario, paths, rng: np.random.Generator, camera_id: str,
                 crop: tuple[float, float, float, float] | None,
                 frame_shift: int, track_offset: int) -> TrackLog:
    """Observe the true paths through one camera.

    Draw order is frame-major then track-ascending, so output bytes are a
    pure function of the seed. frame_shift converts world frames into this
    camera's frame numbering.
    """
    n_frames = int(round(s.duration_s * s.fps))
    by_actor_box = {i + 1: (spec.box_w, spec.box_h) for i, spec in enumerate(s.actors)}
    by_actor_cls = {i + 1: spec.class_label for i, spec in enumerate(s.actors)}
    by_actor_conf = {i + 1: (spec.conf_lo, spec.conf_hi)
                     for i, spec in enumerate(s.actors)}
    detections = []
    for f in range(n_frames):
        for tid in sorted(paths):
            entry_frame, centers = paths[tid]
            k = f - entry_frame
            if k < 0 or k >= len(centers):
                continue
            x, y = centers[k]
            jx = rng.uniform(-s.jitter_px, s.jitter_px)
            jy = rng.uniform(-s.jitter_px, s.jitter_px)
            conf_lo, conf_hi = by_actor_conf[tid]
            conf = rng.uniform(conf_lo, conf_hi)
            cx = min(max(x + jx, 0.0), s.frame_w - 1.0)
            cy = min(max(y + jy, 0.0), s.frame_h - 1.0)
            cam_frame = f + frame_shift
            if cam_frame < 0:
                continue
            if crop is not None:
                x0, y0, cw, ch = crop
                cx, cy = cx - x0, cy - y0
                if not (0.0 <= cx < cw and 0.0 <= cy < ch):
                    continue
            bw, bh = by_actor_box[tid]
            detections.append(Detection(
                cam_frame, cam_frame / s.fps, tid + track_offset,
                by_actor_cls[tid], cx, cy, bw, bh, float(conf)))
    detections.sort(key=lambda d: (d.frame_index, d.track_id))
    duration = s.duration_s + max(0.0, frame_shift / s.fps)
    return TrackLog(camera_id, s.fps, tuple(detections), duration_s=duration)


def generate(s: Scenario) -> tuple[TrackLog, dict[int, bool]]:
    """Render a scenario to a track log plus the track -> anomalous truth map."""
    s.validate()
    paths = _true_paths(s)
    rng = np.random.default_rng(s.rng_seed)
    log = _emit_camera(s, paths, rng, s.camera_id, None, 0, 0)
    truth = {i + 1: spec.ground_truth_anomalous
             for i, spec in enumerate(s.actors) if i + 1 in paths}
    return log, truth


def generate_stereo(s: Scenario) -> tuple[TrackLog, TrackLog, dict[int, bool]]:
    """Render one world through both cameras of the scenario's stereo setup."""
    s.validate()
    if s.stereo is None:
        raise DataError("scenario has no stereo setup")
    paths = _true_paths(s)
    shift = int(round(s.stereo.offset_s * s.fps))
    rng_a = np.random.default_rng([s.rng_seed, 0])
    rng_b = np.random.default_rng([s.rng_seed, 1])
    log_a = _emit_camera(s, paths, rng_a, "cam_a", s.stereo.crop_a, 0, 0)
    log_b = _emit_camera(s, paths, rng_b, "cam_b", s.stereo.crop_b, shift,
                         STEREO_TRACK_OFFSET)
    truth = {}
    for i, spec in enumerate(s.actors):
        if i + 1 in paths:
            truth[i + 1] = spec.ground_truth_anomalous
            truth[i + 1 + STEREO_TRACK_OFFSET] = spec.ground_truth_anomalous
    return log_a, log_b, truth


# --- scenario files -------------------------------------------------------

def scenario_to_json(s: Scenario) -> str:
    body = {f.name: getattr(s, f.name) for f in fields(s)
            if f.name not in ("actors", "stereo")}
    body["actors"] = [{f.name: getattr(a, f.name) for f in fields(ActorSpec)}
                      for a in s.actors]
    if s.stereo is not None:
        body["stereo"] = {"offset_s": s.stereo.offset_s,
                          "crop_a": list(s.stereo.crop_a),
                          "crop_b": list(s.stereo.crop_b)}
    return json.dumps(body, indent=2) + "\n"


def scenario_from_json(text: str) -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scenario parse error at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("scenario must be a JSON object")
    known = {f.name for f in fields(Scenario)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown scenario keys: {', '.join(unknown)}")
    actor_keys = {f.name for f in fields(ActorSpec)}
    actors = []
    for i, a in enumerate(raw.get("actors", ())):
        bad = sorted(set(a) - actor_keys)
        if bad:
            raise ConfigError(f"actor {i}: unknown keys {', '.join(bad)}")
        if "class_label" not in a or "entry_s" not in a:
            raise ConfigError(f"actor {i}: class_label and entry_s are required")
        actors.append(ActorSpec(**a))
    stereo = None
    if raw.get("stereo") is not None:
        sb = raw["stereo"]
        stereo = StereoSetup(offset_s=float(sb.get("offset_s", 0.0)),
                             crop_a=tuple(sb.get("crop_a", (0, 0, 1280, 720))),
                             crop_b=tuple(sb.get("crop_b", (0, 0, 1280, 720))))
    scalar = {k: v for k, v in raw.items() if k not in ("actors", "stereo")}
    return Scenario(actors=tuple(actors), stereo=stereo, **scalar).validate()


def load_scenario(path: str | Path) -> Scenario:
    return scenario_from_json(Path(path).read_text(encoding="utf-8"))


# --- canonical scenes -----------------------------------------------------
#
# The traffic geometry matters. Cars flow left to right across the full
# width at road height, bicycles ride a separate path near the top of the
# frame, and persons walk near the bottom; bicycles and persons enter at
# the right edge and leave the view around mid-frame. Each conforming
# class therefore owns a distinct, compact region of feature space, which
# keeps class memberships decisive for normal traffic. A wrong-way car
# spends its first seconds in the right-entry, small-displacement region
# that only bicycles and persons otherwise occupy, and that mismatch with
# the car class is what a linear model can catch.

_CAR_LANES = (300.0, 340.0, 380.0)
_BIKE_LANES = (100.0, 120.0)
_WALK_LANES = (615.0, 640.0)


def _conforming_actors(rng: np.random.Generator, duration_s: float, frame_w: float,
                       n_cars: int, n_bikes: int, n_persons: int) -> list[ActorSpec]:
    actors: list[ActorSpec] = []
    entry_window = max(duration_s - 25.0, duration_s * 0.5)
    for i in range(n_cars):
        entry = float(rng.uniform(0.0, entry_window))
        speed = float(np.clip(rng.normal(8.0, 0.6), 6.5, 9.5))
        actors.append(ActorSpec("car", entry, LANE, speed,
                                _CAR_LANES[i % len(_CAR_LANES)], 1,
                                box_w=60.0, box_h=30.0))
    for i in range(n_bikes):
        entry = float(rng.uniform(0.0, entry_window))
        speed = float(np.clip(rng.normal(5.0, 0.3), 4.2, 5.8))
        actors.append(ActorSpec("bicycle", entry, LANE, speed,
                                _BIKE_LANES[i % len(_BIKE_LANES)], -1,
                                exit_x=0.55 * frame_w, box_w=30.0, box_h=40.0))
    for i in range(n_persons):
        entry = float(rng.uniform(0.0, entry_window))
        speed = float(np.clip(rng.normal(2.0, 0.2), 1.5, 2.5))
        actors.append(ActorSpec("person", entry, LANE, speed,
                                _WALK_LANES[i % len(_WALK_LANES)], -1,
                                exit_x=0.50 * frame_w, box_w=25.0, box_h=60.0))
    return actors


def wrong_way_scenario(seed: int = 0, include_anomaly: bool = True,
                       duration_s: float = 180.0, fps: float = 12.0,
                       n_cars: int = 60) -> Scenario:
    """A busy road scene; optionally one car runs against the flow late on."""
    rng = np.random.default_rng([seed, 97])
    frame_w = 1280.0
    actors = _conforming_actors(rng, duration_s, frame_w, n_cars,
                                n_bikes=12, n_persons=8)
    if include_anomaly:
        actors.append(ActorSpec("car", 0.58 * duration_s, WRONG_WAY, 7.0,
                                _CAR_LANES[1], 1, box_w=60.0, box_h=30.0))
    return Scenario(duration_s, fps, frame_w, 720.0, rng_seed=seed,
                    actors=tuple(actors))


def clean_scenario(seed: int = 0, duration_s: float = 180.0, fps: float = 12.0,
                   n_cars: int = 60) -> Scenario:
    """The wrong-way scene with the misbehaving car removed."""
    return wrong_way_scenario(seed, include_anomaly=False, duration_s=duration_s,
                              fps=fps, n_cars=n_cars)


def trend_scenario(seed: int = 0) -> Scenario:
    """Smaller mixed scene with one clearly seen and three faint intruders.

    The wrong-way car at mid-video is detected at full confidence. The three
    later intruders are detected only at low confidence (below 0.5), the
    way small or partially occluded objects come out of a real detector.
    Lowering yolo_threshold therefore admits whole extra anomalies, which
    is the effect the threshold sweep is meant to show.
    """
    rng = np.random.default_rng([seed, 131])
    duration, fps, frame_w = 180.0, 12.0, 1280.0
    actors = _conforming_actors(rng, duration, frame_w, n_cars=60,
                                n_bikes=12, n_persons=8)
    actors.append(ActorSpec("car", 0.5 * duration, WRONG_WAY, 7.0,
                            _CAR_LANES[0], 1, box_w=60.0, box_h=30.0))
    for frac, lane in ((0.62, _CAR_LANES[2]), (0.70, _CAR_LANES[1]),
                       (0.78, _CAR_LANES[0])):
        actors.append(ActorSpec("car", frac * duration, WRONG_WAY, 7.0,
                                lane, 1, exit_x=0.88 * frame_w,
                                box_w=60.0, box_h=30.0,
                                conf_lo=0.3, conf_hi=0.49))
    return Scenario(duration, fps, frame_w, 720.0, rng_seed=seed,
                    actors=tuple(actors))


def stereo_scenario(seed: int = 0, offset_s: float = 2.0) -> Scenario:
    """The trend scene seen by two overlapping cameras with offset clocks."""
    base = trend_scenario(seed)
    stereo = StereoSetup(offset_s=offset_s,
                         crop_a=(0.0, 0.0, 1000.0, 720.0),
                         crop_b=(280.0, 0.0, 1000.0, 720.0))
    return Scenario(base.duration_s, base.fps, base.frame_w, base.frame_h,
                    rng_seed=seed, jitter_px=base.jitter_px,
                    camera_id=base.camera_id, actors=base.actors, stereo=stereo)


PRESETS = {
    "wrong-way": wrong_way_scenario,
    "clean": clean_scenario,
    "trend": trend_scenario,
    "stereo": stereo_scenario,
}
