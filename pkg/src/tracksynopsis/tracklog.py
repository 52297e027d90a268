"""Track-log ingestion: the JSONL wire format, a MOT-style CSV reader, and filters.

One JSONL record per detection:

    {"f": 50, "t": 2.0, "id": 7, "cls": "car",
     "x": 312.5, "y": 140.2, "w": 48.0, "h": 22.0, "p": 0.91}

``f`` is the frame index, ``t`` the media timestamp in seconds (optional,
computed as f / fps when absent), ``id`` the tracker id, ``cls`` the class
label, ``x``/``y`` the box center in pixels, ``w``/``h`` the box size and
``p`` the detector confidence in [0, 1]. Unknown keys are rejected.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import IO, Iterable

from .errors import ConsistencyError, DataError, ParseError


@dataclass(frozen=True)
class Detection:
    """One tracked box in one frame, with pixel-center coordinates."""

    frame_index: int
    timestamp_s: float
    track_id: int
    class_label: str
    cx_px: float
    cy_px: float
    w_px: float
    h_px: float
    confidence: float


@dataclass(frozen=True)
class TrackLog:
    """Every detection of one camera, sorted by (frame_index, track_id).

    duration_s is the length of the recording; detections alone cannot reveal
    trailing empty footage, so it is carried separately and falls back to the
    last timestamp plus one frame period.
    """

    camera_id: str
    fps: float
    detections: tuple[Detection, ...]
    duration_s: float | None = None

    @property
    def video_duration_s(self) -> float:
        if self.duration_s is not None:
            return self.duration_s
        if not self.detections:
            return 0.0
        return self.detections[-1].timestamp_s + 1.0 / self.fps


_REQUIRED_KEYS = frozenset({"f", "id", "cls", "x", "y", "w", "h", "p"})
_ALLOWED_KEYS = _REQUIRED_KEYS | {"t"}


def _require_number(record: int, key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"record {record}: {key} must be a number, got {value!r}")
    return float(value)


def _detection_from_record(raw: dict, record: int, fps: float) -> Detection:
    missing = sorted(_REQUIRED_KEYS - set(raw))
    if missing:
        raise ParseError(f"record {record}: missing keys {', '.join(missing)}")
    unknown = sorted(set(raw) - _ALLOWED_KEYS)
    if unknown:
        raise ParseError(f"record {record}: unknown keys {', '.join(unknown)}")

    frame = raw["f"]
    if isinstance(frame, bool) or not isinstance(frame, int) or frame < 0:
        raise ParseError(f"record {record}: f must be a nonnegative integer, got {frame!r}")
    track = raw["id"]
    if isinstance(track, bool) or not isinstance(track, int):
        raise ParseError(f"record {record}: id must be an integer, got {track!r}")
    label = raw["cls"]
    if not isinstance(label, str) or not label:
        raise ParseError(f"record {record}: cls must be a non-empty string, got {label!r}")

    cx = _require_number(record, "x", raw["x"])
    cy = _require_number(record, "y", raw["y"])
    w = _require_number(record, "w", raw["w"])
    h = _require_number(record, "h", raw["h"])
    conf = _require_number(record, "p", raw["p"])
    if w <= 0 or h <= 0:
        raise ParseError(f"record {record}: box size must be positive, got w={w} h={h}")
    if not 0.0 <= conf <= 1.0:
        raise ParseError(f"record {record}: p must lie in [0, 1], got {conf}")

    if "t" in raw:
        ts = _require_number(record, "t", raw["t"])
        if ts < 0:
            raise ParseError(f"record {record}: t must be >= 0, got {ts}")
    else:
        ts = frame / fps
    return Detection(frame, ts, track, label, cx, cy, w, h, conf)


def _finalize(detections: list[Detection], camera_id: str, fps: float,
              duration_s: float | None) -> TrackLog:
    """Sort and cross-validate parsed detections into a TrackLog."""
    detections.sort(key=lambda d: (d.frame_index, d.track_id))

    track_class: dict[int, str] = {}
    frame_time: dict[int, float] = {}
    last_frame = -1
    last_key: tuple[int, int] | None = None
    for d in detections:
        key = (d.frame_index, d.track_id)
        if key == last_key:
            raise ConsistencyError(
                f"track {d.track_id} appears twice in frame {d.frame_index}")
        last_key = key
        seen = track_class.get(d.track_id)
        if seen is None:
            track_class[d.track_id] = d.class_label
        elif seen != d.class_label:
            raise ConsistencyError(
                f"track {d.track_id} changes class from {seen} to {d.class_label}")
        if d.frame_index in frame_time:
            if d.timestamp_s != frame_time[d.frame_index]:
                raise ConsistencyError(
                    f"frame {d.frame_index} carries two timestamps "
                    f"{frame_time[d.frame_index]} and {d.timestamp_s}")
        else:
            if last_frame >= 0 and d.timestamp_s < frame_time[last_frame]:
                raise ConsistencyError(
                    f"timestamp regresses at frame {d.frame_index}: "
                    f"{d.timestamp_s} < {frame_time[last_frame]}")
            frame_time[d.frame_index] = d.timestamp_s
            last_frame = d.frame_index
    return TrackLog(camera_id, fps, tuple(detections), duration_s)


def _iter_lines(source: str | bytes | IO) -> Iterable[str]:
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def parse_track_log(source: str | bytes | IO, fps: float, camera_id: str = "cam0",
                    duration_s: float | None = None) -> TrackLog:
    """Parse JSONL text (string, bytes, or file-like) into a validated TrackLog."""
    if fps <= 0:
        raise DataError(f"fps must be positive, got {fps}")
    detections: list[Detection] = []
    for number, line in enumerate(_iter_lines(source), start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"record {number}: invalid JSON: {exc.msg}") from exc
        if not isinstance(raw, dict):
            raise ParseError(f"record {number}: expected a JSON object")
        detections.append(_detection_from_record(raw, number, fps))
    return _finalize(detections, camera_id, fps, duration_s)


def parse_mot_csv(source: str | bytes | IO, fps: float, camera_id: str = "cam0",
                  duration_s: float | None = None) -> TrackLog:
    """Parse CSV rows laid out as frame,id,x,y,w,h,conf,class.

    x/y are the box top-left corner as in MOT exports and are converted to
    centers here; everything downstream works on centers.
    """
    if fps <= 0:
        raise DataError(f"fps must be positive, got {fps}")
    detections: list[Detection] = []
    for number, line in enumerate(_iter_lines(source), start=1):
        line = line.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 8:
            raise ParseError(f"record {number}: expected 8 columns, got {len(parts)}")
        try:
            frame = int(parts[0])
            track = int(parts[1])
            left, top, w, h, conf = (float(v) for v in parts[2:7])
        except ValueError as exc:
            raise ParseError(f"record {number}: {exc}") from exc
        label = parts[7]
        raw = {"f": frame, "id": track, "cls": label,
               "x": left + w / 2.0, "y": top + h / 2.0, "w": w, "h": h, "p": conf}
        detections.append(_detection_from_record(raw, number, fps))
    return _finalize(detections, camera_id, fps, duration_s)


def load_track_log(path: str | Path, fps: float, camera_id: str | None = None,
                   duration_s: float | None = None, fmt: str = "jsonl") -> TrackLog:
    """Read a log file in either supported format; camera id defaults to the stem."""
    path = Path(path)
    cam = camera_id if camera_id is not None else path.stem
    text = path.read_text(encoding="utf-8")
    if fmt == "jsonl":
        return parse_track_log(text, fps, cam, duration_s)
    if fmt == "mot":
        return parse_mot_csv(text, fps, cam, duration_s)
    raise DataError(f"unknown track log format {fmt!r}")


def serialize_track_log(log: TrackLog) -> str:
    """Render a TrackLog back to canonical JSONL; parse(serialize(log)) == log."""
    lines = []
    for d in log.detections:
        lines.append(json.dumps({
            "f": d.frame_index, "t": d.timestamp_s, "id": d.track_id,
            "cls": d.class_label, "x": d.cx_px, "y": d.cy_px,
            "w": d.w_px, "h": d.h_px, "p": d.confidence,
        }))
    return "\n".join(lines) + ("\n" if lines else "")


def filter_by_confidence(log: TrackLog, threshold: float) -> TrackLog:
    """Keep detections with confidence >= threshold; order is preserved."""
    if not 0.0 <= threshold <= 1.0:
        raise DataError(f"confidence threshold must lie in [0, 1], got {threshold}")
    kept = tuple(d for d in log.detections if d.confidence >= threshold)
    return replace(log, detections=kept)
