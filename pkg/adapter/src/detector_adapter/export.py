"""Drives one video through detector and tracker into a JSONL track log.

One output line per detection per frame:

    {"f": 12, "t": 1.2, "id": 3, "cls": "moving",
     "x": 61.0, "y": 80.0, "w": 42.0, "h": 40.0, "p": 0.97}

f is the frame index, t = f / fps, x/y the box center in pixels, p the
detector confidence as measured.  Records are ordered by (f, id) and a
track keeps one class label for its whole life.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import cv2

from .config import AdapterConfig
from .detectors import build_detector
from .errors import ConfigError
from .trackers import build_tracker


@dataclass(frozen=True)
class ExportStats:
    """What one export run produced."""

    frame_count: int
    record_count: int
    track_count: int
    fps: float


def _record_line(frame: int, t: float, track_id: int, det) -> str:
    body = {"f": frame, "t": t, "id": track_id, "cls": det.class_label,
            "x": det.cx_px, "y": det.cy_px, "w": det.w_px, "h": det.h_px,
            "p": det.confidence}
    return json.dumps(body)


def export_tracks(cfg: AdapterConfig) -> ExportStats:
    """Read cfg.video_path, write cfg.log_path, return counts.

    Raises OSError when the video cannot be opened or the log cannot be
    written, ModelError when the configured model fails to load, and
    ConfigError for bad field values or a container that reports no frame
    rate while fps_override is unset.
    """
    cfg.validate()
    detector = build_detector(cfg)
    tracker = build_tracker(cfg.tracker)

    capture = cv2.VideoCapture(cfg.video_path)
    if not capture.isOpened():
        raise OSError(f"cannot open video: {cfg.video_path}")
    try:
        fps = cfg.fps_override
        if fps is None:
            fps = float(capture.get(cv2.CAP_PROP_FPS))
            if fps <= 0:
                raise ConfigError(
                    f"{cfg.video_path} reports no frame rate; set fps_override")

        lines: list[str] = []
        seen_ids: set[int] = set()
        frame_count = 0
        while True:
            ok, frame = capture.read()
            if not ok:
                break
            detections = detector.detect(frame)
            ids = tracker.assign(detections)
            t = frame_count / fps
            for track_id, det in sorted(zip(ids, detections), key=lambda p: p[0]):
                lines.append(_record_line(frame_count, t, track_id, det))
                seen_ids.add(track_id)
            frame_count += 1
    finally:
        capture.release()

    with open(cfg.log_path, "w", encoding="utf-8") as sink:
        for line in lines:
            sink.write(line + "\n")
    return ExportStats(frame_count, len(lines), len(seen_ids), fps)
