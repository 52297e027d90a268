"""Turns per-frame detections into persistent track ids.

Both trackers match greedily, best pair first, and only within one class
label so a track can never change class mid-life.  Unmatched detections
open new tracks with ids counting up from 1; tracks unseen for more than
MAX_AGE_FRAMES consecutive frames are retired and their ids never reused.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .detectors import RawDetection
from .errors import ConfigError

IOU_MIN = 0.3
MAX_DIST_PX = 80.0
MAX_AGE_FRAMES = 10


@dataclass
class _Track:
    track_id: int
    box: RawDetection
    last_seen: int


def _iou(a: RawDetection, b: RawDetection) -> float:
    ax0, ax1 = a.cx_px - a.w_px / 2, a.cx_px + a.w_px / 2
    ay0, ay1 = a.cy_px - a.h_px / 2, a.cy_px + a.h_px / 2
    bx0, bx1 = b.cx_px - b.w_px / 2, b.cx_px + b.w_px / 2
    by0, by1 = b.cy_px - b.h_px / 2, b.cy_px + b.h_px / 2
    iw = min(ax1, bx1) - max(ax0, bx0)
    ih = min(ay1, by1) - max(ay0, by0)
    if iw <= 0 or ih <= 0:
        return 0.0
    inter = iw * ih
    return inter / (a.w_px * a.h_px + b.w_px * b.h_px - inter)


@dataclass
class _GreedyTracker:
    """Shared machinery: scoring is the only difference between trackers."""

    _tracks: list[_Track] = field(default_factory=list)
    _next_id: int = 1
    _frame: int = -1

    def _score(self, track_box: RawDetection, det: RawDetection) -> float:
        raise NotImplementedError

    def assign(self, detections: list[RawDetection]) -> list[int]:
        """Return one persistent id per detection, advancing the clock one frame."""
        self._frame += 1
        # missed = frames strictly between the last sighting and this one
        self._tracks = [t for t in self._tracks
                        if self._frame - t.last_seen - 1 <= MAX_AGE_FRAMES]
        ids = [0] * len(detections)
        if self._tracks and detections:
            scores = np.zeros((len(self._tracks), len(detections)))
            for i, t in enumerate(self._tracks):
                for j, d in enumerate(detections):
                    if t.box.class_label == d.class_label:
                        scores[i, j] = self._score(t.box, d)
            while True:
                i, j = np.unravel_index(int(np.argmax(scores)), scores.shape)
                if scores[i, j] <= 0.0:
                    break
                t = self._tracks[i]
                ids[j] = t.track_id
                t.box = detections[j]
                t.last_seen = self._frame
                scores[i, :] = 0.0
                scores[:, j] = 0.0
        for j, d in enumerate(detections):
            if ids[j] == 0:
                ids[j] = self._next_id
                self._next_id += 1
                self._tracks.append(_Track(ids[j], d, self._frame))
        return ids


class IouTracker(_GreedyTracker):
    """Matches on box overlap; pairs below IOU_MIN never match."""

    def _score(self, track_box: RawDetection, det: RawDetection) -> float:
        v = _iou(track_box, det)
        return v if v > IOU_MIN else 0.0


class CentroidTracker(_GreedyTracker):
    """Matches on center distance; pairs beyond MAX_DIST_PX never match."""

    def _score(self, track_box: RawDetection, det: RawDetection) -> float:
        d = float(np.hypot(track_box.cx_px - det.cx_px, track_box.cy_px - det.cy_px))
        return (MAX_DIST_PX - d) / MAX_DIST_PX if d < MAX_DIST_PX else 0.0


def build_tracker(name: str) -> _GreedyTracker:
    if name == "iou":
        return IouTracker()
    if name == "centroid":
        return CentroidTracker()
    raise ConfigError(f"tracker must be one of iou, centroid, got {name!r}")
