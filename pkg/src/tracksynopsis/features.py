"""Per-track motion features and the running z-score normalizer.

Each detection of a track contributes one five-variable sample: the box
center, the step speed since the previous sighting, the total displacement
from the first sighting, and the mean speed over the whole track so far.
Speeds are per frame-step; no wall-clock scaling is applied.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import ConsistencyError, DataError, StateError
from .tracklog import Detection

EPSILON = 1e-8


class FeatureVector(NamedTuple):
    x: float
    y: float
    speed: float
    displacement: float
    mean_speed: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=np.float64)


class TrackHistory:
    """Position history of one tracked object.

    Grows by one point per sighting; the running path length is kept so the
    mean speed stays O(1) per update.
    """

    __slots__ = ("track_id", "class_label", "points", "_path_length")

    def __init__(self, track_id: int, class_label: str):
        self.track_id = track_id
        self.class_label = class_label
        self.points: list[tuple[float, float, float]] = []  # (t, x, y)
        self._path_length = 0.0

    def update(self, d: Detection) -> "TrackHistory":
        """Append one sighting; timestamps must strictly increase."""
        if d.track_id != self.track_id:
            raise DataError(
                f"detection of track {d.track_id} fed to history of {self.track_id}")
        if self.points and d.timestamp_s <= self.points[-1][0]:
            raise ConsistencyError(
                f"track {self.track_id}: timestamp {d.timestamp_s} does not "
                f"advance past {self.points[-1][0]}")
        if self.points:
            _, px, py = self.points[-1]
            self._path_length += math.hypot(d.cx_px - px, d.cy_px - py)
        self.points.append((d.timestamp_s, d.cx_px, d.cy_px))
        return self

    def _require_points(self):
        if not self.points:
            raise StateError(f"track {self.track_id}: no sightings yet")

    def instantaneous_speed(self) -> float:
        """Distance covered by the last step; 0.0 while only one point exists."""
        self._require_points()
        if len(self.points) < 2:
            return 0.0
        _, ax, ay = self.points[-2]
        _, bx, by = self.points[-1]
        return math.hypot(bx - ax, by - ay)

    def total_displacement(self) -> float:
        """Straight-line distance from the first point to the latest."""
        self._require_points()
        _, ax, ay = self.points[0]
        _, bx, by = self.points[-1]
        return math.hypot(bx - ax, by - ay)

    def mean_speed(self) -> float:
        """Path length divided by the number of steps; 0.0 for a single point."""
        self._require_points()
        steps = len(self.points) - 1
        if steps == 0:
            return 0.0
        return self._path_length / steps

    def feature_vector(self) -> FeatureVector:
        """The five-variable sample for the latest sighting."""
        self._require_points()
        _, x, y = self.points[-1]
        return FeatureVector(x, y, self.instantaneous_speed(),
                             self.total_displacement(), self.mean_speed())


class RunningNormalizer:
    """Per-dimension running z-score, shared across all classes.

    Each sample first updates the running statistics (Welford), then is
    transformed with them, so the very first sample maps to the zero vector.
    """

    __slots__ = ("count", "mean", "_m2")

    def __init__(self, dim: int = 5):
        self.count = 0
        self.mean = np.zeros(dim, dtype=np.float64)
        self._m2 = np.zeros(dim, dtype=np.float64)

    @property
    def variance(self) -> np.ndarray:
        """Population variance of everything seen so far."""
        if self.count == 0:
            return np.zeros_like(self.mean)
        return self._m2 / self.count

    def update_transform(self, vec) -> np.ndarray:
        """Fold one sample into the statistics, then return its z-score."""
        v = np.asarray(vec, dtype=np.float64)
        if v.shape != self.mean.shape:
            raise DataError(f"expected {self.mean.shape[0]} features, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise DataError(f"non-finite feature vector: {v}")
        self.count += 1
        delta = v - self.mean
        self.mean += delta / self.count
        self._m2 += delta * (v - self.mean)
        return (v - self.mean) / np.sqrt(self.variance + EPSILON)
