"""Run configuration for one video-to-track-log export."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError

MODEL_NAMES = ("mog2", "threshold", "template")
TRACKER_NAMES = ("iou", "centroid")


@dataclass(frozen=True)
class AdapterConfig:
    """Everything one export run needs.

    model picks the detector ("mog2" flags moving regions against a learned
    background, "threshold" flags bright regions frame by frame, "template"
    matches a grayscale patch image and is the only model that needs a
    weights file).  tracker picks how per-frame boxes become persistent ids.
    fps_override replaces the frame rate the container reports; it is the
    only way to export containers that report no rate at all.
    """

    video_path: str
    log_path: str
    model: str = "mog2"
    weights_path: str | None = None
    tracker: str = "iou"
    fps_override: float | None = None

    def validate(self) -> "AdapterConfig":
        """Check every field invariant, raising ConfigError naming the offender."""
        if not self.video_path:
            raise ConfigError("video_path must be a non-empty path")
        if not self.log_path:
            raise ConfigError("log_path must be a non-empty path")
        if self.model not in MODEL_NAMES:
            raise ConfigError(
                f"model must be one of {', '.join(MODEL_NAMES)}, got {self.model!r}")
        if self.tracker not in TRACKER_NAMES:
            raise ConfigError(
                f"tracker must be one of {', '.join(TRACKER_NAMES)}, got {self.tracker!r}")
        if self.weights_path is not None and not self.weights_path:
            raise ConfigError("weights_path must be a non-empty path when given")
        if self.model == "template" and self.weights_path is None:
            raise ConfigError("model 'template' needs weights_path")
        if self.fps_override is not None:
            v = self.fps_override
            if not math.isfinite(v) or v <= 0:
                raise ConfigError(f"fps_override must be a positive number, got {v}")
        return self
