"""Video-to-track-log adapter: classical detectors plus a lightweight tracker.

Reads a video file, finds boxes per frame, threads them into persistent
tracks, and writes the JSONL track-log format consumed by log-based
analysis tools.  Confidences are exported as measured; any filtering is
left to the consumer.
"""

from .config import MODEL_NAMES, TRACKER_NAMES, AdapterConfig
from .detectors import (Mog2Detector, RawDetection, TemplateDetector,
                        ThresholdDetector, build_detector)
from .errors import AdapterError, ConfigError, ModelError
from .export import ExportStats, export_tracks
from .trackers import CentroidTracker, IouTracker, build_tracker

__all__ = [
    "AdapterConfig", "AdapterError", "CentroidTracker", "ConfigError",
    "ExportStats", "IouTracker", "MODEL_NAMES", "ModelError", "Mog2Detector",
    "RawDetection", "TRACKER_NAMES", "TemplateDetector", "ThresholdDetector",
    "build_detector", "build_tracker", "export_tracks",
]
