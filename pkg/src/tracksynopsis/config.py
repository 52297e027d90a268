"""Pipeline configuration: every tunable threshold, loaded from one flat JSON file."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ConfigError


@dataclass(frozen=True)
class SynopsisConfig:
    """Immutable bundle of thresholds; safe to share between concurrent pipelines."""

    yolo_threshold: float = 0.5        # detections below this confidence are ignored
    class_threshold: float = 0.5       # class membership below this counts as anomalous
    na_threshold: int = 5              # min anomalies an object needs to survive pruning
    sa_threshold: int = 3              # min run length of temporally adjacent anomalies
    warmup_per_class: int = 200        # samples of a class before its members are judged
    warmup_total: int = 400            # total samples before any anomaly is reported
    batch_size: int = 100              # samples buffered per classifier update
    gap_seconds: float = 1.0           # silence longer than this opens a new segment
    merge_seconds: float = 3.0         # segments closer than this are merged
    min_segment_events: int = 5        # segments with fewer anomalies are cancelled
    stereo_offset_seconds: float = 0.0  # camera-B clock minus camera-A clock
    rng_seed: int = 0                  # seed for the scenario generator

    def validate(self) -> "SynopsisConfig":
        """Check every field invariant, raising ConfigError naming the offender."""
        for name in ("yolo_threshold", "class_threshold"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {v}")
        for name in ("na_threshold", "sa_threshold", "warmup_per_class",
                     "warmup_total", "batch_size", "min_segment_events"):
            v = getattr(self, name)
            if v < 1:
                raise ConfigError(f"{name} must be >= 1, got {v}")
        if self.gap_seconds <= 0.0:
            raise ConfigError(f"gap_seconds must be > 0, got {self.gap_seconds}")
        if self.merge_seconds < 0.0:
            raise ConfigError(f"merge_seconds must be >= 0, got {self.merge_seconds}")
        if self.sa_threshold > self.na_threshold:
            raise ConfigError(
                "sa_threshold must not exceed na_threshold, got "
                f"{self.sa_threshold} > {self.na_threshold}")
        if not math.isfinite(self.stereo_offset_seconds):
            raise ConfigError("stereo_offset_seconds must be finite")
        return self


_FLOAT_FIELDS = frozenset({
    "yolo_threshold", "class_threshold", "gap_seconds", "merge_seconds",
    "stereo_offset_seconds",
})
_INT_FIELDS = frozenset({
    "na_threshold", "sa_threshold", "warmup_per_class", "warmup_total",
    "batch_size", "min_segment_events", "rng_seed",
})
_KNOWN_KEYS = _FLOAT_FIELDS | _INT_FIELDS


def loads(text: str) -> SynopsisConfig:
    """Parse a flat JSON object into a validated config.

    Every key is optional and falls back to the default; unknown keys are an
    error so typos cannot silently disable a threshold.
    """
    try:
        raw = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config parse error at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object of threshold names to values")
    unknown = sorted(set(raw) - _KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    values = {}
    for key, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{key} must be a number, got {value!r}")
        if key in _INT_FIELDS:
            if isinstance(value, float) and not value.is_integer():
                raise ConfigError(f"{key} must be an integer, got {value!r}")
            values[key] = int(value)
        else:
            values[key] = float(value)
    return SynopsisConfig(**values).validate()


def load_config(path: str | Path) -> SynopsisConfig:
    """Read and validate a config file."""
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(cfg: SynopsisConfig) -> str:
    """Serialize a config as JSON; loads(dumps(cfg)) == cfg."""
    body = {f.name: getattr(cfg, f.name) for f in fields(cfg)}
    return json.dumps(body, indent=2) + "\n"
