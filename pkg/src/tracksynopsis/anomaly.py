"""Anomaly events and the two denoising passes that precede segment building.

An event is one detection whose class membership fell below the threshold
while the classifier was warmed up. Objects with too few events are noise
(pruned wholesale); within an object, short isolated bursts are noise too
(pruned run by run).
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass

from .config import SynopsisConfig
from .errors import DataError


@dataclass(frozen=True)
class AnomalyEvent:
    track_id: int
    class_label: str
    timestamp_s: float
    frame_index: int
    membership: float


def detect(membership: float, ready: bool, cfg: SynopsisConfig) -> bool:
    """Anomalous iff the model is warmed up and membership is strictly below threshold."""
    if not 0.0 <= membership <= 1.0:
        raise DataError(f"membership must lie in [0, 1], got {membership}")
    return ready and membership < cfg.class_threshold


def prune_sparse_objects(events: list[AnomalyEvent],
                         cfg: SynopsisConfig) -> list[AnomalyEvent]:
    """Drop every object with fewer than na_threshold events; order preserved."""
    totals = Counter(e.track_id for e in events)
    return [e for e in events if totals[e.track_id] >= cfg.na_threshold]


def prune_isolated(events: list[AnomalyEvent],
                   cfg: SynopsisConfig) -> list[AnomalyEvent]:
    """Drop, per object, runs of temporally adjacent events shorter than sa_threshold.

    Events of one object belong to the same run while consecutive gaps stay
    within gap_seconds. Input order is preserved for the survivors.
    """
    by_track: dict[int, list[AnomalyEvent]] = defaultdict(list)
    for e in events:
        by_track[e.track_id].append(e)

    keep: set[tuple[int, int]] = set()
    for track_id, group in by_track.items():
        group = sorted(group, key=lambda e: (e.timestamp_s, e.frame_index))
        run: list[AnomalyEvent] = []
        for e in group:
            if run and e.timestamp_s - run[-1].timestamp_s > cfg.gap_seconds:
                if len(run) >= cfg.sa_threshold:
                    keep.update((r.track_id, r.frame_index) for r in run)
                run = []
            run.append(e)
        if len(run) >= cfg.sa_threshold:
            keep.update((r.track_id, r.frame_index) for r in run)
    return [e for e in events if (e.track_id, e.frame_index) in keep]


def events_to_jsonl(events: list[AnomalyEvent]) -> str:
    """One JSON object per event, for the annotation sidecar."""
    lines = [json.dumps({
        "track_id": e.track_id, "class_label": e.class_label,
        "timestamp_s": e.timestamp_s, "frame_index": e.frame_index,
        "membership": e.membership,
    }) for e in events]
    return "\n".join(lines) + ("\n" if lines else "")
