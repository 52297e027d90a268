"""Interval algebra over anomaly events: segments, cut lists and summaries.

Pooled events become time segments; small segments are cancelled, short ones
padded to a watchable length, close ones merged. Two cameras' cut lists can
be intersected after aligning their clocks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

from .anomaly import AnomalyEvent
from .config import SynopsisConfig
from .errors import ParseError


@dataclass(frozen=True)
class Segment:
    """One closed time interval of the source video worth keeping."""

    start_s: float
    end_s: float
    event_count: int
    source_tracks: frozenset[int]


@dataclass(frozen=True)
class CutList:
    """Sorted, non-overlapping segments of one camera's video."""

    camera_id: str
    video_duration_s: float
    segments: tuple[Segment, ...]

    def to_json_dict(self) -> dict:
        return {
            "camera_id": self.camera_id,
            "video_duration_s": self.video_duration_s,
            "segments": [{
                "start_s": s.start_s, "end_s": s.end_s,
                "event_count": s.event_count,
                "tracks": sorted(s.source_tracks),
            } for s in self.segments],
        }

    @classmethod
    def from_json_dict(cls, raw: dict) -> "CutList":
        try:
            segments = tuple(
                Segment(float(s["start_s"]), float(s["end_s"]),
                        int(s["event_count"]), frozenset(s["tracks"]))
                for s in raw["segments"])
            return cls(str(raw["camera_id"]), float(raw["video_duration_s"]), segments)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed cut list: {exc}") from exc

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def load_cutlist(path: str | Path) -> CutList:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed cut list JSON: {exc.msg}") from exc
    return CutList.from_json_dict(raw)


@dataclass(frozen=True)
class SummaryReport:
    """The four summary columns: total kept time, pieces, average, rate."""

    total_summary_s: float
    piece_count: int
    avg_piece_s: float
    summary_rate_pct: float

    def to_json_dict(self) -> dict:
        return {
            "total_summary_s": self.total_summary_s,
            "piece_count": self.piece_count,
            "avg_piece_s": self.avg_piece_s,
            "summary_rate_pct": self.summary_rate_pct,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def _close_run(run: list[AnomalyEvent]) -> Segment:
    return Segment(run[0].timestamp_s, run[-1].timestamp_s, len(run),
                   frozenset(e.track_id for e in run))


def build_segments(events: list[AnomalyEvent], cfg: SynopsisConfig) -> list[Segment]:
    """Pool events from all objects and split where silence exceeds gap_seconds."""
    if not events:
        return []
    ordered = sorted(events, key=lambda e: (e.timestamp_s, e.frame_index, e.track_id))
    segments: list[Segment] = []
    run = [ordered[0]]
    for e in ordered[1:]:
        if e.timestamp_s - run[-1].timestamp_s > cfg.gap_seconds:
            segments.append(_close_run(run))
            run = [e]
        else:
            run.append(e)
    segments.append(_close_run(run))
    return segments


def drop_small_segments(segments: list[Segment], cfg: SynopsisConfig) -> list[Segment]:
    """Cancel segments carrying fewer than min_segment_events events."""
    return [s for s in segments if s.event_count >= cfg.min_segment_events]


def pad_segments(segments: list[Segment], video_duration_s: float,
                 min_duration_s: float = 1.0) -> list[Segment]:
    """Pad each short segment symmetrically up to min_duration_s.

    Endpoints are clamped to [0, video_duration_s], so segments hugging an
    edge of the video may stay shorter than the minimum.
    """
    out = []
    for s in segments:
        length = s.end_s - s.start_s
        if length >= min_duration_s:
            out.append(s)
            continue
        pad = (min_duration_s - length) / 2.0
        out.append(replace(s, start_s=max(0.0, s.start_s - pad),
                           end_s=min(video_duration_s, s.end_s + pad)))
    return sorted(out, key=lambda s: (s.start_s, s.end_s))


def merge_close(segments: list[Segment], cfg: SynopsisConfig) -> list[Segment]:
    """Merge neighbours whose gap is strictly below merge_seconds.

    Accepts unsorted or overlapping input (padding can overlap segments);
    an overlap is a negative gap and always merges.
    """
    ordered = sorted(segments, key=lambda s: (s.start_s, s.end_s))
    merged: list[Segment] = []
    for s in ordered:
        if merged and s.start_s - merged[-1].end_s < cfg.merge_seconds:
            prev = merged[-1]
            merged[-1] = Segment(prev.start_s, max(prev.end_s, s.end_s),
                                 prev.event_count + s.event_count,
                                 prev.source_tracks | s.source_tracks)
        else:
            merged.append(s)
    return merged


def intersect_stereo(a: CutList, b: CutList, cfg: SynopsisConfig) -> CutList:
    """Intersect two cameras' cut lists on camera A's clock.

    Camera B is shifted by -stereo_offset_seconds (the offset is B's clock
    minus A's); only positive-length overlaps survive, each counting the
    smaller of its parents' event counts.
    """
    offset = cfg.stereo_offset_seconds
    out: list[Segment] = []
    for sa in a.segments:
        for sb in b.segments:
            start = max(sa.start_s, sb.start_s - offset)
            end = min(sa.end_s, sb.end_s - offset)
            if end > start:
                out.append(Segment(start, end,
                                   min(sa.event_count, sb.event_count),
                                   sa.source_tracks | sb.source_tracks))
    out.sort(key=lambda s: (s.start_s, s.end_s))
    return CutList(a.camera_id, a.video_duration_s, tuple(out))


def report(cut: CutList) -> SummaryReport:
    """Totals for a cut list; empty lists yield zeros, rate guards duration 0."""
    total = sum(s.end_s - s.start_s for s in cut.segments)
    count = len(cut.segments)
    avg = total / count if count else 0.0
    rate = 100.0 * total / cut.video_duration_s if cut.video_duration_s > 0 else 0.0
    return SummaryReport(total, count, avg, rate)
