"""End-to-end runs: track log in, cut list + annotation sidecar + summary out.

The pipeline is a fold over detections in (frame, track) order: update the
track's history, normalize its feature vector, feed the classifier (every
sample trains, anomalous or not), and query membership once the warm-up
gates are satisfied. Surviving events then pass through the pruning and
interval stages. Everything is deterministic for a given log and config.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .anomaly import AnomalyEvent, detect, prune_isolated, prune_sparse_objects
from .classifier import OnlineClassifier
from .config import SynopsisConfig
from .errors import DataError
from .features import RunningNormalizer, TrackHistory
from .segments import (CutList, SummaryReport, build_segments, drop_small_segments,
                       intersect_stereo, merge_close, pad_segments, report)
from .tracklog import TrackLog, filter_by_confidence

MIN_SEGMENT_SECONDS = 1.0


@dataclass(frozen=True)
class SidecarEntry:
    frame_index: int
    timestamp_s: float
    anomalous_track_ids: tuple[int, ...]


@dataclass(frozen=True)
class AnnotationSidecar:
    """Per-frame overlay data covering exactly the frames inside the cut list."""

    entries: tuple[SidecarEntry, ...]

    def to_jsonl(self) -> str:
        lines = [json.dumps({
            "frame": e.frame_index, "t": e.timestamp_s,
            "anomalous_tracks": list(e.anomalous_track_ids),
        }) for e in self.entries]
        return "\n".join(lines) + ("\n" if lines else "")


def build_sidecar(cut: CutList, events: list[AnomalyEvent], fps: float) -> AnnotationSidecar:
    """One entry per original frame whose timestamp lies inside a segment."""
    by_frame: dict[int, list[int]] = {}
    for e in events:
        by_frame.setdefault(e.frame_index, []).append(e.track_id)
    n_frames = int(round(cut.video_duration_s * fps))
    entries = []
    seg_i = 0
    segs = cut.segments
    for f in range(n_frames):
        t = f / fps
        while seg_i < len(segs) and segs[seg_i].end_s < t:
            seg_i += 1
        if seg_i < len(segs) and segs[seg_i].start_s <= t <= segs[seg_i].end_s:
            entries.append(SidecarEntry(f, t, tuple(sorted(set(by_frame.get(f, ()))))))
    return AnnotationSidecar(tuple(entries))


def run_single(log: TrackLog, cfg: SynopsisConfig) -> tuple[CutList, AnnotationSidecar, SummaryReport]:
    """Run the whole single-camera pipeline on one track log."""
    cfg.validate()
    kept = filter_by_confidence(log, cfg.yolo_threshold)
    histories: dict[int, TrackHistory] = {}
    normalizer = RunningNormalizer(5)
    model = OnlineClassifier(batch_size=cfg.batch_size)
    events: list[AnomalyEvent] = []
    for d in kept.detections:
        hist = histories.get(d.track_id)
        if hist is None:
            hist = TrackHistory(d.track_id, d.class_label)
            histories[d.track_id] = hist
        hist.update(d)
        z = normalizer.update_transform(hist.feature_vector().as_array())
        model.ingest_sample(z, d.class_label)
        ready = model.is_ready(d.class_label, cfg)
        if ready:
            m = model.membership(z, d.class_label)
            if detect(m, ready, cfg):
                events.append(AnomalyEvent(d.track_id, d.class_label,
                                           d.timestamp_s, d.frame_index, m))

    events = prune_isolated(prune_sparse_objects(events, cfg), cfg)
    duration = log.video_duration_s
    segs = build_segments(events, cfg)
    segs = drop_small_segments(segs, cfg)
    segs = pad_segments(segs, duration, MIN_SEGMENT_SECONDS)
    segs = merge_close(segs, cfg)
    cut = CutList(log.camera_id, duration, tuple(segs))
    return cut, build_sidecar(cut, events, log.fps), report(cut)


def run_stereo(log_a: TrackLog, log_b: TrackLog,
               cfg: SynopsisConfig) -> tuple[CutList, SummaryReport]:
    """Run both cameras independently and keep the co-observed intervals."""
    cut_a, _, _ = run_single(log_a, cfg)
    cut_b, _, _ = run_single(log_b, cfg)
    cut = intersect_stereo(cut_a, cut_b, cfg)
    return cut, report(cut)


# --- render planning ------------------------------------------------------

DEFAULT_CUT_TEMPLATE = "ffmpeg -y -ss {ss} -to {to} -i {in} -c copy {out}"
DEFAULT_CONCAT_TEMPLATE = "ffmpeg -y -f concat -safe 0 -i {in} -c copy {out}"


@dataclass(frozen=True)
class ClipCut:
    input_path: str
    start_s: float
    end_s: float
    clip_name: str
    command: str


@dataclass(frozen=True)
class RenderPlan:
    """Commands that would cut and join the kept segments; never executed here.

    The cut template understands {in}, {ss}, {to}, {out}; the concat step
    joins the clips listed in concat_list_body (ffmpeg concat demuxer format).
    """

    video_path: str
    template: str
    clips: tuple[ClipCut, ...]
    concat_list_name: str
    concat_list_body: str
    concat_command: str
    output_name: str

    def to_json_dict(self) -> dict:
        return {
            "video_path": self.video_path,
            "template": self.template,
            "clips": [{
                "input_path": c.input_path, "start_s": c.start_s,
                "end_s": c.end_s, "clip_name": c.clip_name, "command": c.command,
            } for c in self.clips],
            "concat_list_name": self.concat_list_name,
            "concat_list_body": self.concat_list_body,
            "concat_command": self.concat_command,
            "output_name": self.output_name,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


def plan_render(cut: CutList, video_path: str,
                template: str = DEFAULT_CUT_TEMPLATE,
                output_name: str = "synopsis.mp4",
                clip_prefix: str = "clip") -> RenderPlan:
    """Turn a cut list into an ordered command plan; empty lists plan nothing."""
    for placeholder in ("{in}", "{ss}", "{to}", "{out}"):
        if placeholder not in template:
            raise DataError(f"cut template is missing placeholder {placeholder}")
    suffix = video_path[video_path.rfind("."):] if "." in video_path else ".mp4"
    clips = []
    for i, seg in enumerate(cut.segments):
        name = f"{clip_prefix}_{i:03d}{suffix}"
        command = template.format_map({
            "in": video_path, "ss": seg.start_s, "to": seg.end_s, "out": name})
        clips.append(ClipCut(video_path, seg.start_s, seg.end_s, name, command))
    list_body = "".join(f"file '{c.clip_name}'\n" for c in clips)
    list_name = f"{clip_prefix}_concat.txt"
    concat_command = DEFAULT_CONCAT_TEMPLATE.format_map(
        {"in": list_name, "out": output_name}) if clips else ""
    return RenderPlan(video_path, template, tuple(clips), list_name,
                      list_body, concat_command, output_name)
