import itertools

import numpy as np
import pytest

from tracksynopsis import (AnomalyEvent, ConfigError, CutList, DataError,
                           Detection, Segment, SynopsisConfig, TrackLog,
                           build_sidecar, generate, plan_render, run_single,
                           run_stereo, wrong_way_scenario)

# small gates so a handful of samples warms the model up: 3 per class, 6 total
SMALL_CFG = SynopsisConfig(class_threshold=0.99, na_threshold=1, sa_threshold=1,
                           warmup_per_class=3, warmup_total=6, batch_size=2,
                           min_segment_events=1)

LANES = {"a": 100.0, "b": 200.0}


def sequence_log(labels, fps=10.0):
    """One detection per frame; the sequence decides which class appears."""
    detections = []
    progress = {"a": 0.0, "b": 0.0}
    for f, lab in enumerate(labels):
        tid = 1 if lab == "a" else 2
        progress[lab] += 5.0
        detections.append(Detection(f, f / fps, tid, lab, progress[lab],
                                    LANES[lab], 20.0, 20.0, 1.0))
    return TrackLog("cam0", fps, tuple(detections))


def predicted_anomaly_frames(labels, per_class=3, total=6):
    """Frames whose sample is queried and answerable: both gates passed and
    at least two classes registered, so membership sits far below 0.99."""
    counts = {"a": 0, "b": 0}
    seen = set()
    out = set()
    for f, lab in enumerate(labels):
        counts[lab] += 1
        seen.add(lab)
        if counts[lab] >= per_class and sum(counts.values()) >= total \
                and len(seen) >= 2:
            out.add(f)
    return out


def test_empty_log_gives_empty_synopsis():
    log = TrackLog("cam0", 25.0, ())
    cut, sidecar, rep = run_single(log, SynopsisConfig())
    assert cut.segments == ()
    assert sidecar.entries == ()
    assert rep.summary_rate_pct == 0.0


def test_run_single_is_deterministic():
    log, _ = generate(wrong_way_scenario(seed=2))
    first = run_single(log, SynopsisConfig())
    second = run_single(log, SynopsisConfig())
    assert first[0].dumps() == second[0].dumps()
    assert first[1].to_jsonl() == second[1].to_jsonl()
    assert first[2].dumps() == second[2].dumps()


def test_invalid_config_rejected_up_front():
    log = TrackLog("cam0", 25.0, ())
    with pytest.raises(ConfigError, match="sa_threshold"):
        run_single(log, SynopsisConfig(na_threshold=5, sa_threshold=7))


def test_warmup_gates_hold_on_every_small_stream():
    # exhaustive over all two-class streams of length 8
    for labels in itertools.product("ab", repeat=8):
        log = sequence_log(labels)
        cut, sidecar, _ = run_single(log, SMALL_CFG)
        flagged = {e.frame_index for e in sidecar.entries
                   if e.anomalous_track_ids}
        assert flagged == predicted_anomaly_frames(labels), labels


def test_no_anomaly_before_either_gate():
    # per-class gate: five of one class then one of the other; the newcomer
    # has one sample, so its membership is never queried
    labels = ("a",) * 7 + ("b",)
    log = sequence_log(labels)
    _, sidecar, _ = run_single(log, SMALL_CFG)
    flagged = {tid for e in sidecar.entries for tid in e.anomalous_track_ids}
    assert 2 not in flagged
    # total gate: three of each but only five in all
    labels = ("a", "b") * 2 + ("a",)
    _, sidecar, _ = run_single(sequence_log(labels), SMALL_CFG)
    assert all(not e.anomalous_track_ids for e in sidecar.entries)


def test_yolo_threshold_gates_ingest():
    # every detection sits below the confidence bar, so nothing is learned
    labels = ("a", "b") * 8
    log = sequence_log(labels)
    faint = TrackLog(log.camera_id, log.fps,
                     tuple(Detection(d.frame_index, d.timestamp_s, d.track_id,
                                     d.class_label, d.cx_px, d.cy_px, d.w_px,
                                     d.h_px, 0.4) for d in log.detections))
    cut, _, rep = run_single(faint, SMALL_CFG)
    assert cut.segments == ()
    assert rep.total_summary_s == 0


def test_sidecar_covers_exactly_the_cut_frames():
    cut = CutList("cam0", 10.0, (Segment(1.0, 2.0, 3, frozenset({7})),
                                 Segment(5.0, 5.4, 2, frozenset({9}))))
    events = [AnomalyEvent(7, "car", 1.2, 12, 0.1),
              AnomalyEvent(7, "car", 1.3, 13, 0.2),
              AnomalyEvent(9, "car", 5.2, 52, 0.3)]
    sidecar = build_sidecar(cut, events, fps=10.0)
    frames = [e.frame_index for e in sidecar.entries]
    assert frames == [10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 50, 51, 52, 53, 54]
    by_frame = {e.frame_index: e.anomalous_track_ids for e in sidecar.entries}
    assert by_frame[12] == (7,)
    assert by_frame[52] == (9,)
    assert by_frame[11] == ()
    entry = sidecar.entries[0]
    assert entry.timestamp_s == pytest.approx(1.0)


def test_stereo_self_intersection_is_identity():
    labels = ("a", "b") * 8
    log = sequence_log(labels)
    single_cut, _, single_rep = run_single(log, SMALL_CFG)
    assert single_cut.segments  # the identity check must not be vacuous
    stereo_cut, stereo_rep = run_stereo(log, log, SMALL_CFG)
    assert stereo_cut == single_cut
    assert stereo_rep == single_rep


def test_stereo_with_blind_camera_is_empty():
    labels = ("a", "b") * 8
    log = sequence_log(labels)
    blind = TrackLog("cam1", log.fps, (), duration_s=log.video_duration_s)
    stereo_cut, rep = run_stereo(log, blind, SMALL_CFG)
    assert stereo_cut.segments == ()
    assert rep.piece_count == 0


def test_render_plan_counts_commands():
    cut = CutList("cam0", 100.0, (Segment(10.0, 16.1, 5, frozenset({1})),
                                  Segment(40.0, 42.0, 6, frozenset({2}))))
    plan = plan_render(cut, "in.mp4")
    assert len(plan.clips) == 2
    assert plan.clips[0].command == \
        "ffmpeg -y -ss 10.0 -to 16.1 -i in.mp4 -c copy clip_000.mp4"
    assert plan.concat_list_body == "file 'clip_000.mp4'\nfile 'clip_001.mp4'\n"
    assert "clip_concat.txt" in plan.concat_command


def test_render_plan_empty_cutlist():
    plan = plan_render(CutList("cam0", 100.0, ()), "in.mp4")
    assert plan.clips == ()
    assert plan.concat_command == ""


def test_render_plan_custom_template_and_suffix():
    cut = CutList("cam0", 100.0, (Segment(1.0, 2.0, 5, frozenset({1})),))
    plan = plan_render(cut, "video.avi", template="cut {in} {ss} {to} {out}")
    assert plan.clips[0].clip_name == "clip_000.avi"
    assert plan.clips[0].command == "cut video.avi 1.0 2.0 clip_000.avi"
    with pytest.raises(DataError, match="placeholder"):
        plan_render(cut, "in.mp4", template="ffmpeg {ss} {to}")
