import json

import numpy as np
import pytest

from tracksynopsis import (AnomalyEvent, DataError, SynopsisConfig, detect,
                           events_to_jsonl, prune_isolated, prune_sparse_objects)

CFG = SynopsisConfig()  # class 0.5, na 5, sa 3, gap 1.0


def ev(tid, t, membership=0.2):
    return AnomalyEvent(tid, "car", t, int(round(t * 10)), membership)


def burst(tid, start, n, spacing=0.5):
    return [ev(tid, start + i * spacing) for i in range(n)]


def test_detect_below_threshold_when_ready():
    assert detect(0.3, True, CFG) is True


def test_detect_blocked_during_warmup():
    assert detect(0.3, False, CFG) is False


def test_detect_boundary_is_strict():
    assert detect(0.5, True, CFG) is False
    assert detect(0.4999999, True, CFG) is True


def test_detect_validates_membership():
    with pytest.raises(DataError):
        detect(1.2, True, CFG)
    with pytest.raises(DataError):
        detect(-0.1, True, CFG)


def test_sparse_object_removed_entirely():
    events = burst(1, 0.0, 4)
    assert prune_sparse_objects(events, CFG) == []


def test_object_at_threshold_kept():
    events = burst(1, 0.0, 5)
    assert prune_sparse_objects(events, CFG) == events


def test_sparse_prune_mixed_population():
    events = burst(1, 0.0, 2) + burst(2, 10.0, 5) + burst(3, 20.0, 13)
    out = prune_sparse_objects(events, CFG)
    assert {e.track_id for e in out} == {2, 3}
    assert len(out) == 18


def test_isolated_pair_deleted():
    # 13 tight events survive, the far-away pair does not
    events = burst(1, 0.0, 13) + burst(1, 20.0, 2, spacing=1.0)
    out = prune_isolated(events, CFG)
    assert len(out) == 13
    assert max(e.timestamp_s for e in out) == 6.0


def test_single_qualifying_run_untouched():
    events = burst(1, 0.0, 3)
    assert prune_isolated(events, CFG) == events


def test_all_isolated_events_vanish():
    events = [ev(1, t) for t in (0.0, 5.0, 10.0, 15.0)]
    assert prune_isolated(events, CFG) == []


def test_runs_split_at_gap_boundary():
    # spacing exactly gap_seconds keeps one run; just over splits it
    events = burst(1, 0.0, 4, spacing=1.0)
    assert prune_isolated(events, CFG) == events
    events = burst(1, 0.0, 4, spacing=1.0001)
    assert prune_isolated(events, CFG) == []


def test_runs_are_per_object():
    a = burst(1, 0.0, 3)
    b = burst(2, 0.6, 2)  # interleaved in time, still its own short run
    out = prune_isolated(sorted(a + b, key=lambda e: e.timestamp_s), CFG)
    assert {e.track_id for e in out} == {1}


def test_prunes_only_remove_and_are_idempotent():
    rng = np.random.default_rng(23)
    for _ in range(40):
        events = []
        for tid in range(1, int(rng.integers(2, 6))):
            events += burst(tid, float(rng.uniform(0, 30)),
                            int(rng.integers(1, 10)),
                            spacing=float(rng.choice([0.3, 0.8, 1.6])))
        for fn in (prune_sparse_objects, prune_isolated):
            out = fn(events, CFG)
            assert set(out) <= set(events)
            assert fn(out, CFG) == out


def test_order_insensitive():
    rng = np.random.default_rng(29)
    events = burst(1, 0.0, 6) + burst(2, 3.0, 4) + burst(3, 50.0, 2)
    shuffled = list(events)
    rng.shuffle(shuffled)
    for fn in (prune_sparse_objects, prune_isolated):
        assert set(fn(events, CFG)) == set(fn(shuffled, CFG))


def test_raising_thresholds_never_grows_output():
    rng = np.random.default_rng(31)
    events = []
    for tid in range(1, 7):
        events += burst(tid, float(rng.uniform(0, 20)), int(rng.integers(1, 12)),
                        spacing=float(rng.choice([0.4, 1.5])))
    for na in (1, 3, 5, 8):
        base = set(prune_sparse_objects(events, SynopsisConfig(na_threshold=na,
                                                               sa_threshold=1)))
        higher = set(prune_sparse_objects(events, SynopsisConfig(na_threshold=na + 2,
                                                                 sa_threshold=1)))
        assert higher <= base
    for sa in (1, 2, 3, 4):
        cfg_lo = SynopsisConfig(na_threshold=10, sa_threshold=sa)
        cfg_hi = SynopsisConfig(na_threshold=10, sa_threshold=sa + 1)
        assert set(prune_isolated(events, cfg_hi)) <= set(prune_isolated(events, cfg_lo))


def test_surviving_objects_keep_a_qualifying_run():
    # after both prunes every remaining object still has a run >= sa_threshold
    rng = np.random.default_rng(37)
    for _ in range(30):
        events = []
        for tid in range(1, 8):
            events += burst(tid, float(rng.uniform(0, 40)), int(rng.integers(1, 9)),
                            spacing=float(rng.choice([0.5, 1.2, 2.5])))
        out = prune_isolated(prune_sparse_objects(events, CFG), CFG)
        by_track = {}
        for e in out:
            by_track.setdefault(e.track_id, []).append(e.timestamp_s)
        for times in by_track.values():
            times.sort()
            best = run = 1
            for i in range(1, len(times)):
                run = run + 1 if times[i] - times[i - 1] <= CFG.gap_seconds else 1
                best = max(best, run)
            assert best >= CFG.sa_threshold


def test_events_serialize_one_per_line():
    events = burst(4, 1.0, 2)
    lines = events_to_jsonl(events).splitlines()
    assert len(lines) == 2
    first = json.loads(lines[0])
    assert first == {"track_id": 4, "class_label": "car", "timestamp_s": 1.0,
                     "frame_index": 10, "membership": 0.2}
    assert events_to_jsonl([]) == ""
