import numpy as np
import pytest

from tracksynopsis import (ConsistencyError, DataError, Detection,
                           RunningNormalizer, StateError, TrackHistory)
from oracles import batch_stats, path_length, point_distance


def det(f, x, y, tid=1, cls="car"):
    return Detection(f, f / 10.0, tid, cls, x, y, 10.0, 10.0, 0.9)


def history_of(points, tid=1):
    h = TrackHistory(tid, "car")
    for f, (x, y) in enumerate(points):
        h.update(det(f, x, y, tid))
    return h


def test_update_appends():
    h = TrackHistory(1, "car")
    h.update(det(0, 3.0, 4.0))
    assert h.points == [(0.0, 3.0, 4.0)]


def test_update_requires_advancing_time():
    h = history_of([(0, 0), (1, 1)])
    with pytest.raises(ConsistencyError, match="advance"):
        h.update(det(1, 2.0, 2.0))


def test_update_rejects_foreign_track():
    h = TrackHistory(1, "car")
    with pytest.raises(DataError, match="track 2"):
        h.update(det(0, 0.0, 0.0, tid=2))


def test_long_history_head_unchanged():
    rng = np.random.default_rng(5)
    pts = [(float(x), float(y)) for x, y in rng.uniform(0, 50, size=(100, 2))]
    h = history_of(pts)
    assert len(h.points) == 100
    assert h.points[0] == (0.0, pts[0][0], pts[0][1])


def test_speed_is_last_step():
    h = history_of([(0, 0), (3, 4)])
    assert h.instantaneous_speed() == 5.0


def test_single_point_motion_is_zero():
    h = history_of([(7, 9)])
    assert h.instantaneous_speed() == 0.0
    assert h.total_displacement() == 0.0
    assert h.mean_speed() == 0.0
    assert tuple(h.feature_vector()) == (7.0, 9.0, 0.0, 0.0, 0.0)


def test_empty_history_is_unusable():
    h = TrackHistory(1, "car")
    with pytest.raises(StateError):
        h.feature_vector()


def test_displacement_examples():
    assert history_of([(10, 10), (13, 14), (10, 10)]).total_displacement() == 0.0
    assert history_of([(0, 0), (6, 8)]).total_displacement() == 10.0


def test_mean_speed_example():
    assert history_of([(0, 0), (3, 4), (6, 8)]).mean_speed() == 5.0


def test_stationary_track():
    assert history_of([(5, 5)] * 10).mean_speed() == 0.0


def test_constant_velocity_mean_equals_instantaneous():
    h = history_of([(i * 3.0, i * 4.0) for i in range(8)])
    assert h.mean_speed() == pytest.approx(h.instantaneous_speed())


def test_two_point_feature_vector():
    assert tuple(history_of([(0, 0), (3, 4)]).feature_vector()) == (3, 4, 5, 5, 5)


def test_random_walks_match_oracles():
    rng = np.random.default_rng(42)
    for _ in range(30):
        n = int(rng.integers(2, 50))
        pts = [(float(x), float(y)) for x, y in rng.uniform(-100, 100, (n, 2))]
        h = history_of(pts)
        assert h.instantaneous_speed() == pytest.approx(
            point_distance(pts[-2], pts[-1]), abs=1e-12)
        assert h.total_displacement() == pytest.approx(
            point_distance(pts[0], pts[-1]), abs=1e-12)
        assert h.mean_speed() == pytest.approx(
            path_length(pts) / (n - 1), abs=1e-9)


def test_translation_invariance():
    rng = np.random.default_rng(8)
    pts = [(float(x), float(y)) for x, y in rng.uniform(0, 30, (20, 2))]
    dx, dy = 123.0, -45.0
    a = history_of(pts).feature_vector()
    b = history_of([(x + dx, y + dy) for x, y in pts]).feature_vector()
    assert (b.x - a.x, b.y - a.y) == (dx, dy)
    assert (b.speed, b.displacement, b.mean_speed) == pytest.approx(
        (a.speed, a.displacement, a.mean_speed))


def test_path_dominates_chord():
    # straight-line displacement never exceeds steps times mean step length
    rng = np.random.default_rng(13)
    for _ in range(25):
        n = int(rng.integers(1, 40))
        pts = [(float(x), float(y)) for x, y in rng.uniform(-50, 50, (n, 2))]
        h = history_of(pts)
        steps = n - 1
        assert h.total_displacement() <= steps * h.mean_speed() + 1e-9


def test_mean_speed_is_mean_of_observed_speeds():
    rng = np.random.default_rng(21)
    pts = [(float(x), float(y)) for x, y in rng.uniform(0, 80, (30, 2))]
    h = TrackHistory(1, "car")
    seen = []
    for f, (x, y) in enumerate(pts):
        h.update(det(f, x, y))
        seen.append(h.instantaneous_speed())
    # first observation contributes no step
    assert h.mean_speed() == pytest.approx(float(np.mean(seen[1:])))


def test_first_sample_normalizes_to_zero():
    norm = RunningNormalizer(5)
    out = norm.update_transform([3.0, 1.0, 4.0, 1.0, 5.0])
    assert np.all(out == 0.0)


def test_constant_stream_stays_zero():
    norm = RunningNormalizer(5)
    v = [2.0, 2.0, 2.0, 2.0, 2.0]
    for _ in range(50):
        out = norm.update_transform(v)
    assert np.allclose(out, 0.0)


def test_running_stats_match_two_pass():
    rng = np.random.default_rng(2)
    samples = rng.normal(loc=[0, 5, -3, 10, 1], scale=[1, 2, 0.5, 4, 3],
                         size=(1000, 5))
    norm = RunningNormalizer(5)
    for s in samples:
        norm.update_transform(s)
    mean, var = batch_stats(samples)
    assert np.allclose(norm.mean, mean, atol=1e-6)
    assert np.allclose(norm.variance, var, atol=1e-6)


def test_normalized_stream_converges_to_standard():
    rng = np.random.default_rng(17)
    norm = RunningNormalizer(5)
    samples = rng.normal(3.0, 2.0, size=(10_000, 5))
    outs = np.array([norm.update_transform(s) for s in samples])
    # live outputs carry early-sample noise, bounded at sampling-error scale
    assert np.all(np.abs(outs.mean(axis=0)) < 0.04)
    assert np.all(np.abs(outs.var(axis=0) - 1.0) < 0.06)
    # the converged statistics standardize the stream to 1e-3 and far beyond
    final = (samples - norm.mean) / np.sqrt(norm.variance + 1e-8)
    assert np.all(np.abs(final.mean(axis=0)) < 1e-3)
    assert np.all(np.abs(final.var(axis=0) - 1.0) < 1e-3)


def test_normalizer_rejects_bad_input():
    norm = RunningNormalizer(5)
    with pytest.raises(DataError, match="non-finite"):
        norm.update_transform([np.nan, 0, 0, 0, 0])
    with pytest.raises(DataError, match="features"):
        norm.update_transform([1.0, 2.0])
