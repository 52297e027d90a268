#!/usr/bin/env python3
"""Follow a handful of anomaly timestamps through every interval stage.

Stages, in pipeline order: pool events into segments wherever the silence
between neighbours stays within gap_seconds; drop segments carrying fewer
than min_segment_events; pad every survivor to a watchable length; merge
segments whose gap falls below merge_seconds.
"""

from tracksynopsis import (AnomalyEvent, SynopsisConfig, build_segments,
                           drop_small_segments, merge_close, pad_segments)

DURATION_S = 60.0


def show(title: str, segments) -> None:
    print(f"{title}:")
    if not segments:
        print("  (empty)")
    for seg in segments:
        print(f"  [{seg.start_s:6.2f}, {seg.end_s:6.2f}]  "
              f"{seg.event_count} event(s)  tracks {sorted(seg.source_tracks)}")
    print()


def main() -> None:
    cfg = SynopsisConfig()
    times_by_track = {
        7: (10.0, 10.4, 10.9, 11.3, 11.8),        # long burst, needs no padding
        9: (20.0, 20.1, 20.2, 20.3, 20.4),        # short burst, will be padded
        2: (23.0, 23.1, 23.2, 23.3, 23.4, 23.5),  # close enough to merge into it
        4: (30.0,),                               # a lone stray event
    }
    events = [AnomalyEvent(tid, "car", t, round(t * 10), 0.2)
              for tid, times in times_by_track.items() for t in times]
    print(f"{len(events)} anomaly events from {len(times_by_track)} tracks, "
          f"gap_seconds={cfg.gap_seconds}, merge_seconds={cfg.merge_seconds}, "
          f"min_segment_events={cfg.min_segment_events}\n")

    segs = build_segments(events, cfg)
    show("built (split where silence exceeds gap_seconds)", segs)

    segs = drop_small_segments(segs, cfg)
    show(f"dropped (fewer than {cfg.min_segment_events} events)", segs)

    segs = pad_segments(segs, DURATION_S, 1.0)
    show("padded (every piece at least 1 s, clamped to the video)", segs)

    segs = merge_close(segs, cfg)
    show(f"merged (gaps under {cfg.merge_seconds} s close up)", segs)


if __name__ == "__main__":
    main()
