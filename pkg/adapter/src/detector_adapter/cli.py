"""Command line around export_tracks.

Exit codes: 0 success, 1 configuration or model failure, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

from .config import AdapterConfig
from .errors import ConfigError, ModelError
from .export import export_tracks


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="detector-adapter",
        description="Convert a video file into a per-frame JSONL track log.")
    parser.add_argument("--video", required=True, help="input video path")
    parser.add_argument("--out", required=True, help="output JSONL path")
    parser.add_argument("--model", default="mog2",
                        help="detector: mog2, threshold, or template (default mog2)")
    parser.add_argument("--weights", default=None,
                        help="weights file, required by the template model")
    parser.add_argument("--tracker", default="iou",
                        help="id assignment: iou or centroid (default iou)")
    parser.add_argument("--fps", type=float, default=None,
                        help="override the frame rate the container reports")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    cfg = AdapterConfig(video_path=args.video, log_path=args.out,
                        model=args.model, weights_path=args.weights,
                        tracker=args.tracker, fps_override=args.fps)
    try:
        stats = export_tracks(cfg)
    except ModelError as exc:
        print(f"environment error: {exc}", file=sys.stderr)
        return 1
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {stats.record_count} records across {stats.track_count} tracks "
          f"from {stats.frame_count} frames at {stats.fps:g} fps to {cfg.log_path}")
    return 0


def main_entry() -> None:
    sys.exit(main())
