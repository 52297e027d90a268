#!/usr/bin/env python3
"""Turn a cut list into runnable ffmpeg commands without touching any video.

The planner emits one stream-copy cut per segment plus a concat step, all
driven by a single command template, so the same plan works with any tool
that can cut by timestamp.
"""

import argparse

from tracksynopsis import CutList, Segment, plan_render


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--video", default="camera0.mp4", help="source video path")
    args = parser.parse_args()

    cut = CutList("cam0", 600.0, (
        Segment(104.5, 106.4, 23, frozenset({81})),
        Segment(250.0, 255.5, 41, frozenset({12, 17})),
        Segment(480.2, 481.9, 18, frozenset({64})),
    ))
    plan = plan_render(cut, args.video)

    print(f"{len(plan.clips)} cuts from {args.video}:")
    for clip in plan.clips:
        print(f"  {clip.command}")
    print()
    print(f"concat list {plan.concat_list_name}:")
    for line in plan.concat_list_body.splitlines():
        print(f"  {line}")
    print()
    print(f"join: {plan.concat_command}")
    print()
    print("the synopsis CLI writes this plan as JSON and only executes it "
          "when asked to with --execute")


if __name__ == "__main__":
    main()
