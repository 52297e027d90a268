"""Command line front end.

Subcommands: simulate (scenario -> track log + truth), summarize (track log
-> cut list, sidecar, report), stereo (two logs -> intersected cut list),
render (cut list -> ffmpeg command plan, optionally executed), report (cut
list -> summary). Exit codes: 0 success, 1 invalid input, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import shlex
import subprocess
import sys
from pathlib import Path

from . import scenarios
from .config import SynopsisConfig, load_config
from .errors import EngineError
from .pipeline import DEFAULT_CUT_TEMPLATE, plan_render, run_single
from .segments import intersect_stereo, load_cutlist, report
from .tracklog import load_track_log, serialize_track_log


def _load_cfg(path: str | None) -> SynopsisConfig:
    return load_config(path) if path else SynopsisConfig()


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def cmd_simulate(args) -> int:
    if args.scenario:
        scn = scenarios.load_scenario(args.scenario)
    else:
        scn = scenarios.PRESETS[args.preset](seed=args.seed)
    out = Path(args.out)
    if scn.stereo is not None:
        log_a, log_b, truth = scenarios.generate_stereo(scn)
        _write(out / "track_log_a.jsonl", serialize_track_log(log_a))
        _write(out / "track_log_b.jsonl", serialize_track_log(log_b))
    else:
        log, truth = scenarios.generate(scn)
        _write(out / "track_log.jsonl", serialize_track_log(log))
    _write(out / "ground_truth.json",
           json.dumps({str(k): v for k, v in sorted(truth.items())}, indent=2) + "\n")
    _write(out / "scenario.json", scenarios.scenario_to_json(scn))
    return 0


def cmd_summarize(args) -> int:
    cfg = _load_cfg(args.config)
    log = load_track_log(args.log, fps=args.fps, camera_id=args.camera_id,
                         duration_s=args.duration, fmt=args.format)
    cut, sidecar, rep = run_single(log, cfg)
    out = Path(args.out)
    _write(out / "cutlist.json", cut.dumps())
    _write(out / "sidecar.jsonl", sidecar.to_jsonl())
    _write(out / "report.json", rep.dumps())
    sys.stdout.write(rep.dumps())
    return 0


def cmd_stereo(args) -> int:
    cfg = _load_cfg(args.config)
    if args.offset is not None:
        cfg = dataclasses.replace(cfg, stereo_offset_seconds=args.offset).validate()
    log_a = load_track_log(args.log_a, fps=args.fps, fmt=args.format)
    log_b = load_track_log(args.log_b, fps=args.fps, fmt=args.format)
    cut_a, _, _ = run_single(log_a, cfg)
    cut_b, _, _ = run_single(log_b, cfg)
    stereo_cut = intersect_stereo(cut_a, cut_b, cfg)
    rep = report(stereo_cut)
    out = Path(args.out)
    _write(out / "cutlist_a.json", cut_a.dumps())
    _write(out / "cutlist_b.json", cut_b.dumps())
    _write(out / "stereo_cutlist.json", stereo_cut.dumps())
    _write(out / "stereo_report.json", rep.dumps())
    sys.stdout.write(rep.dumps())
    return 0


def cmd_render(args) -> int:
    cut = load_cutlist(args.cutlist)
    template = (Path(args.template).read_text(encoding="utf-8").strip()
                if args.template else DEFAULT_CUT_TEMPLATE)
    plan = plan_render(cut, args.video, template, output_name=args.output)
    out = Path(args.out)
    _write(out / "plan.json", plan.dumps())
    if args.execute:
        _write(out / plan.concat_list_name, plan.concat_list_body)
        for clip in plan.clips:
            subprocess.run(shlex.split(clip.command), cwd=out, check=True)
        if plan.concat_command:
            subprocess.run(shlex.split(plan.concat_command), cwd=out, check=True)
    return 0


def cmd_report(args) -> int:
    rep = report(load_cutlist(args.cutlist))
    sys.stdout.write(rep.dumps())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tracksynopsis",
        description="Learn normal motion from track logs and cut video to its anomalies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="render a synthetic scenario to a track log")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--scenario", help="scenario JSON file")
    group.add_argument("--preset", choices=sorted(scenarios.PRESETS),
                       help="built-in scene")
    p.add_argument("--seed", type=int, default=0, help="preset seed")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("summarize", help="single-camera synopsis of a track log")
    p.add_argument("--log", required=True)
    p.add_argument("--format", choices=("jsonl", "mot"), default="jsonl")
    p.add_argument("--fps", type=float, default=25.0,
                   help="frames per second used when records carry no timestamp")
    p.add_argument("--duration", type=float, default=None,
                   help="video duration in seconds (default: inferred from the log)")
    p.add_argument("--camera-id", default=None)
    p.add_argument("--config", default=None, help="threshold JSON file")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_summarize)

    p = sub.add_parser("stereo", help="intersect the synopses of two cameras")
    p.add_argument("--log-a", required=True)
    p.add_argument("--log-b", required=True)
    p.add_argument("--format", choices=("jsonl", "mot"), default="jsonl")
    p.add_argument("--fps", type=float, default=25.0)
    p.add_argument("--offset", type=float, default=None,
                   help="camera-B clock minus camera-A clock, seconds")
    p.add_argument("--config", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_stereo)

    p = sub.add_parser("render", help="plan (and optionally run) ffmpeg cuts")
    p.add_argument("--cutlist", required=True)
    p.add_argument("--video", required=True, help="source video path")
    p.add_argument("--template", default=None,
                   help="cut command template file with {in} {ss} {to} {out}")
    p.add_argument("--output", default="synopsis.mp4", help="final joined file name")
    p.add_argument("--out", required=True, help="output directory for the plan")
    p.add_argument("--execute", action="store_true",
                   help="actually run the planned commands")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("report", help="print the summary of a cut list")
    p.add_argument("--cutlist", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


def main_entry() -> None:
    sys.exit(main())
