"""Synthesizes tiny AVI clips and template images for the adapter tests."""

from __future__ import annotations

from pathlib import Path

import cv2
import numpy as np

FRAME_W = 320
FRAME_H = 240


def make_frame(pos: tuple[int, int] | None, side: int = 40,
               intensity: int = 255) -> np.ndarray:
    """One BGR frame: black everywhere, one filled square when pos is given."""
    frame = np.zeros((FRAME_H, FRAME_W, 3), np.uint8)
    if pos is not None:
        x, y = pos
        frame[y:y + side, x:x + side] = intensity
    return frame


def write_clip(path: Path, frames: list[np.ndarray], fps: float = 10.0) -> Path:
    writer = cv2.VideoWriter(str(path), cv2.VideoWriter_fourcc(*"MJPG"),
                             fps, (frames[0].shape[1], frames[0].shape[0]))
    assert writer.isOpened(), f"cannot create {path}"
    for frame in frames:
        writer.write(frame)
    writer.release()
    return path


def moving_square_clip(path: Path, n_frames: int = 50, warmup: int = 10,
                       step: int = 3) -> Path:
    """Black warm-up, then a bright square sliding right 'step' px per frame."""
    frames = []
    for k in range(n_frames):
        pos = None if k < warmup else (10 + step * (k - warmup), 60)
        frames.append(make_frame(pos))
    return write_clip(path, frames)


def static_square_clip(path: Path, n_frames: int = 10,
                       intensity: int = 255) -> Path:
    return write_clip(path, [make_frame((100, 80), intensity=intensity)
                             for _ in range(n_frames)])


def black_clip(path: Path, n_frames: int = 10) -> Path:
    return write_clip(path, [make_frame(None) for _ in range(n_frames)])


def square_template(path: Path, side: int = 40, margin: int = 4) -> Path:
    """Grayscale patch: bright square with a dark border, so it has contrast."""
    patch = np.zeros((side + 2 * margin, side + 2 * margin), np.uint8)
    patch[margin:margin + side, margin:margin + side] = 250
    ok = cv2.imwrite(str(path), patch)
    assert ok, f"cannot write {path}"
    return path
