"""Per-frame box detectors wrapping classical OpenCV building blocks.

Every detector maps a BGR frame to center-coordinate boxes with a
confidence in [0, 1] and a fixed class label.  Confidences are reported
as measured, never filtered; consumers apply their own thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import cv2
import numpy as np

from .config import AdapterConfig
from .errors import ConfigError, ModelError

MIN_BOX_AREA_PX = 30.0
BRIGHTNESS_FLOOR = 40
FOREGROUND_FLOOR = 127
BACKGROUND_LEARNING_RATE = 0.01
TEMPLATE_PEAK_FLOOR = 0.35
MAX_TEMPLATE_HITS = 64


@dataclass(frozen=True)
class RawDetection:
    """One detected box in one frame, centers in pixels."""

    cx_px: float
    cy_px: float
    w_px: float
    h_px: float
    confidence: float
    class_label: str


def _boxes_from_mask(mask: np.ndarray) -> list[tuple[int, int, int, int]]:
    contours, _ = cv2.findContours(mask, cv2.RETR_EXTERNAL, cv2.CHAIN_APPROX_SIMPLE)
    rects = [cv2.boundingRect(c) for c in contours]
    kept = [(x, y, w, h) for x, y, w, h in rects if w * h >= MIN_BOX_AREA_PX]
    kept.sort()
    return kept


class ThresholdDetector:
    """Flags bright regions against a dark background, frame by frame.

    Confidence is the mean brightness of the box interior, so dim objects
    come out with low scores instead of being dropped.
    """

    def detect(self, frame_bgr: np.ndarray) -> list[RawDetection]:
        gray = cv2.cvtColor(frame_bgr, cv2.COLOR_BGR2GRAY)
        _, mask = cv2.threshold(gray, BRIGHTNESS_FLOOR, 255, cv2.THRESH_BINARY)
        out = []
        for x, y, w, h in _boxes_from_mask(mask):
            conf = float(gray[y:y + h, x:x + w].mean()) / 255.0
            out.append(RawDetection(x + w / 2.0, y + h / 2.0, float(w), float(h),
                                    min(conf, 1.0), "object"))
        return out


class Mog2Detector:
    """Flags moving regions against a background model learned online.

    Confidence is the fraction of box pixels the model calls foreground.
    Static scenery is absorbed into the background and never reported.
    The first frame only primes the model (it has nothing to compare
    against yet), and the adaptation rate is pinned low so an object is
    not swallowed by the background in the middle of a pass.
    """

    def __init__(self) -> None:
        self._subtractor = cv2.createBackgroundSubtractorMOG2(detectShadows=False)
        self._primed = False

    def detect(self, frame_bgr: np.ndarray) -> list[RawDetection]:
        raw = self._subtractor.apply(frame_bgr, learningRate=BACKGROUND_LEARNING_RATE)
        if not self._primed:
            self._primed = True
            return []
        _, mask = cv2.threshold(raw, FOREGROUND_FLOOR, 255, cv2.THRESH_BINARY)
        out = []
        for x, y, w, h in _boxes_from_mask(mask):
            conf = float(np.count_nonzero(mask[y:y + h, x:x + w])) / float(w * h)
            out.append(RawDetection(x + w / 2.0, y + h / 2.0, float(w), float(h),
                                    min(conf, 1.0), "moving"))
        return out


class TemplateDetector:
    """Finds occurrences of a grayscale patch via normalized correlation.

    The weights file is the patch image itself.  Peaks are extracted
    greedily, best first, suppressing one patch-sized neighborhood per
    hit; the correlation score is contrast-normalized, so a dim copy of
    the patch still scores near 1.
    """

    def __init__(self, weights_path: str) -> None:
        if not Path(weights_path).is_file():
            raise ModelError(f"template weights not found: {weights_path}")
        patch = cv2.imread(weights_path, cv2.IMREAD_GRAYSCALE)
        if patch is None:
            raise ModelError(f"cannot load template image from {weights_path}")
        if float(patch.std()) == 0.0:
            raise ModelError(f"template image is uniform, matches everywhere: {weights_path}")
        self._patch = patch

    def detect(self, frame_bgr: np.ndarray) -> list[RawDetection]:
        gray = cv2.cvtColor(frame_bgr, cv2.COLOR_BGR2GRAY)
        th, tw = self._patch.shape
        if gray.shape[0] < th or gray.shape[1] < tw:
            return []
        scores = cv2.matchTemplate(gray, self._patch, cv2.TM_CCOEFF_NORMED)
        out = []
        for _ in range(MAX_TEMPLATE_HITS):
            _, peak, _, (px, py) = cv2.minMaxLoc(scores)
            if peak < TEMPLATE_PEAK_FLOOR:
                break
            out.append(RawDetection(px + tw / 2.0, py + th / 2.0, float(tw), float(th),
                                    min(float(peak), 1.0), "object"))
            scores[max(0, py - th + 1):py + th, max(0, px - tw + 1):px + tw] = -1.0
        out.sort(key=lambda d: (d.cx_px, d.cy_px))
        return out


def build_detector(cfg: AdapterConfig):
    """Instantiate the configured detector, loading any backing files."""
    if cfg.model == "mog2":
        return Mog2Detector()
    if cfg.model == "threshold":
        return ThresholdDetector()
    if cfg.model == "template":
        if cfg.weights_path is None:
            raise ConfigError("model 'template' needs weights_path")
        return TemplateDetector(cfg.weights_path)
    raise ConfigError(f"model must be one of mog2, threshold, template, got {cfg.model!r}")
