"""Streaming multiclass linear classifier trained by mini-batch SGD.

Each class owns one weight row (five feature weights plus a bias) and scores
a sample by an affine function; class probabilities come from a softmax over
those scores. Samples are buffered and the model takes one pass of
per-sample gradient steps whenever the buffer fills.
"""

from __future__ import annotations

import json

import numpy as np

from .config import SynopsisConfig
from .errors import DataError, StateError


def softmax(logits: np.ndarray) -> np.ndarray:
    """Numerically stable softmax."""
    shifted = logits - np.max(logits)
    e = np.exp(shifted)
    return e / np.sum(e)


def sample_loss_gradient(weights: np.ndarray, x_aug: np.ndarray, label_idx: int,
                         l2: float) -> tuple[float, np.ndarray]:
    """Loss and gradient of one sample under the L2-penalized softmax loss.

    loss = -log p(label) + l2/2 * ||W||^2, gradient taken per weight; the
    SGD update subtracts lr times this gradient.
    """
    probs = softmax(weights @ x_aug)
    loss = -float(np.log(probs[label_idx])) + 0.5 * l2 * float(np.sum(weights ** 2))
    grad = np.outer(probs, x_aug)
    grad[label_idx] -= x_aug
    grad += l2 * weights
    return loss, grad


class OnlineClassifier:
    """Softmax regression over the five motion features, learned online.

    Class labels are an open set: the first sample of a new label allocates a
    zero weight row. Per-class and total sample counters advance when a
    sample is buffered, never when the buffer is flushed, so readiness can be
    checked mid-batch.
    """

    def __init__(self, n_features: int = 5, batch_size: int = 100,
                 learning_rate: float = 0.01, l2: float = 1e-4):
        if batch_size < 1:
            raise DataError(f"batch_size must be >= 1, got {batch_size}")
        if learning_rate <= 0:
            raise DataError(f"learning_rate must be positive, got {learning_rate}")
        if l2 < 0:
            raise DataError(f"l2 must be nonnegative, got {l2}")
        self.n_features = n_features
        self.batch_size = batch_size
        self.learning_rate = learning_rate
        self.l2 = l2
        self.classes: list[str] = []
        self._index: dict[str, int] = {}
        self.weights = np.zeros((0, n_features + 1), dtype=np.float64)
        self.samples_per_class: dict[str, int] = {}
        self.samples_total = 0
        self.pending: list[tuple[np.ndarray, str]] = []
        self.fit_count = 0

    def _register(self, label: str) -> int:
        idx = self._index.get(label)
        if idx is None:
            idx = len(self.classes)
            self.classes.append(label)
            self._index[label] = idx
            self.samples_per_class[label] = 0
            self.weights = np.vstack(
                [self.weights, np.zeros((1, self.n_features + 1))])
        return idx

    def _check_vector(self, vec) -> np.ndarray:
        v = np.asarray(vec, dtype=np.float64)
        if v.shape != (self.n_features,):
            raise DataError(f"expected {self.n_features} features, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise DataError(f"non-finite sample: {v}")
        return v

    def ingest_sample(self, vec, label: str) -> None:
        """Buffer one labeled sample; fits and clears the buffer when full."""
        v = self._check_vector(vec)
        self._register(label)
        self.samples_per_class[label] += 1
        self.samples_total += 1
        self.pending.append((v, label))
        if len(self.pending) >= self.batch_size:
            batch = self.pending
            self.pending = []
            self.partial_fit(batch)

    def partial_fit(self, batch: list[tuple[np.ndarray, str]]) -> None:
        """One epoch of per-sample SGD over the batch, in the given order.

        Trains weights only; sample counters belong to ingest_sample.
        """
        if not batch:
            raise DataError("partial_fit needs a nonempty batch")
        for vec, label in batch:
            v = self._check_vector(vec)
            idx = self._register(label)
            x_aug = np.append(v, 1.0)
            _, grad = sample_loss_gradient(self.weights, x_aug, idx, self.l2)
            self.weights -= self.learning_rate * grad
        if not np.all(np.isfinite(self.weights)):
            raise DataError("weights diverged to non-finite values")
        self.fit_count += 1

    def predict_proba(self, vec) -> dict[str, float]:
        """Class probabilities for a sample, in class registration order."""
        if not self.classes:
            raise StateError("no classes registered yet")
        v = self._check_vector(vec)
        probs = softmax(self.weights @ np.append(v, 1.0))
        return {label: float(p) for label, p in zip(self.classes, probs)}

    def membership(self, vec, label: str) -> float:
        """Probability that the sample belongs to its declared class."""
        if label not in self._index:
            raise StateError(f"class {label!r} never seen")
        return self.predict_proba(vec)[label]

    def is_ready(self, label: str, cfg: SynopsisConfig) -> bool:
        """True once the label and the whole model cleared their warm-up gates."""
        return (self.samples_per_class.get(label, 0) >= cfg.warmup_per_class
                and self.samples_total >= cfg.warmup_total)

    def snapshot(self) -> str:
        """JSON snapshot of classes, weights and counters (buffer excluded)."""
        return json.dumps({
            "n_features": self.n_features,
            "batch_size": self.batch_size,
            "learning_rate": self.learning_rate,
            "l2": self.l2,
            "classes": self.classes,
            "weights": self.weights.tolist(),
            "samples_per_class": self.samples_per_class,
            "samples_total": self.samples_total,
            "fit_count": self.fit_count,
        }, indent=2) + "\n"

    @classmethod
    def from_snapshot(cls, text: str) -> "OnlineClassifier":
        raw = json.loads(text)
        model = cls(n_features=raw["n_features"], batch_size=raw["batch_size"],
                    learning_rate=raw["learning_rate"], l2=raw["l2"])
        for label in raw["classes"]:
            model._register(label)
        model.weights = np.asarray(raw["weights"], dtype=np.float64).reshape(
            len(raw["classes"]), raw["n_features"] + 1)
        model.samples_per_class = dict(raw["samples_per_class"])
        model.samples_total = int(raw["samples_total"])
        model.fit_count = int(raw["fit_count"])
        return model
