"""Mask-conditioned accuracy evaluators.

Three interchangeable backends score a feature mask on a fixed train/test
split: a from-scratch one-vs-rest linear SVM, a nearest-centroid model for
cheap tests, and a client that delegates to an external process over a
line protocol.  All are deterministic functions of their inputs.
"""

from __future__ import annotations

import queue
import shlex
import subprocess
import threading
from dataclasses import dataclass

import numpy as np

from .dataset import SplitDataset
from .errors import DegenerateTrainingError, EvaluatorError, MaskError
from .masks import mask_columns, validate_mask

KINDS = ("linear-svm", "nearest-centroid", "external")


@dataclass(frozen=True)
class EvaluatorSpec:
    """Which backend scores a mask, plus its hyperparameters."""

    kind: str = "linear-svm"
    C: float = 1.0
    epochs: int = 200
    external_cmd: str | None = None
    timeout: float = 60.0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"evaluator kind must be one of {KINDS}, got {self.kind!r}")
        if not self.C > 0:
            raise ValueError(f"C must be positive, got {self.C}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.kind == "external" and not self.external_cmd:
            raise ValueError("external evaluator requires a command line")
        if not self.timeout > 0:
            raise ValueError(f"timeout must be positive, got {self.timeout}")


@dataclass(frozen=True)
class LinearSvmModel:
    """One weight vector and bias per class, one-vs-rest."""

    classes: np.ndarray
    weights: np.ndarray  # (n_classes, n_features)
    biases: np.ndarray  # (n_classes,)

    def decision_scores(self, features: np.ndarray) -> np.ndarray:
        return features @ self.weights.T + self.biases

    def predict(self, features: np.ndarray) -> np.ndarray:
        # argmax takes the first maximum, so ties go to the lowest class.
        return self.classes[np.argmax(self.decision_scores(features), axis=1)]


def train_linear_svm(
    features: np.ndarray, labels: np.ndarray, C: float = 1.0, epochs: int = 200
) -> LinearSvmModel:
    """Full-batch subgradient descent on (C/2)||w||^2 + mean hinge loss.

    Zero initialization, learning rate 1/(C*t) at epoch t; one-vs-rest over
    the classes present in `labels`.  Entirely deterministic.
    """
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels)
    classes = np.unique(labels)
    if classes.size < 2:
        raise DegenerateTrainingError(
            f"training data has a single class ({classes[0]!r})"
        )
    if features.ndim != 2 or features.shape[1] < 1:
        raise ValueError("need at least one feature column")
    n_rows = features.shape[0]
    targets = np.where(labels[:, None] == classes[None, :], 1.0, -1.0)
    weights = np.zeros((classes.size, features.shape[1]))
    biases = np.zeros(classes.size)
    for t in range(1, epochs + 1):
        margins = targets * (features @ weights.T + biases)
        active = np.where(margins < 1.0, targets, 0.0)
        grad_w = C * weights - (active.T @ features) / n_rows
        grad_b = -active.sum(axis=0) / n_rows
        lr = 1.0 / (C * t)
        weights -= lr * grad_w
        biases -= lr * grad_b
    return LinearSvmModel(classes=classes, weights=weights, biases=biases)


def _standardized(rows: np.ndarray, mean: np.ndarray, std: np.ndarray) -> np.ndarray:
    # Zero-variance columns are centered but not scaled.
    scale = np.where(std > 0, std, 1.0)
    return (rows - mean) / scale


def _majority_accuracy(data: SplitDataset) -> float:
    majority = int(np.bincount(data.train_labels).argmax())
    return float(np.mean(data.test_labels == majority))


def _nearest_centroid_accuracy(
    train_x: np.ndarray, train_y: np.ndarray, test_x: np.ndarray, test_y: np.ndarray
) -> float:
    classes = np.unique(train_y)
    centroids = np.stack([train_x[train_y == c].mean(axis=0) for c in classes])
    deltas = test_x[:, None, :] - centroids[None, :, :]
    distances = np.einsum("tcf,tcf->tc", deltas, deltas)
    # argmin takes the first minimum, so ties go to the lowest class.
    predictions = classes[np.argmin(distances, axis=1)]
    return float(np.mean(predictions == test_y))


def evaluate(mask: str, data: SplitDataset, spec: EvaluatorSpec) -> float:
    """Test accuracy of the configured model trained on the masked columns."""
    validate_mask(mask)
    if len(mask) != data.n_features:
        raise MaskError(
            f"mask width {len(mask)} does not match {data.n_features} features"
        )
    if spec.kind == "external":
        raise EvaluatorError(
            "external evaluation needs a live process; use make_evaluator()"
        )
    if "1" not in mask:
        return _majority_accuracy(data)

    cols = mask_columns(mask)
    mean, std = data.train_mean[cols], data.train_std[cols]
    train_x = _standardized(data.train_features[:, cols], mean, std)
    test_x = _standardized(data.test_features[:, cols], mean, std)

    if spec.kind == "nearest-centroid":
        return _nearest_centroid_accuracy(
            train_x, data.train_labels, test_x, data.test_labels
        )
    try:
        model = train_linear_svm(train_x, data.train_labels, spec.C, spec.epochs)
    except DegenerateTrainingError:
        return _majority_accuracy(data)
    return float(np.mean(model.predict(test_x) == data.test_labels))


class ExternalEvaluator:
    """Client for a mask-scoring child process.

    Protocol over stdin/stdout, UTF-8, one line per message:
    we send "HELLO EQFS 1 <n>" and expect "READY"; each "EVAL <mask>" is
    answered by "OK <accuracy>" or "ERR <message>"; "QUIT" ends the
    session.  One request is in flight at a time; the process is reused
    for every mask of a run.
    """

    def __init__(self, command: str | list[str], n: int, timeout: float = 60.0):
        argv = shlex.split(command) if isinstance(command, str) else list(command)
        self._timeout = timeout
        self._lock = threading.Lock()
        self._lines: queue.Queue[str | None] = queue.Queue()
        try:
            self._proc = subprocess.Popen(
                argv,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                encoding="utf-8",
                bufsize=1,
            )
        except OSError as err:
            raise EvaluatorError(f"cannot launch evaluator {argv!r}: {err}") from err
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()
        self._send(f"HELLO EQFS 1 {n}")
        reply = self._receive()
        if reply != "READY":
            self.close()
            raise EvaluatorError(f"bad handshake reply: {reply!r}")

    def _pump(self) -> None:
        for line in self._proc.stdout:
            self._lines.put(line.rstrip("\r\n"))
        self._lines.put(None)

    def _send(self, message: str) -> None:
        try:
            self._proc.stdin.write(message + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, ValueError, OSError) as err:
            raise EvaluatorError(f"evaluator process is gone: {err}") from err

    def _receive(self) -> str:
        try:
            line = self._lines.get(timeout=self._timeout)
        except queue.Empty:
            self._proc.kill()
            raise EvaluatorError(
                f"evaluator gave no reply within {self._timeout} s"
            ) from None
        if line is None:
            code = self._proc.wait()
            raise EvaluatorError(f"evaluator exited early with code {code}")
        return line

    def __call__(self, mask: str) -> float:
        with self._lock:
            self._send(f"EVAL {mask}")
            reply = self._receive()
        if reply.startswith("ERR"):
            raise EvaluatorError(f"evaluator error for mask {mask}: {reply[3:].strip()}")
        if not reply.startswith("OK "):
            raise EvaluatorError(f"malformed evaluator reply: {reply!r}")
        try:
            value = float(reply[3:].strip())
        except ValueError:
            raise EvaluatorError(f"malformed evaluator reply: {reply!r}") from None
        if not 0.0 <= value <= 1.0:
            raise EvaluatorError(f"evaluator accuracy {value} outside [0, 1]")
        return value

    def close(self) -> None:
        if self._proc.poll() is None:
            try:
                self._proc.stdin.write("QUIT\n")
                self._proc.stdin.flush()
            except (BrokenPipeError, ValueError, OSError):
                pass
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._proc.kill()
                self._proc.wait()

    def __enter__(self) -> "ExternalEvaluator":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def external_evaluate(mask: str, command: str | list[str] | ExternalEvaluator) -> float:
    """Score one mask through the line protocol.

    Pass an ExternalEvaluator to reuse its process; a raw command spawns a
    process for just this call.
    """
    if isinstance(command, ExternalEvaluator):
        return command(mask)
    with ExternalEvaluator(command, n=len(mask)) as process:
        return process(mask)


class _LocalEvaluator:
    """Callable facade binding a split and spec; close() is a no-op."""

    def __init__(self, spec: EvaluatorSpec, data: SplitDataset):
        self.spec = spec
        self.data = data

    def __call__(self, mask: str) -> float:
        return evaluate(mask, self.data, self.spec)

    def close(self) -> None:
        pass


def make_evaluator(spec: EvaluatorSpec, data: SplitDataset):
    """Mask -> accuracy callable with a close() method."""
    if spec.kind == "external":
        return ExternalEvaluator(spec.external_cmd, n=data.n_features, timeout=spec.timeout)
    return _LocalEvaluator(spec, data)
