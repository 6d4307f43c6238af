"""Sampled objective F = sum_x p(x) f(x) and evaluation-count accounting.

The ledger is the one mutable object a run shares: it caches mask accuracy
so the classifier trains at most once per mask, and it counts, per
generation, both genuinely new evaluations (cache misses) and the summed
support sizes of all sampled distributions (the evaluation cost curve).
"""

from __future__ import annotations

import threading
from typing import Callable

import numpy as np

from .errors import FitnessError, InsufficientDataError
from .simulator import SampledDistribution, quasi_probabilities

Evaluator = Callable[[str], float]


class _Cell:
    """In-flight computation slot; waiters block on the event."""

    __slots__ = ("event", "value", "error")

    def __init__(self) -> None:
        self.event = threading.Event()
        self.value: float | None = None
        self.error: BaseException | None = None


class EvaluationLedger:
    """Mask-accuracy cache with per-generation counters.

    Get-or-compute is atomic per mask: even with concurrent fitness calls
    the evaluator runs exactly once for a given mask; latecomers wait for
    the winner's result.  Counters accumulate until close_generation().
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._cache: dict[str, float] = {}
        self._inflight: dict[str, _Cell] = {}
        self._open_new = 0
        self._open_support = 0
        self.per_generation_new: list[int] = []
        self.per_generation_support: list[int] = []
        self.best_mask: str | None = None
        self.best_accuracy: float = float("-inf")

    @property
    def cache(self) -> dict[str, float]:
        return dict(self._cache)

    @property
    def size(self) -> int:
        return len(self._cache)

    def accuracy_for(self, mask: str, evaluator: Evaluator) -> float:
        """Cached accuracy of `mask`, computing it at most once ever."""
        with self._lock:
            if mask in self._cache:
                return self._cache[mask]
            cell = self._inflight.get(mask)
            if cell is None:
                cell = _Cell()
                self._inflight[mask] = cell
                owner = True
            else:
                owner = False
        if not owner:
            cell.event.wait()
            if cell.error is not None:
                raise cell.error
            return cell.value

        try:
            value = float(evaluator(mask))
            if not 0.0 <= value <= 1.0:
                raise FitnessError(
                    f"evaluator returned {value!r}, outside [0, 1]", mask=mask
                )
        except FitnessError as err:
            self._fail(mask, cell, err)
            raise
        except Exception as err:
            wrapped = FitnessError(f"evaluator failed: {err}", mask=mask)
            self._fail(mask, cell, wrapped)
            raise wrapped from err
        with self._lock:
            self._cache[mask] = value
            self._open_new += 1
            if value > self.best_accuracy:
                self.best_accuracy = value
                self.best_mask = mask
            del self._inflight[mask]
        cell.value = value
        cell.event.set()
        return value

    def _fail(self, mask: str, cell: _Cell, error: BaseException) -> None:
        with self._lock:
            del self._inflight[mask]
        cell.error = error
        cell.event.set()

    def note_support(self, size: int) -> None:
        with self._lock:
            self._open_support += size

    def close_generation(self) -> None:
        """Snapshot and reset the per-generation counters."""
        with self._lock:
            self.per_generation_new.append(self._open_new)
            self.per_generation_support.append(self._open_support)
            self._open_new = 0
            self._open_support = 0

    @property
    def total_new_evaluations(self) -> int:
        return len(self._cache)


def fitness(
    dist: SampledDistribution, evaluator: Evaluator, ledger: EvaluationLedger
) -> float:
    """Shot-frequency-weighted accuracy of the masks in `dist`."""
    probs = quasi_probabilities(dist)
    total = 0.0
    for mask, p in probs.items():
        total += p * ledger.accuracy_for(mask, evaluator)
    ledger.note_support(len(probs))
    return total


def predicted_total_evaluations(m: int, K: int) -> float:
    """Closed-form area under the linear cost model: m*K/2."""
    return m * K / 2.0


def empirical_auc(ledger: EvaluationLedger) -> float:
    """Trapezoidal area under the per-generation support-size curve."""
    counts = ledger.per_generation_support
    if not counts:
        raise InsufficientDataError("no generations recorded")
    return float(np.trapezoid(np.asarray(counts, dtype=np.float64)))
