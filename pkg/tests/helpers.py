"""Shared test helpers: random circuit generation over the full gate basis."""

import numpy as np

from qfselect.simulator import Circuit, Gate, GateKind, SINGLE_QUBIT_KINDS


def random_gate(rng: np.random.Generator, n: int) -> Gate:
    kinds = list(GateKind) if n >= 2 else list(SINGLE_QUBIT_KINDS)
    kind = kinds[rng.integers(len(kinds))]
    if kind.n_qubits == 1:
        qubits = (int(rng.integers(n)),)
    else:
        qubits = tuple(int(q) for q in rng.choice(n, size=2, replace=False))
    return Gate(kind, qubits, float(rng.uniform(0.0, 2.0 * np.pi)))


def random_circuit(rng: np.random.Generator, n: int, n_gates: int) -> Circuit:
    return Circuit(n, tuple(random_gate(rng, n) for _ in range(n_gates)))


def planted_rows(n, rows, informative, seed):
    """Feature matrix + binary labels from a linear rule on 3 columns.

    Only the `informative` columns carry class signal; every other column
    is independent standard normal noise.
    """
    rng = np.random.default_rng(seed)
    features = rng.normal(size=(rows, n))
    weights = np.linspace(1.0, 1.5, num=len(informative))
    score = features[:, list(informative)] @ weights
    labels = (score > 0.0).astype(np.int64)
    return features, labels


def write_planted_csv(path, n, rows, informative, seed):
    """Write planted_rows as a loadable CSV; returns the informative tuple."""
    features, labels = planted_rows(n, rows, informative, seed)
    lines = ["label," + ",".join(f"f{i}" for i in range(n))]
    for y, row in zip(labels, features):
        lines.append(str(int(y)) + "," + ",".join(repr(float(v)) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return tuple(informative)
