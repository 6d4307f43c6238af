"""Elitist (mu + lambda) evolution of feature-sampling circuits.

Each generation clones the parents, applies exactly one mutation per
clone, samples every clone's output distribution, scores it through the
shared evaluation ledger, and keeps the best mu individuals.  Fitness is
frozen at evaluation time and never resampled, which makes the best
fitness literally monotone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .objective import EvaluationLedger, Evaluator, empirical_auc, fitness, predicted_total_evaluations
from .records import GenerationEntry, RunRecord
from .simulator import (
    Circuit,
    Gate,
    GateKind,
    SINGLE_QUBIT_KINDS,
    SampledDistribution,
    depth,
    quasi_probabilities,
    sample,
    simulate,
)

MUTATION_KINDS = ("insert", "modify", "delete", "swap")


@dataclass(frozen=True)
class MutationConfig:
    """Categorical mutation-kind probabilities and the angle-step scale."""

    p_insert: float = 0.5
    p_modify: float = 0.3
    p_delete: float = 0.1
    p_swap: float = 0.1
    sigma_modify: float = math.pi / 10

    def __post_init__(self) -> None:
        probs = (self.p_insert, self.p_modify, self.p_delete, self.p_swap)
        if any(not 0.0 <= p <= 1.0 for p in probs):
            raise ValueError(f"mutation probabilities must lie in [0, 1], got {probs}")
        if abs(sum(probs) - 1.0) > 1e-9:
            raise ValueError(f"mutation probabilities must sum to 1, got {sum(probs)!r}")
        if not self.sigma_modify > 0:
            raise ValueError(f"sigma_modify must be positive, got {self.sigma_modify}")

    @property
    def probabilities(self) -> tuple[float, float, float, float]:
        return (self.p_insert, self.p_modify, self.p_delete, self.p_swap)


@dataclass(frozen=True)
class EvolutionConfig:
    """Full run description; the seed pins every random draw."""

    n: int
    mu: int = 1
    lambda_: int = 6
    generations: int = 12
    shots: int = 64
    seed: int = 0
    mutation: MutationConfig = field(default_factory=MutationConfig)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        for name in ("mu", "lambda_", "generations", "shots"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mu": self.mu,
            "lambda": self.lambda_,
            "generations": self.generations,
            "shots": self.shots,
            "seed": self.seed,
            "mutation": {
                "p_insert": self.mutation.p_insert,
                "p_modify": self.mutation.p_modify,
                "p_delete": self.mutation.p_delete,
                "p_swap": self.mutation.p_swap,
                "sigma_modify": self.mutation.sigma_modify,
            },
        }


@dataclass(frozen=True)
class Individual:
    """A circuit with its frozen score and provenance."""

    circuit: Circuit
    fitness: float
    distribution: SampledDistribution
    birth_generation: int


def _mutation_probs(config: MutationConfig | EvolutionConfig) -> MutationConfig:
    return config.mutation if isinstance(config, EvolutionConfig) else config


def mutate(circuit: Circuit, rng: np.random.Generator, config) -> Circuit:
    """Apply exactly one mutation; inapplicable draws fall back to insert."""
    mutation = _mutation_probs(config)
    kind = MUTATION_KINDS[rng.choice(4, p=mutation.probabilities)]
    gates = list(circuit.gates)
    two_qubit_at = [i for i, g in enumerate(gates) if g.kind.n_qubits == 2]

    if kind in ("modify", "delete") and not gates:
        kind = "insert"
    elif kind == "swap" and not two_qubit_at:
        kind = "insert"

    if kind == "insert":
        # On a single qubit only the single-qubit rotations are drawable.
        kinds = tuple(GateKind) if circuit.n >= 2 else SINGLE_QUBIT_KINDS
        gate_kind = kinds[int(rng.integers(len(kinds)))]
        qubits = tuple(
            int(q) for q in rng.choice(circuit.n, size=gate_kind.n_qubits, replace=False)
        )
        angle = float(rng.uniform(0.0, 2.0 * math.pi))
        position = int(rng.integers(len(gates) + 1))
        gates.insert(position, Gate(gate_kind, qubits, angle))
    elif kind == "modify":
        index = int(rng.integers(len(gates)))
        old = gates[index]
        step = float(rng.normal(0.0, mutation.sigma_modify))
        gates[index] = Gate(old.kind, old.qubits, old.angle + step)
    elif kind == "delete":
        del gates[int(rng.integers(len(gates)))]
    else:  # swap operands of one two-qubit gate
        index = two_qubit_at[int(rng.integers(len(two_qubit_at)))]
        old = gates[index]
        gates[index] = Gate(old.kind, (old.qubits[1], old.qubits[0]), old.angle)
    return Circuit(circuit.n, tuple(gates))


def spawn_offspring(
    parent: Individual, count: int, rng: np.random.Generator, config
) -> list[Circuit]:
    """`count` one-mutation copies of the parent, one substream each."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return [mutate(parent.circuit, stream, config) for stream in rng.spawn(count)]


def select(parents: list[Individual], offspring: list[Individual], mu: int) -> list[Individual]:
    """The mu fittest of parents + offspring, descending.

    Ties prefer the earlier birth generation, then the earlier position in
    the concatenated pool, so an equally fit parent always outranks its
    offspring.
    """
    pool = list(parents) + list(offspring)
    ranked = sorted(
        range(len(pool)),
        key=lambda i: (-pool[i].fitness, pool[i].birth_generation, i),
    )
    return [pool[i] for i in ranked[:mu]]


def _generation_entry(
    generation: int, parents: list[Individual], ledger: EvaluationLedger
) -> GenerationEntry:
    return GenerationEntry(
        generation=generation,
        best_fitness=parents[0].fitness,
        parent_fitness=[p.fitness for p in parents],
        support=ledger.per_generation_support[generation],
        new_evaluations=ledger.per_generation_new[generation],
        best_mask=ledger.best_mask,
        best_accuracy=ledger.best_accuracy,
        parent_depth=depth(parents[0].circuit),
    )


def evolve(config: EvolutionConfig, evaluator: Evaluator) -> RunRecord:
    """Run the full loop and return the per-generation record.

    Generation 0 is a single empty circuit (all probability mass on the
    all-zero mask).  Each later generation derives one random substream
    per offspring from (seed, generation), used first for the mutation
    draws and then for the measurement shots, so results do not depend on
    evaluation order.
    """
    ledger = EvaluationLedger()
    entries: list[GenerationEntry] = []

    root_rng = np.random.default_rng(np.random.SeedSequence((config.seed, 0)))
    empty = Circuit(config.n, ())
    dist0 = sample(simulate(empty), config.shots, root_rng)
    parents = [Individual(empty, fitness(dist0, evaluator, ledger), dist0, 0)]
    ledger.close_generation()
    entries.append(_generation_entry(0, parents, ledger))

    for generation in range(1, config.generations + 1):
        streams = np.random.SeedSequence((config.seed, generation)).spawn(config.lambda_)
        children: list[Individual] = []
        for i in range(config.lambda_):
            rng = np.random.default_rng(streams[i])
            parent = parents[i % len(parents)]
            circuit = mutate(parent.circuit, rng, config.mutation)
            dist = sample(simulate(circuit), config.shots, rng)
            children.append(
                Individual(circuit, fitness(dist, evaluator, ledger), dist, generation)
            )
        parents = select(parents, children, config.mu)
        ledger.close_generation()
        entries.append(_generation_entry(generation, parents, ledger))

    cache = ledger.cache
    final = [
        {"mask": mask, "probability": prob, "accuracy": cache[mask]}
        for mask, prob in sorted(
            quasi_probabilities(parents[0].distribution).items(),
            key=lambda item: (-item[1], item[0]),
        )
    ]
    totals = {
        "cache_size": ledger.size,
        "empirical_auc": empirical_auc(ledger),
        "predicted_evaluations": predicted_total_evaluations(
            config.shots, config.generations
        ),
    }
    return RunRecord(
        config=config.to_dict(),
        generations=entries,
        final_distribution=final,
        totals=totals,
    )
