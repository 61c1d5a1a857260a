"""Deterministic hidden-measurement layer.

Each entity's measurement is a deterministic classical observable of a
hidden parameter lambda drawn uniformly from [0, 1); cumulative-threshold
intervals realize the quantum outcome statistics exactly.  Composing the
per-entity observables with the cascade's proper-state updates gives a
deterministic map from a lambda vector to a full outcome tuple.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlations import (
    CascadeState,
    MeasurementBasis,
    OutcomeDistribution,
    ProperState,
    _after_outcome,
    initial_cascade,
    outcome_probability,
    select_outcome,
    step_probabilities,
)
from .errors import DimensionMismatch, InvalidOrder
from .hilbert import StateVector

PROB_FLOOR = 1e-12


@dataclass(frozen=True)
class HiddenMeasurementRep:
    """One entity's hidden-measurement family: a basis plus uniform lambda on [0,1)."""

    entity: str
    basis: MeasurementBasis


@dataclass(frozen=True)
class LambdaVector:
    """One hidden parameter in [0, 1) per entity, keyed by label."""

    labels: tuple[str, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if len(self.labels) != len(self.values):
            raise DimensionMismatch("labels and values must have equal length")
        if any(not (0.0 <= v < 1.0) for v in self.values):
            raise DimensionMismatch("lambda components must lie in [0, 1)")

    def get(self, label: str) -> float:
        return self.values[self.labels.index(label)]


def classical_observable(rep: HiddenMeasurementRep, omega: ProperState, lam: float) -> int:
    """Deterministic outcome for a fixed proper state and hidden parameter.

    The lambda-measure of the set mapping to outcome i is exactly
    <phi_i|omega|phi_i>: each outcome owns one interval of that length.
    """
    probs = np.array([outcome_probability(omega, v) for v in rep.basis.vectors])
    return select_outcome(probs, lam)


def _cascade_node_probs(
    c: CascadeState, rep: HiddenMeasurementRep
) -> np.ndarray:
    return step_probabilities(c, rep.basis)


def combined_hidden_measurement(
    psi: StateVector,
    order: tuple[str, ...],
    reps: dict[str, HiddenMeasurementRep],
    lam: LambdaVector,
) -> tuple[int, ...]:
    """Deterministic outcome tuple for one lambda vector, in cascade order."""
    order = tuple(order)
    if sorted(order) != sorted(psi.labels):
        raise InvalidOrder("order must be a permutation of all entity labels")
    c = initial_cascade(psi)
    result = []
    for lbl in order:
        rep = reps[lbl]
        probs = _cascade_node_probs(c, rep)
        idx = select_outcome(probs, lam.get(lbl))
        result.append(idx)
        c = _after_outcome(c, lbl, idx, rep.basis.vectors[idx])
    return tuple(result)


class _CascadeTree:
    """Memoized cascade branches keyed by outcome prefix.

    The tree has at most prod(dims) nodes, so repeated sampling walks
    cached probabilities instead of re-running decompositions; selection
    uses the same threshold routine as combined_hidden_measurement, so
    per-sample outcomes are identical to the direct map.
    """

    def __init__(self, psi: StateVector, order: tuple[str, ...],
                 reps: dict[str, HiddenMeasurementRep]):
        self.order = tuple(order)
        self.reps = reps
        self._states: dict[tuple[int, ...], CascadeState] = {(): initial_cascade(psi)}
        self._probs: dict[tuple[int, ...], np.ndarray] = {}

    def probs_at(self, prefix: tuple[int, ...]) -> np.ndarray:
        if prefix not in self._probs:
            rep = self.reps[self.order[len(prefix)]]
            self._probs[prefix] = _cascade_node_probs(self._states[prefix], rep)
        return self._probs[prefix]

    def descend(self, prefix: tuple[int, ...], idx: int) -> tuple[int, ...]:
        child = prefix + (idx,)
        if child not in self._states and len(child) < len(self.order):
            lbl = self.order[len(prefix)]
            rep = self.reps[lbl]
            self._states[child] = _after_outcome(
                self._states[prefix], lbl, idx, rep.basis.vectors[idx]
            )
        return child

    def sample(self, lams: np.ndarray) -> tuple[int, ...]:
        prefix: tuple[int, ...] = ()
        out = []
        for k in range(len(self.order)):
            idx = select_outcome(self.probs_at(prefix), lams[k])
            out.append(idx)
            prefix = self.descend(prefix, idx)
        return tuple(out)


def monte_carlo_distribution(
    psi: StateVector,
    order: tuple[str, ...],
    reps: dict[str, HiddenMeasurementRep],
    n: int,
    seed: int,
) -> OutcomeDistribution:
    """Empirical outcome frequencies from n i.i.d. uniform lambda vectors."""
    if n < 1:
        raise DimensionMismatch("sample count must be >= 1")
    order = tuple(order)
    if sorted(order) != sorted(psi.labels):
        raise InvalidOrder("order must be a permutation of all entity labels")
    rng = np.random.default_rng(seed)
    draws = rng.random((n, len(order)))
    tree = _CascadeTree(psi, order, reps)
    counts: dict[tuple[int, ...], int] = {}
    for row in draws:
        key = tree.sample(row)
        counts[key] = counts.get(key, 0) + 1
    probs = {k: v / n for k, v in counts.items()}
    return OutcomeDistribution(probs=probs, labels=order)


def lambda_intervals(
    psi: StateVector,
    order: tuple[str, ...],
    reps: dict[str, HiddenMeasurementRep],
) -> dict[tuple[int, ...], list[tuple[float, float]]]:
    """Per-tuple lambda boxes as (start, length) intervals, one per entity.

    Interval lengths are the stepwise probabilities themselves, so the box
    measure (product of lengths) is bit-identical to the cascade product;
    outcomes with probability <= 1e-12 receive no interval.
    """
    order = tuple(order)
    boxes: dict[tuple[int, ...], list[tuple[float, float]]] = {}

    def walk(c: CascadeState, prefix: tuple[int, ...],
             intervals: list[tuple[float, float]]) -> None:
        if len(prefix) == len(order):
            boxes[prefix] = intervals
            return
        lbl = order[len(prefix)]
        rep = reps[lbl]
        probs = _cascade_node_probs(c, rep)
        start = 0.0
        for i, p in enumerate(probs):
            if p <= PROB_FLOOR:
                continue
            walk(_after_outcome(c, lbl, i, rep.basis.vectors[i]),
                 prefix + (i,), intervals + [(start, float(p))])
            start += p

    walk(initial_cascade(psi), (), [])
    return boxes
