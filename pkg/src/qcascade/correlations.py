"""Sequential measurement cascade with deterministic proper-state updates.

Each entity of a compound state carries a density-matrix proper state
derived from the Schmidt decomposition of the not-yet-measured remainder.
Measuring one entity conditions the remainder and thereby updates every
other entity's proper state; enumerating all outcome branches yields the
joint distribution of a full measurement cascade.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DimensionMismatch,
    EntityAlreadyMeasured,
    InvalidOrder,
    NormViolation,
    ZeroProbabilityOutcome,
)
from .hilbert import (
    BiorthogonalDecomposition,
    DensityMatrix,
    Factorization,
    StateVector,
    biorthogonal_decompose,
)

PROB_FLOOR = 1e-12
BRANCH_FLOOR = 1e-15

Decomposer = Callable[[StateVector, str], BiorthogonalDecomposition]


@dataclass(frozen=True)
class ProperState:
    """Density matrix of one individual entity inside the compound system."""

    matrix: DensityMatrix
    entity: str


@dataclass(frozen=True)
class MeasurementBasis:
    """Orthonormal outcome basis for one entity (non-degenerate spectrum)."""

    entity: str
    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=complex)
        v.flags.writeable = False
        object.__setattr__(self, "vectors", v)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DimensionMismatch("basis must be a square set of vectors")
        gram = v @ v.conj().T
        if np.max(np.abs(gram - np.eye(v.shape[0]))) > 1e-10:
            raise NormViolation("basis vectors are not orthonormal within 1e-10")

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class CascadeState:
    """Running record of a cascade: remainder, outcomes so far, what's left.

    `remainder` is None once every entity has been measured.
    """

    remainder: StateVector | None
    measured: tuple[tuple[str, int, np.ndarray], ...]
    remaining: tuple[str, ...]


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities over outcome-index tuples, keyed in `labels` order."""

    probs: dict[tuple[int, ...], float]
    labels: tuple[str, ...]

    def __post_init__(self):
        if any(p < -1e-12 for p in self.probs.values()):
            raise NormViolation("negative probability in distribution")
        total = sum(self.probs.values())
        if abs(total - 1.0) > 1e-9:
            raise NormViolation(f"distribution sums to {total}, not 1 within 1e-9")

    def reindexed(self, labels: tuple[str, ...]) -> OutcomeDistribution:
        """Permute tuple positions to a different entity order."""
        if set(labels) != set(self.labels):
            raise InvalidOrder("target labels are not a permutation")
        perm = [self.labels.index(lbl) for lbl in labels]
        probs = {tuple(k[i] for i in perm): p for k, p in self.probs.items()}
        return OutcomeDistribution(probs=probs, labels=tuple(labels))


def initial_cascade(psi: StateVector) -> CascadeState:
    return CascadeState(remainder=psi, measured=(), remaining=psi.labels)


def _require_remaining(c: CascadeState, entity: str) -> None:
    if entity not in c.remaining:
        raise EntityAlreadyMeasured(f"entity {entity!r} is not among the unmeasured ones")


def proper_state_from_decomposition(dec: BiorthogonalDecomposition) -> ProperState:
    """Diagonal density matrix in the left Schmidt basis: sum |a_i|^2 |psi_i><psi_i|."""
    d = dec.left_vectors.shape[1]
    rho = np.zeros((d, d), dtype=complex)
    for a, v in zip(dec.coefficients, dec.left_vectors):
        rho += (abs(a) ** 2) * np.outer(v, v.conj())
    return ProperState(matrix=DensityMatrix(entries=rho, dim=d), entity=dec.focus)


def proper_state(
    c: CascadeState, entity: str, decomposer: Decomposer = biorthogonal_decompose
) -> ProperState:
    """Current proper state of an unmeasured entity."""
    _require_remaining(c, entity)
    if len(c.remaining) == 1:
        amp = c.remainder.amplitudes
        rho = np.outer(amp, amp.conj())
        return ProperState(matrix=DensityMatrix(entries=rho, dim=amp.size), entity=entity)
    return proper_state_from_decomposition(decomposer(c.remainder, entity))


def outcome_probability(omega: ProperState, phi: np.ndarray) -> float:
    """<phi|omega|phi>, clamped to [0, 1] against floating-point noise."""
    phi = np.asarray(phi, dtype=complex).ravel()
    if phi.size != omega.matrix.dim:
        raise DimensionMismatch(
            f"outcome vector length {phi.size} != proper-state dim {omega.matrix.dim}"
        )
    p = np.vdot(phi, omega.matrix.entries @ phi).real
    if p < -1e-12:
        raise NormViolation(f"outcome probability {p} below -1e-12")
    return min(max(p, 0.0), 1.0)


def remainder_from_decomposition(
    dec: BiorthogonalDecomposition, phi: np.ndarray
) -> StateVector:
    """(1/N) sum a_i <phi|psi_i> psitilde_i over the remaining factors."""
    phi = np.asarray(phi, dtype=complex).ravel()
    overlaps = dec.left_vectors @ phi.conj()  # <phi|psi_i>
    weights = dec.coefficients * overlaps
    n = np.linalg.norm(weights)
    if n <= PROB_FLOOR:
        raise ZeroProbabilityOutcome(
            "outcome has zero probability; the transition cannot occur"
        )
    vec = (weights / n) @ dec.right_vectors
    return StateVector(vec, dec.rest)


def conditional_remainder(
    c: CascadeState,
    entity: str,
    phi: np.ndarray,
    decomposer: Decomposer = biorthogonal_decompose,
) -> StateVector:
    """Remainder over the unmeasured factors after observing `phi` on `entity`."""
    _require_remaining(c, entity)
    if len(c.remaining) == 1:
        raise DimensionMismatch("no factors remain after measuring the last entity")
    return remainder_from_decomposition(decomposer(c.remainder, entity), phi)


def _after_outcome(
    c: CascadeState,
    entity: str,
    index: int,
    phi: np.ndarray,
    decomposer: Decomposer = biorthogonal_decompose,
) -> CascadeState:
    """Cascade state after the given outcome occurred (the measured entity is final)."""
    remaining = tuple(lbl for lbl in c.remaining if lbl != entity)
    remainder = None
    if remaining:
        remainder = conditional_remainder(c, entity, phi, decomposer)
    return CascadeState(
        remainder=remainder,
        measured=c.measured + ((entity, index, np.asarray(phi, dtype=complex)),),
        remaining=remaining,
    )


def hidden_correlation_map(
    c: CascadeState,
    measured_entity: str,
    phi: np.ndarray,
    target: str,
    decomposer: Decomposer = biorthogonal_decompose,
) -> ProperState:
    """New proper state of `target` after `measured_entity` ended up in `phi`."""
    _require_remaining(c, measured_entity)
    _require_remaining(c, target)
    if measured_entity == target:
        raise EntityAlreadyMeasured("target coincides with the measured entity")
    after = _after_outcome(c, measured_entity, -1, phi, decomposer)
    return proper_state(after, target, decomposer)


def step_probabilities(
    c: CascadeState, basis: MeasurementBasis, decomposer: Decomposer = biorthogonal_decompose
) -> np.ndarray:
    omega = proper_state(c, basis.entity, decomposer)
    return np.array([outcome_probability(omega, v) for v in basis.vectors])


def select_outcome(probs: np.ndarray, u: float) -> int:
    """Cumulative-threshold inversion; outcomes with p <= 1e-12 get no interval."""
    cum = 0.0
    last_valid = None
    for i, p in enumerate(probs):
        if p <= PROB_FLOOR:
            continue
        cum += p
        last_valid = i
        if u < cum:
            return i
    if last_valid is None:
        raise ZeroProbabilityOutcome("all outcomes have zero probability")
    return last_valid


def measure_step(
    c: CascadeState, basis: MeasurementBasis, u: float
) -> tuple[int, CascadeState]:
    """One projective measurement selected by the uniform variate `u`."""
    _require_remaining(c, basis.entity)
    probs = step_probabilities(c, basis)
    idx = select_outcome(probs, u)
    return idx, _after_outcome(c, basis.entity, idx, basis.vectors[idx])


def cascade_distribution(
    psi: StateVector,
    order: tuple[str, ...],
    bases: dict[str, MeasurementBasis],
    decomposer: Decomposer = biorthogonal_decompose,
) -> OutcomeDistribution:
    """Joint outcome distribution of the full cascade in the given order.

    Branch probabilities are products of stepwise outcome probabilities;
    branches whose running product drops to <= 1e-15 stop early and every
    completion keeps the truncated product.
    """
    order = tuple(order)
    if sorted(order) != sorted(psi.labels):
        raise InvalidOrder("order must be a permutation of all entity labels")
    for lbl in order:
        if bases[lbl].dim != psi.factorization.dim_of(lbl):
            raise DimensionMismatch(f"basis for {lbl!r} has wrong dimension")

    probs: dict[tuple[int, ...], float] = {}
    tail_ranges = [range(bases[lbl].dim) for lbl in order]

    def fill_branch(prefix: tuple[int, ...], value: float) -> None:
        for tail in itertools.product(*tail_ranges[len(prefix):]):
            probs[prefix + tail] = value

    def walk(c: CascadeState, prefix: tuple[int, ...], running: float) -> None:
        if len(prefix) == len(order):
            probs[prefix] = running
            return
        basis = bases[order[len(prefix)]]
        step = step_probabilities(c, basis, decomposer)
        for i, p in enumerate(step):
            branch = running * p
            if branch <= BRANCH_FLOOR:
                fill_branch(prefix + (i,), 0.0 if p == 0.0 else branch)
                continue
            walk(_after_outcome(c, basis.entity, i, basis.vectors[i], decomposer),
                 prefix + (i,), branch)

    walk(initial_cascade(psi), (), 1.0)
    return OutcomeDistribution(probs=probs, labels=order)
