"""Independent standard-quantum-mechanics reference.

Joint probabilities by direct inner products with Kronecker-built outcome
vectors, plus distribution comparison utilities.  Deliberately avoids the
Schmidt-decomposition machinery so it can serve as ground truth for it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .correlations import MeasurementBasis, OutcomeDistribution
from .errors import DimensionMismatch, KeySetMismatch, NormViolation
from .hilbert import StateVector


@dataclass(frozen=True)
class ComparisonReport:
    max_abs_error: float
    offending_tuple: tuple[int, ...] | None
    total_variation: float


def born_joint_probability(psi: StateVector, outcomes: dict[str, np.ndarray]) -> float:
    """|<psi | outcome_1 x ... x outcome_n>|^2 by one Kronecker product."""
    joint = np.ones(1, dtype=complex)
    for lbl, d in zip(psi.labels, psi.dims):
        phi = np.asarray(outcomes[lbl], dtype=complex).ravel()
        if phi.size != d:
            raise DimensionMismatch(f"outcome for {lbl!r} has length {phi.size}, expected {d}")
        if abs(np.linalg.norm(phi) - 1.0) > 1e-10:
            raise NormViolation(f"outcome vector for {lbl!r} is not normalized")
        joint = np.kron(joint, phi)
    return abs(np.vdot(psi.amplitudes, joint)) ** 2


def oracle_distribution(
    psi: StateVector, bases: dict[str, MeasurementBasis]
) -> OutcomeDistribution:
    """Full joint distribution by enumerating every outcome tuple."""
    labels = psi.labels
    probs = {}
    for key in itertools.product(*(range(bases[lbl].dim) for lbl in labels)):
        outcomes = {lbl: bases[lbl].vectors[i] for lbl, i in zip(labels, key)}
        probs[key] = born_joint_probability(psi, outcomes)
    return OutcomeDistribution(probs=probs, labels=labels)


def compare_distributions(
    a: OutcomeDistribution, b: OutcomeDistribution, tol: float
) -> ComparisonReport:
    """Pointwise and total-variation comparison after reindexing b to a's order."""
    b = b.reindexed(a.labels)
    if set(a.probs) != set(b.probs):
        raise KeySetMismatch("distributions are over different outcome tuples")
    max_err = 0.0
    offender = None
    tv = 0.0
    for key in sorted(a.probs):
        err = abs(a.probs[key] - b.probs[key])
        tv += err
        if err > max_err:
            max_err = err
        if offender is None and err > tol:
            offender = key
    return ComparisonReport(
        max_abs_error=max_err, offending_tuple=offender, total_variation=tv / 2.0
    )
