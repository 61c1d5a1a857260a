"""Shared fixtures: named states, random states, random unitaries/bases."""
from __future__ import annotations

import string

import numpy as np

from qcascade import Factorization, MeasurementBasis, StateVector

SQ2 = 1.0 / np.sqrt(2.0)


def labels_for(n: int) -> tuple[str, ...]:
    return tuple(string.ascii_uppercase[:n])


def make_state(amps, dims) -> StateVector:
    amps = np.asarray(amps, dtype=complex)
    return StateVector(amps / np.linalg.norm(amps), Factorization(tuple(dims), labels_for(len(dims))))


def singlet() -> StateVector:
    return make_state([0, 1, -1, 0], (2, 2))


def ghz() -> StateVector:
    amps = np.zeros(8)
    amps[0] = amps[7] = 1
    return make_state(amps, (2, 2, 2))


def plus_zero() -> StateVector:
    # |+> x |0>
    return make_state([1, 0, 1, 0], (2, 2))


def random_state(rng: np.random.Generator, dims) -> StateVector:
    n = int(np.prod(dims))
    amps = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return make_state(amps, dims)


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix."""
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_basis(rng: np.random.Generator, entity: str, d: int) -> MeasurementBasis:
    return MeasurementBasis(entity=entity, vectors=random_unitary(rng, d).T)


def computational_bases(psi: StateVector) -> dict[str, MeasurementBasis]:
    return {
        lbl: MeasurementBasis(entity=lbl, vectors=np.eye(d, dtype=complex))
        for lbl, d in zip(psi.labels, psi.dims)
    }


def random_bases(rng: np.random.Generator, psi: StateVector) -> dict[str, MeasurementBasis]:
    return {lbl: random_basis(rng, lbl, d) for lbl, d in zip(psi.labels, psi.dims)}
