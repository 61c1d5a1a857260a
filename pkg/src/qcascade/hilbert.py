"""Finite-dimensional complex tensor-product arithmetic.

State vectors over factorized Hilbert spaces, bipartition reshaping,
SVD-based biorthogonal (Schmidt) decomposition with a deterministic
canonical form, and partial trace by direct index contraction.

Flattening convention: row-major lexicographic order over factor indices
in label order, fixed bit-exactly for file I/O and reproducibility.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NormViolation, UnknownLabel

NORM_TOL = 1e-10
COEFF_DROP_TOL = 1e-12


@dataclass(frozen=True)
class Factorization:
    """Ordered factor dimensions with unique entity labels."""

    dims: tuple[int, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.dims) != len(self.labels):
            raise DimensionMismatch("dims and labels must have equal length")
        if any(d < 1 for d in self.dims):
            raise DimensionMismatch("factor dimensions must be >= 1")
        if len(set(self.labels)) != len(self.labels):
            raise UnknownLabel("entity labels must be unique")

    @property
    def total_dim(self) -> int:
        return int(np.prod(self.dims))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(f"unknown entity label {label!r}") from None

    def dim_of(self, label: str) -> int:
        return self.dims[self.index(label)]

    def without(self, label: str) -> Factorization:
        k = self.index(label)
        return Factorization(
            self.dims[:k] + self.dims[k + 1:],
            self.labels[:k] + self.labels[k + 1:],
        )


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitude vector over a factorized space."""

    amplitudes: np.ndarray
    factorization: Factorization

    def __post_init__(self):
        amp = _frozen(np.asarray(self.amplitudes).ravel())
        object.__setattr__(self, "amplitudes", amp)
        if amp.size != self.factorization.total_dim:
            raise DimensionMismatch(
                f"amplitude length {amp.size} != product of dims "
                f"{self.factorization.total_dim}"
            )
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > NORM_TOL:
            raise NormViolation(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.factorization.dims

    @property
    def labels(self) -> tuple[str, ...]:
        return self.factorization.labels


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix."""

    entries: np.ndarray
    dim: int

    def __post_init__(self):
        m = _frozen(np.asarray(self.entries))
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "dim", int(self.dim))
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"entries shape {m.shape} != ({self.dim}, {self.dim})")
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise NormViolation("density matrix is not Hermitian within 1e-10")
        if abs(np.trace(m).real - 1.0) > 1e-10 or abs(np.trace(m).imag) > 1e-10:
            raise NormViolation("density matrix trace deviates from 1 beyond 1e-10")
        if np.min(np.linalg.eigvalsh(m)) < -1e-10:
            raise NormViolation("density matrix has an eigenvalue below -1e-10")


@dataclass(frozen=True)
class BiorthogonalDecomposition:
    """Schmidt terms of a state for one focus entity.

    Rows of `left_vectors` live in the focus factor, rows of
    `right_vectors` in the lexicographic product of the remaining factors
    (in original label order, described by `rest`).  Coefficients are
    real and positive after the canonical phase convention.
    """

    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray
    focus: str
    source: Factorization

    @property
    def rest(self) -> Factorization:
        return self.source.without(self.focus)

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def reconstruct(self) -> np.ndarray:
        """Amplitudes of sum a_i psi_i x psitilde_i in the source flattening order."""
        out = np.zeros(self.left_vectors.shape[1] * self.right_vectors.shape[1], dtype=complex)
        for a, l, r in zip(self.coefficients, self.left_vectors, self.right_vectors):
            out += a * np.kron(l, r)
        k = self.source.index(self.focus)
        d_focus = self.source.dims[k]
        tensor = out.reshape((d_focus,) + self.rest.dims)
        return np.moveaxis(tensor, 0, k).ravel()


def tensor_product(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product with concatenated factorizations."""
    fact = Factorization(a.dims + b.dims, a.labels + b.labels)
    return StateVector(np.kron(a.amplitudes, b.amplitudes), fact)


def bipartition_matrix(psi: StateVector, focus: str) -> np.ndarray:
    """Reshape amplitudes to d_focus x d_rest with the focus index on rows.

    Columns run over the lexicographic product basis of the remaining
    factors in original label order.
    """
    k = psi.factorization.index(focus)
    tensor = psi.amplitudes.reshape(psi.dims)
    d_focus = psi.dims[k]
    return np.moveaxis(tensor, k, 0).reshape(d_focus, -1)


def _canonicalize(s: np.ndarray, left: np.ndarray, right: np.ndarray):
    """Deterministic canonical form: phases fixed, exact ties lex-broken."""
    left = left.copy()
    right = right.copy()
    for i in range(len(s)):
        k = int(np.argmax(np.abs(left[i])))
        phase = left[i][k] / abs(left[i][k])
        left[i] = left[i] / phase
        right[i] = right[i] * phase

    def key(i):
        lex = tuple(x for c in left[i] for x in (c.real, c.imag))
        return (-s[i],) + lex

    order = sorted(range(len(s)), key=key)
    return s[order], left[order], right[order]


def biorthogonal_decompose(psi: StateVector, focus: str) -> BiorthogonalDecomposition:
    """Schmidt decomposition via SVD of the bipartition matrix.

    Terms with singular value <= 1e-12 are dropped; the result is in the
    deterministic canonical form (descending coefficients, lexicographic
    tie-breaking, largest left component real positive).
    """
    m = bipartition_matrix(psi, focus)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    keep = s > COEFF_DROP_TOL
    s, left, right = s[keep], u.T[keep], vh[keep]
    s, left, right = _canonicalize(s, left, right)
    return BiorthogonalDecomposition(
        coefficients=_frozen(s),
        left_vectors=_frozen(left),
        right_vectors=_frozen(right),
        focus=focus,
        source=psi.factorization,
    )


def rotate_degenerate_subspaces(
    dec: BiorthogonalDecomposition, unitaries: dict[int, np.ndarray], tol: float = 1e-12
) -> BiorthogonalDecomposition:
    """Rotate left vectors inside degenerate coefficient blocks.

    `unitaries` maps the starting index of a degenerate block to a unitary
    of that block's size; right vectors absorb the conjugate rotation so
    the decomposition still reconstructs the same state.
    """
    s = np.asarray(dec.coefficients).real
    left = dec.left_vectors.copy()
    right = dec.right_vectors.copy()
    start = 0
    while start < len(s):
        stop = start + 1
        while stop < len(s) and abs(s[stop] - s[start]) <= tol * max(1.0, s[start]):
            stop += 1
        if start in unitaries:
            u = np.asarray(unitaries[start])
            if u.shape != (stop - start, stop - start):
                raise DimensionMismatch(
                    f"block at {start} has size {stop - start}, unitary shape {u.shape}"
                )
            left[start:stop] = u.T @ left[start:stop]
            right[start:stop] = u.conj().T @ right[start:stop]
        start = stop
    return BiorthogonalDecomposition(
        coefficients=dec.coefficients,
        left_vectors=_frozen(left),
        right_vectors=_frozen(right),
        focus=dec.focus,
        source=dec.source,
    )


def partial_trace(psi: StateVector, keep: str) -> DensityMatrix:
    """Reduced density matrix of one factor by direct index contraction."""
    m = bipartition_matrix(psi, keep)
    rho = m @ m.conj().T
    return DensityMatrix(entries=rho, dim=psi.factorization.dim_of(keep))
