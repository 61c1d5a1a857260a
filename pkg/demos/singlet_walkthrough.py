"""Walk through a singlet measurement cascade step by step.

Shows the proper states of both entities before any measurement, the
deterministic update of the second entity's state after the first is
measured, and the perfect anticorrelation of the joint distribution.
"""
import numpy as np

from qcascade import (
    Factorization,
    MeasurementBasis,
    StateVector,
    cascade_distribution,
    conditional_remainder,
    hidden_correlation_map,
    initial_cascade,
    measure_step,
    oracle_distribution,
    proper_state,
)

singlet = StateVector(
    np.array([0, 1, -1, 0]) / np.sqrt(2), Factorization((2, 2), ("left", "right"))
)
print("Singlet amplitudes:", singlet.amplitudes)

c = initial_cascade(singlet)
for lbl in singlet.labels:
    print(f"\nInitial proper state of {lbl!r}:")
    print(proper_state(c, lbl).matrix.entries.real)

ket0 = np.array([1, 0], dtype=complex)
print("\nConditioning on outcome |0> for 'left':")
rem = conditional_remainder(c, "left", ket0)
print("  remainder over", rem.labels, "=", rem.amplitudes)
print("  new proper state of 'right':")
print(hidden_correlation_map(c, "left", ket0, "right").matrix.entries.real)

basis = MeasurementBasis("left", np.eye(2, dtype=complex))
idx, after = measure_step(c, basis, u=0.25)
print(f"\nmeasure_step with u=0.25 picked outcome {idx}; remaining:", after.remaining)

bases = {lbl: MeasurementBasis(lbl, np.eye(2, dtype=complex)) for lbl in singlet.labels}
dist = cascade_distribution(singlet, singlet.labels, bases)
ref = oracle_distribution(singlet, bases)
print("\nJoint distribution (cascade vs Born oracle):")
for key in sorted(dist.probs):
    print(f"  {key}: {dist.probs[key]:.12f}  vs  {ref.probs[key]:.12f}")
