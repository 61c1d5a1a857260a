"""Batch command-line front end.

Verbs: decompose, proper-states, distribution, sample, compare.
Reads JSON state files, emits JSON reports, and exits nonzero on errors
or tolerance violations.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .correlations import (
    MeasurementBasis,
    OutcomeDistribution,
    cascade_distribution,
    initial_cascade,
    proper_state,
)
from .errors import DimensionMismatch, MalformedDocument, NormViolation, QCascadeError
from .hidden import HiddenMeasurementRep, monte_carlo_distribution
from .hilbert import StateVector, biorthogonal_decompose
from .io import parse_state_file
from .oracle import compare_distributions, oracle_distribution

BASIS_PARSE_TOL = 1e-8


def _gram_schmidt(vectors: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt re-orthonormalization."""
    v = vectors.astype(complex).copy()
    for i in range(v.shape[0]):
        for j in range(i):
            v[i] -= np.vdot(v[j], v[i]) * v[j]
        norm = np.linalg.norm(v[i])
        if norm < 1e-12:
            raise MalformedDocument("basis vectors are linearly dependent")
        v[i] /= norm
    return v


def _preset_basis(name: str, entity: str, dim: int) -> MeasurementBasis:
    if name == "computational":
        return MeasurementBasis(entity=entity, vectors=np.eye(dim, dtype=complex))
    if name == "hadamard":
        if dim != 2:
            raise DimensionMismatch("hadamard preset requires a 2-dimensional factor")
        h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
        return MeasurementBasis(entity=entity, vectors=h)
    raise MalformedDocument(f"unknown basis preset {name!r}")


def _basis_from_file(path: str, entity: str, dim: int) -> MeasurementBasis:
    try:
        with open(path) as fh:
            doc = json.load(fh)
        vectors = np.array(
            [[complex(float(re), float(im)) for re, im in row] for row in doc["vectors"]]
        )
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise MalformedDocument(f"malformed basis file {path}: {exc}") from exc
    if vectors.shape != (dim, dim):
        raise DimensionMismatch(f"basis in {path} has shape {vectors.shape}, expected ({dim}, {dim})")
    gram = vectors @ vectors.conj().T
    if np.max(np.abs(gram - np.eye(dim))) > BASIS_PARSE_TOL:
        raise NormViolation(f"basis in {path} is not orthonormal within {BASIS_PARSE_TOL}")
    return MeasurementBasis(entity=entity, vectors=_gram_schmidt(vectors))


def _resolve_bases(psi: StateVector, specs: list[str]) -> dict[str, MeasurementBasis]:
    chosen = {}
    for spec in specs:
        if "=" not in spec:
            raise MalformedDocument(f"--basis expects entity=<preset|path>, got {spec!r}")
        entity, src = spec.split("=", 1)
        dim = psi.factorization.dim_of(entity)
        if src in ("computational", "hadamard"):
            chosen[entity] = _preset_basis(src, entity, dim)
        else:
            chosen[entity] = _basis_from_file(src, entity, dim)
    for lbl, dim in zip(psi.labels, psi.dims):
        chosen.setdefault(lbl, _preset_basis("computational", lbl, dim))
    return chosen


def _complex_pairs(vec: np.ndarray) -> list[list[float]]:
    return [[float(c.real), float(c.imag)] for c in np.asarray(vec).ravel()]


def _matrix_pairs(m: np.ndarray) -> list[list[list[float]]]:
    return [_complex_pairs(row) for row in np.asarray(m)]


def _dist_doc(dist) -> dict:
    return {
        "labels": list(dist.labels),
        "probabilities": {",".join(map(str, k)): v for k, v in sorted(dist.probs.items())},
    }


def _emit(doc: dict, out_path: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_decompose(psi, args) -> tuple[dict, int]:
    report = {}
    for lbl in psi.labels:
        dec = biorthogonal_decompose(psi, lbl)
        report[lbl] = {
            "coefficients": [float(c.real) for c in dec.coefficients],
            "left_vectors": _matrix_pairs(dec.left_vectors),
            "right_vectors": _matrix_pairs(dec.right_vectors),
        }
    return {"mode": "decompose", "entities": report}, 0


def _cmd_proper_states(psi, args) -> tuple[dict, int]:
    c = initial_cascade(psi)
    report = {
        lbl: _matrix_pairs(proper_state(c, lbl).matrix.entries) for lbl in psi.labels
    }
    return {"mode": "proper-states", "entities": report}, 0


def _cmd_distribution(psi, args) -> tuple[dict, int]:
    bases = _resolve_bases(psi, args.basis)
    dist = cascade_distribution(psi, args.order, bases)
    return {"mode": "distribution", **_dist_doc(dist)}, 0


def _cmd_compare(psi, args) -> tuple[dict, int]:
    bases = _resolve_bases(psi, args.basis)
    dist = cascade_distribution(psi, args.order, bases)
    ref = oracle_distribution(psi, bases)
    report = compare_distributions(dist, ref, args.tol)
    doc = {
        "mode": "compare",
        "tol": args.tol,
        "max_abs_error": report.max_abs_error,
        "total_variation": report.total_variation,
        "offending_tuple": list(report.offending_tuple) if report.offending_tuple else None,
    }
    return doc, 0 if report.max_abs_error <= args.tol else 1


def _cmd_sample(psi, args) -> tuple[dict, int]:
    bases = _resolve_bases(psi, args.basis)
    reps = {lbl: HiddenMeasurementRep(entity=lbl, basis=b) for lbl, b in bases.items()}
    empirical = monte_carlo_distribution(psi, args.order, reps, args.n, args.seed)
    ref = oracle_distribution(psi, bases).reindexed(tuple(args.order))
    # empirical counts omit never-hit tuples; pad with zeros for comparison
    padded = OutcomeDistribution(
        probs={k: empirical.probs.get(k, 0.0) for k in ref.probs}, labels=empirical.labels
    )
    report = compare_distributions(padded, ref, args.tol)
    doc = {
        "mode": "sample",
        "n": args.n,
        "seed": args.seed,
        **_dist_doc(empirical),
        "max_abs_error_vs_oracle": report.max_abs_error,
        "total_variation_vs_oracle": report.total_variation,
    }
    return doc, 0


COMMANDS = {
    "decompose": _cmd_decompose,
    "proper-states": _cmd_proper_states,
    "distribution": _cmd_distribution,
    "compare": _cmd_compare,
    "sample": _cmd_sample,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcascade",
        description="Sequential measurement cascades on tensor-product states",
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--state", required=True, help="path to a JSON state file")
        p.add_argument("--order", default=None,
                       help="comma-separated entity labels (default: file order)")
        p.add_argument("--basis", action="append", default=[], metavar="ENTITY=SRC",
                       help="basis preset (computational, hadamard) or JSON file per entity")
        p.add_argument("--n", type=int, default=10000, help="sample count")
        p.add_argument("--seed", type=int, default=0, help="random seed")
        p.add_argument("--tol", type=float, default=1e-9, help="comparison tolerance")
        p.add_argument("--out", default=None, help="write the report to this path")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        psi = parse_state_file(args.state)
        args.order = args.order.split(",") if args.order else list(psi.labels)
        doc, code = COMMANDS[args.mode](psi, args)
    except QCascadeError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}}, args.out)
        return 2
    _emit(doc, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
