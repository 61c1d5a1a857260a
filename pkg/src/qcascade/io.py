"""JSON state-file parsing and serialization.

A state document has fields `dims` (list of ints), `labels` (list of
strings, optional, defaults to q0..qN), and `amplitudes` (list of
[re, im] pairs in row-major flattening order over the factor indices).
"""
from __future__ import annotations

import json

import numpy as np

from .errors import MalformedDocument, NormViolation
from .hilbert import Factorization, StateVector

PARSE_NORM_TOL = 1e-6


def state_from_document(doc: dict) -> StateVector:
    if not isinstance(doc, dict):
        raise MalformedDocument("state document must be a JSON object")
    try:
        dims = [int(d) for d in doc["dims"]]
        pairs = doc["amplitudes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"missing or malformed field: {exc}") from exc
    labels = doc.get("labels")
    if labels is None:
        labels = [f"q{i}" for i in range(len(dims))]
    try:
        amps = np.array([complex(float(re), float(im)) for re, im in pairs])
    except (TypeError, ValueError) as exc:
        raise MalformedDocument("amplitudes must be [re, im] pairs") from exc
    if amps.size != int(np.prod(dims)):
        raise MalformedDocument(
            f"{amps.size} amplitudes for total dimension {int(np.prod(dims))}"
        )
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > PARSE_NORM_TOL:
        raise NormViolation(f"state norm {norm} deviates from 1 beyond {PARSE_NORM_TOL}")
    # rescale only when needed so already-normalized files round-trip bit-identically
    if abs(norm - 1.0) > 1e-10:
        amps = amps / norm
    return StateVector(amps, Factorization(tuple(dims), tuple(labels)))


def parse_state_file(path: str) -> StateVector:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from exc
    return state_from_document(doc)


def state_to_document(psi: StateVector) -> dict:
    return {
        "dims": list(psi.dims),
        "labels": list(psi.labels),
        "amplitudes": [[float(a.real), float(a.imag)] for a in psi.amplitudes],
    }


def write_state_file(psi: StateVector, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_document(psi), fh, indent=2)
        fh.write("\n")
