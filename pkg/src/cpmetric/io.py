"""Matrix file format and role-aware loading.

A matrix document is JSON with row-major [re, im] entry pairs:

    {"dims": [rows, cols], "entries": [[re, im], ...], "role": "state"}

Roles re-validate the payload on load ("state", "unitary", "choi",
"isometry"); Choi documents additionally carry "dim_in" and "dim_out".
Writing then reading a document reproduces the entries bit-exactly
(floats are serialized with full round-trip precision).
"""

import json

import numpy as np

from .channels import QuantumChannel
from .errors import InvariantViolation, MalformedInputError
from .linalg import as_matrix, dagger, operator_norm
from .states import DensityState

ROLES = ("state", "unitary", "choi", "isometry")


def matrix_to_doc(matrix, role: str | None = None, **extra) -> dict:
    m = as_matrix(matrix)
    doc = {
        "dims": [int(m.shape[0]), int(m.shape[1])],
        "entries": [[float(z.real), float(z.imag)] for z in m.reshape(-1)],
    }
    if role is not None:
        if role not in ROLES:
            raise MalformedInputError(f"unknown role {role!r}")
        doc["role"] = role
    doc.update(extra)
    return doc


def doc_to_matrix(doc) -> np.ndarray:
    try:
        rows, cols = (int(d) for d in doc["dims"])
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInputError(f"bad matrix document: {exc}") from exc
    if len(entries) != rows * cols:
        raise MalformedInputError(
            f"entries length {len(entries)} != dims product {rows * cols}"
        )
    try:
        flat = np.array([complex(e[0], e[1]) for e in entries], dtype=complex)
    except (TypeError, IndexError) as exc:
        raise MalformedInputError(f"bad entry pair: {exc}") from exc
    return flat.reshape(rows, cols)


def save_matrix(path, matrix, role: str | None = None, **extra):
    doc = matrix_to_doc(matrix, role=role, **extra)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")


def load_document(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"not valid JSON: {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedInputError(f"{path}: top level must be an object")
    return doc


def load_matrix(path):
    doc = load_document(path)
    matrix = doc_to_matrix(doc)
    role = doc.get("role")
    if role is not None and role not in ROLES:
        raise MalformedInputError(f"{path}: unknown role {role!r}")
    return matrix, doc


def load_state(path) -> DensityState:
    matrix, _ = load_matrix(path)
    return DensityState.from_matrix(matrix)


def load_unitary(path) -> np.ndarray:
    matrix, _ = load_matrix(path)
    m = as_matrix(matrix)
    if m.shape[0] != m.shape[1]:
        raise InvariantViolation(f"{path}: unitary must be square")
    if operator_norm(m @ dagger(m) - np.eye(m.shape[0])) > 1e-9:
        raise InvariantViolation(f"{path}: not unitary within 1e-9")
    return m


def load_isometry(path) -> np.ndarray:
    matrix, _ = load_matrix(path)
    m = as_matrix(matrix)
    if operator_norm(dagger(m) @ m - np.eye(m.shape[1])) > 1e-9:
        raise InvariantViolation(f"{path}: not an isometry within 1e-9")
    return m


def load_channel(path) -> QuantumChannel:
    doc = load_document(path)
    matrix = doc_to_matrix(doc)
    try:
        dim_in = int(doc["dim_in"])
        dim_out = int(doc["dim_out"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInputError(
            f"{path}: channel documents need dim_in and dim_out: {exc}"
        ) from exc
    return QuantumChannel(dim_in=dim_in, dim_out=dim_out, choi=matrix)


def save_channel(path, channel: QuantumChannel):
    save_matrix(path, channel.choi, role="choi",
                dim_in=channel.dim_in, dim_out=channel.dim_out)
