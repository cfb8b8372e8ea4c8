"""Input files: MatrixMarket or CSV matrices, JSON spectra and problems."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np
import scipy.io
import scipy.sparse

from .errors import InvalidInput
from .linalg import as_matrix
from .operators import SpectrumSpec
from .sturm import SLProblem


def digest(*paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        h.update(Path(p).read_bytes())
    return "sha256:" + h.hexdigest()


def read_matrix(path) -> np.ndarray:
    """Read a dense matrix.

    ``.mtx`` files go through the MatrixMarket reader (array or coordinate,
    real/integer/complex). Anything else is parsed as comma-separated values,
    one row per line, entries written like ``1.5`` or ``1+2j``.
    """
    path = Path(path)
    try:
        if path.suffix.lower() == ".mtx":
            M = scipy.io.mmread(path)
            if scipy.sparse.issparse(M):
                M = M.toarray()
        else:
            M = np.loadtxt(path, delimiter=",", dtype=np.complex128, ndmin=2)
    except (OSError, ValueError) as exc:
        raise InvalidInput(f"cannot read matrix from {path}: {exc}") from exc
    return as_matrix(M)


def write_matrix(path, A) -> None:
    A = np.asarray(A)
    if np.iscomplexobj(A) and not np.any(A.imag):
        A = A.real
    scipy.io.mmwrite(str(path), A)


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read JSON from {path}: {exc}") from exc


def read_spec(path) -> SpectrumSpec:
    d = _read_json(path)
    try:
        return SpectrumSpec.from_json(d)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"malformed spectrum spec in {path}: {exc}") from exc


def read_problem(path) -> SLProblem:
    return SLProblem.from_json(_read_json(path))


def is_spec_path(path) -> bool:
    return Path(path).suffix.lower() == ".json"
