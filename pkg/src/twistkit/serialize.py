"""Canonical JSON encoding of every value the package exchanges.

Schemas (all arrays 0-based, scalars as canonical strings "3", "-2/5", "5"):

* field      {"kind": "Q"} or {"kind": "Fp", "p": 7}
* algebra    {"field": ..., "dim": n, "basis": [labels],
              "lambda": [[[...]]], "unit": [...]}
             with lambda[i][j][k] the coefficient of basis k in basis_i * basis_j
* candidate  {"A": algebra, "B": algebra, "gamma": [[M, ...], ...]}
             with gamma[i][j] a (dim A) x (dim A) matrix of scalar strings
* report     {"ok": bool, "failures": [{"condition": str, "witness": [...],
              "left": ..., "right": ..., "count": int}]}

Serialization is canonical: sorted keys, no floats, stable scalar strings.
Every emitted value re-parses to an equal value.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .algebra import FiniteDimAlgebra
from .errors import SchemaError
from .fields import Field
from .linalg import AlgMatrix, EndoMatrix, KMatrix
from .report import Failure, VerificationReport
from .twisting import GammaFamily, TwistingCandidate


def dumps(obj: Any, *, compact: bool = False) -> str:
    if compact:
        return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None


def _expect(obj: Any, key: str, context: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{context}: missing key {key!r}")
    return obj[key]


# -- field ---------------------------------------------------------------------


def field_to_json(field: Field) -> dict:
    if field.kind == "Q":
        return {"kind": "Q"}
    return {"kind": "Fp", "p": field.p}


def field_from_json(obj: Any) -> Field:
    kind = _expect(obj, "kind", "field")
    if kind == "Q":
        return Field("Q")
    if kind == "Fp":
        return Field("Fp", int(_expect(obj, "p", "field")))
    raise SchemaError(f"field: unknown kind {kind!r}")


# -- arrays ----------------------------------------------------------------------


def array_to_json(field: Field, arr: np.ndarray):
    return field.format_array(arr)


def array_from_json(field: Field, data, shape: tuple[int, ...], context: str) -> np.ndarray:
    try:
        arr = field.asarray(data)
    except Exception as exc:
        raise SchemaError(f"{context}: {exc}") from None
    if arr.shape != shape:
        raise SchemaError(f"{context}: shape {arr.shape}, expected {shape}")
    return arr


# -- algebra ---------------------------------------------------------------------


def algebra_to_json(algebra: FiniteDimAlgebra) -> dict:
    field = algebra.field
    return {
        "field": field_to_json(field),
        "dim": algebra.dim,
        "basis": list(algebra.basis),
        "lambda": array_to_json(field, algebra.lam),
        "unit": array_to_json(field, algebra.unit),
    }


def algebra_from_json(obj: Any) -> FiniteDimAlgebra:
    field = field_from_json(_expect(obj, "field", "algebra"))
    dim = _expect(obj, "dim", "algebra")
    if not isinstance(dim, int) or dim <= 0:
        raise SchemaError(f"algebra: dim must be a positive integer, got {dim!r}")
    basis = _expect(obj, "basis", "algebra")
    if not isinstance(basis, list) or len(basis) != dim:
        raise SchemaError("algebra: basis must list one label per dimension")
    lam = array_from_json(field, _expect(obj, "lambda", "algebra"), (dim, dim, dim), "algebra.lambda")
    unit = array_from_json(field, _expect(obj, "unit", "algebra"), (dim,), "algebra.unit")
    return FiniteDimAlgebra(field, dim, tuple(str(b) for b in basis), lam, unit)


# -- candidate --------------------------------------------------------------------


def candidate_to_json(c: TwistingCandidate | GammaFamily) -> dict:
    family = c.family if isinstance(c, TwistingCandidate) else c
    return {
        "A": algebra_to_json(family.A),
        "B": algebra_to_json(family.B),
        "gamma": array_to_json(family.field, family.gamma),
    }


def candidate_from_json(obj: Any) -> TwistingCandidate:
    """Parse a candidate; the verified flag is never serialized, so the
    result is always unverified."""
    a = algebra_from_json(_expect(obj, "A", "candidate"))
    b = algebra_from_json(_expect(obj, "B", "candidate"))
    if a.field != b.field:
        raise SchemaError("candidate: A and B fields differ")
    gamma = array_from_json(
        a.field,
        _expect(obj, "gamma", "candidate"),
        (b.dim, b.dim, a.dim, a.dim),
        "candidate.gamma",
    )
    return TwistingCandidate(GammaFamily(a, b, gamma))


# -- matrices ---------------------------------------------------------------------


def kmatrix_to_json(mat: KMatrix):
    return array_to_json(mat.field, mat.data)


def kmatrix_from_json(field: Field, data, context: str = "matrix") -> KMatrix:
    try:
        arr = field.asarray(data)
    except Exception as exc:
        raise SchemaError(f"{context}: {exc}") from None
    if arr.ndim != 2:
        raise SchemaError(f"{context}: expected a 2-D array, got shape {arr.shape}")
    return KMatrix(field, arr)


def algmatrix_to_json(mat: AlgMatrix):
    return array_to_json(mat.algebra.field, mat.data)


def endomatrix_to_json(mat: EndoMatrix):
    return array_to_json(mat.field, mat.data)


# -- reports -----------------------------------------------------------------------


def report_to_json(report: VerificationReport) -> dict:
    return {
        "ok": report.ok,
        "failures": [
            {
                "condition": f.condition,
                "witness": list(f.witness),
                "left": f.left,
                "right": f.right,
                "count": f.count,
            }
            for f in report.failures
        ],
    }


def report_from_json(obj: Any) -> VerificationReport:
    ok = _expect(obj, "ok", "report")
    failures = tuple(
        Failure(
            condition=str(_expect(f, "condition", "failure")),
            witness=tuple(int(w) for w in f.get("witness", [])),
            left=f.get("left"),
            right=f.get("right"),
            count=int(f.get("count", 1)),
        )
        for f in obj.get("failures", [])
    )
    return VerificationReport(ok=bool(ok), failures=failures)
