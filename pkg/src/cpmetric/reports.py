"""Deterministic report emission.

Text tables go to stdout, machine-readable JSON to a file; identical inputs
produce byte-identical documents (canonical field order, 10 significant
digits for every reported scalar).  Every scalar row names the operation
that produced it, its tolerance and its provenance (formula, optimizer or
oracle).
"""

import json
from dataclasses import dataclass

import numpy as np

from .geometry import DistanceResult, NumericalRangeSummary, SubspaceBasis
from .dilations import DilationResult, IntertwinerResult
from .errors import MalformedInputError
from .io import matrix_to_doc
from .metrics import ExampleReport, MetricReport
from .states import StateDistanceReport

FORMATS = ("text", "json")

# default tolerance attached to a scalar, by provenance
_PROVENANCE_TOL = {"formula": 1e-9, "optimizer": 1e-6, "oracle": 1e-6}


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, complex):
        return f"{x.real:.10g}{x.imag:+.10g}i"
    return f"{float(x):.10g}"


def _round10(x: float) -> float:
    return float(f"{float(x):.10g}")


@dataclass
class ScalarEntry:
    name: str
    value: float
    tolerance: float
    provenance: str

    def row(self):
        return (self.name, fmt(self.value), fmt(self.tolerance), self.provenance)

    def doc(self):
        return {"name": self.name, "value": _round10(self.value),
                "tolerance": _round10(self.tolerance), "provenance": self.provenance}


def _entries_from_scalars(scalars: dict, provenance: dict, tolerances: dict | None = None):
    entries = []
    for name in sorted(scalars):
        prov = provenance.get(name, "formula")
        tol = (tolerances or {}).get(name, _PROVENANCE_TOL.get(prov, 1e-9))
        entries.append(ScalarEntry(name=name, value=float(scalars[name]),
                                   tolerance=tol, provenance=prov))
    return entries


def _payload(obj) -> dict:
    if isinstance(obj, MetricReport):
        tol = {"gamma_constructive": 1e-5}
        payload = {"kind": "metric_report",
                   "scalars": [e.doc() for e in _entries_from_scalars(
                       obj.scalars(), obj.provenance, tol)]}
        wit = {}
        for key, value in sorted(obj.witnesses.items()):
            if value is None:
                continue
            arr = np.asarray(value)
            if arr.ndim == 1:
                arr = arr.reshape(-1, 1)
            wit[key] = matrix_to_doc(arr)
        if wit:
            payload["witnesses"] = wit
        return payload
    if isinstance(obj, StateDistanceReport):
        scalars = {"sqrt_fidelity": obj.sqrt_fidelity, "bures": obj.bures,
                   "functional_cb_distance": obj.functional_cb_distance}
        prov = {k: "formula" for k in scalars}
        return {"kind": "state_distance_report",
                "scalars": [e.doc() for e in _entries_from_scalars(scalars, prov)]}
    if isinstance(obj, ExampleReport):
        entries = _entries_from_scalars(obj.quantities, obj.provenance)
        checks = [{"name": c.name, "lhs": _round10(c.lhs), "rhs": _round10(c.rhs),
                   "holds": bool(c.holds)} for c in obj.inequality_checks]
        return {"kind": "example_report", "theta": _round10(obj.theta),
                "scalars": [e.doc() for e in entries],
                "analogue": sorted(obj.analogue),
                "inequality_checks": checks}
    if isinstance(obj, DistanceResult):
        scalars = {"distance": obj.distance, "certified_gap": obj.certified_gap}
        prov = {"distance": "optimizer", "certified_gap": "optimizer"}
        return {"kind": "distance_result",
                "scalars": [e.doc() for e in _entries_from_scalars(scalars, prov)],
                "iterations": int(obj.iterations),
                "witness": matrix_to_doc(obj.witness)}
    if isinstance(obj, NumericalRangeSummary):
        scalars = {"min_modulus": obj.min_modulus}
        prov = {"min_modulus": "optimizer"}
        return {"kind": "numerical_range",
                "scalars": [e.doc() for e in _entries_from_scalars(
                    scalars, prov, {"min_modulus": 1e-8})],
                "min_modulus_point": [_round10(obj.min_modulus_point.real),
                                      _round10(obj.min_modulus_point.imag)],
                "contains_zero": bool(obj.contains_zero),
                "boundary_points": [[_round10(z.real), _round10(z.imag)]
                                    for z in obj.boundary_points]}
    if isinstance(obj, DilationResult):
        scalars = {"half_gap": obj.half_gap, "achieved_half_gap": obj.achieved_half_gap}
        prov = {"half_gap": "formula", "achieved_half_gap": "optimizer"}
        return {"kind": "dilation_result",
                "scalars": [e.doc() for e in _entries_from_scalars(scalars, prov)],
                "dilation": matrix_to_doc(obj.v),
                "free_block": matrix_to_doc(obj.w)}
    if isinstance(obj, IntertwinerResult):
        scalars = {"scalar_distance_bound": obj.scalar_distance_bound,
                   "min_modulus": obj.min_modulus, "phase": obj.phase}
        prov = {"scalar_distance_bound": "formula", "min_modulus": "optimizer",
                "phase": "optimizer"}
        return {"kind": "intertwiner_result",
                "scalars": [e.doc() for e in _entries_from_scalars(scalars, prov)],
                "contains_zero": bool(obj.contains_zero),
                "unitary": matrix_to_doc(obj.unitary)}
    if isinstance(obj, SubspaceBasis):
        return {"kind": "subspace_basis", "ambient_dimension": obj.dimension,
                "dimension": len(obj.basis),
                "basis": [matrix_to_doc(b) for b in obj.basis]}
    from .suites import SuiteResult  # local import to avoid a cycle
    if isinstance(obj, SuiteResult):
        return {"kind": "suite_result", "suite": obj.suite, "trials": obj.trials,
                "wall_time": _round10(obj.wall_time),
                "failures": [{"trial_seed": f.trial_seed, "assertion": f.assertion,
                              "lhs": _round10(f.lhs), "rhs": _round10(f.rhs),
                              "tolerance": _round10(f.tolerance)}
                             for f in obj.failures]}
    raise MalformedInputError(f"emit_report: unsupported object {type(obj).__name__}")


def _text_from_payload(payload: dict) -> str:
    lines = [f"# {payload['kind']}"]
    if "theta" in payload:
        lines.append(f"theta = {fmt(payload['theta'])}")
    rows = [(e["name"], fmt(e["value"]), fmt(e["tolerance"]), e["provenance"])
            for e in payload.get("scalars", [])]
    if rows:
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        for name, value, tol, prov in rows:
            lines.append(f"{name:<{widths[0]}}  {value:>{widths[1]}}  "
                         f"tol={tol:<{widths[2]}}  [{prov}]")
    for check in payload.get("inequality_checks", []):
        verdict = "holds" if check["holds"] else "FAILS"
        lines.append(f"check {check['name']}: {fmt(check['lhs'])} vs "
                     f"{fmt(check['rhs'])} -> {verdict}")
    if payload.get("kind") == "suite_result":
        status = "pass" if not payload["failures"] else "FAIL"
        lines.append(f"suite {payload['suite']}: {payload['trials']} trials, "
                     f"{len(payload['failures'])} failures, "
                     f"{fmt(payload['wall_time'])}s [{status}]")
        for f in payload["failures"]:
            lines.append(f"  trial {f['trial_seed']}: {f['assertion']} "
                         f"lhs={fmt(f['lhs'])} rhs={fmt(f['rhs'])} tol={fmt(f['tolerance'])}")
    if payload.get("kind") == "subspace_basis":
        lines.append(f"ambient dimension {payload['ambient_dimension']}, "
                     f"commuting subspace dimension {payload['dimension']}")
    if "contains_zero" in payload:
        lines.append(f"contains_zero = {fmt(payload['contains_zero'])}")
    if "iterations" in payload:
        lines.append(f"iterations = {payload['iterations']}")
    return "\n".join(lines) + "\n"


def emit_report(obj, format: str = "text") -> str:
    """Render a report object deterministically as text or JSON."""
    if format not in FORMATS:
        raise MalformedInputError(f"emit_report: format must be one of {FORMATS}")
    payload = _payload(obj)
    if format == "json":
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    return _text_from_payload(payload)
