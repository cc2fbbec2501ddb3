"""Report builders shared by the command line and the tests.

Exact values are rendered as ``"p/q"`` strings, angles known exactly as
``"p/q pi"``, and floating values rounded to 12 significant digits.  Every
report validates against the matching entry of :data:`SCHEMAS`.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement, hirzebruch_check, incidence, pair_count_holds
from .catalog import CATALOG
from .cyclofield import rational_str
from .extendability import QUARTER_PI, verify_counterexample
from .hopf import DEFAULT_TOL, HopfConfig, cat1_verdict, local_configs
from .metric import (
    aspherical_verdict,
    build_b_matrix,
    quadratic_residual,
    verify_certificate,
)

SIG_DIGITS = 12


def fnum(x: float) -> float:
    return float(f"{float(x):.{SIG_DIGITS}g}")


def fvec(xs) -> list:
    return [fnum(x) for x in xs]


def pi_str(q) -> str:
    return f"{rational_str(Fraction(q))} pi"


def _signature(inc) -> dict:
    return {str(k): v for k, v in inc.signature().items()}


def analyze_report(arr: Arrangement, source: str) -> dict:
    inc = incidence(arr)
    hz = hirzebruch_check(arr, inc)
    return {
        "command": "analyze",
        "input": source,
        "name": arr.name,
        "cyclotomic_order": arr.field_order,
        "lines": len(arr.lines),
        "points": len(inc.points),
        "signature": _signature(inc),
        "per_line_point_counts": list(hz.per_line_point_counts),
        "pair_count_holds": pair_count_holds(inc),
        "hirzebruch": {"holds": hz.holds, "n": hz.n if hz.holds else None},
        "notes": list(arr.notes),
    }


def _certificate_json(arr: Arrangement, sol) -> dict:
    if sol.feasible:
        return {
            "kind": "weights",
            "z": [rational_str(v) for v in sol.z],
            "slack": rational_str(sol.slack),
            "cone_angles": [pi_str(v) for v in sol.cone_angles],
            "alphas": [
                {
                    "point": a.point,
                    "multiplicity": a.multiplicity,
                    "alpha": rational_str(a.alpha),
                    "fiber_length": pi_str(a.fiber_length),
                }
                for a in sol.alphas
            ],
            "verified": verify_certificate(arr, sol),
        }
    return {
        "kind": "farkas",
        "multipliers": {k: rational_str(v) for k, v in sorted(sol.multipliers.items())},
        "bound": rational_str(sol.bound),
        "closed_optimum": None if sol.optimum is None else rational_str(sol.optimum),
        "verified": verify_certificate(arr, sol),
    }


def metric_report(arr: Arrangement, source: str) -> dict:
    inc = incidence(arr)
    verdict = aspherical_verdict(arr, inc)
    sol = verdict.solution
    residual = None
    if sol.feasible:
        z = sol.z
    elif verdict.reason == "TriangleSpecialCase":
        z = (Fraction(1),) * len(arr.lines)
    else:
        z = None
    if z is not None:
        residual = {"z": [rational_str(v) for v in z], "value": rational_str(quadratic_residual(inc, z))}
    return {
        "command": "metric",
        "input": source,
        "name": arr.name,
        "lines": len(arr.lines),
        "b_matrix": [[int(v) for v in row] for row in build_b_matrix(inc)],
        "status": "Feasible" if sol.feasible else "Infeasible",
        "certificate": _certificate_json(arr, sol),
        "quadratic_residual": residual,
        "verdict": verdict.label,
    }


def _complex_json(c: complex) -> dict:
    return {"re": fnum(c.real), "im": fnum(c.imag)}


def hopf_report(lines: Sequence, source: str, tol: float = DEFAULT_TOL) -> dict:
    lines = list(lines)
    v = cat1_verdict(lines, tol)
    config = HopfConfig.from_lines(lines)
    wl = v.witness_line
    return {
        "command": "hopf",
        "input": source,
        "mode": "lines",
        "lines": len(lines),
        "base_points": [fvec(p) for p in config.base_points],
        "covering_radius": fnum(v.covering_radius),
        "threshold": fnum(QUARTER_PI),
        "hull": {"status": v.hull.status.value, "separation": fnum(v.hull.separation)},
        "verdict": v.status.value,
        "cat1": v.status.is_cat1,
        "witness": None if v.witness is None else fvec(v.witness),
        "witness_line": None if wl is None else [_complex_json(wl.d0), _complex_json(wl.d1)],
    }


def hopf_local_report(arr: Arrangement, source: str, tol: float = DEFAULT_TOL) -> dict:
    """Hopf-circle verdict for the tangent lines at every multiple point."""
    out = []
    for lc in local_configs(arr, tol=tol):
        out.append({
            "point": lc.point,
            "multiplicity": lc.multiplicity,
            "covering_radius": fnum(lc.verdict.covering_radius),
            "verdict": lc.verdict.status.value,
        })
    return {
        "command": "hopf",
        "input": source,
        "mode": "local",
        "name": arr.name,
        "points": out,
        "all_cat1": all(p["verdict"] != "NotCat1" for p in out),
    }


def counterexample_report(n: int, eps, tol: float = DEFAULT_TOL) -> dict:
    r = verify_counterexample(n, eps, tol=tol)
    ext = r.extendability
    d = r.doubled
    return {
        "command": "counterexample",
        "n": n,
        "eps": str(eps),
        "curvature": d.triangle.curvature,
        "angles": fvec(d.triangle.angles),
        "cone_angles": fvec(d.cone_angles),
        "distinguished_vertex": d.distinguished_vertex,
        "sides": fvec(r.sides),
        "side_margins": fvec(r.side_margins),
        "sides_exceed_quarter_pi": r.sides_ok,
        "extendability": {
            "alpha": fnum(ext.alpha),
            "singular_set": [k for k in range(3) if k != d.distinguished_vertex],
            "max_dist": fnum(ext.max_dist),
            "grid_max": fnum(ext.grid_max),
            "margin": fnum(ext.margin),
            "witness": fvec(ext.witness),
            "witness_label": ext.witness_label,
            "extendable": ext.extendable,
        },
        "confirmed": r.confirmed,
    }


def catalog_list_report() -> dict:
    entries = []
    for name, e in CATALOG.items():
        entries.append({
            "name": name,
            "lines": e.n_lines,
            "signature": {str(k): v for k, v in e.signature.items()},
            "hirzebruch_n": e.hirzebruch_n,
            "description": e.description,
        })
    return {"command": "catalog list", "entries": entries}


# --- schemas ----------------------------------------------------------------

_RAT = {"type": "string", "pattern": r"^-?\d+/\d+$"}
_PI = {"type": "string", "pattern": r"^-?\d+/\d+ pi$"}
_NUM = {"type": "number"}
_VEC3 = {"type": "array", "items": _NUM, "minItems": 3, "maxItems": 3}
_SIG = {"type": "object", "patternProperties": {r"^\d+$": {"type": "integer"}}, "additionalProperties": False}
_NULLABLE_INT = {"type": ["integer", "null"]}

_WEIGHTS = {
    "type": "object",
    "required": ["kind", "z", "slack", "cone_angles", "alphas", "verified"],
    "properties": {
        "kind": {"const": "weights"},
        "z": {"type": "array", "items": _RAT},
        "slack": _RAT,
        "cone_angles": {"type": "array", "items": _PI},
        "alphas": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["point", "multiplicity", "alpha", "fiber_length"],
                "properties": {
                    "point": {"type": "integer"},
                    "multiplicity": {"type": "integer", "minimum": 3},
                    "alpha": _RAT,
                    "fiber_length": _PI,
                },
            },
        },
        "verified": {"type": "boolean"},
    },
}

_FARKAS = {
    "type": "object",
    "required": ["kind", "multipliers", "bound", "closed_optimum", "verified"],
    "properties": {
        "kind": {"const": "farkas"},
        "multipliers": {"type": "object", "additionalProperties": _RAT},
        "bound": _RAT,
        "closed_optimum": {"anyOf": [_RAT, {"type": "null"}]},
        "verified": {"type": "boolean"},
    },
}

SCHEMAS = {
    "analyze": {
        "type": "object",
        "required": ["command", "input", "lines", "points", "signature", "per_line_point_counts",
                     "pair_count_holds", "hirzebruch", "notes"],
        "properties": {
            "command": {"const": "analyze"},
            "input": {"type": "string"},
            "name": {"type": ["string", "null"]},
            "cyclotomic_order": {"type": "integer", "minimum": 1},
            "lines": {"type": "integer", "minimum": 1},
            "points": {"type": "integer"},
            "signature": _SIG,
            "per_line_point_counts": {"type": "array", "items": {"type": "integer"}},
            "pair_count_holds": {"type": "boolean"},
            "hirzebruch": {
                "type": "object",
                "required": ["holds", "n"],
                "properties": {"holds": {"type": "boolean"}, "n": _NULLABLE_INT},
            },
            "notes": {"type": "array", "items": {"type": "string"}},
        },
    },
    "metric": {
        "type": "object",
        "required": ["command", "input", "lines", "b_matrix", "status", "certificate",
                     "quadratic_residual", "verdict"],
        "properties": {
            "command": {"const": "metric"},
            "b_matrix": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            "status": {"enum": ["Feasible", "Infeasible"]},
            "certificate": {"oneOf": [_WEIGHTS, _FARKAS]},
            "quadratic_residual": {
                "anyOf": [
                    {"type": "null"},
                    {
                        "type": "object",
                        "required": ["z", "value"],
                        "properties": {"z": {"type": "array", "items": _RAT}, "value": _RAT},
                    },
                ]
            },
            "verdict": {"enum": ["Aspherical(LP)", "Aspherical(TriangleSpecialCase)", "NoCertificate"]},
        },
    },
    "hopf": {
        "type": "object",
        "required": ["command", "input", "mode"],
        "properties": {"command": {"const": "hopf"}, "mode": {"enum": ["lines", "local"]}},
        "if": {"properties": {"mode": {"const": "lines"}}},
        "then": {
            "required": ["lines", "base_points", "covering_radius", "threshold", "hull", "verdict",
                         "cat1", "witness", "witness_line"],
            "properties": {
                "lines": {"type": "integer", "minimum": 2},
                "base_points": {"type": "array", "items": _VEC3},
                "covering_radius": _NUM,
                "hull": {
                    "type": "object",
                    "required": ["status", "separation"],
                    "properties": {"status": {"enum": ["Inside", "Boundary", "Outside"]}},
                },
                "verdict": {"enum": ["Cat1", "Cat1Boundary", "NotCat1"]},
                "cat1": {"type": "boolean"},
                "witness": {"anyOf": [{"type": "null"}, _VEC3]},
            },
        },
        "else": {
            "required": ["points", "all_cat1"],
            "properties": {
                "points": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["point", "multiplicity", "covering_radius", "verdict"],
                    },
                },
                "all_cat1": {"type": "boolean"},
            },
        },
    },
    "counterexample": {
        "type": "object",
        "required": ["command", "n", "eps", "curvature", "angles", "cone_angles", "sides",
                     "side_margins", "sides_exceed_quarter_pi", "extendability", "confirmed"],
        "properties": {
            "command": {"const": "counterexample"},
            "n": {"type": "integer", "minimum": 2},
            "curvature": {"enum": [1, 4]},
            "angles": _VEC3,
            "cone_angles": _VEC3,
            "sides": _VEC3,
            "side_margins": {"type": "array", "items": _NUM},
            "extendability": {
                "type": "object",
                "required": ["alpha", "singular_set", "max_dist", "grid_max", "margin", "witness",
                             "extendable"],
            },
            "confirmed": {"type": "boolean"},
        },
    },
    "catalog list": {
        "type": "object",
        "required": ["command", "entries"],
        "properties": {
            "entries": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["name", "lines", "signature", "hirzebruch_n"],
                    "properties": {"signature": _SIG, "hirzebruch_n": _NULLABLE_INT},
                },
            }
        },
    },
    "arrangement": {
        "type": "object",
        "required": ["cyclotomic_order", "lines"],
        "properties": {
            "name": {"type": ["string", "null"]},
            "cyclotomic_order": {"type": "integer", "minimum": 1},
            "lines": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "array",
                    "minItems": 3,
                    "maxItems": 3,
                    "items": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
    },
    "error": {
        "type": "object",
        "required": ["error"],
        "properties": {
            "error": {
                "type": "object",
                "required": ["type", "message"],
                "properties": {"type": {"type": "string"}, "message": {"type": "string"}},
            }
        },
    },
    "batch": {
        "type": "object",
        "required": ["command", "dir", "results"],
        "properties": {
            "results": {
                "type": "array",
                "items": {"type": "object", "required": ["file", "exit_code"]},
            }
        },
    },
}


def schema_for(report: dict) -> dict:
    if "error" in report:
        return SCHEMAS["error"]
    if "results" in report:
        return SCHEMAS["batch"]
    if "command" not in report:
        return SCHEMAS["arrangement"]
    return SCHEMAS[report["command"]]


def is_finite_report(report) -> bool:
    """No NaN or infinity anywhere (JSON cannot carry them)."""
    if isinstance(report, float):
        return math.isfinite(report)
    if isinstance(report, dict):
        return all(is_finite_report(v) for v in report.values())
    if isinstance(report, list):
        return all(is_finite_report(v) for v in report)
    return True
