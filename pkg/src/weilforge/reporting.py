"""JSON report documents emitted by the interpreter and the CLI.

REPORT_SCHEMA is a JSON Schema (draft 2020-12) describing every document
produced by ``weilforge ... --json``. The package itself does not validate;
the test-suite does, with the ``jsonschema`` package.
"""
from __future__ import annotations

from typing import List

SCHEMA_VERSION = 1

_witness = {
    "type": ["object", "null"],
    "required": ["kind"],
    "properties": {"kind": {"enum": ["product", "outside", "derivation", "cokernel"]}},
}

_criterion = {
    "type": "object",
    "required": ["name", "requirement", "holds", "witness", "note"],
    "properties": {
        "name": {"type": "string"},
        "requirement": {"type": "string"},
        "holds": {"type": "boolean"},
        "witness": _witness,
        "note": {"type": "string"},
    },
    "additionalProperties": False,
}

_check = {
    "type": "object",
    "required": ["statement", "line", "check", "report"],
    "properties": {
        "statement": {"const": "check"},
        "line": {"type": "integer", "minimum": 1},
        "check": {"enum": ["weil", "regular", "aut", "jet"]},
        "report": {
            "type": "object",
            "required": ["subject", "holds", "algebra", "ideal", "hypotheses", "criteria", "thresholds", "caveats"],
            "properties": {
                "subject": {"type": "string"},
                "holds": {"type": "boolean"},
                "algebra": {"type": "string"},
                "ideal": {"type": "string"},
                "hypotheses": {"type": "array", "items": _criterion},
                "criteria": {"type": "array", "items": _criterion},
                "thresholds": {"type": ["object", "null"]},
                "caveats": {"type": "array", "items": {"type": "string"}},
            },
        },
    },
}

_scan_row = {
    "type": "object",
    "required": ["m", "l", "k", "weil", "regular", "aut", "jet", "predicted_weil", "predicted_jet", "agree"],
    "properties": {
        "m": {"type": "integer", "minimum": 1},
        "l": {"type": "integer", "minimum": 1},
        "k": {"type": "integer", "minimum": 0},
        "weil": {"type": "boolean"},
        "regular": {"type": "boolean"},
        "aut": {"type": "boolean"},
        "jet": {"type": "boolean"},
        "predicted_weil": {"type": "boolean"},
        "predicted_jet": {"type": "boolean"},
        "agree": {"type": "boolean"},
        "right_exact": {"type": "boolean"},
    },
}

_scan = {
    "type": "object",
    "required": ["statement", "line", "m_max", "l_max", "rows", "disagreements"],
    "properties": {
        "statement": {"const": "scan"},
        "line": {"type": "integer", "minimum": 1},
        "m_max": {"type": "integer", "minimum": 1},
        "l_max": {"type": "integer", "minimum": 1},
        "rows": {"type": "array", "items": _scan_row},
        "disagreements": {"type": "integer", "minimum": 0},
    },
}

_export = {
    "type": "object",
    "required": ["statement", "line", "name", "path", "value_kind"],
    "properties": {
        "statement": {"const": "export"},
        "line": {"type": "integer", "minimum": 1},
        "name": {"type": "string"},
        "path": {"type": "string"},
        "value_kind": {"enum": ["algebra", "ideal"]},
    },
}

_dims = {
    "type": "object",
    "required": ["statement", "algebra", "ambient", "dim_MA_tangent", "dim_DerAA", "dim_jet_tangent", "has_regular_points"],
    "properties": {
        "statement": {"const": "dims"},
        "algebra": {"type": "string"},
        "ambient": {"type": "integer", "minimum": 1},
        "dim_MA_tangent": {"type": "integer"},
        "dim_DerAA": {"type": "integer", "minimum": 0},
        "dim_jet_tangent": {"type": "integer"},
        "has_regular_points": {"type": "boolean"},
    },
}

_error = {
    "type": "object",
    "required": ["type", "message"],
    "properties": {
        "type": {"type": "string"},
        "message": {"type": "string"},
        "line": {"type": ["integer", "null"]},
        "column": {"type": ["integer", "null"]},
    },
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "weilforge report",
    "type": "object",
    "required": ["version", "exit_code", "results", "error"],
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "exit_code": {"enum": [0, 1, 2]},
        "results": {"type": "array", "items": {"oneOf": [_check, _scan, _export, _dims]}},
        "error": {"oneOf": [{"type": "null"}, _error]},
    },
    "additionalProperties": False,
}


def report_document(results: List[dict], exit_code: int, error: dict = None) -> dict:
    return {"version": SCHEMA_VERSION, "exit_code": exit_code, "results": results, "error": error}
