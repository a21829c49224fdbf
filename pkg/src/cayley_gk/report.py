"""JSON report documents emitted by the command line front end."""

from __future__ import annotations

import json
import math
from importlib import resources
from typing import Any

import numpy as np

from . import __version__
from .group import Group, fingerprint

SCHEMA_VERSION = "1.0"
SIG_DIGITS = 12
ZERO_SNAP = 1e-12


def fnum(x: float) -> float:
    """Round to 12 significant digits; round-off noise below 1e-12 becomes 0."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite float in report")
    if abs(x) < ZERO_SNAP:
        return 0.0
    r = float(f"{x:.{SIG_DIGITS}g}")
    return 0.0 if r == 0 else r


def fspectrum(values) -> list[float]:
    return sorted(fnum(v) for v in np.asarray(values, dtype=float).ravel())


def fcomplex(z: complex) -> list[float]:
    return [fnum(z.real), fnum(z.imag)]


def group_record(G: Group, spec: str) -> dict[str, Any]:
    fp = fingerprint(G)
    return {
        "spec": spec,
        "name": G.name,
        "fingerprint": {
            "order": fp.order,
            "abelian": fp.abelian,
            "exponent": fp.exponent,
            "centerOrder": fp.center_order,
            "orderProfile": {str(o): c for o, c in fp.order_profile},
            "abelianization": list(fp.abelianization),
        },
    }


def document(command: str, result: dict[str, Any] | None, group: dict[str, Any] | None = None,
             error: dict[str, Any] | None = None, elapsed: float | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"schemaVersion": SCHEMA_VERSION, "tool": {"name": "cayley-gk", "version": __version__},
                           "command": command}
    if group is not None:
        doc["group"] = group
    if result is not None:
        doc["result"] = result
    if error is not None:
        doc["error"] = error
    if elapsed is not None:
        doc["timing"] = {"seconds": fnum(elapsed)}
    return doc


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=False)


def load_schema() -> dict[str, Any]:
    return json.loads(resources.files("cayley_gk").joinpath("report_schema.json").read_text(encoding="utf-8"))
