"""JSON file formats: elements, weights, spectrum points, reports.

Element files:

    {"group": "su2",
     "terms": [{"irrep": "pi:1", "matrix": [[[re, im], ...], ...]}]}

with matrices row-major and complex entries as [re, im] pairs.  Spectrum
points:

    {"group": "su2", "euler": [a, b, c], "lambda": 2.0}
    {"group": "torus:1", "z": [[re, im]]}
    {"group": "txz2", "z": [re, im], "flip": false}

Writers sort keys and use shortest round-trip float formatting, so a fixed
input produces byte-identical output.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .duals import GroupDual, SemidirectDual, Su2Dual, TorusDual, group_token, parse_group
from .fields import OperatorField
from .labels import format_label, parse_label
from .spectrum import (
    SemidirectSpectrumPoint,
    Su2SpectrumPoint,
    TorusSpectrumPoint,
)

__all__ = [
    "element_to_json",
    "element_from_json",
    "dumps",
    "spectrum_point_to_json",
    "spectrum_point_from_json",
]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _matrix_to_json(M: np.ndarray):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, complex)]


def _matrix_from_json(data):
    return np.array([[complex(re, im) for re, im in row] for row in data])


def element_to_json(u: OperatorField) -> dict:
    return {
        "group": group_token(u.dual),
        "terms": [
            {"irrep": format_label(a), "matrix": _matrix_to_json(u.coeffs[a])}
            for a in u.support
        ],
    }


def element_from_json(data: dict, dual: GroupDual | None = None) -> OperatorField:
    file_dual = parse_group(data["group"])
    if dual is not None and dual != file_dual:
        raise ValueError(f"element file is for {data['group']}, expected {group_token(dual)}")
    dual = dual or file_dual
    terms = {}
    for term in data["terms"]:
        a = parse_label(dual, term["irrep"])
        M = _matrix_from_json(term["matrix"])
        terms[a] = terms.get(a, 0) + M
    return OperatorField.from_terms(dual, terms)


def spectrum_point_to_json(dual: GroupDual, theta) -> dict:
    token = group_token(dual)
    if isinstance(theta, TorusSpectrumPoint):
        return {"group": token, "z": [[z.real, z.imag] for z in theta.z]}
    if isinstance(theta, Su2SpectrumPoint):
        alpha, beta, gamma = _su2_to_euler(theta.s)
        return {"group": token, "euler": [alpha, beta, gamma], "lambda": theta.lam}
    if isinstance(theta, SemidirectSpectrumPoint):
        return {"group": token, "z": [theta.z.real, theta.z.imag], "flip": theta.flip}
    raise ValueError(f"cannot serialize {theta!r}")


def spectrum_point_from_json(data: dict):
    dual = parse_group(data["group"])
    if isinstance(dual, TorusDual):
        return dual, TorusSpectrumPoint(tuple(complex(re, im) for re, im in data["z"]))
    if isinstance(dual, Su2Dual):
        alpha, beta, gamma = data["euler"]
        from .duals import su2_euler_point

        return dual, Su2SpectrumPoint(su2_euler_point(alpha, beta, gamma), float(data["lambda"]))
    if isinstance(dual, SemidirectDual):
        re, im = data["z"]
        return dual, SemidirectSpectrumPoint(complex(re, im), bool(data.get("flip", False)))
    raise ValueError(f"no spectrum points for group {data['group']!r}")


def _su2_to_euler(s: np.ndarray) -> tuple[float, float, float]:
    """Euler angles (zyz) of a special unitary 2x2 matrix.

    With g = Rz(alpha) Ry(beta) Rz(gamma) the top-left entry is
    e^{-i(alpha+gamma)/2} cos(beta/2) and the bottom-left is
    e^{+i(alpha-gamma)/2} sin(beta/2).
    """
    s = np.asarray(s, dtype=complex)
    cb = min(1.0, max(0.0, abs(s[0, 0])))
    beta = 2.0 * math.acos(cb)
    if abs(s[0, 0]) > 1e-9 and abs(s[1, 0]) > 1e-9:
        alpha = float(np.angle(s[1, 0]) - np.angle(s[0, 0]))
        gamma = float(-np.angle(s[1, 0]) - np.angle(s[0, 0]))
    elif abs(s[0, 0]) > 1e-9:  # beta ~ 0
        alpha, gamma = float(-2.0 * np.angle(s[0, 0])), 0.0
    else:  # beta ~ pi
        alpha, gamma = float(2.0 * np.angle(s[1, 0])), 0.0
    return alpha % (4 * math.pi), float(beta), gamma % (4 * math.pi)
