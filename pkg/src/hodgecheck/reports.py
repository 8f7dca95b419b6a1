"""Report types and JSON serialization.

Every checker returns an ObstructionReport (verdict + reproducible
certificate payload); the cli module wraps those into a schema-versioned
envelope.  Serialization is canonical: sorted keys, exact scalars as
strings, no floats, so reports are byte-identical across runs at a fixed
seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from hodgecheck import __version__
from hodgecheck.scalars import format_scalar, parse_scalar

SCHEMA_VERSION = 1

# verdict vocabulary (the JSON schema enumerates exactly these)
OBSTRUCTED = "OBSTRUCTED"
OBSTRUCTED_HEURISTIC = "OBSTRUCTED-HEURISTIC"
CLEAR = "CLEAR"
INCONCLUSIVE = "INCONCLUSIVE"
COMPONENT = "COMPONENT"
NOT_COMPONENT = "NOT_COMPONENT"
POLARIZED = "POLARIZED"
NOT_POLARIZED = "NOT_POLARIZED"
NO_HODGE = "NO_HODGE"
PASS = "PASS"
FAIL = "FAIL"

VERDICTS = [
    OBSTRUCTED,
    OBSTRUCTED_HEURISTIC,
    CLEAR,
    INCONCLUSIVE,
    COMPONENT,
    NOT_COMPONENT,
    POLARIZED,
    NOT_POLARIZED,
    NO_HODGE,
    PASS,
    FAIL,
]


@dataclass
class ObstructionReport:
    """Structured verdict with a reproducible certificate payload."""

    test: str
    verdict: str
    certificate: dict = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "test": self.test,
            "verdict": self.verdict,
            "certificate": self.certificate,
            "notes": list(self.notes),
        }


def canonical_json(obj) -> str:
    """Deterministic JSON text: sorted keys, tight separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def envelope(command: str, parameters: dict, payload: dict, timings: Optional[dict] = None) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "parameters": parameters,
        "report": payload,
    }
    if timings is not None:
        out["timings"] = timings
    return out


# ---------------------------------------------------------------------------
# element / subspace / map serialization (label-keyed sparse coordinates)


def element_to_json(el) -> dict:
    return {
        "degree": el.degree,
        "coords": {
            el.algebra.basis_label(el.degree, i): format_scalar(c)
            for i, c in sorted(el.coords.items())
        },
    }


def element_from_json(algebra, data: dict):
    degree = int(data["degree"])
    coords = {label: parse_scalar(text) for label, text in data.get("coords", {}).items()}
    return algebra.from_label_coords(degree, coords)


def vectors_to_json(algebra, degree: int, rows) -> list:
    out = []
    for row in rows:
        out.append(
            {
                algebra.basis_label(degree, j): format_scalar(x)
                for j, x in sorted(row.items())
            }
        )
    return out


def subspace_to_json(sub) -> dict:
    return {
        "degree": sub.degree,
        "vectors": vectors_to_json(
            sub.algebra, sub.degree, [sub.basis.row_dict(i) for i in range(sub.basis.nrows)]
        ),
    }


def subspace_from_json(algebra, data: dict):
    from hodgecheck.algebra import Subspace

    degree = int(data["degree"])
    elements = [
        algebra.from_label_coords(
            degree, {label: parse_scalar(t) for label, t in row.items()}
        )
        for row in data["vectors"]
    ]
    return Subspace.from_elements(elements)


def algebra_map_to_json(m) -> dict:
    if m.matrices is None:
        raise ValueError(f"map {m.name} is function-backed and has no file form")
    mats: Dict[str, list] = {}
    for d, mat in sorted(m.matrices.items()):
        if mat.nrows == 0:
            continue
        rows = []
        empty = True
        for i in range(mat.nrows):
            row = {
                m.target.basis_label(d + m.shift, j): format_scalar(x)
                for j, x in sorted(mat.row_dict(i).items())
            }
            if row:
                empty = False
            rows.append(row)
        if not empty:
            mats[str(d)] = rows
    return {
        "shift": m.shift,
        "ring_hom": m.ring_hom,
        "matrices": mats,
        "name": m.name,
    }


def algebra_map_from_json(source, target, data: dict):
    from hodgecheck.algebra import AlgebraMap
    from hodgecheck.linalg import Matrix

    shift = int(data.get("shift", 0))
    matrices = {}
    for d_str, rows in data.get("matrices", {}).items():
        d = int(d_str)
        target_deg = d + shift
        lookup = {
            target.basis_label(target_deg, j): j for j in range(target.dim(target_deg))
        }
        sparse_rows = []
        for row in rows:
            sparse_rows.append({lookup[label]: parse_scalar(t) for label, t in row.items()})
        matrices[d] = Matrix.from_sparse_rows(sparse_rows, target.dim(target_deg))
    full = {}
    for d in range(source.max_degree + 1):
        if d in matrices:
            full[d] = matrices[d]
        else:
            full[d] = Matrix.zero(source.dim(d), target.dim(d + shift) if d + shift >= 0 else 0)
    return AlgebraMap(
        source,
        target,
        shift=shift,
        matrices=full,
        ring_hom=bool(data.get("ring_hom", False)),
        name=data.get("name", "map"),
    )
