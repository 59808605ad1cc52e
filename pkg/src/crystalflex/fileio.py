"""JSON framework files and structured analysis reports.

File schema (version 1):

    {
      "format": 1,
      "dimension": 2,
      "period_vectors": [[1.0, 0.0], [0.5, 0.866...]],
      "tolerance": 1e-9,                       # optional
      "vertices": [
        {"id": "p1", "position": [0.0, 0.0]},
        {"id": "p2", "position": [0.5, 0.5], "frac": true}
      ],
      "edges": [
        {"from": {"v": "p1", "cell": [0, 0]},
         "to":   {"v": "p2", "cell": [-1, 0]}}
      ],
      "symmetries": [                          # optional
        {"name": "r3", "linear": [[...], [...]], "translation": [...]}
      ]
    }

Positions are Cartesian unless the vertex carries "frac": true, in which
case they are coordinates in the period-vector frame.  Edge cells default
to the zero cell when omitted.  Parsing validates the framework and
resolves every declared symmetry; failures raise FrameworkParseError with
the offending field path or element name.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .frameworks import (
    CrystalFramework,
    MotifEdge,
    MotifVertex,
    PeriodLattice,
    validate_framework,
)
from .rigidity import (
    MatrixSpace,
    analyze_counts,
    flex_space,
    matrix_space,
    stress_space,
    velocity_from_mode_coordinates,
)
from .symmetry import (
    SymmetryError,
    character_row,
    commutant_basis,
    resolve_symmetry,
    symmetry_counts,
    verify_symmetry_equation,
)

FORMAT_VERSION = 1


class FrameworkParseError(ValueError):
    """Malformed framework document; the message names the offending field."""


def _fail(path: str, message: str):
    raise FrameworkParseError(f"{path}: {message}")


def _require(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    if key not in obj:
        _fail(f"{path}.{key}" if path else key, "missing required field")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        _fail(f"{path}.{key}" if path else key, f"expected {kind.__name__}")
    return value


def _number_list(value, length, path):
    if not isinstance(value, list) or len(value) != length:
        _fail(path, f"expected a list of {length} numbers")
    out = []
    for i, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            _fail(f"{path}[{i}]", "expected a number")
        out.append(float(x))
    return out


def _int_list(value, length, path):
    if not isinstance(value, list) or len(value) != length:
        _fail(path, f"expected a list of {length} integers")
    out = []
    for i, x in enumerate(value):
        if isinstance(x, bool) or not isinstance(x, int):
            _fail(f"{path}[{i}]", "expected an integer")
        out.append(int(x))
    return out


def _matrix(value, d, path):
    if not isinstance(value, list) or len(value) != d:
        _fail(path, f"expected a {d}x{d} matrix as a list of {d} rows")
    return np.array([_number_list(row, d, f"{path}[{i}]") for i, row in enumerate(value)])


def framework_from_dict(doc: dict) -> CrystalFramework:
    if not isinstance(doc, dict):
        raise FrameworkParseError("top level: expected an object")
    if "format" in doc and doc["format"] != FORMAT_VERSION:
        _fail("format", f"unsupported format {doc['format']!r}; this reader handles {FORMAT_VERSION}")

    dimension = _require(doc, "dimension", "", int)
    if isinstance(dimension, bool) or dimension < 1:
        _fail("dimension", "expected a positive integer")

    periods = _require(doc, "period_vectors", "", list)
    if len(periods) != dimension:
        _fail("period_vectors", f"expected {dimension} period vectors")
    columns = [_number_list(v, dimension, f"period_vectors[{i}]") for i, v in enumerate(periods)]
    lattice = PeriodLattice(np.array(columns).T)

    tolerance = doc.get("tolerance", 1e-9)
    if isinstance(tolerance, bool) or not isinstance(tolerance, (int, float)) or tolerance <= 0:
        _fail("tolerance", "expected a positive number")

    raw_vertices = _require(doc, "vertices", "", list)
    vertices, ids = [], {}
    for i, entry in enumerate(raw_vertices):
        path = f"vertices[{i}]"
        vid = _require(entry, "id", path, str)
        if vid in ids:
            _fail(f"{path}.id", f"duplicate vertex id {vid!r}")
        ids[vid] = i
        pos = np.array(_number_list(_require(entry, "position", path), dimension, f"{path}.position"))
        if entry.get("frac", False):
            pos = lattice.matrix @ pos
        vertices.append(MotifVertex(pos, vid))

    raw_edges = _require(doc, "edges", "", list)
    edges = []
    for i, entry in enumerate(raw_edges):
        path = f"edges[{i}]"
        ends = []
        for side in ("from", "to"):
            endpoint = _require(entry, side, path)
            vid = _require(endpoint, "v", f"{path}.{side}", str)
            if vid not in ids:
                _fail(f"{path}.{side}.v", f"unknown vertex id {vid!r}")
            cell = endpoint.get("cell", [0] * dimension)
            ends.append((ids[vid], tuple(_int_list(cell, dimension, f"{path}.{side}.cell"))))
        edges.append(MotifEdge(ends[0][0], ends[0][1], ends[1][0], ends[1][1]))

    fw = CrystalFramework(lattice, vertices, edges, symmetries=(), tolerance=float(tolerance))
    violations = validate_framework(fw)
    if violations:
        raise FrameworkParseError("framework validation failed: " + "; ".join(violations))

    elements = []
    for i, entry in enumerate(doc.get("symmetries", [])):
        path = f"symmetries[{i}]"
        name = _require(entry, "name", path, str)
        linear = _matrix(_require(entry, "linear", path), dimension, f"{path}.linear")
        translation = np.array(_number_list(_require(entry, "translation", path),
                                            dimension, f"{path}.translation"))
        try:
            elements.append(resolve_symmetry(fw, linear, translation, name))
        except SymmetryError as exc:
            raise FrameworkParseError(f"{path}: {exc}") from exc

    if elements:
        from dataclasses import replace
        fw = replace(fw, symmetries=tuple(elements))
    return fw


def parse_framework(text: str) -> CrystalFramework:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameworkParseError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return framework_from_dict(doc)


def framework_to_dict(fw: CrystalFramework) -> dict:
    d = fw.dimension
    doc = {
        "format": FORMAT_VERSION,
        "dimension": d,
        "period_vectors": [list(map(float, fw.lattice.matrix[:, j])) for j in range(d)],
        "tolerance": fw.tolerance,
        "vertices": [
            {"id": fw.vertex_label(i), "position": list(map(float, v.position))}
            for i, v in enumerate(fw.vertices)
        ],
        "edges": [
            {
                "from": {"v": fw.vertex_label(e.from_vertex), "cell": list(e.from_cell)},
                "to": {"v": fw.vertex_label(e.to_vertex), "cell": list(e.to_cell)},
            }
            for e in fw.edges
        ],
    }
    if fw.symmetries:
        doc["symmetries"] = [
            {
                "name": g.name,
                "linear": [list(map(float, row)) for row in g.linear],
                "translation": list(map(float, g.translation)),
            }
            for g in fw.symmetries
        ]
    return doc


def serialize_framework(fw: CrystalFramework) -> str:
    return json.dumps(framework_to_dict(fw), indent=2) + "\n"


def load_framework(path) -> CrystalFramework:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_framework(handle.read())


def save_framework(fw: CrystalFramework, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_framework(fw))


def parse_matrix_space(text: str, dimension: int, tol: float) -> MatrixSpace:
    """Custom admissible-space file: a JSON list of d x d matrices."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FrameworkParseError(
            f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, list):
        raise FrameworkParseError("top level: expected a list of matrices")
    mats = [_matrix(m, dimension, f"[{i}]") for i, m in enumerate(doc)]
    try:
        return MatrixSpace(dimension, tuple(mats), name="custom", tol=tol)
    except ValueError as exc:
        raise FrameworkParseError(str(exc)) from exc


MODE_LABELS = {"strict": "zero", "affine": "full"}


def mode_space(label: str, dimension: int, tol: float) -> MatrixSpace:
    """Admissible space for a mode label ('strict', 'affine', or a space name)."""
    return matrix_space(MODE_LABELS.get(label, label), dimension, tol)


def _display(x: float) -> float:
    r = round(float(x), 9)
    return 0.0 if r == 0 else r


def _display_vector(v) -> list:
    return [_display(x) for x in np.asarray(v, dtype=float).reshape(-1)]


def _display_matrix(m) -> list:
    return [[_display(x) for x in row] for row in np.asarray(m, dtype=float)]


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the text/JSON emitters need, in plain data."""

    body: dict

    @property
    def max_identity_residual(self) -> int:
        worst = 0
        for mode in self.body["modes"]:
            worst = max(worst, abs(mode["identity_residual"]))
        for sym in self.body.get("symmetries", []):
            worst = max(worst, abs(sym["identity_residual"]))
        return worst

    def to_dict(self) -> dict:
        return self.body


def analyze_framework(fw: CrystalFramework, modes: Sequence[str] = ("strict", "affine"),
                      name: Optional[str] = None, characters: bool = False,
                      spaces: Optional[dict] = None) -> AnalysisReport:
    """Run counts (and symmetry counts for declared elements) over the modes.

    ``spaces`` may map a mode label to an explicit MatrixSpace (used for
    custom spaces); other labels go through mode_space().
    """
    d = fw.dimension
    mode_entries = []
    for label in modes:
        space = (spaces or {}).get(label) or mode_space(label, d, fw.tolerance)
        counts = analyze_counts(fw, space)
        flexes = flex_space(fw, space)
        stresses = stress_space(fw, space)
        decoded = [velocity_from_mode_coordinates(fw, space, col) for col in flexes.basis.T]
        mode_entries.append({
            "mode": label,
            "space": space.name,
            "vertex_dof": counts.vertex_dof,
            "space_dim": counts.space_dim,
            "edge_count": counts.edge_count,
            "m": counts.mechanisms,
            "s": counts.stresses,
            "f": counts.rigid_motions,
            "identity_residual": counts.identity_residual,
            "flags": list(counts.flags),
            "flexes": [
                {
                    "vertex_velocities": _display_matrix(v.vertex_velocities),
                    "distortion": _display_matrix(v.distortion),
                }
                for v in decoded
            ],
            "stresses_basis": [_display_vector(col) for col in stresses.basis.T],
        })

    symmetry_entries = []
    for g in fw.symmetries:
        counts = symmetry_counts(fw, g)
        entry = {
            "name": g.name,
            "separable": counts.separable,
            "fixed_vertex_dim": counts.fixed_vertex_dim,
            "commutant_dim": counts.commutant_dim,
            "fixed_domain_dim": counts.fixed_domain_dim,
            "edge_orbits": counts.edge_orbits,
            "f": counts.fixed_rigid_dim,
            "m": counts.mechanisms,
            "s": counts.stresses,
            "identity_residual": counts.identity_residual,
            "predicts_mechanism": counts.flexible_predicted,
            "equation_residual": _display(verify_symmetry_equation(fw, g, "full")),
        }
        if characters:
            row = character_row(fw, g, commutant_basis(g.linear, fw.tolerance))
            entry["characters"] = {
                "space": row.space_name,
                "vertex_trace": _display(row.vertex_trace),
                "edge_trace": _display(row.edge_trace),
                "rigid_trace": _display(row.rigid_trace),
                "mechanism_trace": _display(row.mechanism_trace),
                "stress_trace": _display(row.stress_trace),
                "residual": _display(row.residual),
            }
        symmetry_entries.append(entry)

    body = {
        "format": FORMAT_VERSION,
        "framework": {
            "name": name or "framework",
            "dimension": d,
            "vertex_count": fw.vertex_count,
            "edge_count": fw.edge_count,
            "cell_determinant": _display(fw.lattice.determinant),
            "tolerance": fw.tolerance,
        },
        "modes": mode_entries,
        "symmetries": symmetry_entries,
    }
    return AnalysisReport(body)


def emit_report(report: AnalysisReport, format: str = "text") -> str:
    if format == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    if format != "text":
        raise ValueError(f"unknown report format {format!r}; use 'text' or 'json'")

    body = report.to_dict()
    fw = body["framework"]
    lines = [
        f"framework {fw['name']}: d={fw['dimension']}, |Fv|={fw['vertex_count']}, "
        f"|Fe|={fw['edge_count']}, det Z={fw['cell_determinant']}"
    ]
    for mode in body["modes"]:
        lines.append(f"mode {mode['mode']}: m={mode['m']} s={mode['s']} f={mode['f']}")
        lines.append(
            "  m - s = d|Fv| + dimE - |Fe| - f : "
            f"{mode['m']} - {mode['s']} = {mode['vertex_dof']} + {mode['space_dim']} "
            f"- {mode['edge_count']} - {mode['f']} (residual {mode['identity_residual']})"
        )
        for flag in mode["flags"]:
            lines.append(f"  warning: {flag}")
    for sym in body.get("symmetries", []):
        kind = "separable" if sym["separable"] else "nonseparable"
        lines.append(
            f"symmetry {sym['name']} ({kind}): m_g={sym['m']} s_g={sym['s']}, "
            f"dimF={sym['fixed_vertex_dim']} dimE={sym['commutant_dim']} "
            f"fixed={sym['fixed_domain_dim']} e_g={sym['edge_orbits']} f_g={sym['f']} "
            f"(residual {sym['identity_residual']})"
        )
        lines.append(
            f"  equation residual {sym['equation_residual']:.3g}; "
            + ("predicts a symmetric mechanism" if sym["predicts_mechanism"] else "count inconclusive")
        )
        if "characters" in sym:
            ch = sym["characters"]
            lines.append(
                f"  characters (E={ch['space']}): tr_v={ch['vertex_trace']} tr_e={ch['edge_trace']} "
                f"tr_rig={ch['rigid_trace']} tr_mech={ch['mechanism_trace']} "
                f"tr_str={ch['stress_trace']} (residual {ch['residual']:.3g})"
            )
    return "\n".join(lines) + "\n"
