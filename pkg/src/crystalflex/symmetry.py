"""Space-group symmetries of periodic frameworks and symmetry-adapted counts.

A symmetry element is an isometry x -> B x + c that maps the infinite
framework onto itself.  Resolving an element against a motif produces its
action on vertex classes (a permutation together with integer lattice
offsets), its action on edge classes, and the integer matrix through which
the linear part acts on the period lattice.

The finite-dimensional representations built here act on the domain and
range of the affine rigidity operator in (u, vec A) coordinates:

    vertex_rep     block permutation, block (g.v, v) = B
    edge_perm      0/1 permutation of edge classes
    matrix_conjugation   vec A -> vec(B A B^-1)
    offset_coupling      couples A into the vertex blocks; zero exactly
                         when the element is separable (all offsets zero)

Velocities transform by the linear part only; rigidity rows annihilate the
constant translation component, so kernels, cokernels and subspace traces
are unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Union

import numpy as np

from .frameworks import CrystalFramework, MotifEdge, require_valid
from .linalg import (
    DEFAULT_TOL,
    SubspaceBasis,
    column_space_basis,
    complement_within,
    cokernel_basis,
    kernel_basis,
    numeric_rank,
    subspace_intersection,
)
from .rigidity import (
    MatrixSpace,
    _rigid_generators,
    build_matrices,
    matrix_space,
    restricted_operator,
    right_multiplication_operator,
    unvec,
    vec,
)

ORBIT_WALK_FACTOR = 48


class SymmetryError(ValueError):
    """Raised when an isometry cannot be resolved against a framework."""


@dataclass(frozen=True)
class SymmetryElement:
    """Resolved isometry with its derived actions on the motif."""

    name: str
    linear: np.ndarray
    translation: np.ndarray
    vertex_map: tuple
    vertex_offsets: tuple
    edge_map: tuple
    lattice_action: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.linear, dtype=float)
        c = np.asarray(self.translation, dtype=float).reshape(-1)
        mb = np.asarray(self.lattice_action, dtype=int)
        b.setflags(write=False)
        c.setflags(write=False)
        mb.setflags(write=False)
        object.__setattr__(self, "linear", b)
        object.__setattr__(self, "translation", c)
        object.__setattr__(self, "lattice_action", mb)
        object.__setattr__(self, "vertex_map", tuple(int(v) for v in self.vertex_map))
        object.__setattr__(self, "vertex_offsets",
                           tuple(tuple(int(x) for x in off) for off in self.vertex_offsets))
        object.__setattr__(self, "edge_map", tuple(int(e) for e in self.edge_map))

    @property
    def dimension(self) -> int:
        return self.linear.shape[0]

    @property
    def separable(self) -> bool:
        """True when every motif vertex maps to a base-cell motif vertex."""
        return all(not any(off) for off in self.vertex_offsets)

    def apply(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.linear.T + self.translation


def is_separable(element: SymmetryElement) -> bool:
    return element.separable


def resolve_symmetry(fw: CrystalFramework, linear, translation, name: str = "g") -> SymmetryElement:
    """Match an isometry against the motif classes of a framework.

    Raises SymmetryError if the linear part is not orthogonal, is
    incompatible with the period lattice, or if some vertex or edge image
    does not land on a framework vertex or edge class.
    """
    require_valid(fw)
    d = fw.dimension
    tol = fw.tolerance
    b = np.asarray(linear, dtype=float)
    c = np.asarray(translation, dtype=float).reshape(-1)
    if b.shape != (d, d) or c.shape != (d,):
        raise SymmetryError(f"element {name!r}: expected a {d}x{d} linear part and a {d}-vector")
    if np.max(np.abs(b.T @ b - np.eye(d))) > 10 * tol:
        raise SymmetryError(f"element {name!r}: linear part is not orthogonal")

    lattice_action = np.linalg.solve(fw.lattice.matrix, b @ fw.lattice.matrix)
    if np.max(np.abs(lattice_action - np.round(lattice_action))) > 10 * tol:
        raise SymmetryError(f"element {name!r}: lattice-incompatible linear part")
    lattice_action = np.round(lattice_action).astype(int)

    frac = fw.lattice.fractional(fw.positions)
    vertex_map, vertex_offsets = [], []
    for i in range(fw.vertex_count):
        image = fw.lattice.fractional(b @ fw.vertices[i].position + c)
        target = None
        for j in range(fw.vertex_count):
            diff = image - frac[j]
            if np.max(np.abs(diff - np.round(diff))) <= 10 * tol:
                target = (j, tuple(np.round(diff).astype(int)))
                break
        if target is None:
            raise SymmetryError(
                f"element {name!r} is not a symmetry: image of vertex "
                f"{fw.vertex_label(i)} matches no vertex class")
        vertex_map.append(target[0])
        vertex_offsets.append(target[1])
    if len(set(vertex_map)) != fw.vertex_count:
        raise SymmetryError(f"element {name!r}: vertex action is not a bijection")

    classes = {e.class_key(): idx for idx, e in enumerate(fw.edges)}
    edge_map = []
    for idx, e in enumerate(fw.edges):
        fr, to = e.from_vertex, e.to_vertex
        image_offset = (np.array(vertex_offsets[to]) - np.array(vertex_offsets[fr])
                        + lattice_action @ e.offset)
        image = MotifEdge(vertex_map[fr], (0,) * d, vertex_map[to], tuple(image_offset))
        target = classes.get(image.class_key())
        if target is None:
            raise SymmetryError(
                f"element {name!r} is not a symmetry: image of edge {idx} matches no edge class")
        edge_map.append(target)
    if len(set(edge_map)) != fw.edge_count:
        raise SymmetryError(f"element {name!r}: edge action is not a bijection")

    return SymmetryElement(name=name, linear=b, translation=c,
                           vertex_map=tuple(vertex_map),
                           vertex_offsets=tuple(vertex_offsets),
                           edge_map=tuple(edge_map),
                           lattice_action=lattice_action)


@dataclass(frozen=True)
class SymmetryRepresentation:
    """Representation blocks of one element in (u, vec A) coordinates."""

    element: SymmetryElement
    vertex_rep: np.ndarray
    edge_perm: np.ndarray
    offset_coupling: np.ndarray
    matrix_conjugation: np.ndarray

    @property
    def domain_rep(self) -> np.ndarray:
        """Block upper-triangular action on (u, vec A)."""
        dn = self.vertex_rep.shape[0]
        dd = self.matrix_conjugation.shape[0]
        return np.block([
            [self.vertex_rep, self.offset_coupling],
            [np.zeros((dd, dn)), self.matrix_conjugation],
        ])


def representation_matrices(fw: CrystalFramework, element: SymmetryElement) -> SymmetryRepresentation:
    d, n, m = fw.dimension, fw.vertex_count, fw.edge_count
    b = element.linear

    vertex_rep = np.zeros((d * n, d * n))
    for v in range(n):
        g = element.vertex_map[v]
        vertex_rep[d * g:d * g + d, d * v:d * v + d] = b

    edge_perm = np.zeros((m, m))
    for e in range(m):
        edge_perm[element.edge_map[e], e] = 1.0

    matrix_conjugation = np.kron(b, b)

    # Coupling of A into the vertex blocks. The image block at g.v is
    # B A B^-1 Z k(v), which depends only on the integer offsets, so
    # separable elements get an exactly zero block.
    offset_coupling = np.zeros((d * n, d * d))
    z = fw.lattice.matrix
    for v in range(n):
        off = np.asarray(element.vertex_offsets[v], dtype=float)
        if not off.any():
            continue
        g = element.vertex_map[v]
        w = -b.T @ (z @ off)
        offset_coupling[d * g:d * g + d, :] = -np.kron(w, b)

    return SymmetryRepresentation(element=element, vertex_rep=vertex_rep,
                                  edge_perm=edge_perm,
                                  offset_coupling=offset_coupling,
                                  matrix_conjugation=matrix_conjugation)


def _conjugated_space(space: MatrixSpace, b: np.ndarray) -> list:
    return [b @ a @ b.T for a in space.basis]


def _restricted_domain_rep(reps: SymmetryRepresentation, space: MatrixSpace) -> np.ndarray:
    """Domain representation on (u, coords-in-space) coordinates.

    Requires the space to be invariant under A -> B A B^-1; raises
    SymmetryError otherwise.
    """
    b = reps.element.linear
    try:
        conj_coords = np.column_stack([space.coordinates_of(m) for m in _conjugated_space(space, b)]) \
            if space.dim else np.zeros((0, 0))
    except ValueError as exc:
        raise SymmetryError(
            f"matrix space {space.name!r} is not invariant under conjugation by "
            f"element {reps.element.name!r}") from exc
    dn = reps.vertex_rep.shape[0]
    coupling = reps.offset_coupling @ space.stacked
    return np.block([
        [reps.vertex_rep, coupling],
        [np.zeros((space.dim, dn)), conj_coords],
    ])


def verify_symmetry_equation(fw: CrystalFramework, element: SymmetryElement,
                             space: Union[MatrixSpace, str] = "full") -> float:
    """Max-norm residual of (edge action) . R - R . (domain action).

    Zero (to round-off) for genuine symmetries; the restricted form
    additionally requires the matrix space to be conjugation-invariant.
    """
    reps = representation_matrices(fw, element)
    mats = build_matrices(fw)
    if isinstance(space, str):
        if space != "full":
            space = matrix_space(space, fw.dimension, fw.tolerance)
    if isinstance(space, str):
        operator = np.hstack([
            mats.vertex_block,
            mats.affine_block @ right_multiplication_operator(fw.lattice.matrix),
        ])
        domain = reps.domain_rep
    else:
        operator = restricted_operator(fw, space)
        domain = _restricted_domain_rep(reps, space)
    return float(np.max(np.abs(reps.edge_perm @ operator - operator @ domain)))


def commutant_basis(linear, tol: float = DEFAULT_TOL) -> MatrixSpace:
    """All matrices commuting with the given linear part."""
    b = np.asarray(linear, dtype=float)
    d = b.shape[0]
    if b.shape != (d, d):
        raise ValueError("linear part must be square")
    bracket = right_multiplication_operator(b) - np.kron(np.eye(d), b)
    kernel = kernel_basis(bracket, tol)
    mats = tuple(unvec(col, d) for col in kernel.basis.T)
    return MatrixSpace(d, mats, name="commutant", tol=tol)


def fixed_space(operator, tol: float = DEFAULT_TOL) -> SubspaceBasis:
    """Eigenspace of eigenvalue one: all vectors fixed by the operator."""
    p = np.asarray(operator, dtype=float)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise ValueError("fixed_space needs a square matrix")
    return kernel_basis(p - np.eye(p.shape[0]), tol)


def edge_orbit_count(element: SymmetryElement) -> int:
    """Number of orbits of the cyclic group of the element on edge classes."""
    m = len(element.edge_map)
    cap = ORBIT_WALK_FACTOR * max(m, 1)
    seen = set()
    orbits = 0
    for start in range(m):
        if start in seen:
            continue
        orbits += 1
        current, steps = start, 0
        while current not in seen:
            seen.add(current)
            current = element.edge_map[current]
            steps += 1
            if steps > cap:
                raise SymmetryError("edge action does not close into cycles")
    return orbits


def edge_permutation_order(element: SymmetryElement) -> int:
    """Order of the edge-class permutation (lcm of cycle lengths)."""
    m = len(element.edge_map)
    order = 1
    seen = set()
    for start in range(m):
        if start in seen:
            continue
        length, current = 0, start
        while current not in seen:
            seen.add(current)
            current = element.edge_map[current]
            length += 1
        order = order * length // gcd(order, length)
    return order


def _full_operator_vec_a(fw: CrystalFramework) -> np.ndarray:
    mats = build_matrices(fw)
    return np.hstack([
        mats.vertex_block,
        mats.affine_block @ right_multiplication_operator(fw.lattice.matrix),
    ])


def _rigid_space_vec_a(fw: CrystalFramework) -> SubspaceBasis:
    """All infinitesimal isometries in (u, vec A) coordinates."""
    d, n = fw.dimension, fw.vertex_count
    full = matrix_space("full", d, fw.tolerance)
    cols = [np.concatenate([u, vec(a)]) for u, a in _rigid_generators(fw, full)]
    stacked = np.column_stack(cols) if cols else np.zeros((d * n + d * d, 0))
    return column_space_basis(stacked, fw.tolerance)


@dataclass(frozen=True)
class SymmetryCountReport:
    """Symmetry-adapted mechanism and stress counts for one element.

    For separable elements fixed_domain_dim splits as fixed_vertex_dim +
    commutant_dim; nonseparable elements use fixed_domain_dim directly.
    identity_residual is (m - s) - (fixed_domain_dim - edge_orbits - f).
    """

    element_name: str
    separable: bool
    fixed_vertex_dim: int
    commutant_dim: int
    fixed_domain_dim: int
    edge_orbits: int
    fixed_rigid_dim: int
    mechanisms: int
    stresses: int
    identity_residual: int
    flexible_predicted: bool


def symmetry_counts(fw: CrystalFramework, element: SymmetryElement) -> SymmetryCountReport:
    require_valid(fw)
    tol = fw.tolerance
    reps = representation_matrices(fw, element)

    fixed_vertex = fixed_space(reps.vertex_rep, tol)
    commutant = commutant_basis(element.linear, tol)
    fixed_domain = fixed_space(reps.domain_rep, tol)
    orbits = edge_orbit_count(element)

    operator = _full_operator_vec_a(fw)
    flexes = kernel_basis(operator, tol)
    rigid = _rigid_space_vec_a(fw)

    f = subspace_intersection(rigid, fixed_domain).dim
    m = subspace_intersection(flexes, fixed_domain).dim - f

    fixed_edge = fixed_space(reps.edge_perm, tol)
    restricted = fixed_edge.basis.T @ operator @ fixed_domain.basis
    s = fixed_edge.dim - numeric_rank(restricted, tol)

    residual = (m - s) - (fixed_domain.dim - orbits - f)
    predicted = orbits < fixed_domain.dim - f

    return SymmetryCountReport(
        element_name=element.name,
        separable=element.separable,
        fixed_vertex_dim=fixed_vertex.dim,
        commutant_dim=commutant.dim,
        fixed_domain_dim=fixed_domain.dim,
        edge_orbits=orbits,
        fixed_rigid_dim=f,
        mechanisms=m,
        stresses=s,
        identity_residual=residual,
        flexible_predicted=predicted,
    )


def flexibility_predictor(fw: CrystalFramework, element: SymmetryElement) -> bool:
    """True when the counting inequality already forces a symmetric mechanism."""
    return symmetry_counts(fw, element).flexible_predicted


@dataclass(frozen=True)
class CharacterRow:
    """Traces of one element on the rigidity-related subspaces."""

    element_name: str
    space_name: str
    vertex_trace: float
    edge_trace: float
    rigid_trace: float
    mechanism_trace: float
    stress_trace: float
    residual: float


def character_row(fw: CrystalFramework, element: SymmetryElement,
                  space: MatrixSpace) -> CharacterRow:
    """Trace identity row: mech - stress vs vertex - edge - rigid.

    The admissible space must be invariant under conjugation by the
    element's linear part.  Traces over flex/rigid/mechanism subspaces are
    computed in restricted (u, coords) coordinates with the space basis
    orthonormalized, so the domain action is orthogonal and orthogonal
    complements of invariant subspaces stay invariant.
    """
    require_valid(fw)
    tol = fw.tolerance
    d = fw.dimension
    ortho = column_space_basis(space.stacked, tol)
    space = MatrixSpace(d, tuple(unvec(col, d) for col in ortho.basis.T),
                        name=space.name, tol=tol)

    reps = representation_matrices(fw, element)
    domain = _restricted_domain_rep(reps, space)
    operator = restricted_operator(fw, space)

    from .rigidity import _rigid_space_restricted

    flexes = kernel_basis(operator, tol)
    rigid = _rigid_space_restricted(fw, space)
    mech = complement_within(flexes, rigid)
    stresses = cokernel_basis(operator, tol)

    def subspace_trace(action, basis: SubspaceBasis) -> float:
        if basis.dim == 0:
            return 0.0
        return float(np.trace(basis.basis.T @ action @ basis.basis))

    vertex_trace = float(np.trace(domain))
    edge_trace = float(np.trace(reps.edge_perm))
    rigid_trace = subspace_trace(domain, rigid)
    mech_trace = subspace_trace(domain, mech)
    stress_trace = subspace_trace(reps.edge_perm, stresses)
    residual = (mech_trace - stress_trace) - (vertex_trace - edge_trace - rigid_trace)
    return CharacterRow(
        element_name=element.name,
        space_name=space.name,
        vertex_trace=vertex_trace,
        edge_trace=edge_trace,
        rigid_trace=rigid_trace,
        mechanism_trace=mech_trace,
        stress_trace=stress_trace,
        residual=float(residual),
    )
