"""Rigidity matrices of periodic frameworks and Maxwell-Calladine counts.

The central object is the affine rigidity operator of a motif.  Acting on a
pair (u, M) -- vertex-class velocities u and a lattice-frame velocity matrix
M = A Z, column-stacked -- the row of a bar evaluates to

    <v, u_from - u_to + M q>

where v is the bar vector and q the integer cell offset between the bar's
endpoints.  Bars joining two copies of the same vertex class have no vertex
term.  Restricting the admissible velocity matrices A to a linear subspace
of d x d matrices restricts the operator's domain accordingly.

Sign conventions: the velocity of the copy of vertex ``v`` in cell k is
``u_v - A Z k``, and a global rotation with skew generator S corresponds to
(u_v = S p_v, A = -S).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .frameworks import (
    AffineVelocity,
    CrystalFramework,
    edge_geometry,
    require_valid,
)
from .linalg import (
    DEFAULT_TOL,
    SubspaceBasis,
    cokernel_basis,
    column_space_basis,
    complement_within,
    kernel_basis,
    numeric_rank,
    subspace_intersection,
)

MATRIX_SPACE_NAMES = ("zero", "full", "symmetric", "skew", "diagonal")


def vec(mat) -> np.ndarray:
    """Column-stacked vector of a matrix."""
    return np.asarray(mat, dtype=float).reshape(-1, order="F")


def unvec(v, d: int) -> np.ndarray:
    return np.asarray(v, dtype=float).reshape((d, d), order="F")


def right_multiplication_operator(mat) -> np.ndarray:
    """Matrix of A -> A @ mat on column-stacked coordinates."""
    m = np.asarray(mat, dtype=float)
    return np.kron(m.T, np.eye(m.shape[0]))


@dataclass(frozen=True)
class MatrixSpace:
    """Linear space of admissible d x d velocity matrices."""

    dimension: int
    basis: tuple
    name: str = "custom"
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        mats = []
        for b in self.basis:
            m = np.asarray(b, dtype=float)
            if m.shape != (self.dimension, self.dimension):
                raise ValueError(
                    f"basis matrix has shape {m.shape}, expected "
                    f"({self.dimension}, {self.dimension})"
                )
            m.setflags(write=False)
            mats.append(m)
        object.__setattr__(self, "basis", tuple(mats))
        if mats and numeric_rank(self.stacked, self.tol) != len(mats):
            raise ValueError("matrix space basis is linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def stacked(self) -> np.ndarray:
        """(d^2, dim) matrix whose columns are the column-stacked basis."""
        if not self.basis:
            return np.zeros((self.dimension ** 2, 0))
        return np.column_stack([vec(b) for b in self.basis])

    def matrix_from_coordinates(self, coords) -> np.ndarray:
        c = np.asarray(coords, dtype=float).reshape(-1)
        if c.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} coordinates, got {c.shape[0]}")
        out = np.zeros((self.dimension, self.dimension))
        for cj, b in zip(c, self.basis):
            out = out + cj * b
        return out

    def coordinates_of(self, mat) -> np.ndarray:
        """Coordinates of a member matrix in this basis; raises if outside."""
        target = vec(mat)
        if self.dim == 0:
            if np.max(np.abs(target), initial=0.0) > 10 * self.tol:
                raise ValueError("matrix is not in the zero space")
            return np.zeros(0)
        coords, *_ = np.linalg.lstsq(self.stacked, target, rcond=None)
        residual = np.max(np.abs(self.stacked @ coords - target))
        if residual > 100 * self.tol * max(1.0, np.max(np.abs(target))):
            raise ValueError("matrix is not in the space spanned by the basis")
        return coords


def _skew_generators(d: int) -> list:
    gens = []
    for i, j in itertools.combinations(range(d), 2):
        s = np.zeros((d, d))
        s[j, i], s[i, j] = 1.0, -1.0
        gens.append(s)
    return gens


def matrix_space(name: str, dimension: int, tol: float = DEFAULT_TOL) -> MatrixSpace:
    """Named space of velocity matrices with a Frobenius-orthonormal basis."""
    d = int(dimension)
    if name == "zero":
        basis = []
    elif name == "full":
        basis = []
        for j in range(d):
            for i in range(d):
                m = np.zeros((d, d))
                m[i, j] = 1.0
                basis.append(m)
    elif name == "symmetric":
        basis = [np.diag(np.eye(d)[i]) for i in range(d)]
        for i, j in itertools.combinations(range(d), 2):
            m = np.zeros((d, d))
            m[i, j] = m[j, i] = 1.0 / np.sqrt(2.0)
            basis.append(m)
    elif name == "skew":
        basis = [s / np.sqrt(2.0) for s in _skew_generators(d)]
    elif name == "diagonal":
        basis = [np.diag(np.eye(d)[i]) for i in range(d)]
    else:
        raise ValueError(f"unknown matrix space {name!r}; known: {', '.join(MATRIX_SPACE_NAMES)}")
    return MatrixSpace(d, tuple(basis), name=name, tol=tol)


@dataclass(frozen=True)
class RigidityMatrices:
    """Vertex block (bars x vertex dof) and lattice-frame block (bars x d^2)."""

    vertex_block: np.ndarray
    affine_block: np.ndarray
    framework: CrystalFramework

    @property
    def full(self) -> np.ndarray:
        """Concatenated operator acting on (u, vec(A Z))."""
        return np.hstack([self.vertex_block, self.affine_block])


def build_matrices(fw: CrystalFramework) -> RigidityMatrices:
    """Assemble the rigidity blocks of a validated framework."""
    require_valid(fw)
    d, n, m = fw.dimension, fw.vertex_count, fw.edge_count
    vertex_block = np.zeros((m, d * n))
    affine_block = np.zeros((m, d * d))
    for row, e in enumerate(fw.edges):
        geom = edge_geometry(fw, e)
        if e.from_vertex != e.to_vertex:
            vertex_block[row, d * e.from_vertex:d * e.from_vertex + d] = geom.vector
            vertex_block[row, d * e.to_vertex:d * e.to_vertex + d] = -geom.vector
        for j in range(d):
            affine_block[row, d * j:d * j + d] = geom.offset[j] * geom.vector
    vertex_block.setflags(write=False)
    affine_block.setflags(write=False)
    return RigidityMatrices(vertex_block, affine_block, fw)


def restricted_operator(fw: CrystalFramework, space: MatrixSpace) -> np.ndarray:
    """Operator on (u, coords-in-space); columns [vertex block | X L].

    L maps the j-th basis matrix A_j to vec(A_j Z), so kernel vectors carry
    velocity-matrix coordinates directly in the given basis.
    """
    if space.dimension != fw.dimension:
        raise ValueError(
            f"matrix space dimension {space.dimension} != framework dimension {fw.dimension}"
        )
    mats = build_matrices(fw)
    lift = right_multiplication_operator(fw.lattice.matrix) @ space.stacked
    return np.hstack([mats.vertex_block, mats.affine_block @ lift])


def _rigid_generators(fw: CrystalFramework, space: MatrixSpace):
    """Generating (u, A) pairs of the admissible infinitesimal isometries.

    Translations are always admissible; a rotation generator S contributes
    only when -S (equivalently S) lies in the admissible space.
    """
    d, n = fw.dimension, fw.vertex_count
    pos = fw.positions
    pairs = []
    for i in range(d):
        u = np.tile(np.eye(d)[i], n)
        pairs.append((u, np.zeros((d, d))))
    skews = _skew_generators(d)
    if skews and space.dim:
        skew_span = column_space_basis(np.column_stack([vec(s) for s in skews]), fw.tolerance)
        space_span = column_space_basis(space.stacked, fw.tolerance)
        meet = subspace_intersection(skew_span, space_span)
        for col in meet.basis.T:
            s = unvec(col, d)
            u = (pos @ s.T).reshape(-1)
            pairs.append((u, -s))
    return pairs


def rigid_motion_space(fw: CrystalFramework, space: MatrixSpace) -> SubspaceBasis:
    """Admissible rigid-motion flexes in (u, vec(A Z)) coordinates."""
    require_valid(fw)
    d, n = fw.dimension, fw.vertex_count
    z = fw.lattice.matrix
    cols = [np.concatenate([u, vec(a @ z)]) for u, a in _rigid_generators(fw, space)]
    stacked = np.column_stack(cols) if cols else np.zeros((d * n + d * d, 0))
    return column_space_basis(stacked, fw.tolerance)


def _rigid_space_restricted(fw: CrystalFramework, space: MatrixSpace) -> SubspaceBasis:
    """Rigid motions in the restricted (u, coords-in-space) coordinates."""
    d, n = fw.dimension, fw.vertex_count
    cols = [np.concatenate([u, space.coordinates_of(a)]) for u, a in _rigid_generators(fw, space)]
    stacked = np.column_stack(cols) if cols else np.zeros((d * n + space.dim, 0))
    return column_space_basis(stacked, fw.tolerance)


def flex_space(fw: CrystalFramework, space: MatrixSpace) -> SubspaceBasis:
    """Kernel of the restricted operator: all admissible infinitesimal flexes."""
    return kernel_basis(restricted_operator(fw, space), fw.tolerance)


def stress_space(fw: CrystalFramework, space: MatrixSpace) -> SubspaceBasis:
    """Cokernel of the restricted operator: admissible self-stresses."""
    return cokernel_basis(restricted_operator(fw, space), fw.tolerance)


def mechanism_space(fw: CrystalFramework, space: MatrixSpace) -> SubspaceBasis:
    """Flexes orthogonal to the rigid motions (internal mechanisms)."""
    return complement_within(flex_space(fw, space), _rigid_space_restricted(fw, space))


@dataclass(frozen=True)
class CountReport:
    """Mechanism/stress/rigid-motion dimensions and the counting identity.

    identity_residual is (m - s) - (vertex_dof + space_dim - edge_count - f)
    and must be zero for consistent rank decisions.
    """

    space_name: str
    vertex_dof: int
    space_dim: int
    edge_count: int
    mechanisms: int
    stresses: int
    rigid_motions: int
    identity_residual: int
    flags: tuple = ()


def analyze_counts(fw: CrystalFramework, space: MatrixSpace) -> CountReport:
    require_valid(fw)
    flex = flex_space(fw, space)
    stress = stress_space(fw, space)
    rigid = _rigid_space_restricted(fw, space)
    f = rigid.dim
    m = flex.dim - f
    s = stress.dim
    d, n = fw.dimension, fw.vertex_count
    residual = (m - s) - (d * n + space.dim - fw.edge_count - f)
    flags = []
    if rigid.dim and not flex.contains(rigid.basis):
        flags.append("rigid motions are not contained in the flex space; "
                     "the framework geometry is inconsistent")
    return CountReport(
        space_name=space.name,
        vertex_dof=d * n,
        space_dim=space.dim,
        edge_count=fw.edge_count,
        mechanisms=m,
        stresses=s,
        rigid_motions=f,
        identity_residual=residual,
        flags=tuple(flags),
    )


@dataclass(frozen=True)
class AffineRigidityCheck:
    is_rigid: bool
    rank: int
    required_rank: int


def is_affinely_rigid(fw: CrystalFramework) -> AffineRigidityCheck:
    """Full-space rigidity test: rank must reach vertex dof + rotation count."""
    mats = build_matrices(fw)
    d = fw.dimension
    rank = numeric_rank(mats.full, fw.tolerance)
    required = d * fw.vertex_count + d * (d - 1) // 2
    return AffineRigidityCheck(is_rigid=(rank == required), rank=rank, required_rank=required)


def velocity_from_affine_coordinates(fw: CrystalFramework, vector) -> AffineVelocity:
    """Decode a (u, vec(A Z)) coordinate vector into an AffineVelocity."""
    d, n = fw.dimension, fw.vertex_count
    x = np.asarray(vector, dtype=float).reshape(-1)
    if x.shape != (d * n + d * d,):
        raise ValueError(f"expected a vector of length {d * n + d * d}, got {x.shape[0]}")
    u = x[:d * n].reshape((n, d))
    a = unvec(x[d * n:], d) @ np.linalg.inv(fw.lattice.matrix)
    return AffineVelocity(u, a)


def velocity_from_mode_coordinates(fw: CrystalFramework, space: MatrixSpace, vector) -> AffineVelocity:
    """Decode a restricted (u, coords-in-space) vector into an AffineVelocity."""
    d, n = fw.dimension, fw.vertex_count
    x = np.asarray(vector, dtype=float).reshape(-1)
    if x.shape != (d * n + space.dim,):
        raise ValueError(f"expected a vector of length {d * n + space.dim}, got {x.shape[0]}")
    u = x[:d * n].reshape((n, d))
    return AffineVelocity(u, space.matrix_from_coordinates(x[d * n:]))


def flex_velocities(fw: CrystalFramework, space: MatrixSpace) -> list:
    """Decoded basis of the flex space, one AffineVelocity per basis vector."""
    return [velocity_from_mode_coordinates(fw, space, col)
            for col in flex_space(fw, space).basis.T]


def edge_deviation(fw: CrystalFramework, velocity: AffineVelocity, t: float) -> float:
    """Largest bar-length change under the finite motion of size t.

    The motion places the copy of vertex v in cell k at

        p_v + t u_v + (I + t A)^{-1} Z k,

    whose derivative at t = 0 is the periodic extension u_v - A Z k.  For
    genuine flexes the result is O(t^2); pure translations move every bar
    isometrically, so they give 0 up to round-off.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    d = fw.dimension
    if velocity.dimension != d or velocity.vertex_velocities.shape[0] != fw.vertex_count:
        raise ValueError("velocity shape does not match the framework")
    flow = np.eye(d) + t * velocity.distortion
    if abs(np.linalg.det(flow)) <= fw.tolerance:
        raise ValueError("I + t*A is singular; reduce t")
    frame = np.linalg.solve(flow, fw.lattice.matrix)

    worst = 0.0
    u = velocity.vertex_velocities
    for e in fw.edges:
        rest = edge_geometry(fw, e).length
        q_from = (fw.vertices[e.from_vertex].position + t * u[e.from_vertex]
                  + frame @ np.asarray(e.from_cell, dtype=float))
        q_to = (fw.vertices[e.to_vertex].position + t * u[e.to_vertex]
                + frame @ np.asarray(e.to_cell, dtype=float))
        worst = max(worst, abs(rest - float(np.linalg.norm(q_from - q_to))))
    return worst
