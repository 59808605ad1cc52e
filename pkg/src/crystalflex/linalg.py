"""Dense linear algebra with a shared rank-tolerance policy.

Every rank decision in the package goes through this module: a singular
value sigma counts as nonzero when

    sigma > tol * max(1, sigma_max) * max(n_rows, n_cols).

Kernels and cokernels come from the SVD, so the returned bases are
orthonormal.  Subspace intersections stack the orthogonal-complement
projectors of the operands and take a kernel, which keeps the tolerance
policy in one place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9


def _as_matrix(mat) -> np.ndarray:
    a = np.asarray(mat, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    return a


def _effective_tol(singular_values: np.ndarray, shape, tol: float) -> float:
    largest = float(singular_values[0]) if len(singular_values) else 0.0
    return tol * max(1.0, largest) * max(shape[0], shape[1], 1)


def _canonical_signs(basis: np.ndarray) -> np.ndarray:
    """Flip column signs so the largest-magnitude entry is positive.

    Makes SVD-derived bases reproducible for report output.
    """
    out = basis.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        i = int(np.argmax(np.abs(col)))
        if col[i] < 0:
            out[:, j] = -col
    return out


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal column basis of a linear subspace of R^ambient_dim."""

    ambient_dim: int
    basis: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim != 2 or b.shape[0] != self.ambient_dim:
            raise ValueError(
                f"basis shape {b.shape} incompatible with ambient dimension {self.ambient_dim}"
            )
        if b.shape[1] > self.ambient_dim:
            raise ValueError("more basis vectors than the ambient dimension")
        gram = b.T @ b - np.eye(b.shape[1])
        if b.size and np.max(np.abs(gram)) > 100 * self.tol * max(b.shape):
            raise ValueError("basis columns are not orthonormal")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def project(self, vectors) -> np.ndarray:
        """Orthogonal projection of column vectors onto the subspace."""
        v = np.asarray(vectors, dtype=float)
        return self.basis @ (self.basis.T @ v)

    def residual(self, vectors) -> float:
        """Largest 2-norm distance of the given columns from the subspace."""
        v = np.atleast_2d(np.asarray(vectors, dtype=float))
        if v.shape[0] != self.ambient_dim:
            v = v.T
        if v.size == 0:
            return 0.0
        return float(np.max(np.linalg.norm(v - self.project(v), axis=0)))

    def contains(self, vectors, factor: float = 10.0) -> bool:
        v = np.atleast_2d(np.asarray(vectors, dtype=float))
        if v.shape[0] != self.ambient_dim:
            v = v.T
        scale = max(1.0, float(np.max(np.abs(v))) if v.size else 0.0)
        return self.residual(v) <= factor * self.tol * scale * self.ambient_dim


def numeric_rank(mat, tol: float = DEFAULT_TOL) -> int:
    m = _as_matrix(mat)
    if min(m.shape) == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > _effective_tol(s, m.shape, tol)))


def kernel_basis(mat, tol: float = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the (numerical) null space of ``mat``."""
    m = _as_matrix(mat)
    rows, cols = m.shape
    if cols == 0:
        return SubspaceBasis(0, np.zeros((0, 0)), tol)
    if rows == 0:
        return SubspaceBasis(cols, np.eye(cols), tol)
    _, s, vt = np.linalg.svd(m, full_matrices=True)
    rank = int(np.sum(s > _effective_tol(s, m.shape, tol)))
    return SubspaceBasis(cols, _canonical_signs(vt[rank:, :].T), tol)


def cokernel_basis(mat, tol: float = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the left null space (row-dependency space)."""
    m = _as_matrix(mat)
    rows, cols = m.shape
    if rows == 0:
        return SubspaceBasis(0, np.zeros((0, 0)), tol)
    if cols == 0:
        return SubspaceBasis(rows, np.eye(rows), tol)
    u, s, _ = np.linalg.svd(m, full_matrices=True)
    rank = int(np.sum(s > _effective_tol(s, m.shape, tol)))
    return SubspaceBasis(rows, _canonical_signs(u[:, rank:]), tol)


def column_space_basis(vectors, tol: float = DEFAULT_TOL) -> SubspaceBasis:
    """Orthonormal basis of the span of the given column vectors."""
    m = _as_matrix(vectors)
    rows = m.shape[0]
    if m.shape[1] == 0 or rows == 0:
        return SubspaceBasis(rows, np.zeros((rows, 0)), tol)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    rank = int(np.sum(s > _effective_tol(s, m.shape, tol)))
    return SubspaceBasis(rows, _canonical_signs(u[:, :rank]), tol)


def subspace_intersection(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    n = a.ambient_dim
    tol = min(a.tol, b.tol)
    stacked = np.vstack([
        np.eye(n) - a.basis @ a.basis.T,
        np.eye(n) - b.basis @ b.basis.T,
    ])
    return kernel_basis(stacked, tol)


def complement_within(outer: SubspaceBasis, inner: SubspaceBasis) -> SubspaceBasis:
    """Orthogonal complement of ``inner`` taken inside ``outer``."""
    if outer.ambient_dim != inner.ambient_dim:
        raise ValueError("subspaces live in different ambient spaces")
    residue = outer.basis - inner.project(outer.basis)
    return column_space_basis(residue, min(outer.tol, inner.tol))
