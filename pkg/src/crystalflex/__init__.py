"""Infinitesimal rigidity analysis of periodic bar-joint frameworks.

Build a framework from a finite motif and period lattice (or load one of
the builtins), assemble its rigidity matrices, and compute flex, stress and
rigid-motion subspaces, Maxwell-Calladine style counts, and symmetry-adapted
counts for declared space-group elements.
"""

from .catalog import BUILTIN_NAMES, builtin_framework
from .fileio import (
    AnalysisReport,
    FrameworkParseError,
    analyze_framework,
    emit_report,
    framework_from_dict,
    framework_to_dict,
    load_framework,
    parse_framework,
    save_framework,
    serialize_framework,
)
from .frameworks import (
    AffineVelocity,
    CrystalFramework,
    EdgeGeometry,
    Fragment,
    InvalidFrameworkError,
    MotifEdge,
    MotifVertex,
    PeriodLattice,
    PlacedEdge,
    PlacedPoint,
    edge_geometry,
    fragment,
    point_of,
    supercell,
    validate_framework,
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
from .rigidity import (
    AffineRigidityCheck,
    CountReport,
    MATRIX_SPACE_NAMES,
    MatrixSpace,
    RigidityMatrices,
    analyze_counts,
    build_matrices,
    edge_deviation,
    flex_space,
    flex_velocities,
    is_affinely_rigid,
    matrix_space,
    mechanism_space,
    restricted_operator,
    right_multiplication_operator,
    rigid_motion_space,
    stress_space,
    velocity_from_affine_coordinates,
    velocity_from_mode_coordinates,
)
from .svg import render_svg
from .symmetry import (
    CharacterRow,
    SymmetryCountReport,
    SymmetryElement,
    SymmetryError,
    SymmetryRepresentation,
    character_row,
    commutant_basis,
    edge_orbit_count,
    edge_permutation_order,
    fixed_space,
    flexibility_predictor,
    is_separable,
    representation_matrices,
    resolve_symmetry,
    symmetry_counts,
    verify_symmetry_equation,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
