import numpy as np
import pytest
from numpy.testing import assert_allclose

import crystalflex as cf

S3 = np.sqrt(3.0)


def rotation(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


def identity_element(fw, name="id"):
    d = fw.dimension
    return cf.resolve_symmetry(fw, np.eye(d), np.zeros(d), name)


@pytest.fixture
def kagome_r3(kagome):
    return kagome.symmetries[0]


@pytest.fixture
def kagome_glide(kagome):
    # reflect in the x-axis, then shift half a period: nonseparable
    return cf.resolve_symmetry(kagome, np.diag([1.0, -1.0]), [0.5, 0.0], "glide")


class TestResolve:
    def test_identity(self, kagome):
        g = identity_element(kagome)
        assert g.vertex_map == (0, 1, 2)
        assert g.vertex_offsets == ((0, 0), (0, 0), (0, 0))
        assert g.edge_map == (0, 1, 2, 3, 4, 5)
        assert g.separable

    def test_kagome_threefold(self, kagome_r3):
        assert sorted(kagome_r3.vertex_map) == [0, 1, 2]
        assert kagome_r3.vertex_map != (0, 1, 2)
        assert kagome_r3.separable
        assert cf.edge_orbit_count(kagome_r3) == 2

    def test_fourfold_incompatible_with_hexagonal_lattice(self, kagome):
        with pytest.raises(cf.SymmetryError, match="lattice-incompatible"):
            cf.resolve_symmetry(kagome, rotation(np.pi / 4), np.zeros(2), "r8")

    def test_rotation_about_wrong_point_is_not_a_symmetry(self, kagome):
        with pytest.raises(cf.SymmetryError, match="matches no vertex class"):
            cf.resolve_symmetry(kagome, rotation(2 * np.pi / 3), np.zeros(2), "bad")

    def test_edge_mismatch_detected(self):
        lines = cf.CrystalFramework(
            cf.PeriodLattice(np.eye(2)),
            [cf.MotifVertex([0.0, 0.0])],
            [cf.MotifEdge(0, (0, 0), 0, (1, 0))],
        )
        with pytest.raises(cf.SymmetryError, match="matches no edge class"):
            cf.resolve_symmetry(lines, rotation(np.pi / 2), np.zeros(2), "r4")

    def test_nonorthogonal_rejected(self, kagome):
        with pytest.raises(cf.SymmetryError, match="not orthogonal"):
            cf.resolve_symmetry(kagome, np.array([[1.0, 0.1], [0.0, 1.0]]), np.zeros(2), "shear")

    def test_glide_actions(self, kagome_glide):
        assert kagome_glide.vertex_map == (1, 0, 2)
        assert kagome_glide.vertex_offsets == ((0, 0), (1, 0), (1, -1))
        assert not kagome_glide.separable

    def test_hexahedron_rotation_is_nonseparable(self, hexahedron):
        g = hexahedron.symmetries[0]
        assert not g.separable
        assert g.vertex_map == (0, 1)
        assert g.vertex_offsets[0] != (0, 0, 0)
        assert g.vertex_offsets[1] == (0, 0, 0)


class TestSeparability:
    def test_identity_is_separable(self, kagome):
        assert cf.is_separable(identity_element(kagome))

    def test_threefold_is_separable(self, kagome_r3):
        assert cf.is_separable(kagome_r3)

    def test_glide_is_not(self, kagome_glide):
        assert not cf.is_separable(kagome_glide)


class TestRepresentations:
    def test_identity_blocks(self, kagome):
        reps = cf.representation_matrices(kagome, identity_element(kagome))
        assert_allclose(reps.vertex_rep, np.eye(6))
        assert_allclose(reps.edge_perm, np.eye(6))
        assert_allclose(reps.matrix_conjugation, np.eye(4))
        assert_allclose(reps.offset_coupling, 0)

    def test_threefold_vertex_rep_is_kron(self, kagome, kagome_r3):
        reps = cf.representation_matrices(kagome, kagome_r3)
        perm = np.zeros((3, 3))
        for v in range(3):
            perm[kagome_r3.vertex_map[v], v] = 1.0
        assert_allclose(reps.vertex_rep, np.kron(perm, kagome_r3.linear), atol=1e-15)
        assert_allclose(reps.offset_coupling, 0)

    def test_edge_perm_is_permutation(self, any_builtin):
        for g in any_builtin.symmetries:
            p = cf.representation_matrices(any_builtin, g).edge_perm
            assert_allclose(p.sum(axis=0), 1)
            assert_allclose(p.sum(axis=1), 1)
            assert set(np.unique(p)) <= {0.0, 1.0}

    def test_conjugation_block(self, kagome, kagome_r3):
        reps = cf.representation_matrices(kagome, kagome_r3)
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        b = kagome_r3.linear
        lhs = reps.matrix_conjugation @ a.reshape(-1, order="F")
        assert_allclose(lhs, (b @ a @ b.T).reshape(-1, order="F"), atol=1e-14)

    def test_glide_coupling_is_nonzero(self, kagome, kagome_glide):
        reps = cf.representation_matrices(kagome, kagome_glide)
        assert np.max(np.abs(reps.offset_coupling)) > 0.1


class TestHomomorphism:
    @staticmethod
    def compose(fw, g, h, name):
        linear = g.linear @ h.linear
        translation = g.linear @ h.translation + g.translation
        return cf.resolve_symmetry(fw, linear, translation, name)

    def test_threefold_powers(self, kagome, kagome_r3):
        g = kagome_r3
        gg = self.compose(kagome, g, g, "r3^2")
        ggg = self.compose(kagome, g, gg, "r3^3")
        rg = cf.representation_matrices(kagome, g)
        rgg = cf.representation_matrices(kagome, gg)
        rid = cf.representation_matrices(kagome, ggg)
        assert_allclose(rg.edge_perm @ rg.edge_perm, rgg.edge_perm, atol=1e-12)
        assert_allclose(rg.vertex_rep @ rg.vertex_rep, rgg.vertex_rep, atol=1e-12)
        assert_allclose(rg.domain_rep @ rg.domain_rep, rgg.domain_rep, atol=1e-12)
        assert_allclose(rid.domain_rep, np.eye(10), atol=1e-12)

    def test_glide_squares_to_translation(self, kagome, kagome_glide):
        g = kagome_glide
        squared = self.compose(kagome, g, g, "glide^2")
        assert_allclose(squared.linear, np.eye(2), atol=1e-15)
        assert_allclose(squared.translation, [1.0, 0.0], atol=1e-15)
        rg = cf.representation_matrices(kagome, g)
        rsq = cf.representation_matrices(kagome, squared)
        assert_allclose(rg.domain_rep @ rg.domain_rep, rsq.domain_rep, atol=1e-12)
        assert_allclose(rg.edge_perm @ rg.edge_perm, rsq.edge_perm, atol=1e-12)


class TestSymmetryEquation:
    def test_identity_residual_zero(self, any_builtin):
        assert cf.verify_symmetry_equation(any_builtin, identity_element(any_builtin)) == 0.0

    def test_declared_elements_full(self, any_builtin):
        for g in any_builtin.symmetries:
            assert cf.verify_symmetry_equation(any_builtin, g, "full") < 1e-12

    def test_declared_elements_commutant_restricted(self, any_builtin):
        for g in any_builtin.symmetries:
            commutant = cf.commutant_basis(g.linear, any_builtin.tolerance)
            assert cf.verify_symmetry_equation(any_builtin, g, commutant) < 1e-12

    def test_glide_with_coupling_block(self, kagome, kagome_glide):
        assert cf.verify_symmetry_equation(kagome, kagome_glide, "full") < 1e-12

    def test_strict_form(self, kagome, kagome_r3):
        strict = cf.matrix_space("zero", 2, kagome.tolerance)
        assert cf.verify_symmetry_equation(kagome, kagome_r3, strict) < 1e-12

    def test_noninvariant_space_rejected(self, kagome, kagome_r3):
        diagonal = cf.matrix_space("diagonal", 2, kagome.tolerance)
        with pytest.raises(cf.SymmetryError, match="not invariant"):
            cf.verify_symmetry_equation(kagome, kagome_r3, diagonal)


class TestCommutant:
    def test_identity_commutant_is_everything(self):
        assert cf.commutant_basis(np.eye(2)).dim == 4

    def test_threefold_rotation_commutant(self):
        assert cf.commutant_basis(rotation(2 * np.pi / 3)).dim == 2

    def test_inversion_commutant_is_everything(self):
        assert cf.commutant_basis(-np.eye(2)).dim == 4

    def test_axis_rotation_in_three_dimensions(self):
        b = np.eye(3)
        b[:2, :2] = rotation(2 * np.pi / 3)
        assert cf.commutant_basis(b).dim == 3

    def test_members_commute(self):
        b = rotation(2 * np.pi / 3)
        for a in cf.commutant_basis(b).basis:
            assert_allclose(a @ b, b @ a, atol=1e-12)


class TestFixedSpace:
    def test_identity_operator(self):
        assert cf.fixed_space(np.eye(5)).dim == 5

    def test_kagome_vertex_rep(self, kagome, kagome_r3):
        reps = cf.representation_matrices(kagome, kagome_r3)
        assert cf.fixed_space(reps.vertex_rep, kagome.tolerance).dim == 2

    def test_permutation_fixed_space_counts_orbits(self, any_builtin):
        for g in any_builtin.symmetries:
            reps = cf.representation_matrices(any_builtin, g)
            fixed = cf.fixed_space(reps.edge_perm, any_builtin.tolerance)
            assert fixed.dim == cf.edge_orbit_count(g)


class TestSymmetryCounts:
    def test_kagome_threefold(self, kagome, kagome_r3):
        rep = cf.symmetry_counts(kagome, kagome_r3)
        assert rep.separable
        assert rep.fixed_vertex_dim == 2
        assert rep.commutant_dim == 2
        assert rep.fixed_domain_dim == 4
        assert rep.edge_orbits == 2
        assert rep.fixed_rigid_dim == 1
        assert rep.mechanisms == 1
        assert rep.stresses == 0
        assert rep.identity_residual == 0

    def test_identity_on_kagome_reduces_to_affine_count(self, kagome):
        rep = cf.symmetry_counts(kagome, identity_element(kagome))
        assert rep.fixed_vertex_dim == 6
        assert rep.commutant_dim == 4
        assert rep.edge_orbits == 6
        assert rep.fixed_rigid_dim == 3
        assert rep.mechanisms == 1
        assert rep.stresses == 0
        assert rep.identity_residual == 0

    def test_identity_on_square_grid(self, square_grid):
        rep = cf.symmetry_counts(square_grid, identity_element(square_grid))
        assert (rep.fixed_vertex_dim, rep.commutant_dim) == (2, 4)
        assert (rep.edge_orbits, rep.fixed_rigid_dim) == (2, 3)
        assert (rep.mechanisms, rep.stresses) == (1, 0)
        assert rep.identity_residual == 0

    def test_square_grid_fourfold(self, square_grid):
        rep = cf.symmetry_counts(square_grid, square_grid.symmetries[0])
        assert rep.separable
        assert (rep.fixed_vertex_dim, rep.commutant_dim) == (0, 2)
        assert (rep.edge_orbits, rep.fixed_rigid_dim) == (1, 1)
        assert (rep.mechanisms, rep.stresses) == (0, 0)
        assert rep.identity_residual == 0

    def test_hexahedron_threefold(self, hexahedron):
        rep = cf.symmetry_counts(hexahedron, hexahedron.symmetries[0])
        assert not rep.separable
        assert rep.fixed_domain_dim == 5
        assert rep.edge_orbits == 3
        assert rep.fixed_rigid_dim == 2
        assert (rep.mechanisms, rep.stresses) == (0, 0)
        assert rep.identity_residual == 0

    def test_kagome_glide(self, kagome, kagome_glide):
        rep = cf.symmetry_counts(kagome, kagome_glide)
        assert not rep.separable
        assert rep.fixed_domain_dim == 4
        assert rep.edge_orbits == 3
        assert (rep.fixed_rigid_dim, rep.mechanisms, rep.stresses) == (1, 1, 1)
        assert rep.identity_residual == 0

    def test_separable_fixed_space_splits(self, kagome, square_grid, kagome_r3):
        for fw, g in ((kagome, kagome_r3), (square_grid, square_grid.symmetries[0]),
                      (kagome, identity_element(kagome))):
            rep = cf.symmetry_counts(fw, g)
            if rep.separable:
                assert rep.fixed_domain_dim == rep.fixed_vertex_dim + rep.commutant_dim

    def test_burnside_orbit_identity(self, any_builtin):
        for g in any_builtin.symmetries:
            order = cf.edge_permutation_order(g)
            perm = list(g.edge_map)
            total, current = 0, list(range(len(perm)))
            for _ in range(order):
                current = [perm[x] for x in current]
            current = list(range(len(perm)))
            for _ in range(order):
                total += sum(1 for i, x in enumerate(current) if i == x)
                current = [perm[x] for x in current]
            assert cf.edge_orbit_count(g) * order == total

    def test_symmetric_counts_bounded_by_commutant_mode(self, any_builtin):
        for g in any_builtin.symmetries:
            rep = cf.symmetry_counts(any_builtin, g)
            commutant = cf.commutant_basis(g.linear, any_builtin.tolerance)
            mode = cf.analyze_counts(any_builtin, commutant)
            assert rep.mechanisms <= mode.mechanisms
            assert rep.stresses <= mode.stresses

    def test_fixed_domain_maps_into_fixed_edge_space(self, any_builtin):
        from crystalflex.symmetry import _full_operator_vec_a
        fw = any_builtin
        for g in fw.symmetries:
            reps = cf.representation_matrices(fw, g)
            operator = _full_operator_vec_a(fw)
            domain_fixed = cf.fixed_space(reps.domain_rep, fw.tolerance)
            edge_fixed = cf.fixed_space(reps.edge_perm, fw.tolerance)
            image = operator @ domain_fixed.basis
            outside = image - edge_fixed.project(image)
            assert np.max(np.abs(outside), initial=0.0) <= 10 * fw.tolerance


class TestPredictor:
    def test_kagome_threefold_predicts_mechanism(self, kagome, kagome_r3):
        assert cf.flexibility_predictor(kagome, kagome_r3)

    def test_hexahedron_is_inconclusive(self, hexahedron):
        assert not cf.flexibility_predictor(hexahedron, hexahedron.symmetries[0])

    def test_square_grid_fourfold_is_inconclusive(self, square_grid):
        assert not cf.flexibility_predictor(square_grid, square_grid.symmetries[0])


class TestCharacterRow:
    def test_identity_reduces_to_dimension_count(self, kagome):
        full = cf.matrix_space("full", 2, kagome.tolerance)
        row = cf.character_row(kagome, identity_element(kagome), full)
        assert row.vertex_trace == pytest.approx(10.0, abs=1e-9)
        assert row.edge_trace == pytest.approx(6.0, abs=1e-9)
        assert row.rigid_trace == pytest.approx(3.0, abs=1e-9)
        assert row.mechanism_trace == pytest.approx(1.0, abs=1e-9)
        assert row.stress_trace == pytest.approx(0.0, abs=1e-9)
        assert abs(row.residual) < 1e-9

    def test_kagome_threefold_traces(self, kagome, kagome_r3):
        commutant = cf.commutant_basis(kagome_r3.linear, kagome.tolerance)
        row = cf.character_row(kagome, kagome_r3, commutant)
        assert row.edge_trace == pytest.approx(0.0, abs=1e-12)
        assert row.vertex_trace == pytest.approx(2.0, abs=1e-9)
        assert row.rigid_trace == pytest.approx(0.0, abs=1e-9)
        assert row.mechanism_trace == pytest.approx(1.0, abs=1e-9)
        assert row.stress_trace == pytest.approx(-1.0, abs=1e-9)
        assert abs(row.residual) < 1e-9

    def test_residual_small_for_declared_elements(self, any_builtin):
        for g in any_builtin.symmetries:
            commutant = cf.commutant_basis(g.linear, any_builtin.tolerance)
            row = cf.character_row(any_builtin, g, commutant)
            assert abs(row.residual) < 1e-9
