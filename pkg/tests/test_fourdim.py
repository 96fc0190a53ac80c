import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from twistorgh import fibre, fourdim as fd

RNG = np.random.default_rng(303)

E = np.eye(4)
S1P = fd.embed_half([1, 0, 0], 1)
S2P = fd.embed_half([0, 1, 0], 1)
S3P = fd.embed_half([0, 0, 1], 1)
S1M = fd.embed_half([1, 0, 0], -1)
S2M = fd.embed_half([0, 1, 0], -1)
S3M = fd.embed_half([0, 0, 1], -1)


def test_change_of_basis_is_orthogonal():
    assert_allclose(fd.LEX_TO_S @ fd.LEX_TO_S.T, np.eye(6), atol=1e-15)


class TestHodge:
    def test_e12_maps_to_e34(self):
        assert_allclose(fd.hodge_star(fd.wedge_of_pair(E[0], E[1])),
                        fd.wedge_of_pair(E[2], E[3]), atol=1e-15)

    def test_self_dual_eigenvector(self):
        assert_allclose(fd.hodge_star(S1P), S1P)

    def test_anti_self_dual_eigenvector(self):
        assert_allclose(fd.hodge_star(S2M), -S2M)

    def test_involution(self):
        v = RNG.standard_normal(6)
        assert_allclose(fd.hodge_star(fd.hodge_star(v)), v)


class TestSplit:
    def test_decomposable(self):
        plus, minus = fd.split_pm(fd.wedge_of_pair(E[0], E[1]))
        assert_allclose(plus, S1P / np.sqrt(2), atol=1e-15)
        assert_allclose(minus, S1M / np.sqrt(2), atol=1e-15)

    def test_pure_eigenvector(self):
        plus, minus = fd.split_pm(S3P)
        assert_allclose(plus, S3P)
        assert_allclose(minus, np.zeros(6))

    def test_zero(self):
        plus, minus = fd.split_pm(np.zeros(6))
        assert_allclose(plus, np.zeros(6))
        assert_allclose(minus, np.zeros(6))

    def test_parts_are_eigenvectors_and_orthogonal(self):
        v = RNG.standard_normal(6)
        plus, minus = fd.split_pm(v)
        assert_allclose(fd.hodge_star(plus), plus)
        assert_allclose(fd.hodge_star(minus), -minus)
        assert plus @ minus == 0.0
        assert_allclose(plus + minus, v)


class TestCross:
    @pytest.mark.parametrize("sign,basis", [(1, (S1P, S2P, S3P)), (-1, (S1M, S2M, S3M))])
    def test_cyclic_triads(self, sign, basis):
        s1, s2, s3 = basis
        assert_allclose(fd.cross(s1, s2, sign), s3)
        assert_allclose(fd.cross(s2, s3, sign), s1)
        assert_allclose(fd.cross(s3, s1, sign), s2)

    def test_antisymmetry(self):
        u = fd.embed_half(RNG.standard_normal(3), 1)
        assert_allclose(fd.cross(u, u, 1), np.zeros(6), atol=1e-15)

    def test_mixed_arguments_rejected(self):
        with pytest.raises(fd.FourDimError, match="not pure"):
            fd.cross(S1P, S1M, 1)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_commutator_relation(self, sign):
        # sigma x tau corresponds to (sign / sqrt2) [K_sigma, K_tau]
        for _ in range(10):
            u = fd.embed_half(RNG.standard_normal(3), sign)
            v = fd.embed_half(RNG.standard_normal(3), sign)
            ku, kv = fd.endo_of_two_vector(u), fd.endo_of_two_vector(v)
            bracket = fd.two_vector_of_endo(sign / np.sqrt(2) * (ku @ kv - kv @ ku))
            assert_allclose(bracket, fd.cross(u, v, sign), atol=1e-10)


class TestSphereModel:
    def test_self_dual_standard_structure(self):
        j = fd.sphere_to_J(S1P, 1)
        assert_allclose(j.matrix @ E[0], E[1], atol=1e-14)
        assert_allclose(j.matrix @ E[2], E[3], atol=1e-14)

    def test_anti_self_dual_standard_structure(self):
        j = fd.sphere_to_J(S1M, -1)
        assert_allclose(j.matrix @ E[0], E[1], atol=1e-14)
        assert_allclose(j.matrix @ E[2], -E[3], atol=1e-14)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_round_trip(self, sign):
        for _ in range(100):
            u = RNG.standard_normal(3)
            u /= np.linalg.norm(u)
            u6 = fd.embed_half(u, sign)
            assert_allclose(fd.j_to_sphere(fd.sphere_to_J(u6, sign)), u6, atol=1e-12)

    def test_wedge_norm_is_sqrt2(self):
        j = fd.random_ocs(1, RNG)
        assert np.linalg.norm(j.wedge) == pytest.approx(np.sqrt(2), abs=1e-12)

    def test_non_unit_rejected(self):
        with pytest.raises(fd.FourDimError, match="unit"):
            fd.sphere_to_J(2.0 * S1P, 1)

    def test_wrong_half_rejected(self):
        with pytest.raises(fd.FourDimError, match="not pure"):
            fd.sphere_to_J(S1P, -1)

    def test_sign_mismatch_rejected(self):
        j = fd.sphere_to_J(S1P, 1)
        with pytest.raises(fd.FourDimError):
            fd.OrientedComplexStructure4(matrix=j.matrix, sign=-1)


class TestVerticalBasis:
    def test_canonical_point(self):
        j = fd.sphere_to_J(S1P, 1)
        u2, u3 = fd.vertical_basis(j)
        assert_allclose(u2, fd.endo_of_two_vector(S2P), atol=1e-14)
        assert_allclose(u3, fd.endo_of_two_vector(S3P), atol=1e-14)

    def test_antipodal_point_is_handled(self):
        j = fd.sphere_to_J(-S1M, -1)
        u2, u3 = fd.vertical_basis(j)
        assert_allclose(u2, fd.endo_of_two_vector(S2M), atol=1e-14)
        assert_allclose(u3, fd.endo_of_two_vector(-S3M), atol=1e-14)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_anticommute_and_orthonormal(self, sign):
        for _ in range(25):
            j = fd.random_ocs(sign, RNG)
            u2, u3 = fd.vertical_basis(j)
            for v in (u2, u3):
                assert np.max(np.abs(j.matrix @ v + v @ j.matrix)) < 1e-12
            gram = np.array([[fibre.inner_G(a, b) for b in (u2, u3)] for a in (u2, u3)])
            assert_allclose(gram, np.eye(2), atol=1e-12)

    def test_completes_oriented_triad(self):
        j = fd.random_ocs(1, RNG)
        u1 = fd.active_half(fd.j_to_sphere(j), 1)
        u2 = fd.active_half(fd.two_vector_of_endo(fd.vertical_basis(j)[0]), 1)
        u3 = fd.active_half(fd.two_vector_of_endo(fd.vertical_basis(j)[1]), 1)
        assert_allclose(np.cross(u1, u2), u3, atol=1e-12)


class TestQuaternionRelations:
    @pytest.mark.parametrize("sign", [1, -1])
    def test_kaehler_image_is_cross_product(self, sign):
        # (K V)^ = (sign / sqrt2) (J^ x V^) for V vertical at J
        for _ in range(100):
            j = fd.random_ocs(sign, RNG)
            v = fd.random_vertical_endo(j, RNG)
            lhs = fd.two_vector_of_endo(j.matrix @ v)
            rhs = sign / np.sqrt(2) * fd.cross(j.wedge, fd.two_vector_of_endo(v), sign)
            assert_allclose(lhs, rhs, atol=1e-10)

    def test_same_half_orthogonal_endos_anticommute(self):
        for sign, (a, b, c) in ((1, (S1P, S2P, S3P)), (-1, (S1M, S2M, S3M))):
            for u, v in ((a, b), (b, c), (a, c)):
                ku, kv = fd.endo_of_two_vector(u), fd.endo_of_two_vector(v)
                assert_allclose(ku @ kv + kv @ ku, np.zeros((4, 4)), atol=1e-14)

    def test_opposite_halves_commute(self):
        for u in (S1P, S2P, S3P):
            for v in (S1M, S2M, S3M):
                ku, kv = fd.endo_of_two_vector(u), fd.endo_of_two_vector(v)
                assert_allclose(ku @ kv - kv @ ku, np.zeros((4, 4)), atol=1e-14)

    def test_plus_wedges_with_structure_are_self_dual(self):
        # X ^ J1 Y + J1 X ^ Y and X ^ Y - J1 X ^ J1 Y for J1 in the plus half
        for _ in range(50):
            j = fd.random_ocs(1, RNG).matrix
            x, y = RNG.standard_normal((2, 4))
            w1 = fd.wedge_of_pair(x, j @ y) + fd.wedge_of_pair(j @ x, y)
            w2 = fd.wedge_of_pair(x, y) - fd.wedge_of_pair(j @ x, j @ y)
            assert np.max(np.abs(fd.split_pm(w1)[1])) < 1e-12
            assert np.max(np.abs(fd.split_pm(w2)[1])) < 1e-12


class TestInducedMap:
    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1))
    def test_orthogonal_and_half_behaviour(self, seed):
        rng = np.random.default_rng(seed)
        q = fibre.random_orthogonal(4, rng)
        m = fd.two_vector_map(q)
        assert_allclose(m @ m.T, np.eye(6), atol=1e-12)
        on_plus = m @ np.concatenate([rng.standard_normal(3), np.zeros(3)])
        if np.linalg.det(q) > 0:
            assert np.max(np.abs(on_plus[3:])) < 1e-12
        else:
            assert np.max(np.abs(on_plus[:3])) < 1e-12
