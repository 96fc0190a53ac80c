import numpy as np
import pytest
from numpy.testing import assert_allclose

from twistorgh import curvature as cur
from twistorgh import fibre, fourdim as fd, tensors as tn

RNG = np.random.default_rng(505)
E = np.eye(4)


def point(component="++", rng=RNG):
    s1 = 1 if component[0] == "+" else -1
    s2 = 1 if component[1] == "+" else -1
    return tn.ProductTwistorPoint(fd.random_ocs(s1, rng), fd.random_ocs(s2, rng))


def random_args(p, params, k=3, rng=RNG):
    frame = tn.frame_at_point(p, params)
    out = []
    for _ in range(k):
        coeffs = rng.standard_normal(8)
        g = tn.gtangent()
        for c, e in zip(coeffs, frame):
            g = g + float(c) * e
        out.append(g)
    return out


def canonical_point():
    # J1 the structure of sqrt2 s1+, J2 of sqrt2 s2+
    return tn.ProductTwistorPoint(fd.sphere_to_J(fd.embed_half([1, 0, 0], 1), 1),
                                  fd.sphere_to_J(fd.embed_half([0, 1, 0], 1), 1))


class TestParams:
    def test_validation(self):
        tn.Params(1.0, 2.0, 3)
        with pytest.raises(ValueError, match="positive"):
            tn.Params(-1.0, 1.0, 1)
        with pytest.raises(ValueError, match="n must be"):
            tn.Params(1.0, 1.0, 5)


class TestMetric:
    def test_horizontal_lift_is_isometric(self):
        p = point()
        params = tn.Params(3.0, 0.5, 1)
        a = tn.gtangent(horizontal=E[0])
        assert tn.metric_Ht(p, a, a, params) == pytest.approx(1.0)

    def test_vertical_scaling(self):
        p = point()
        u2, _ = fd.vertical_basis(p.j1)
        a = tn.gtangent(v1=u2)  # G-unit vertical direction
        assert tn.metric_Ht(p, a, a, tn.Params(3.0, 1.0, 1)) == pytest.approx(3.0)

    def test_no_cross_term(self):
        p = point()
        u2, _ = fd.vertical_basis(p.j2)
        a = tn.gtangent(horizontal=RNG.standard_normal(4))
        b = tn.gtangent(v2=u2)
        assert tn.metric_Ht(p, a, b, tn.Params(1.3, 0.7, 2)) == 0.0

    def test_positive_definite(self):
        p = point("+-")
        params = tn.Params(0.4, 2.2, 4)
        for a in random_args(p, params):
            assert tn.metric_Ht(p, a, a, params) > 0.0

    def test_verticality_enforced(self):
        p = point()
        bad = tn.gtangent(v1=p.j1.matrix)
        with pytest.raises(tn.TangencyError, match="anticommute"):
            tn.metric_Ht(p, bad, bad, tn.Params(1.0, 1.0, 1))


class TestAlmostComplexStructures:
    def test_horizontal_action(self):
        p = point()
        x = RNG.standard_normal(4)
        for n in (1, 2, 3, 4):
            out = tn.acs(p, tn.gtangent(horizontal=x), tn.Params(1.0, 1.0, n))
            assert_allclose(out.horizontal, p.j1.matrix @ x)

    def test_vertical_sign_table_n3(self):
        p = point()
        v1 = fd.random_vertical_endo(p.j1, RNG)
        v2 = fd.random_vertical_endo(p.j2, RNG)
        out = tn.acs(p, tn.gtangent(v1=v1, v2=v2), tn.Params(1.0, 1.0, 3))
        assert_allclose(out.vertical.v1, -(p.j1.matrix @ v1))
        assert_allclose(out.vertical.v2, p.j2.matrix @ v2)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_square_is_minus_identity(self, n):
        p = point("+-")
        params = tn.Params(0.9, 1.4, n)
        for a in random_args(p, params):
            twice = tn.acs(p, tn.acs(p, a, params), params)
            assert_allclose(twice.horizontal, -a.horizontal, atol=1e-12)
            assert_allclose(twice.vertical.v1, -a.vertical.v1, atol=1e-12)
            assert_allclose(twice.vertical.v2, -a.vertical.v2, atol=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_metric_compatibility(self, n):
        p = point("-+")
        params = tn.Params(1.7, 0.6, n)
        a, b, _ = random_args(p, params)
        assert tn.metric_Ht(p, tn.acs(p, a, params), tn.acs(p, b, params), params) == \
            pytest.approx(tn.metric_Ht(p, a, b, params), abs=1e-12)


class TestFundamentalForm:
    def test_horizontal_value(self):
        p = point()
        params = tn.Params(1.0, 1.0, 1)
        a = tn.gtangent(horizontal=E[0])
        b = tn.gtangent(horizontal=p.j1.matrix @ E[0])
        assert tn.omega(p, a, b, params) == pytest.approx(1.0)

    def test_antisymmetry(self):
        p = point("+-")
        params = tn.Params(0.8, 1.1, 2)
        a, b, _ = random_args(p, params)
        assert tn.omega(p, a, b, params) == pytest.approx(-tn.omega(p, b, a, params), abs=1e-12)
        assert tn.omega(p, a, a, params) == pytest.approx(0.0, abs=1e-12)

    def test_vertical_pair_n1(self):
        p = point()
        v1 = fd.random_vertical_endo(p.j1, RNG)
        w1 = fd.random_vertical_endo(p.j1, RNG)
        params = tn.Params(1.0, 1.0, 1)
        val = tn.omega(p, tn.gtangent(v1=v1), tn.gtangent(v1=w1), params)
        assert val == pytest.approx(fibre.inner_G(p.j1.matrix @ v1, w1), abs=1e-12)


class TestCovariantDerivative:
    def test_all_horizontal_vanishes(self):
        p = point("+-")
        params = tn.Params(0.7, 1.2, 3)
        rmat = cur.random_strict_operator(RNG)
        args = [tn.gtangent(horizontal=RNG.standard_normal(4)) for _ in range(3)]
        assert tn.cov_deriv_omega(p, rmat, params, *args) == 0.0

    def test_flat_vertical_horizontal_value(self):
        # V1 the endomorphism of s2+ at J1 = structure of s1+: <V1 e1, e3> = 1/sqrt2
        p = canonical_point()
        v = tn.gtangent(v1=fd.endo_of_two_vector(fd.embed_half([0, 1, 0], 1)))
        b = tn.gtangent(horizontal=E[0])
        c = tn.gtangent(horizontal=E[2])
        for n in (1, 2, 3, 4):
            val = tn.cov_deriv_omega(p, np.zeros((6, 6)), tn.Params(1.0, 1.0, n), v, b, c)
            assert val == pytest.approx(1.0 / np.sqrt(2.0))

    def test_structure_index_difference(self):
        # same mixed arguments, n = 1 vs n = 2: difference is -2 t2 <R V2^, Z ^ X>
        p = point("+-")
        rmat = np.eye(6)
        t1, t2 = 0.9, 1.7
        v2 = fd.random_vertical_endo(p.j2, RNG)
        v = tn.gtangent(v2=v2)
        z = tn.gtangent(horizontal=RNG.standard_normal(4))
        x = tn.gtangent(horizontal=RNG.standard_normal(4))
        d1 = tn.cov_deriv_omega(p, rmat, tn.Params(t1, t2, 1), z, x, v)
        d2 = tn.cov_deriv_omega(p, rmat, tn.Params(t1, t2, 2), z, x, v)
        expected = -2.0 * t2 * float((rmat @ fd.two_vector_of_endo(v2))
                                     @ fd.wedge_of_pair(z.horizontal, x.horizontal))
        assert d1 - d2 == pytest.approx(expected, abs=1e-12)

    def test_antisymmetric_in_last_two_slots(self):
        p = point()
        params = tn.Params(1.3, 0.4, 4)
        rmat = cur.random_strict_operator(RNG)
        a, b, c = random_args(p, params)
        assert tn.cov_deriv_omega(p, rmat, params, a, b, c) == pytest.approx(
            -tn.cov_deriv_omega(p, rmat, params, a, c, b), abs=1e-11)

    def test_purely_vertical_patterns_vanish(self):
        p = point("+-")
        params = tn.Params(0.6, 0.9, 2)
        rmat = cur.random_strict_operator(RNG)
        w = tn.gtangent(v1=fd.random_vertical_endo(p.j1, RNG))
        u = tn.gtangent(v2=fd.random_vertical_endo(p.j2, RNG))
        x = tn.gtangent(horizontal=RNG.standard_normal(4))
        assert tn.cov_deriv_omega(p, rmat, params, w, x, u) == 0.0
        assert tn.cov_deriv_omega(p, rmat, params, x, u, w) == 0.0
        assert tn.cov_deriv_omega(p, rmat, params, w, u, w) == 0.0


class TestExteriorDerivative:
    def test_all_horizontal_vanishes(self):
        p = point()
        params = tn.Params(1.0, 1.0, 1)
        rmat = cur.random_strict_operator(RNG)
        args = [tn.gtangent(horizontal=RNG.standard_normal(4)) for _ in range(3)]
        assert tn.ext_deriv_omega(p, rmat, params, *args) == 0.0

    def test_flat_value(self):
        p = canonical_point()
        v = tn.gtangent(v1=fd.endo_of_two_vector(fd.embed_half([0, 1, 0], 1)))
        x = tn.gtangent(horizontal=E[0])
        y = tn.gtangent(horizontal=E[2])
        for n in (1, 2, 3, 4):
            val = tn.ext_deriv_omega(p, np.zeros((6, 6)), tn.Params(1.0, 1.0, n), x, y, v)
            assert val == pytest.approx(1.0 / np.sqrt(2.0))

    def test_fully_antisymmetric(self):
        p = point("+-")
        params = tn.Params(0.5, 1.6, 3)
        rmat = cur.random_strict_operator(RNG)
        a, b, c = random_args(p, params)
        base = tn.ext_deriv_omega(p, rmat, params, a, b, c)
        assert tn.ext_deriv_omega(p, rmat, params, b, a, c) == pytest.approx(-base, abs=1e-11)
        assert tn.ext_deriv_omega(p, rmat, params, a, c, b) == pytest.approx(-base, abs=1e-11)
        assert tn.ext_deriv_omega(p, rmat, params, c, a, b) == pytest.approx(base, abs=1e-11)

    @pytest.mark.parametrize("component", ["++", "+-"])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_equals_cyclic_covariant_sum(self, component, n):
        rng = np.random.default_rng(60 + n)
        p = point(component, rng)
        params = tn.Params(0.8, 1.3, n)
        rmat = cur.random_strict_operator(rng)
        for _ in range(25):
            a, b, c = random_args(p, params, rng=rng)
            cyc = (tn.cov_deriv_omega(p, rmat, params, a, b, c)
                   + tn.cov_deriv_omega(p, rmat, params, b, c, a)
                   + tn.cov_deriv_omega(p, rmat, params, c, a, b))
            assert tn.ext_deriv_omega(p, rmat, params, a, b, c) == pytest.approx(cyc, abs=1e-10)


class TestCodifferential:
    def test_horizontal_argument_vanishes(self):
        p = point("+-")
        rmat = cur.random_strict_operator(RNG)
        a = tn.gtangent(horizontal=RNG.standard_normal(4))
        assert tn.codiff_omega(p, rmat, tn.Params(1.0, 1.0, 2), a) == 0.0

    def test_flat_vanishes(self):
        p = point()
        params = tn.Params(0.9, 1.1, 1)
        (a,) = random_args(p, params, k=1)
        assert tn.codiff_omega(p, np.zeros((6, 6)), params, a) == 0.0

    def test_constant_curvature_kills_first_factor_verticals(self):
        # (J1 V1)^ is again vertical at J1, hence orthogonal to J1^
        p = point()
        v = tn.gtangent(v1=fd.random_vertical_endo(p.j1, RNG))
        params = tn.Params(1.7, 1.0, 1)
        val = tn.codiff_omega(p, np.eye(6), params, v)
        assert val == pytest.approx(0.0, abs=1e-12)
        assert val == pytest.approx(tn.codiff_via_frame(p, np.eye(6), params, v), abs=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_frame_trace(self, n):
        rng = np.random.default_rng(80 + n)
        p = point("+-", rng)
        params = tn.Params(1.2, 0.7, n)
        rmat = cur.random_strict_operator(rng)
        for a in random_args(p, params, rng=rng):
            assert tn.codiff_omega(p, rmat, params, a) == pytest.approx(
                tn.codiff_via_frame(p, rmat, params, a), abs=1e-10)

    def test_frame_is_orthonormal(self):
        p = point("-+")
        params = tn.Params(0.3, 2.4, 2)
        frame = tn.frame_at_point(p, params)
        gram = np.array([[tn.metric_Ht(p, a, b, params) for b in frame] for a in frame])
        assert_allclose(gram, np.eye(8), atol=1e-12)


class TestNijenhuis:
    def test_all_horizontal_vanishes(self):
        p = point("+-")
        params = tn.Params(1.0, 1.0, 3)
        rmat = cur.random_strict_operator(RNG)
        args = [tn.gtangent(horizontal=RNG.standard_normal(4)) for _ in range(3)]
        assert tn.nijenhuis_pairing(p, rmat, params, *args) == pytest.approx(0.0, abs=1e-12)

    def test_vertical_pair_vanishes(self):
        p = point()
        params = tn.Params(0.8, 1.5, 4)
        rmat = cur.random_strict_operator(RNG)
        v = tn.gtangent(v1=fd.random_vertical_endo(p.j1, RNG))
        w = tn.gtangent(v2=fd.random_vertical_endo(p.j2, RNG))
        c = tn.gtangent(horizontal=RNG.standard_normal(4),
                        v1=fd.random_vertical_endo(p.j1, RNG))
        assert tn.nijenhuis_pairing(p, rmat, params, v, w, c) == pytest.approx(0.0, abs=1e-12)

    def test_mixed_pairing_matrix_oracle(self):
        # H(N(X^h, V), Y^h) = 2 <J1 V1 X, Y> for n = 3, 4 and 0 for n = 1, 2
        p = canonical_point()
        v1 = fd.endo_of_two_vector(fd.embed_half([0, 1, 0], 1))
        rmat = cur.random_strict_operator(RNG)
        x = tn.gtangent(horizontal=E[0])
        v = tn.gtangent(v1=v1)
        y = tn.gtangent(horizontal=E[3])
        for n in (1, 2, 3, 4):
            val = tn.nijenhuis_pairing(p, rmat, tn.Params(1.0, 1.0, n), x, v, y)
            expected = 0.0 if n in (1, 2) else 2.0 * float(E[3] @ (p.j1.matrix @ (v1 @ E[0])))
            assert val == pytest.approx(expected, abs=1e-11)
            if n in (3, 4):
                assert abs(val) == pytest.approx(np.sqrt(2.0), abs=1e-12)

    @pytest.mark.parametrize("component", ["++", "+-"])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_identity_matches_closed_form(self, component, n):
        rng = np.random.default_rng(90 + n)
        p = point(component, rng)
        params = tn.Params(1.1, 0.6, n)
        rmat = cur.random_strict_operator(rng)
        for _ in range(25):
            a, b, c = random_args(p, params, rng=rng)
            ident = tn.nijenhuis_pairing(p, rmat, params, a, b, c)
            closed = tn.nijenhuis_closed_form(p, rmat, params, a, b, c, reading="plain")
            assert ident == pytest.approx(closed, abs=1e-10 * (1 + abs(ident)))

    def test_scaled_reading_disagrees(self):
        p = point("+-")
        params = tn.Params(1.0, 1.0, 1)
        rmat = np.eye(6)
        a, b, c = random_args(p, params)
        ident = tn.nijenhuis_pairing(p, rmat, params, a, b, c)
        scaled = tn.nijenhuis_closed_form(p, rmat, params, a, b, c, reading="scaled")
        assert abs(ident - scaled) > 1e-3

    def test_reading_resolution(self):
        reading, residuals = tn.resolve_nijenhuis_reading()
        assert reading == "plain"
        table = dict(residuals)
        assert table["plain"] < 1e-10
        assert table["scaled"] > 1e-3

    def test_unknown_reading_rejected(self):
        p = point()
        params = tn.Params(1.0, 1.0, 1)
        a, b, c = random_args(p, params)
        with pytest.raises(ValueError, match="reading"):
            tn.nijenhuis_closed_form(p, np.eye(6), params, a, b, c, reading="bogus")


class TestLeviCivitaComponents:
    def test_zero_curvature(self):
        p = point("+-")
        x, y = RNG.standard_normal((2, 4))
        out = tn.lc_horizontal_horizontal(p, np.zeros((6, 6)), x, y)
        assert_allclose(out.v1, np.zeros((4, 4)))
        v = tn.VerticalVector(fd.random_vertical_endo(p.j1, RNG),
                              fd.random_vertical_endo(p.j2, RNG))
        assert tn.lc_vertical_horizontal(p, np.zeros((6, 6)), tn.Params(1.0, 1.0, 1),
                                         v, x, y) == 0.0

    def test_vertical_part_pairs_with_half_coupling(self):
        for _ in range(10):
            p = point("+-")
            x, y = RNG.standard_normal((2, 4))
            rmat = cur.random_strict_operator(RNG)
            params = tn.Params(0.8, 1.9, 1)
            half_r = tn.lc_horizontal_horizontal(p, rmat, x, y)
            tn.check_vertical(p, half_r)
            v = tn.VerticalVector(fd.random_vertical_endo(p.j1, RNG),
                                  fd.random_vertical_endo(p.j2, RNG))
            pairing = (params.t1 * fibre.inner_G(half_r.v1, v.v1)
                       + params.t2 * fibre.inner_G(half_r.v2, v.v2))
            assert pairing == pytest.approx(
                0.5 * cur.coupling(rmat, x, y, p, v, params), abs=1e-10)

    def test_mixed_pairing_antisymmetric(self):
        p = point()
        rmat = cur.random_strict_operator(RNG)
        params = tn.Params(1.4, 0.5, 2)
        v = tn.VerticalVector(fd.random_vertical_endo(p.j1, RNG),
                              fd.random_vertical_endo(p.j2, RNG))
        x, y = RNG.standard_normal((2, 4))
        assert tn.lc_vertical_horizontal(p, rmat, params, v, x, y) == pytest.approx(
            -tn.lc_vertical_horizontal(p, rmat, params, v, y, x), abs=1e-12)


class TestRestriction:
    @pytest.mark.parametrize("component", ["++", "+-", "-+", "--"])
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_residuals_vanish(self, component, n):
        rng = np.random.default_rng(100 + n)
        p = point(component, rng)
        params = tn.Params(0.7, 1.8, n)
        rmat = cur.random_strict_operator(rng)
        for _ in range(10):
            args = [tn.gtangent(rng.standard_normal(4),
                                fd.random_vertical_endo(p.j1, rng)) for _ in range(3)]
            res = tn.restriction_residuals(p, rmat, params, *args)
            assert max(res.values()) < 1e-12

    def test_second_factor_rejected(self):
        p = point()
        params = tn.Params(1.0, 1.0, 1)
        bad = tn.gtangent(v2=fd.random_vertical_endo(p.j2, RNG))
        ok = tn.gtangent(horizontal=E[0])
        with pytest.raises(tn.TangencyError, match="second-factor"):
            tn.restriction_residuals(p, np.eye(6), params, bad, ok, ok)
