import random
from fractions import Fraction as F

import pytest

from subdiv.masks import Mask, catalog_get
from subdiv.refine import (ControlPolygon, MeshType, RefinementLimitError,
                           basis_experiment, basis_points_exact, basis_polygon,
                           curve_csv_text, delta, parameterize, refine_k,
                           refine_once)


def rand_polygon(rng, mesh=MeshType.PRIMAL):
    n = rng.randint(1, 6)
    values = [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)]
    if all(v == 0 for v in values):
        values[0] = F(1)
    return ControlPolygon(0, rng.randint(-5, 5), tuple(values), mesh)


class TestRefineOnce:
    def test_delta_reproduces_mask(self):
        for name in "abcd":
            mask = catalog_get(name).mask
            P = refine_once(delta(), mask)
            assert P.first_index == mask.support_min
            assert P.values == mask.coeffs
            assert P.level == 1

    def test_two_point_scheme_delta(self):
        P = refine_once(delta(), catalog_get("c").mask)
        assert (P.first_index, P.values) == (-1, (F(1, 2), F(1), F(1, 2)))

    def test_constant_window_stays_constant_inside(self):
        mask = catalog_get("a").mask
        P = ControlPolygon(0, -10, (F(1),) * 21)
        Q = refine_once(P, mask)
        # indices far from the boundary see a complete rule: value exactly 1
        for i in range(-10, 11):
            assert Q[i] == 1

    def test_linearity(self):
        rng = random.Random(41)
        mask = catalog_get("a").mask
        for _ in range(20):
            P, Q = rand_polygon(rng), rand_polygon(rng)
            alpha, beta = F(rng.randint(-5, 5)), F(rng.randint(-5, 5))
            lo = min(P.first_index, Q.first_index)
            hi = max(P.last_index, Q.last_index)
            combo = ControlPolygon(0, lo, tuple(alpha * P[i] + beta * Q[i]
                                                for i in range(lo, hi + 1)))
            rc = refine_once(combo, mask)
            rp, rq = refine_once(P, mask), refine_once(Q, mask)
            for i in range(rc.first_index - 2, rc.last_index + 3):
                assert rc[i] == alpha * rp[i] + beta * rq[i]

    def test_translation_covariance(self):
        rng = random.Random(43)
        mask = catalog_get("b").mask
        for _ in range(10):
            P = rand_polygon(rng)
            shifted = ControlPolygon(P.level, P.first_index + 3, P.values, P.mesh)
            r, rs = refine_once(P, mask), refine_once(shifted, mask)
            assert rs.first_index == r.first_index + 6
            assert rs.values == r.values


class TestRefineK:
    def test_two_levels_match_symbol_product(self):
        mask = catalog_get("a").mask
        P = refine_k(delta(), mask, 2)
        two_level = mask.symbol() * mask.symbol().dilate(2)
        assert P.first_index == two_level.min_exp
        for i in range(P.first_index, P.last_index + 1):
            assert P[i] == two_level[i]

    def test_support_growth(self):
        for name in "abcd":
            mask = catalog_get(name).mask
            for k in (1, 2, 5):
                P = refine_k(delta(), mask, k)
                lo = mask.support_min * (2 ** k - 1)
                hi = mask.support_max * (2 ** k - 1)
                assert P.first_index >= lo and P.last_index <= hi
        # width-6 scheme at one step: (w-1)(2^k - 1) + 1 = 6 points
        assert len(refine_k(delta(), catalog_get("a").mask, 1).values) == 6

    def test_sum_doubles_each_level(self):
        for name in "abcd":
            mask = catalog_get(name).mask
            P = delta()
            for k in range(1, 7):
                P = refine_once(P, mask)
                assert P.total() == 2 ** k

    def test_resource_cap(self):
        with pytest.raises(RefinementLimitError):
            refine_k(delta(), catalog_get("a").mask, 40, max_points=1000)


class TestParameterize:
    def test_level0_delta(self):
        curve = parameterize(delta())
        assert curve.points == ((0.0, 1.0),)

    def test_level1_primal(self):
        P = ControlPolygon(1, -1, (F(1), F(2), F(1)))
        ts = [t for t, _ in parameterize(P).points]
        assert ts == [-0.5, 0.0, 0.5]

    def test_level1_dual_offsets_by_half_step(self):
        P = ControlPolygon(1, 0, (F(1), F(2)), MeshType.DUAL)
        ts = [t for t, _ in parameterize(P).points]
        assert ts == [0.25, 0.75]


class TestBasisExperiment:
    def test_two_point_scheme_is_exact_tent(self):
        for t, v in basis_points_exact(catalog_get("c").mask, 10):
            assert v == max(F(0), 1 - abs(t))

    def test_cubic_bspline_center_value(self):
        pts = dict(basis_points_exact(catalog_get("d").mask, 10))
        assert abs(float(pts[F(0)]) - 2.0 / 3.0) < 1e-3

    def test_zero_iters_gives_nine_points(self):
        curve = basis_experiment(catalog_get("a").mask, 0)
        assert len(curve.points) == 9
        assert [t for t, _ in curve.points] == [float(i) for i in range(-4, 5)]

    def test_grid_size(self):
        curve = basis_experiment(catalog_get("c").mask, 4)
        assert len(curve.points) == 8 * 2 ** 4 + 1

    def test_compact_support_outside_is_zero(self):
        mask = catalog_get("d").mask
        P = basis_polygon(mask, 6)
        lo = mask.support_min * (2 ** 6 - 1)
        hi = mask.support_max * (2 ** 6 - 1)
        assert P.first_index >= lo and P.last_index <= hi


class TestCsvExport:
    def test_header_and_format(self):
        text = curve_csv_text(parameterize(delta()))
        lines = text.split("\n")
        assert lines[0] == "t,value"
        assert lines[1] == "0,1"
        assert text.endswith("\n")
