import pytest

from hmclass.ambient import (GradedClass, euler_via_chern, specialize,
                             ty_class_pn, virtual_genus, virtual_pushed,
                             virtual_pushed_ci)
from hmclass.coeffs import PolyY, RatFuncY
from hmclass.genera import ChernData, class_from_roots, lambda_y
from hmclass.milnor import td_transform
from hmclass.rings import ProjRing


def polys(gc):
    return [c.as_poly() for c in gc.coeff_list()]


class TestHirzebruchClassOfPn:
    def test_line(self):
        assert polys(ty_class_pn(1)) == [PolyY([1, -1]), PolyY([1])]

    def test_plane_trace(self):
        assert ty_class_pn(2).trace() == RatFuncY(PolyY([1, -1, 1]))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_arithmetic_genus_normalization(self, n):
        assert ty_class_pn(n).trace().as_poly()(0) == 1

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_lambda_y_route(self, n):
        # independent route: scaled Todd transformation of the lambda_y
        # class of the cotangent bundle
        ring = ProjRing(n)
        cotangent_total = (ring.one() - ring.h) ** (n + 1)
        cd = ChernData(n, tuple(cotangent_total.graded_part(i)
                                for i in range(1, n + 1)))
        ch = lambda_y(cd, ring)
        todd = class_from_roots(ring, [ring.h] * (n + 1), "Todd")
        got = td_transform(ch, todd)
        assert got.elem == ty_class_pn(n).elem


class TestVirtualClasses:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_degree_one_is_smooth_hyperplane(self, n):
        pushed = virtual_pushed(1, n)
        inner = ty_class_pn(n - 1)
        for k in range(n - 1 + 1):
            assert pushed.coeff_list()[k] == inner.coeff_list()[k]
        assert pushed.coeff_list()[n].is_zero()

    def test_quadric_surface_trace(self):
        assert virtual_genus(2, 3) == PolyY([1, -2, 1])

    def test_quartic_surface_trace(self):
        assert virtual_genus(4, 3) == PolyY([2, -20, 2])

    def test_conic_and_cubic(self):
        assert virtual_genus(2, 2) == PolyY([1, -1])
        assert virtual_genus(3, 3) == PolyY([1, -7, 1])

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_degree_one_genus(self, n):
        assert virtual_genus(1, n) == PolyY([(-1) ** p for p in range(n)])

    @pytest.mark.parametrize("d,n", [(2, 2), (3, 2), (2, 3), (3, 3), (4, 3),
                                     (5, 3), (2, 4), (3, 4)])
    def test_coefficients_polynomial_and_leading(self, d, n):
        gc = virtual_pushed(d, n)
        for c in gc.coeff_list():
            assert c.is_polynomial()
        assert gc.coeff_list()[n - 1] == RatFuncY(PolyY([d]))

    @pytest.mark.parametrize("d,n", [(2, 2), (3, 2), (4, 2), (2, 3), (3, 3),
                                     (4, 3), (5, 3), (3, 4)])
    def test_euler_against_chern_integral(self, d, n):
        assert virtual_genus(d, n)(-1) == euler_via_chern(d, n)

    def test_complete_intersection_line(self):
        gc = virtual_pushed_ci([1, 1], 3)
        assert gc.trace() == RatFuncY(PolyY([1, -1]))  # a line in 3-space


class TestSpecialize:
    def test_chern_class_of_line(self):
        got = specialize(ty_class_pn(1), -1)
        assert [c.num.coeff(0) for c in got.coeff_list()] == [2, 1]

    def test_todd_of_line(self):
        got = specialize(ty_class_pn(1), 0)
        assert [c.num.coeff(0) for c in got.coeff_list()] == [1, 1]

    def test_zero_class(self):
        ring = ProjRing(2)
        gc = GradedClass(ring, ring.zero())
        assert specialize(gc, 5).is_zero()

    def test_pole_error(self):
        ring = ProjRing(1)
        elem = ring.one() * RatFuncY(PolyY.ONE, PolyY.ONE_PLUS_Y)
        with pytest.raises(ZeroDivisionError, match="non-polynomial"):
            specialize(GradedClass(ring, elem), -1)
