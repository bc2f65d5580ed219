from fractions import Fraction

import pytest

from hmclass import corpus
from hmclass.ambient import GradedClass
from hmclass.arrangement import build, sigma_strata
from hmclass.coeffs import PolyY, RatFuncY
from hmclass.strata import (StrataError, build_labels, chow_dims, compactify,
                            deligne_base, deligne_class, deligne_residues,
                            homology_weight_dims, log_chern,
                            power_identity_holds, push_to_sigma, residues)

F = Fraction


def stratum_of(arr, key):
    for s in sigma_strata(arr):
        if s.key == key:
            return s
    raise KeyError(key)


def two_planes():
    return build(3, [((1, 0, 0, 0), 1), ((0, 1, 0, 0), 1)])


def double_plane_crossed(k):
    """Plane with multiplicity two crossed by k other generic planes."""
    hyps = [((0, 0, 0, 1), 2)]
    others = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (1, 1, 1, 0)]
    for cov in others[:k]:
        hyps.append((cov, 1))
    return build(3, hyps)


def double_plane_pencil():
    """Plane with multiplicity two meeting a pencil of three planes; the
    induced lines are concurrent, so one blow-up is forced."""
    return build(3, [((0, 0, 0, 1), 2), ((1, 0, 0, 0), 1),
                     ((0, 1, 0, 0), 1), ((1, 1, 0, 0), 1)])


class TestCompactify:
    def test_line_of_two_planes(self):
        arr = two_planes()
        model = compactify(arr, stratum_of(arr, "1,2"))
        assert model.kind == "curve"
        assert [c.name for c in model.boundary] == ["infinity"]

    def test_double_line(self):
        arr = corpus.load("doubleline")
        model = compactify(arr, stratum_of(arr, "1"))
        assert model.kind == "curve"
        assert [c.source for c in model.boundary] == ["infinity"]

    def test_generic_crossed_surface_has_no_blowups(self):
        arr = double_plane_crossed(3)
        model = compactify(arr, stratum_of(arr, "1"))
        assert model.kind == "surface"
        assert model.blown == ()
        sources = [c.source for c in model.boundary]
        assert sources.count("edge") == 3 and sources.count("infinity") == 1

    def test_pencil_crossed_surface_blows_up_the_center(self):
        arr = double_plane_pencil()
        model = compactify(arr, stratum_of(arr, "1"))
        assert model.kind == "surface"
        assert model.blown == ("1,2,3,4",)
        ring = model.ring
        eps = ring.eps("1,2,3,4")
        for comp in model.boundary:
            if comp.source == "edge":
                assert comp.cls == ring.e - eps
            elif comp.source == "exceptional":
                assert comp.cls == eps
            else:
                assert comp.cls == ring.e

    def test_point_stratum(self):
        arr = corpus.load("triangle3")
        model = compactify(arr, sigma_strata(arr)[0])
        assert model.kind == "point" and model.boundary == ()

    def test_dimension_cap(self):
        arr = build(4, [((1, 0, 0, 0, 0), 2)])
        with pytest.raises(StrataError, match="unsupported stratum dimension"):
            compactify(arr, sigma_strata(arr)[0])


class TestResidues:
    def test_double_line_infinity_residue_vanishes(self):
        arr = corpus.load("doubleline")
        model = compactify(arr, stratum_of(arr, "1"))
        assert residues(model) == {"infinity": 0}

    def test_fourplanes_line_boundary(self):
        arr = corpus.load("fourplanes")
        model = compactify(arr, stratum_of(arr, "1,2"))
        got = residues(model)
        assert got == {"1,2,3": 1, "1,2,4": 1, "infinity": 0}

    def test_divisible_total_degree(self):
        # m_s | m forces a vanishing infinity residue
        arr = corpus.load("pencil3planes")
        model = compactify(arr, stratum_of(arr, "1,2,3"))
        assert residues(model)["infinity"] == 0

    @pytest.mark.parametrize("name", list(corpus.ALL_NAMES))
    def test_windows(self, name):
        arr = corpus.load(name)
        for s in sigma_strata(arr):
            model = compactify(arr, s)
            for v in residues(model).values():
                assert 0 <= v < model.m_s


class TestDeligne:
    def degree(self, model, elem):
        # divisor degree on a curve model
        return elem.coeff(1).as_poly()(0)

    def test_double_line_nontrivial_character(self):
        arr = corpus.load("doubleline")
        model = compactify(arr, stratum_of(arr, "1"))
        cls = deligne_class(model, 1)
        assert self.degree(model, cls) == -1

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_pencil_every_character(self, k):
        arr = corpus.load("pencil3planes")
        model = compactify(arr, stratum_of(arr, "1,2,3"))
        assert self.degree(model, deligne_class(model, k)) == -1

    def test_point_model_trivial(self):
        arr = corpus.load("triangle3")
        model = compactify(arr, sigma_strata(arr)[0])
        assert deligne_class(model, model.m_s).is_zero()

    def test_k_range(self):
        arr = corpus.load("doubleline")
        model = compactify(arr, stratum_of(arr, "1"))
        with pytest.raises(StrataError):
            deligne_class(model, 0)
        with pytest.raises(StrataError):
            deligne_class(model, 3)

    @pytest.mark.parametrize("name", list(corpus.ALL_NAMES))
    def test_residue_window_default_mode(self, name):
        arr = corpus.load(name)
        for s in sigma_strata(arr):
            model = compactify(arr, s)
            for k in range(1, model.m_s + 1):
                for v in deligne_residues(model, k).values():
                    assert 0 < v <= 1

    def test_residue_window_other_mode(self):
        arr = corpus.load("fourplanes")
        for s in sigma_strata(arr):
            model = compactify(arr, s)
            for k in range(0, model.m_s):
                for v in deligne_residues(model, k, "res_[0,1)").values():
                    assert 0 <= v < 1

    @pytest.mark.parametrize("name", list(corpus.ALL_NAMES))
    def test_tensor_power_identity(self, name):
        arr = corpus.load(name)
        for s in sigma_strata(arr):
            assert power_identity_holds(compactify(arr, s))

    def test_tensor_power_identity_on_blown_surface(self):
        arr = double_plane_pencil()
        assert power_identity_holds(compactify(arr, stratum_of(arr, "1")))

    def test_base_class_of_fourplanes_line(self):
        arr = corpus.load("fourplanes")
        model = compactify(arr, stratum_of(arr, "1,2"))
        assert self.degree(model, deligne_base(model)) == -1


class TestLogChern:
    def test_curve_with_two_boundary_points(self):
        arr = two_planes()
        model = compactify(arr, stratum_of(arr, "1,2"))
        assert len(model.boundary) == 1
        # doubleline in the plane also has one boundary point; use the
        # fourplanes line for three
        arr4 = corpus.load("fourplanes")
        model4 = compactify(arr4, stratum_of(arr4, "1,2"))
        cd = log_chern(model4, 1)
        assert cd.c(1).coeff(1).as_poly()(0) == 1  # -2 + 3

    def test_curve_degree_formula(self):
        arr = corpus.load("pencil3planes")
        model = compactify(arr, stratum_of(arr, "1,2,3"))
        cd = log_chern(model, 1)
        assert cd.c(1).coeff(1).as_poly()(0) == -1  # -2 + 1

    def test_surface_top_power_three_boundary_lines(self):
        # plane with multiplicity two crossed by two generic planes: the
        # boundary is two induced lines plus the generic one, so the top
        # logarithmic power is trivial
        arr = double_plane_crossed(2)
        model = compactify(arr, stratum_of(arr, "1"))
        cd = log_chern(model, 2)
        assert cd.c(1).is_zero()

    def test_surface_middle_power(self):
        arr = corpus.load("doubleplane3")
        model = compactify(arr, stratum_of(arr, "1"))
        cd = log_chern(model, 1)
        ring = model.ring
        assert cd.rank == 2
        assert cd.c(1) == ring.e
        assert cd.c(2) == ring.pt

    def test_q_out_of_range(self):
        arr = corpus.load("doubleline")
        model = compactify(arr, stratum_of(arr, "1"))
        with pytest.raises(StrataError):
            log_chern(model, 2)


class TestSurfaceRing:
    def test_proper_transform_intersections(self):
        arr = double_plane_pencil()
        model = compactify(arr, stratum_of(arr, "1"))
        ring = model.ring
        line_a, line_b = [c.cls for c in model.boundary if c.source == "edge"][:2]
        infinity = [c.cls for c in model.boundary if c.source == "infinity"][0]

        def deg(elem):
            return elem.coeffs[-1].as_poly()(0)

        # both induced lines pass through the blown point
        assert deg(line_a * line_b) == 0
        # the generic line misses it
        assert deg(line_a * infinity) == 1
        assert deg(infinity * infinity) == 1

    def test_exceptional_self_intersection(self):
        arr = double_plane_pencil()
        model = compactify(arr, stratum_of(arr, "1"))
        eps = model.ring.eps("1,2,3,4")
        assert eps * eps == -model.ring.pt


class TestPushAndLabels:
    def test_line_stratum_own_label(self):
        arr = corpus.load("fourplanes")
        schema = build_labels(arr)
        model = compactify(arr, stratum_of(arr, "1,2"))
        vec = push_to_sigma(schema, model.edge,
                            GradedClass(model.ring, model.ring.one()))
        assert vec.coefficient("L_{12}") == RatFuncY.ONE
        assert vec.trace().is_zero()

    def test_point_class_shared_label(self):
        arr = corpus.load("fourplanes")
        schema = build_labels(arr)
        model = compactify(arr, stratum_of(arr, "1,2"))
        pt = model.ring.basis_element(1)
        vec = push_to_sigma(schema, model.edge, GradedClass(model.ring, pt))
        assert vec.coefficient("Q_{0}") == RatFuncY.ONE

    def test_exceptional_class_contracts(self):
        arr = double_plane_pencil()
        schema = build_labels(arr)
        model = compactify(arr, stratum_of(arr, "1"))
        eps = model.ring.eps("1,2,3,4")
        vec = push_to_sigma(schema, model.edge, GradedClass(model.ring, eps))
        assert vec.is_zero()

    def test_push_respects_point_degree(self):
        arr = corpus.load("doubleplane3")
        schema = build_labels(arr)
        model = compactify(arr, stratum_of(arr, "1"))
        elem = model.ring.pt * 7 + model.ring.e * 3
        vec = push_to_sigma(schema, model.edge, GradedClass(model.ring, elem))
        assert vec.trace() == RatFuncY(PolyY([7]))

    def test_codim2_edge_inside_multiple_hyperplane_shares(self):
        arr = corpus.load("doubleplane3")
        schema = build_labels(arr)
        model = compactify(arr, stratum_of(arr, "1,2"))
        vec = push_to_sigma(schema, model.edge,
                            GradedClass(model.ring, model.ring.one()))
        assert vec.coefficient("Q_{1}") == RatFuncY.ONE

    def test_label_inventory(self):
        schema = build_labels(corpus.load("doubleplane3"))
        assert schema.names() == ["H_{1}", "L_{23}", "L_{24}", "L_{34}",
                                  "Q_{1}", "Q_{0}"]

    def test_smooth_arrangement_has_no_labels(self):
        arr = build(2, [((1, 0, 0), 1)])
        assert build_labels(arr).labels == ()


class TestDimensionTables:
    def test_lines_in_the_plane(self):
        dims = chow_dims(corpus.load("triangle3"))
        assert dims["CH_X"] == {1: 3, 0: 1}
        assert dims["CH_Sigma"] == {1: 0, 0: 3}

    def test_fourplanes(self):
        dims = chow_dims(corpus.load("fourplanes"))
        assert dims["CH_Sigma"] == {2: 0, 1: 6, 0: 1}
        assert dims["CH_X"] == {2: 4, 1: 1, 0: 1}

    def test_doubleplane(self):
        dims = chow_dims(corpus.load("doubleplane3"))
        assert dims["CH_Sigma"] == {2: 1, 1: 4, 0: 1}

    def test_smooth(self):
        dims = chow_dims(build(3, [((1, 0, 0, 0), 1)]))
        assert all(v == 0 for v in dims["CH_Sigma"].values())

    @pytest.mark.parametrize("name,r", [("triangle3", 3), ("quad6a", 6),
                                        ("fourplanes", 4)])
    def test_weight_dims(self, name, r):
        arr = corpus.load(name)
        dims = homology_weight_dims(arr)
        n = arr.n
        assert dims[2 * n - 2] == r
        for k in range(2 * n - 2):
            assert dims[k] == (1 if k % 2 == 0 else 0)
