from fractions import Fraction
from itertools import product

import pytest

from hmclass import corpus
from hmclass.arrangement import build, edges, localize, sigma_strata
from hmclass.spectra import (Spectrum, SpectrumError, SpectrumValidationError,
                             catalogue_spectrum, sp_monomial, sp_ordinary,
                             sp_shift, sp_unshift, sp_user_load, sp_validate,
                             stratum_spectrum)

F = Fraction


def entries(sp):
    return dict(sp.entries)


def concurrent_lines(k):
    """k distinct lines through one point of the projective plane."""
    covs = [(1, i, 0) for i in range(k - 1)] + [(0, 1, 0)]
    return build(2, [(c, 1) for c in covs])


def boolean_point(mults):
    """Coordinate hyperplanes with multiplicities in projective r-space,
    localized at their common point."""
    r = len(mults)
    covs = []
    for i in range(r):
        cov = [0] * (r + 1)
        cov[i] = 1
        covs.append(tuple(cov))
    arr = build(r, list(zip(covs, mults)))
    top = [e for e in edges(arr) if e.codim == r][0]
    return localize(arr, top)


class TestMonomial:
    def test_double_point(self):
        assert entries(sp_monomial([2])) == {F(1, 2): 1}

    def test_node(self):
        assert entries(sp_monomial([1, 1])) == {F(1): 1}

    def test_boolean_triple(self):
        assert entries(sp_monomial([1, 1, 1])) == {F(1): 1, F(2): -2}

    def test_single_variable_closed_form(self):
        for m in range(2, 7):
            expected = {F(c, m): 1 for c in range(1, m)}
            assert entries(sp_monomial([m])) == expected

    def test_frame(self):
        assert sp_monomial([2, 1]).frame == ("germ", 2)

    def test_bad_exponents(self):
        with pytest.raises(SpectrumError):
            sp_monomial([0, 1])

    def test_mass_against_mobius_oracle(self):
        # total mass must match the signed reduced Euler characteristic of
        # the Milnor fiber computed through the lattice route
        for r in (1, 2, 3):
            for mults in product((1, 2, 3), repeat=r):
                loc = boolean_point(list(mults))
                report = sp_validate(sp_monomial(list(mults)), loc)
                assert report["ok"], (mults, report["failures"])


class TestOrdinary:
    def test_two_lines_matches_monomial(self):
        assert sp_ordinary(2) == sp_monomial([1, 1])

    def test_three_lines(self):
        assert entries(sp_ordinary(3)) == {F(2, 3): 1, F(1): 2, F(4, 3): 1}

    def test_four_lines(self):
        assert entries(sp_ordinary(4)) == {
            F(1, 2): 1, F(3, 4): 2, F(1): 3, F(5, 4): 2, F(3, 2): 1}

    @pytest.mark.parametrize("k", range(2, 7))
    def test_mass_symmetry_support(self, k):
        sp = sp_ordinary(k)
        assert sp.mass == (k - 1) ** 2
        table = entries(sp)
        assert all(table[2 - a] == m for a, m in table.items())
        assert all(0 < a < 2 for a in sp.support)

    @pytest.mark.parametrize("k", range(2, 7))
    def test_validates_against_concurrent_lines(self, k):
        arr = concurrent_lines(k)
        point = [e for e in edges(arr) if e.codim == 2][0]
        assert len(point.index_set) == k
        report = sp_validate(sp_ordinary(k), localize(arr, point))
        assert report["ok"], report["failures"]

    def test_rejects_single_line(self):
        with pytest.raises(SpectrumError):
            sp_ordinary(1)


class TestShift:
    def fourplanes_line(self):
        arr = corpus.load("fourplanes")
        return arr, [s for s in sigma_strata(arr) if s.dim == 1][0]

    def test_node_on_a_line(self):
        arr, line = self.fourplanes_line()
        shifted = sp_shift(sp_monomial([1, 1]), line, arr.n)
        assert entries(shifted) == {F(2): -1}
        assert shifted.frame == ("stratum", 3)

    def test_dimension_zero_is_identity(self):
        arr = corpus.load("triangle3")
        point = sigma_strata(arr)[0]
        sp = sp_ordinary(2)
        assert entries(sp_shift(sp, point, arr.n)) == entries(sp)

    def test_triple_germ_on_a_line(self):
        arr = corpus.load("pencil3planes")
        line = sigma_strata(arr)[0]
        shifted = sp_shift(sp_ordinary(3), line, arr.n)
        assert entries(shifted) == {F(5, 3): -1, F(2): -2, F(7, 3): -1}

    def test_round_trip(self):
        arr, line = self.fourplanes_line()
        sp = sp_ordinary(2)
        assert sp_unshift(sp_shift(sp, line, arr.n), line) == sp

    def test_frame_mismatch(self):
        arr, line = self.fourplanes_line()
        stratum_framed = sp_shift(sp_monomial([1, 1]), line, arr.n)
        with pytest.raises(SpectrumError):
            sp_shift(stratum_framed, line, arr.n)  # already in stratum frame
        with pytest.raises(SpectrumError):
            sp_shift(sp_monomial([2, 1, 1]), line, arr.n)  # germ dim 3, codim 2


class TestValidate:
    def test_support_failure(self):
        arr = concurrent_lines(3)
        point = [e for e in edges(arr) if e.codim == 2][0]
        bad = Spectrum.make({F(0): 1, F(1): 3}, ("germ", 2))
        report = sp_validate(bad, localize(arr, point))
        assert not report["ok"]
        assert any("support" in f for f in report["failures"])

    def test_mass_failure(self):
        arr = concurrent_lines(3)
        point = [e for e in edges(arr) if e.codim == 2][0]
        bad = Spectrum.make({F(1): 1}, ("germ", 2))
        report = sp_validate(bad, localize(arr, point))
        assert any("mass" in f for f in report["failures"])

    def test_denominator_failure(self):
        arr = concurrent_lines(3)
        point = [e for e in edges(arr) if e.codim == 2][0]
        bad = Spectrum.make({F(1, 5): 4}, ("germ", 2))
        report = sp_validate(bad, localize(arr, point))
        assert any("denominator" in f for f in report["failures"])

    @pytest.mark.parametrize("name", list(corpus.ALL_NAMES))
    def test_catalogue_validates_everywhere(self, name):
        arr = corpus.load(name)
        for s in sigma_strata(arr):
            loc = localize(arr, s.edge)
            sp = catalogue_spectrum(arr, s.edge, loc)
            assert sp is not None
            report = sp_validate(sp, loc)
            assert report["ok"], (name, s.key, report["failures"])


class TestUserTables:
    def test_manual_ordinary_table_accepted(self):
        arr = corpus.load("concurrent3")
        tables = sp_user_load(
            {"1,2,3": [{"alpha": "2/3", "mult": 1}, {"alpha": "1", "mult": 2},
                       {"alpha": "4/3", "mult": 1}]}, arr)
        assert tables["1,2,3"] == sp_ordinary(3)

    def test_empty_table_for_trivial_germ_accepted(self):
        # a simple hyperplane has a smooth germ: empty spectrum, all checks
        # trivially pass
        arr = corpus.load("triangle3")
        tables = sp_user_load({"1": []}, arr)
        assert tables["1"].is_zero()

    def test_mass_violation_rejected(self):
        arr = corpus.load("concurrent3")
        with pytest.raises(SpectrumValidationError):
            sp_user_load({"1,2,3": [{"alpha": "1", "mult": 1}]}, arr)

    def test_unknown_edge_rejected(self):
        arr = corpus.load("concurrent3")
        with pytest.raises(SpectrumError):
            sp_user_load({"9": []}, arr)

    def test_malformed_exponent_rejected(self):
        arr = corpus.load("concurrent3")
        with pytest.raises(SpectrumError):
            sp_user_load({"1,2,3": [{"alpha": "x", "mult": 1}]}, arr)

    def test_user_table_overrides_catalogue(self):
        arr = corpus.load("concurrent3")
        tables = sp_user_load(
            {"1,2,3": [{"alpha": "2/3", "mult": 1}, {"alpha": "1", "mult": 2},
                       {"alpha": "4/3", "mult": 1}]}, arr)
        stratum = sigma_strata(arr)[0]
        assert stratum_spectrum(arr, stratum, tables) is tables["1,2,3"]


class TestCatalogueDispatch:
    def test_monomial_for_boolean_edges(self):
        arr = corpus.load("doubleplane3")
        line = [e for e in edges(arr) if e.index_set == (0, 1)][0]
        sp = catalogue_spectrum(arr, line)
        assert sp == sp_monomial([2, 1])

    def test_ordinary_for_reduced_plane_points(self):
        arr = corpus.load("quad6a")
        triple = [e for e in edges(arr) if len(e.index_set) == 3][0]
        assert catalogue_spectrum(arr, triple) == sp_ordinary(3)

    def test_none_for_nonreduced_plane_points(self):
        arr = build(2, [((1, 0, 0), 2), ((0, 1, 0), 1), ((1, 1, 0), 1)])
        point = [e for e in edges(arr) if e.codim == 2][0]
        assert catalogue_spectrum(arr, point) is None
