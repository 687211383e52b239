"""Tests for one-dimensional sequences and the product-sequence criteria."""

import math

import numpy as np
import pytest

from fockdens.exceptions import DimensionError, InvalidParameterError, SceneValidationError
from fockdens.models import Hypersurface, MultiPoly, ProductSequence, Sequence1D, Weight
from fockdens.models.reports import Verdict
from fockdens.services.density import density_at
from fockdens.services.sequences import (
    default_grid,
    density_1d,
    fiber_weight,
    gamma_cross_c_density,
    lattice,
    product_interp_check,
    product_samp_check,
    read_product_sequence,
    read_sequence,
    separation,
)

CROSS_WEIGHT = Weight.from_levi([[2.0, 1.0], [1.0, 1.0]])


def _product(gamma: list[complex], fibers: list[list[complex]]) -> ProductSequence:
    return ProductSequence(
        gamma=Sequence1D(points=gamma),
        lambdas=[Sequence1D(points=f) for f in fibers],
    )


class TestSequence1D:
    """Tests for planar sequences."""

    def test_points_must_be_distinct(self):
        """Repeated points are rejected."""
        with pytest.raises(ValueError, match="pairwise distinct"):
            Sequence1D(points=[1j, 1j])

    def test_separation(self):
        """Smallest pairwise distance."""
        s = Sequence1D(points=[0j, 3 + 0j, 3 + 0.5j, -2j])
        assert separation(s) == pytest.approx(0.5)

    def test_separation_needs_two_points(self):
        """One point has no separation."""
        with pytest.raises(InvalidParameterError):
            separation(Sequence1D(points=[0j]))

    def test_lattice(self):
        """alpha (Z + iZ) in a square has (2k + 1)^2 points and separation alpha."""
        s = lattice(0.5, 2.0)
        assert len(s) == 81
        assert separation(s) == pytest.approx(0.5)
        assert s.label == "lattice 0.5"

    def test_lattice_spacing_must_be_positive(self):
        """alpha <= 0 is rejected."""
        with pytest.raises(InvalidParameterError):
            lattice(0.0, 1.0)


class TestDensity1D:
    """Tests for the one-dimensional density."""

    def test_count_over_laplacian_mass(self):
        """Two points in D(0, 1) with phi = |z|^2 give 2 / (4 pi)."""
        s = Sequence1D(points=[0.5 + 0j, 0.5j, 2 + 0j])
        assert density_1d(s, Weight.euclidean(1), 0j, 1.0) == pytest.approx(2 / (4 * math.pi))

    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    def test_lattice_density(self, alpha):
        """alpha (Z + iZ) has density close to 1 / (4 alpha^2) on large discs."""
        s = lattice(alpha, 30.0)
        value = density_1d(s, Weight.euclidean(1), 0j, 25.0)
        assert value == pytest.approx(1 / (4 * alpha**2), rel=0.05)

    def test_empty_sequence(self):
        """No points means zero density."""
        assert density_1d(Sequence1D(), Weight.euclidean(1), 0j, 1.0) == 0.0

    def test_weight_must_be_planar(self, euclidean2):
        """The one-dimensional density needs a weight on C."""
        with pytest.raises(DimensionError):
            density_1d(Sequence1D(points=[0j]), euclidean2, 0j, 1.0)

    def test_fiber_weight(self):
        """The fiber weight keeps the Q22 entry."""
        assert fiber_weight(CROSS_WEIGHT).Q[0, 0].real == pytest.approx(1.0)


class TestProductCriteria:
    """Tests for the split-density sufficient conditions."""

    def test_single_gamma_point_violates(self):
        """Gamma = {0} with phi = |z|^2 + |z + w|^2 fails (b) at the origin."""
        ps = _product([0j], [[0j, 1 + 0j]])
        report = product_interp_check(ps, CROSS_WEIGHT, 1.0, 0.1, default_grid(ps))
        assert report.lhs[0] == pytest.approx(0.125)
        assert report.rhs[0] == pytest.approx(0.03125)
        assert report.margins[0] == pytest.approx(-0.09375)
        assert report.verdict is Verdict.VIOLATED
        assert "(sufficient, not necessary)" in report.wording

    def test_dbar_convention_reported(self):
        """In the d-dbar normalization the same point sits exactly on the boundary."""
        ps = _product([0j], [[0j]])
        report = product_interp_check(ps, CROSS_WEIGHT, 1.0, 0.1, [(0j, 0j)])
        assert report.lhs_dbar[0] == pytest.approx(0.5)
        assert report.rhs_dbar[0] == pytest.approx(0.5)
        assert report.margins_dbar[0] == pytest.approx(0.0)

    def test_satisfied_when_gamma_is_sparse(self):
        """Far gamma points and sparse fibers pass both conditions."""
        ps = _product([5 + 0j], [[0j]])
        report = product_interp_check(ps, CROSS_WEIGHT, 1.0, 0.1, [(0j, 0j)])
        assert report.verdict is Verdict.SATISFIED
        assert report.min_margin > 0
        assert "holds at every tested point" in report.wording

    def test_sampling_margins_are_negated(self):
        """Grid margins of the sampling test are the negation of the interpolation ones."""
        ps = _product([0j, 0.5 + 0j], [[0j], [1j]])
        grid = [(0j, 0j), (0.5 + 0j, 0j), (3 + 0j, 0j)]
        interp = product_interp_check(ps, CROSS_WEIGHT, 1.0, 0.2, grid)
        samp = product_samp_check(ps, CROSS_WEIGHT, 1.0, 0.2, grid)
        np.testing.assert_allclose(samp.margins, -np.asarray(interp.margins))
        assert samp.mode == "samp"

    def test_sparse_fibers_cannot_sample(self):
        """A single point per fiber is far below density 1 + eps."""
        ps = _product([0j], [[0j]])
        report = product_samp_check(ps, CROSS_WEIGHT, 1.0, 0.1, default_grid(ps))
        assert all(m < 0 for m in report.lambda_margins)
        assert report.verdict is Verdict.VIOLATED

    def test_empty_grid_without_fibers_is_inconclusive(self):
        """Nothing to test gives no verdict."""
        ps = _product([], [])
        report = product_interp_check(ps, CROSS_WEIGHT, 1.0, 0.1, [])
        assert report.verdict is Verdict.INCONCLUSIVE

    @pytest.mark.parametrize(("r", "eps"), [(0.0, 0.1), (1.0, 1.0), (1.0, -0.1)])
    def test_parameter_ranges(self, r, eps):
        """r > 0 and 0 <= eps < 1."""
        ps = _product([0j], [[0j]])
        with pytest.raises(InvalidParameterError):
            product_interp_check(ps, CROSS_WEIGHT, r, eps, [(0j, 0j)])

    def test_weight_must_live_on_c2(self):
        """Product criteria need a weight on C^2."""
        ps = _product([0j], [[0j]])
        with pytest.raises(DimensionError):
            product_interp_check(ps, Weight.euclidean(1), 1.0, 0.1, [(0j, 0j)])

    def test_default_grid(self):
        """Origin plus one point per nonzero gamma."""
        ps = _product([0j, 2 + 0j], [[0j], [0j]])
        assert default_grid(ps) == [(0j, 0j), (2 + 0j, 0j)]

    def test_fiber_count_must_match(self):
        """One fiber per gamma point."""
        with pytest.raises(ValueError, match="fiber sequences"):
            _product([0j, 1 + 0j], [[0j]])


class TestGammaCrossC:
    """Tests for the closed-form density of Gamma x C."""

    def test_matches_sampled_density(self):
        """The closed form agrees with the Monte Carlo density of prod (z1 - g)."""
        gamma = Sequence1D(points=[0j, 0.6 + 0j])
        H = Hypersurface(MultiPoly.from_roots_in_variable(2, 0, gamma.points))
        closed = gamma_cross_c_density(gamma, CROSS_WEIGHT, [0.1, 0.0], 1.0)
        report = density_at(H, CROSS_WEIGHT, [0.1, 0.0], 1.0, budget=4000, seed=3)
        assert abs(report.density - closed) <= 4 * report.mc_std_error + 0.02 * closed

    @pytest.mark.slow
    def test_random_configurations(self):
        """Closed form and sampled density agree within 3 sigma over 20 random scenes."""
        rng = np.random.default_rng(2024)
        agree = 0
        for k in range(20):
            count = int(rng.integers(1, 4))
            gamma = Sequence1D(
                points=[complex(0.8 * j, rng.uniform(-0.3, 0.3)) for j in range(count)]
            )
            a, c = rng.uniform(0.5, 2.0, 2)
            phase = np.exp(1j * rng.uniform(0, math.pi))
            b = 0.7 * math.sqrt(a * c) * rng.uniform(-1.0, 1.0) * phase
            w = Weight.from_levi([[a, b], [np.conj(b), c]])
            r = float(rng.uniform(0.5, 2.0))
            anchor = gamma.points[int(rng.integers(count))]
            x1 = anchor + 0.5 * r * rng.uniform(0, 1) * np.exp(2j * math.pi * rng.uniform())
            x = [x1, complex(rng.normal(), rng.normal())]
            H = Hypersurface(MultiPoly.from_roots_in_variable(2, 0, gamma.points))
            closed = gamma_cross_c_density(gamma, w, x, r)
            report = density_at(H, w, x, r, budget=4000, seed=k)
            agree += abs(report.density - closed) <= 3 * report.mc_std_error + 1e-12
        assert agree >= 19

    def test_vanishes_away_from_gamma(self):
        """Balls missing every gamma_j x C carry no density."""
        gamma = Sequence1D(points=[0j])
        assert gamma_cross_c_density(gamma, CROSS_WEIGHT, [3.0, 0.0], 1.0) == 0.0


class TestReaders:
    """Tests for sequence file readers."""

    def test_read_sequence(self, tmp_path):
        """One 're im' pair per line; comments and blanks are skipped."""
        path = tmp_path / "lattice.txt"
        path.write_text("# points\n0 0\n1.5 -2\n\n0 1  # on the axis\n", encoding="utf-8")
        s = read_sequence(path)
        assert s.points == [0j, 1.5 - 2j, 1j]
        assert s.label == "lattice"

    def test_malformed_line(self, tmp_path):
        """Lines without two numbers name their location."""
        path = tmp_path / "bad.txt"
        path.write_text("0 0\n1 2 3\n", encoding="utf-8")
        with pytest.raises(SceneValidationError, match="bad.txt:2"):
            read_sequence(path)

    def test_duplicate_points(self, tmp_path):
        """Repeated points fail validation."""
        path = tmp_path / "dup.txt"
        path.write_text("1 0\n1 0\n", encoding="utf-8")
        with pytest.raises(SceneValidationError, match="pairwise distinct"):
            read_sequence(path)

    def test_missing_file(self, tmp_path):
        """A missing file is a validation error."""
        with pytest.raises(SceneValidationError, match="file not found"):
            read_sequence(tmp_path / "nope.txt")

    def test_read_product_sequence(self, tmp_path):
        """[gamma] then one [lambda] per gamma point."""
        path = tmp_path / "split.txt"
        path.write_text(
            "[gamma]\n0 0\n2 0\n[lambda]\n0 0\n0 1\n[lambda]\n1 1\n", encoding="utf-8"
        )
        ps = read_product_sequence(path)
        assert ps.gamma.points == [0j, 2 + 0j]
        assert [len(f) for f in ps.lambdas] == [2, 1]
        assert ps.points()[1] == (0j, 1j)

    def test_product_sequence_needs_gamma(self, tmp_path):
        """A file without [gamma] is rejected."""
        path = tmp_path / "nogamma.txt"
        path.write_text("[lambda]\n0 0\n", encoding="utf-8")
        with pytest.raises(SceneValidationError):
            read_product_sequence(path)

    def test_product_sequence_fiber_mismatch(self, tmp_path):
        """Too few [lambda] sections fail alignment."""
        path = tmp_path / "short.txt"
        path.write_text("[gamma]\n0 0\n1 0\n[lambda]\n0 0\n", encoding="utf-8")
        with pytest.raises(SceneValidationError, match="fiber sequences"):
            read_product_sequence(path)
