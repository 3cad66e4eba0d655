import numpy as np
import pytest

from corrbias import (
    AffineTowardOne,
    DensityParams,
    Identity,
    NegativeShrink,
    ParameterDomainError,
    QuantileBias,
    UpwardShift,
    curve,
    pearson_cdf,
    prob_underestimation,
    transform_curve,
)
from corrbias.underestimation import default_grid

GRID = np.linspace(-0.95, 0.95, 39)


def test_identity_at_zero():
    assert prob_underestimation(Identity(), 0.0, 20) == pytest.approx(0.5, abs=1e-12)


def test_constant_level_example():
    p = prob_underestimation(QuantileBias(0.95, 20), -0.7, 20)
    assert p == pytest.approx(0.05, abs=1e-6)


def test_affine_below_image_is_zero():
    assert prob_underestimation(AffineTowardOne(0.5), -0.2, 20) == 0.0


def test_affine_matches_definition():
    rho, a = 0.3, 0.238
    expected = pearson_cdf((rho - a) / (1 - a), DensityParams(20, rho))
    assert prob_underestimation(AffineTowardOne(a), rho, 20) == pytest.approx(expected, abs=1e-15)


def test_shift_matches_definition():
    rho, c = -0.2, 0.21
    expected = pearson_cdf(rho - c, DensityParams(20, rho))
    assert prob_underestimation(UpwardShift(c, 0.3), rho, 20) == pytest.approx(expected, abs=1e-15)
    assert prob_underestimation(UpwardShift(c), -0.85, 20) == 0.0


def test_brute_force_shrink_excludes_atom():
    t = NegativeShrink(1.0)
    assert prob_underestimation(t, -0.3, 20) == 0.0
    assert prob_underestimation(t, 0.0, 20) == 0.0
    assert prob_underestimation(t, 0.2, 20) == pytest.approx(
        prob_underestimation(Identity(), 0.2, 20), abs=1e-15)


def test_quantile_bias_needs_matching_n():
    with pytest.raises(ParameterDomainError):
        prob_underestimation(QuantileBias(0.95, 20), 0.1, 30)


def test_rho_domain():
    with pytest.raises(ParameterDomainError):
        prob_underestimation(Identity(), 1.0, 20)


class TestCurve:
    def test_identity_curve(self):
        c = curve(Identity(), 20, [-0.5, 0.0, 0.5])
        assert np.all((c.prob > 0) & (c.prob < 1))
        assert c.prob[1] == pytest.approx(0.5, abs=1e-12)
        assert c.points[1] == (0.0, c.prob[1])

    def test_quantile_curve_constant(self):
        c = curve(QuantileBias(0.99, 20), 20, np.linspace(-0.9, 0.9, 7))
        assert np.max(np.abs(c.prob - 0.01)) <= 1e-6

    def test_step_near_zero_for_shrink(self):
        c = curve(NegativeShrink(0.95), 20, [-0.3, -0.1, -0.01, 0.0, 0.01, 0.1])
        assert np.all(c.prob[:2] == 0.0)
        # rho / (1 - b) = -0.2: steep but not yet a step
        assert 0.0 < c.prob[2] < 0.5 * prob_underestimation(Identity(), -0.01, 20)
        ident = curve(Identity(), 20, [0.0, 0.01, 0.1]).prob
        assert np.allclose(c.prob[3:], ident, atol=1e-12)

    def test_default_grid(self):
        g = default_grid()
        assert g.size == 201 and g[0] == -0.99 and g[-1] == 0.99

    @pytest.mark.parametrize("grid", [[0.1, 0.0], [-1.0, 0.0], [0.2, 0.2]])
    def test_grid_validation(self, grid):
        with pytest.raises(ParameterDomainError):
            curve(Identity(), 20, grid)

    def test_transform_curve(self):
        tc = transform_curve(AffineTowardOne(0.23), [-1.0, 0.0, 1.0])
        assert np.allclose(tc.r_tilde, [-0.54, 0.23, 1.0], atol=1e-15)


class TestFigureShapes:
    def test_affine_ordering(self):
        probs = np.array([curve(AffineTowardOne(a), 20, GRID).prob
                          for a in (0.0, 0.01, 0.05, 0.1, 0.238, 0.5)])
        assert np.all(np.diff(probs, axis=0) <= 1e-12)

    def test_shrink_coincides_on_nonnegative_rho(self):
        pos = GRID[GRID >= 0]
        probs = np.array([curve(NegativeShrink(b), 20, pos).prob
                          for b in (0.0, 0.01, 0.05, 0.1, 0.5, 0.95)])
        assert np.max(np.abs(probs - probs[0])) <= 1e-10

    def test_shift_ordering(self):
        probs = np.array([curve(UpwardShift(c), 20, GRID).prob
                          for c in (0.0, 0.01, 0.1, 0.21, 0.3)])
        assert np.all(np.diff(probs, axis=0) <= 1e-12)

    def test_zero_parameters_reduce_to_identity(self):
        ident = curve(Identity(), 20, GRID).prob
        for t in (AffineTowardOne(0.0), NegativeShrink(0.0), UpwardShift(0.0)):
            assert np.max(np.abs(curve(t, 20, GRID).prob - ident)) <= 1e-12

    def test_identity_curve_varies(self):
        # the unbiased estimator's underestimation probability is not constant
        probs = curve(Identity(), 20, GRID).prob
        assert probs.max() - probs.min() > 0.05
