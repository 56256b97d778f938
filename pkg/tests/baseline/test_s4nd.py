"""Tests for baseline/s4nd.py - separable 1-D x 1-D kernels."""

import numpy as np
import pytest

from ssm2d.baseline import (
    Ssm1dParams,
    Ssm1dRaw,
    constrain_1d,
    init_raw_1d,
    kernel_1d,
    numerical_rank,
    outer_kernel,
    random_s4nd_kernel,
    s4nd_kernel,
)
from ssm2d.exceptions import EmptyGrid, ShapeMismatch
from ssm2d.models import ScalarField


class TestKernel1d:
    """Tests for kernel_1d."""

    def test_geometric_kernel(self):
        """A = 0.5, B = C = 1 gives powers of one half."""
        p = Ssm1dParams(field=ScalarField.REAL, a=[0.5], b=[1.0], c=[1.0])
        np.testing.assert_allclose(kernel_1d(p, 4), [1.0, 0.5, 0.25, 0.125])

    def test_sums_modes(self):
        """Modes add: k[l] = sum C A**l B."""
        p = Ssm1dParams(field=ScalarField.REAL, a=[0.5, -1.0], b=[1.0, 2.0], c=[1.0, 1.0])
        np.testing.assert_allclose(kernel_1d(p, 3), [3.0, -1.5, 2.25])

    def test_complex_takes_real_part(self):
        """A rotating mode contributes its real part."""
        p = Ssm1dParams(field=ScalarField.COMPLEX, a=[1j], b=[1.0], c=[1.0])
        np.testing.assert_allclose(kernel_1d(p, 4), [1.0, 0.0, -1.0, 0.0], atol=1e-15)

    def test_empty_length(self):
        """Length must be at least one."""
        p = Ssm1dParams(field=ScalarField.REAL, a=[0.5], b=[1.0], c=[1.0])
        with pytest.raises(EmptyGrid):
            kernel_1d(p, 0)


class TestOuterKernel:
    """Tests for outer_kernel and s4nd_kernel."""

    def test_outer_product(self):
        """[1, 2] (x) [3, 4] = [[3, 4], [6, 8]]."""
        np.testing.assert_array_equal(outer_kernel([1.0, 2.0], [3.0, 4.0]).values, [[3, 4], [6, 8]])

    def test_empty_factor(self):
        """Empty factors are rejected."""
        with pytest.raises(EmptyGrid):
            outer_kernel([], [1.0])

    @pytest.mark.parametrize("field", [ScalarField.REAL, ScalarField.COMPLEX])
    def test_random_kernel_has_rank_one(self, field):
        """Separable kernels are rank one."""
        kernel = random_s4nd_kernel(7, 8, 20, 14, field)
        assert kernel.shape == (20, 14)
        assert numerical_rank(kernel) == 1

    def test_zero_factor_gives_rank_zero(self):
        """A zero output vector on one axis makes the kernel zero."""
        p1 = Ssm1dParams(field=ScalarField.REAL, a=[0.5], b=[1.0], c=[0.0])
        p2 = Ssm1dParams(field=ScalarField.REAL, a=[0.5], b=[1.0], c=[1.0])
        assert numerical_rank(s4nd_kernel(p1, p2, 6, 6)) == 0

    def test_deterministic(self):
        """Same seed, same kernel."""
        np.testing.assert_array_equal(
            random_s4nd_kernel(3, 4, 8, 8).values, random_s4nd_kernel(3, 4, 8, 8).values
        )


class TestConstrain1d:
    """Tests for Ssm1dRaw and constrain_1d."""

    def test_real_sigmoid(self):
        """Raw zero maps to A = 0.5."""
        p = constrain_1d(Ssm1dRaw(field=ScalarField.REAL, a=[0.0], b=[2.0], c=[3.0]))
        np.testing.assert_allclose(p.a, [0.5])
        np.testing.assert_allclose(p.b * p.c, [6.0])

    def test_complex_stable(self):
        """Complex A lies strictly inside the unit disk."""
        p = constrain_1d(init_raw_1d(0, 16, ScalarField.COMPLEX))
        assert np.all(np.abs(p.a) < 1.0)

    def test_saturated_raws_stay_stable(self):
        """Raws far past logistic saturation keep every A strictly inside (0, 1)."""
        ones = [1.0, 1.0]
        real = constrain_1d(Ssm1dRaw(field=ScalarField.REAL, a=[40.0, -800.0], b=ones, c=ones))
        assert np.all((real.a > 0) & (real.a < 1))
        raw = [[40.0, -800.0], [0.3, 0.3]]
        cplx = constrain_1d(Ssm1dRaw(field=ScalarField.COMPLEX, a=raw, b=raw, c=raw))
        assert np.all((np.abs(cplx.a) > 0) & (np.abs(cplx.a) < 1))

    def test_axes_draw_independently(self):
        """The two axes use different streams."""
        assert not np.array_equal(init_raw_1d(0, 4, axis=0).a, init_raw_1d(0, 4, axis=1).a)

    def test_shape_checked(self):
        """Complex raw values need a (radius, angle) pair per mode."""
        with pytest.raises(ShapeMismatch):
            Ssm1dRaw(field=ScalarField.COMPLEX, a=[0.0], b=[0.0], c=[0.0])
