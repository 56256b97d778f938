"""Tests for params/constructions.py - boundary parameter sets."""

import numpy as np

from ssm2d.models import ScalarField
from ssm2d.params import delta_params, pascal_kernel, pascal_params


class TestPascalParams:
    """Tests for pascal_params / pascal_kernel."""

    def test_values(self, pascal):
        """A1 = A2 = A3 = 1, A4 = 0, B1 = C1 = 1, B2 = C2 = 0."""
        np.testing.assert_array_equal(pascal.a[:, 0], [1, 1, 1, 0])
        np.testing.assert_array_equal(pascal.b[:, 0], [1, 0])
        np.testing.assert_array_equal(pascal.c[:, 0], [1, 0])

    def test_extra_coordinates_silent(self):
        """Only coordinate 0 carries B and C."""
        params = pascal_params(n=3, field=ScalarField.COMPLEX)
        assert np.all(params.b[:, 1:] == 0)
        assert np.all(params.c[:, 1:] == 0)

    def test_kernel_is_binomial(self):
        """pascal_kernel(5) rows are binomial coefficients."""
        expected = np.array(
            [
                [1, 0, 0, 0, 0],
                [1, 1, 0, 0, 0],
                [1, 2, 1, 0, 0],
                [1, 3, 3, 1, 0],
                [1, 4, 6, 4, 1],
            ],
            dtype=float,
        )
        np.testing.assert_array_equal(pascal_kernel(5), expected)


class TestDeltaParams:
    """Tests for delta_params."""

    def test_weights_sum_to_one(self):
        """sum_g C1 B1 + C2 B2 = 1 for any N."""
        params = delta_params(n=4)
        assert np.sum(params.c1 * params.b1 + params.c2 * params.b2) == 1.0

    def test_d(self):
        """D is filled per channel."""
        np.testing.assert_array_equal(delta_params(h=3, d=1.0).d, [1.0, 1.0, 1.0])
