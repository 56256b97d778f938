"""Tests for layer/conv.py - FFT and direct 2-D convolution."""

import numpy as np
import pytest

from ssm2d.exceptions import EmptyGrid, ExtentMismatch
from ssm2d.layer import conv2d_direct, conv2d_direct_flipped, conv2d_fft, fft_shape
from ssm2d.models import Kernel2D
from ssm2d.utils import max_relative_error

U = np.array([[1.0, 2.0], [3.0, 4.0]])
ONES = np.ones((2, 2))


def _delta(shape):
    k = np.zeros(shape)
    k[0, 0] = 1.0
    return k


class TestConvDirect:
    """Tests for conv2d_direct."""

    def test_delta_is_identity(self, rng):
        """Convolving with a delta returns the input."""
        u = rng.standard_normal((5, 3))
        np.testing.assert_array_equal(conv2d_direct(u, _delta(u.shape)), u)

    def test_hand_example(self):
        """[[1, 2], [3, 4]] with a ones kernel gives cumulative sums."""
        np.testing.assert_array_equal(conv2d_direct(U, ONES), [[1, 3], [4, 10]])

    def test_linearity(self, rng):
        """direct(a u + b w) = a direct(u) + b direct(w)."""
        u, w, k = rng.standard_normal((3, 8, 8))
        np.testing.assert_allclose(
            conv2d_direct(2.0 * u + 0.5 * w, k),
            2.0 * conv2d_direct(u, k) + 0.5 * conv2d_direct(w, k),
            atol=1e-12,
        )

    def test_uses_real_part(self):
        """Complex kernels contribute their real part."""
        k = Kernel2D(values=np.array([[1 + 5j, 0], [0, 0]]))
        np.testing.assert_array_equal(conv2d_direct(U, k), U)


class TestConvFft:
    """Tests for conv2d_fft."""

    def test_delta_is_identity(self, rng):
        """Convolving with a delta returns the input."""
        u = rng.standard_normal((6, 7))
        np.testing.assert_allclose(conv2d_fft(u, _delta(u.shape)), u, atol=1e-14)

    def test_hand_example(self):
        """Same cumulative sums as the direct sum."""
        np.testing.assert_allclose(conv2d_fft(U, ONES), [[1, 3], [4, 10]], atol=1e-12)

    def test_matches_direct(self, rng):
        """FFT and direct convolution agree on random inputs up to 32x32."""
        for _ in range(20):
            l1, l2 = rng.integers(1, 33, size=2)
            u = rng.standard_normal((l1, l2))
            k = rng.standard_normal((l1, l2))
            assert max_relative_error(conv2d_fft(u, k), conv2d_direct(u, k)) <= 1e-8

    def test_complex_kernel(self, rng):
        """Complex kernels reduce to their real part after truncation."""
        u = rng.standard_normal((5, 5))
        k = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        np.testing.assert_allclose(conv2d_fft(u, k), conv2d_direct(u, k.real), atol=1e-12)

    @pytest.mark.parametrize("axes", [(0,), (1,), (0, 1)])
    def test_flipped_kernel_is_anti_causal(self, rng, axes):
        """A reversed kernel acts anti-causally along the reversed axes."""
        u = rng.standard_normal((6, 5))
        k = np.flip(rng.standard_normal((6, 5)), axis=axes)
        np.testing.assert_allclose(
            conv2d_fft(u, k, axes), conv2d_direct_flipped(u, k, axes), atol=1e-12
        )

    def test_extent_mismatch(self):
        """Kernel and input extents must agree."""
        with pytest.raises(ExtentMismatch):
            conv2d_fft(np.zeros((3, 3)), np.zeros((3, 4)))

    def test_empty_grid(self):
        """Empty inputs are rejected."""
        with pytest.raises(EmptyGrid):
            conv2d_fft(np.zeros((0, 3)), np.zeros((0, 3)))


class TestFftShape:
    """Tests for fft_shape."""

    @pytest.mark.parametrize("l1,l2", [(1, 1), (5, 8), (32, 17)])
    def test_large_enough(self, l1, l2):
        """Padded extents hold the full linear convolution."""
        f1, f2 = fft_shape(l1, l2)
        assert f1 >= 2 * l1 - 1
        assert f2 >= 2 * l2 - 1
