"""Tests for kernel/cache.py - coefficient cache."""

import pytest

from ssm2d.exceptions import CoefficientOverflow, EmptyGrid
from ssm2d.kernel import build_cache, cache_builds, get_cache
from ssm2d.models import Mode


class TestBuildCache:
    """Tests for build_cache."""

    def test_origin(self):
        """kh[0, 0] = B1 and kv[0, 0] = B2."""
        cache = build_cache(3, 3, Mode.UNNORMALIZED)
        (h,) = cache.horizontal(0, 0)
        (v,) = cache.vertical(0, 0)
        assert (h.exponents, h.b_index, h.coeff) == ((0, 0, 0, 0), 1, 1.0)
        assert (v.exponents, v.b_index, v.coeff) == ((0, 0, 0, 0), 2, 1.0)

    def test_one_step(self):
        """kh[1, 0] = A1 B1 + A2 B2."""
        cache = build_cache(2, 2, Mode.UNNORMALIZED)
        terms = {(m.exponents, m.b_index): m.coeff for m in cache.horizontal(1, 0)}
        assert terms == {((1, 0, 0, 0), 1): 1.0, ((0, 1, 0, 0), 2): 1.0}

    def test_normalized_halves_per_step(self):
        """Each propagation step folds 0.5 into the coefficient."""
        cache = build_cache(3, 3, Mode.NORMALIZED)
        assert all(m.coeff == 0.25 for m in cache.horizontal(2, 0))

    def test_path_counts(self):
        """Unnormalized coefficients count lattice paths."""
        cache = build_cache(4, 4, Mode.UNNORMALIZED)
        # A1 A2 A3 B1 reaches (2, 1) along two different paths
        terms = {(m.exponents, m.b_index): m.coeff for m in cache.horizontal(2, 1)}
        assert terms == {
            ((1, 1, 1, 0), 1): 2.0,
            ((1, 1, 0, 1), 2): 1.0,
            ((0, 2, 1, 0), 2): 1.0,
        }

    @pytest.mark.parametrize("size", [(5, 5), (8, 3), (12, 12)])
    def test_exponent_conservation(self, size):
        """Every monomial at (i, j) has degree i + j."""
        cache = build_cache(*size, Mode.NORMALIZED)
        for i in range(size[0]):
            for j in range(size[1]):
                for m in cache.horizontal(i, j) + cache.vertical(i, j):
                    assert m.degree == i + j
                    assert m.z1 + m.z2 == i
                    assert m.z3 + m.z4 == j

    @pytest.mark.parametrize("size", [(7, 7), (16, 4), (20, 20)])
    def test_term_bound(self, size):
        """No cell holds more than 2 * L_max monomials."""
        cache = build_cache(*size, Mode.NORMALIZED)
        assert cache.max_terms <= 2 * cache.l_max

    def test_relaxed_edge_lists(self):
        """Relaxed caches keep unnormalized lists for row 0 and column 0."""
        cache = build_cache(4, 3, Mode.NORMALIZED_RELAXED)
        assert cache.edge_cells() == [(0, 0), (0, 1), (0, 2), (1, 0), (2, 0), (3, 0)]
        assert all(m.coeff == 1.0 for m in cache.edge_horizontal(3, 0))
        assert cache.edge_h_table is not None

    def test_unrelaxed_has_no_edge_tables(self):
        """Only the relaxed mode builds edge tables."""
        assert build_cache(3, 3, Mode.NORMALIZED).edge_h_table is None

    def test_power_table_size(self):
        """Power tables reach 2 * L_max."""
        assert build_cache(3, 7, Mode.NORMALIZED).max_power == 14

    def test_empty_grid(self):
        """Extents below one are rejected."""
        with pytest.raises(EmptyGrid):
            build_cache(0, 4, Mode.NORMALIZED)

    def test_unnormalized_overflow_guard(self):
        """Path counts beyond 2**53 are refused."""
        with pytest.raises(CoefficientOverflow) as exc_info:
            build_cache(40, 40, Mode.UNNORMALIZED)
        assert exc_info.value.count > 2**53

    def test_normalized_large_grid_ok(self):
        """Normalized coefficients stay bounded where raw counts overflow."""
        cache = build_cache(40, 40, Mode.NORMALIZED)
        assert max(m.coeff for m in cache.horizontal(39, 39)) <= 1.0


class TestRegistry:
    """Tests for get_cache."""

    def test_memoized(self):
        """Repeated lookups return one shared cache."""
        first = get_cache(9, 4, Mode.NORMALIZED)
        builds = cache_builds()
        assert get_cache(9, 4, Mode.NORMALIZED) is first
        assert cache_builds() == builds

    def test_mode_is_part_of_key(self):
        """Caches for different modes are distinct."""
        assert get_cache(3, 3, Mode.NORMALIZED) is not get_cache(3, 3, Mode.UNNORMALIZED)

    def test_mode_string_accepted(self):
        """Mode values are coerced."""
        assert get_cache(3, 3, "normalized") is get_cache(3, 3, Mode.NORMALIZED)
