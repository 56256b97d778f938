"""Coefficient cache: per-cell monomial lists of the kernel polynomials.

Every kernel cell is a polynomial in the A1..A4 diagonals and B1/B2:

    kh[i, j] = sum_z  coeff_z * A1^z1 A2^z2 A3^z3 A4^z4 * B_b

The coefficients count lattice paths from the origin to (i, j) (a two-state
generalization of Pascal's triangle) and depend only on the grid and the
mode, so they are built once and reused for every parameter set.
"""

from __future__ import annotations

import threading
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import sparse

from ssm2d.constants import MAX_EXACT_COUNT
from ssm2d.exceptions import CoefficientOverflow, EmptyGrid
from ssm2d.logging import get_logger
from ssm2d.models.params import Mode
from ssm2d.utils import format_size

logger = get_logger(__name__)

# (z1, z2, z3, z4, b_index) -> coefficient
_Poly = dict[tuple[int, int, int, int, int], float]


class Monomial(NamedTuple):
    """One term coeff * A1^z1 A2^z2 A3^z3 A4^z4 * B_{b_index}."""
    z1: int
    z2: int
    z3: int
    z4: int
    b_index: int
    coeff: float

    @property
    def exponents(self) -> tuple[int, int, int, int]:
        return (self.z1, self.z2, self.z3, self.z4)

    @property
    def degree(self) -> int:
        return self.z1 + self.z2 + self.z3 + self.z4


class MonomialTable:
    """
    Monomials of many cells flattened for vectorized evaluation.

    Row m of `exponents` / `b_row` / `coeff` is one term; `summation` is a
    sparse (L_tot, M) 0/1 matrix adding each term into its cell.
    """

    def __init__(self, l_tot: int, cells: list[tuple[int, tuple[Monomial, ...]]]):
        flat = [(cell, m) for cell, monomials in cells for m in monomials]
        m_count = len(flat)
        self.cells = np.array([cell for cell, _ in flat], dtype=np.int64)
        self.exponents = np.array(
            [m.exponents for _, m in flat], dtype=np.int64
        ).reshape(m_count, 4)
        self.b_row = np.array([m.b_index - 1 for _, m in flat], dtype=np.int64)
        self.coeff = np.array([m.coeff for _, m in flat], dtype=np.float64)
        self.summation = sparse.csr_matrix(
            (np.ones(m_count), (self.cells, np.arange(m_count))),
            shape=(l_tot, m_count),
        )
        for arr in (self.cells, self.exponents, self.b_row, self.coeff):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return int(self.coeff.shape[0])

    def cell_sums(self, terms: np.ndarray) -> np.ndarray:
        """Sum per-term rows (M, ...) into per-cell rows (L_tot, ...)."""
        flat = terms.reshape(terms.shape[0], -1)
        summed = np.asarray(self.summation @ flat)
        return summed.reshape((self.summation.shape[0], *terms.shape[1:]))


def _propagate(target: _Poly, source: _Poly, power: int, scale: float) -> None:
    """Merge source * A_{power+1} * scale into target."""
    for key, coeff in source.items():
        exps = list(key)
        exps[power] += 1
        new_key = (exps[0], exps[1], exps[2], exps[3], key[4])
        target[new_key] = target.get(new_key, 0.0) + coeff * scale


def _run_dp(
    l1: int, l2: int, scale: float, edges_only: bool = False
) -> tuple[dict[tuple[int, int], _Poly], dict[tuple[int, int], _Poly]]:
    """
    Lattice-path dynamic program over the grid in row-major order.

    horizontal(i, j) = A1 * horizontal(i-1, j) + A2 * vertical(i-1, j)
    vertical(i, j)   = A3 * horizontal(i, j-1) + A4 * vertical(i, j-1)
    plus B1 / B2 at the origin. With edges_only, only row 0 and column 0 are
    evaluated; those cells never depend on interior cells.
    """
    horizontal: dict[tuple[int, int], _Poly] = {}
    vertical: dict[tuple[int, int], _Poly] = {}
    for i in range(l1):
        for j in range(l2):
            if edges_only and i > 0 and j > 0:
                continue
            ph: _Poly = {}
            pv: _Poly = {}
            if i == 0 and j == 0:
                ph[(0, 0, 0, 0, 1)] = 1.0
                pv[(0, 0, 0, 0, 2)] = 1.0
            if i > 0:
                _propagate(ph, horizontal[(i - 1, j)], 0, scale)
                _propagate(ph, vertical[(i - 1, j)], 1, scale)
            if j > 0:
                _propagate(pv, horizontal[(i, j - 1)], 2, scale)
                _propagate(pv, vertical[(i, j - 1)], 3, scale)
            if scale == 1.0:
                for poly in (ph, pv):
                    peak = max(poly.values(), default=0.0)
                    if peak > MAX_EXACT_COUNT:
                        raise CoefficientOverflow((i, j), peak)
            horizontal[(i, j)] = ph
            vertical[(i, j)] = pv
    return horizontal, vertical


def _sorted(poly: _Poly) -> tuple[Monomial, ...]:
    return tuple(Monomial(*key, coeff) for key, coeff in sorted(poly.items()))


class CoeffCache:
    """
    Parameter-independent monomial lists for every cell of an L1 x L2 grid.

    In the normalized modes each propagation step folds a factor 0.5 into the
    coefficients. The relaxed mode additionally keeps dedicated unnormalized
    lists for row 0 and column 0.

    Example:
        cache = build_cache(8, 8, Mode.NORMALIZED)
        cache.horizontal(1, 1)   # monomials of kh[1, 1]
        cache.max_terms          # <= 2 * max(L1, L2)
    """

    def __init__(
        self,
        l1: int,
        l2: int,
        mode: Mode,
        horizontal: dict[tuple[int, int], _Poly],
        vertical: dict[tuple[int, int], _Poly],
        edge_horizontal: dict[tuple[int, int], _Poly] | None = None,
        edge_vertical: dict[tuple[int, int], _Poly] | None = None,
    ):
        self._l1 = l1
        self._l2 = l2
        self._mode = mode
        self._h = {cell: _sorted(poly) for cell, poly in horizontal.items()}
        self._v = {cell: _sorted(poly) for cell, poly in vertical.items()}
        self._edge_h = {cell: _sorted(poly) for cell, poly in (edge_horizontal or {}).items()}
        self._edge_v = {cell: _sorted(poly) for cell, poly in (edge_vertical or {}).items()}

        self.h_table = self._table(self._h)
        self.v_table = self._table(self._v)
        self.edge_h_table = self._table(self._edge_h) if mode.relaxed else None
        self.edge_v_table = self._table(self._edge_v) if mode.relaxed else None

    def _table(self, lists: dict[tuple[int, int], tuple[Monomial, ...]]) -> MonomialTable:
        cells = [(i * self._l2 + j, monomials) for (i, j), monomials in sorted(lists.items())]
        return MonomialTable(self.l_tot, cells)

    @property
    def l1(self) -> int:
        return self._l1

    @property
    def l2(self) -> int:
        return self._l2

    @property
    def shape(self) -> tuple[int, int]:
        return (self._l1, self._l2)

    @property
    def l_tot(self) -> int:
        return self._l1 * self._l2

    @property
    def l_max(self) -> int:
        return max(self._l1, self._l2)

    @property
    def mode(self) -> Mode:
        return self._mode

    @property
    def normalized(self) -> bool:
        return self._mode is not Mode.UNNORMALIZED

    @property
    def max_power(self) -> int:
        """Power-table length minus one: 2 * L_max bounds every exponent."""
        return 2 * self.l_max

    def horizontal(self, i: int, j: int) -> tuple[Monomial, ...]:
        """Monomials of kh[i, j]."""
        return self._h[(i, j)]

    def vertical(self, i: int, j: int) -> tuple[Monomial, ...]:
        """Monomials of kv[i, j]."""
        return self._v[(i, j)]

    def edge_horizontal(self, i: int, j: int) -> tuple[Monomial, ...]:
        """Unnormalized monomials of kh on row 0 / column 0 (relaxed mode only)."""
        return self._edge_h[(i, j)]

    def edge_vertical(self, i: int, j: int) -> tuple[Monomial, ...]:
        """Unnormalized monomials of kv on row 0 / column 0 (relaxed mode only)."""
        return self._edge_v[(i, j)]

    def edge_cells(self) -> list[tuple[int, int]]:
        """Cells on row 0 or column 0."""
        return sorted({(i, 0) for i in range(self._l1)} | {(0, j) for j in range(self._l2)})

    @property
    def max_terms(self) -> int:
        """Largest per-cell monomial count over both lists."""
        return max(len(m) for lists in (self._h, self._v) for m in lists.values())

    def __repr__(self) -> str:
        return (
            f"CoeffCache({format_size(self._l1, self._l2)}, mode={self._mode.value}, "
            f"terms={len(self.h_table) + len(self.v_table)})"
        )


def build_cache(l1: int, l2: int, mode: Mode) -> CoeffCache:
    """
    Build the coefficient cache for a grid and mode.

    Raises:
        EmptyGrid: if an extent is below one
        CoefficientOverflow: unnormalized grid whose path counts exceed 2**53
    """
    if l1 < 1 or l2 < 1:
        raise EmptyGrid(f"grid extents must be >= 1, got {l1}x{l2}")
    mode = Mode(mode)
    horizontal, vertical = _run_dp(l1, l2, mode.step_scale)
    edge_h = edge_v = None
    if mode.relaxed:
        edge_h, edge_v = _run_dp(l1, l2, 1.0, edges_only=True)
    cache = CoeffCache(l1, l2, mode, horizontal, vertical, edge_h, edge_v)
    logger.debug(
        "coefficient cache built",
        extra={"grid": format_size(l1, l2), "mode": mode.value, "phase": "cache"},
    )
    return cache


_registry_lock = threading.Lock()


@lru_cache(maxsize=32)
def _cached_build(l1: int, l2: int, mode: Mode) -> CoeffCache:
    return build_cache(l1, l2, mode)


def get_cache(l1: int, l2: int, mode: Mode) -> CoeffCache:
    """Process-wide memoized build_cache."""
    with _registry_lock:
        return _cached_build(l1, l2, Mode(mode))


def cache_builds() -> int:
    """How many caches get_cache has built in this process."""
    return _cached_build.cache_info().misses
