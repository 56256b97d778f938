"""Analytic partial derivatives of the (real part of the) kernel.

The kernel is a polynomial in the constrained parameters, so each monomial is
differentiated term-wise (d/dA_k of A_k^z is z * A_k^(z-1)). The result is
pulled back onto the raw parameters through the sigmoid and, in the complex
field, the polar map. Since K is holomorphic in the constrained values,
dK/draw = dK/dvalue * dvalue/draw, and the real part is taken last.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ssm2d.constants import RELAXED_EDGE_SCALE
from ssm2d.kernel.cache import CoeffCache, MonomialTable
from ssm2d.kernel.compiler import edge_mask, gather_factors, power_tables
from ssm2d.models.params import RawParams, ScalarField, SsmParams
from ssm2d.params.constrain import constrain
from ssm2d.utils import sigmoid, sigmoid_grad


@dataclass(frozen=True, eq=False)
class KernelGradient:
    """
    Partials of Re(K) with respect to every raw scalar except D (K does not
    depend on D).

    Each block has the raw block's shape followed by (L1, L2), e.g. a is
    (4, N, L1, L2) in the real field and (4, 2, N, L1, L2) in the complex one.
    """
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def jacobian(self) -> np.ndarray:
        """Partials stacked in RawParams.flatten order, shape (P, L1, L2)."""
        l1, l2 = self.a.shape[-2:]
        return np.concatenate(
            [block.reshape(-1, l1, l2) for block in (self.a, self.b, self.c)]
        )


@dataclass(frozen=True, eq=False)
class _Partials:
    """Per-cell partials of kh or kv w.r.t. the constrained values, all (L_tot, N)."""
    value: np.ndarray
    d_a: np.ndarray  # (4, L_tot, N)
    d_b: np.ndarray  # (2, L_tot, N)


def _derivative_tables(powers: np.ndarray) -> np.ndarray:
    """Row p of table k holds p * A_k^(p-1)."""
    d = np.zeros_like(powers)
    exponents = np.arange(1, powers.shape[1])[:, None]
    d[:, 1:] = exponents * powers[:, :-1]
    return d


def _table_partials(
    table: MonomialTable, params: SsmParams, powers: np.ndarray, d_powers: np.ndarray
) -> _Partials:
    factors = gather_factors(table, powers)
    d_factors = gather_factors(table, d_powers)
    b_terms = params.b[table.b_row]
    coeff = table.coeff[:, None]
    monomial = coeff * np.prod(factors, axis=0)

    d_a = []
    for k in range(4):
        others = np.prod(np.delete(factors, k, axis=0), axis=0)
        d_a.append(table.cell_sums(coeff * others * d_factors[k] * b_terms))
    d_b = [
        table.cell_sums(monomial * (table.b_row == r)[:, None]) for r in range(2)
    ]
    return _Partials(
        value=table.cell_sums(monomial * b_terms),
        d_a=np.stack(d_a),
        d_b=np.stack(d_b),
    )


def _kernel_partials(
    h: _Partials, v: _Partials, params: SsmParams, scale: float = 1.0
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """dK/dA (4, N, L_tot), dK/dB (2, N, L_tot), dK/dC (2, N, L_tot) per coordinate."""
    c1, c2 = params.c1[:, None], params.c2[:, None]
    d_a = scale * (c1 * np.swapaxes(h.d_a, 1, 2) + c2 * np.swapaxes(v.d_a, 1, 2))
    d_b = scale * (c1 * np.swapaxes(h.d_b, 1, 2) + c2 * np.swapaxes(v.d_b, 1, 2))
    d_c = scale * np.stack([h.value.T, v.value.T])
    return d_a, d_b, d_c


def _pull_back(
    d_value: np.ndarray,
    raw: np.ndarray,
    value: np.ndarray,
    field: ScalarField,
    *,
    real_sigmoid: bool,
    radius_sigmoid: bool,
) -> np.ndarray:
    """
    Chain rule from constrained values to raw scalars, then take the real part.

    d_value has shape (R, N, L1, L2); raw is (R, N) or (R, 2, N).
    """
    if field is ScalarField.REAL:
        if real_sigmoid:
            d_value = d_value * sigmoid_grad(raw)[..., None, None]
        return np.real(d_value)

    radius_raw, angle_raw = raw[:, 0], raw[:, 1]
    phase = np.exp(2j * np.pi * sigmoid(angle_raw))
    d_radius = sigmoid_grad(radius_raw) * phase if radius_sigmoid else phase
    d_angle = 1j * value * 2 * np.pi * sigmoid_grad(angle_raw)
    return np.real(
        np.stack(
            [d_value * d_radius[..., None, None], d_value * d_angle[..., None, None]],
            axis=1,
        )
    )


def kernel_gradient(raw: RawParams, cache: CoeffCache) -> KernelGradient:
    """
    Partials of the compiled kernel's real part with respect to raw parameters.

    Args:
        raw: Unconstrained parameters (constrained internally)
        cache: Coefficient cache fixing grid and mode

    Returns:
        KernelGradient with one (L1, L2) map per raw scalar
    """
    params = constrain(raw)
    powers = power_tables(params, cache.max_power)
    d_powers = _derivative_tables(powers)

    h = _table_partials(cache.h_table, params, powers, d_powers)
    v = _table_partials(cache.v_table, params, powers, d_powers)
    d_a, d_b, d_c = _kernel_partials(h, v, params)

    if cache.mode.relaxed:
        edge_h = _table_partials(cache.edge_h_table, params, powers, d_powers)
        edge_v = _table_partials(cache.edge_v_table, params, powers, d_powers)
        edges = _kernel_partials(edge_h, edge_v, params, RELAXED_EDGE_SCALE)
        mask = edge_mask(*cache.shape).ravel()
        for block, edge_block in zip((d_a, d_b, d_c), edges):
            block[..., mask] = edge_block[..., mask]

    grid = cache.shape
    d_a, d_b, d_c = (block.reshape(*block.shape[:2], *grid) for block in (d_a, d_b, d_c))
    return KernelGradient(
        a=_pull_back(d_a, raw.a, params.a, raw.field, real_sigmoid=True, radius_sigmoid=True),
        b=_pull_back(d_b, raw.b, params.b, raw.field, real_sigmoid=False, radius_sigmoid=True),
        c=_pull_back(d_c, raw.c, params.c, raw.field, real_sigmoid=False, radius_sigmoid=False),
    )
