"""The 2-D SSM layer forward pass."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from scipy import fft as sp_fft

from ssm2d.exceptions import ShapeMismatch
from ssm2d.kernel.cache import CoeffCache, get_cache
from ssm2d.kernel.compiler import compile_kernel_stack
from ssm2d.layer.conv import fft_shape, window_offsets
from ssm2d.logging import get_logger
from ssm2d.models.config import LayerConfig
from ssm2d.models.kernel import KernelStack
from ssm2d.models.params import SsmParams
from ssm2d.utils import format_size, require_finite

logger = get_logger(__name__)

ParamSpec = Sequence[SsmParams] | Sequence[Sequence[SsmParams]]


class Ssm2dLayer:
    """
    2-D SSM layer over (batch, L1, L2, H) real tensors.

    Per channel c: y_c = sum_d conv(u_c, K[group(c), d]) + D_c * u_c. Kernels
    and their spectra are computed once, on first use, and reused by every
    forward call.

    Example:
        layer = Ssm2dLayer(cfg, [constrain(init_raw(0, cfg, g)) for g in range(cfg.n_ssm)])
        y = layer.forward(x)
        layer.kernel_compiles  # -> 1 no matter how many forward calls
    """

    def __init__(
        self,
        cfg: LayerConfig,
        params: ParamSpec,
        *,
        cache: CoeffCache | None = None,
        workers: int | None = None,
    ):
        """
        Initialize the layer.

        Args:
            cfg: Layer configuration
            params: One SsmParams per group, or per group one per direction
            cache: Coefficient cache to use (process registry when None)
            workers: Thread count handed to scipy.fft
        """
        self._cfg = cfg
        self._params = params
        self._cache = cache
        self._workers = workers
        self._logger = logger.with_context(grid=format_size(cfg.l1, cfg.l2), mode=cfg.mode.value)

        self._stack: KernelStack | None = None
        self._spectra: np.ndarray | None = None
        self._skip: np.ndarray | None = None

        self.cache_builds = 0
        self.kernel_compiles = 0

    @property
    def config(self) -> LayerConfig:
        return self._cfg

    @property
    def kernels(self) -> KernelStack:
        """Compiled kernel stack (compiled on first access)."""
        self._prepare()
        assert self._stack is not None
        return self._stack

    def _group_params(self, group: int) -> SsmParams:
        entry = self._params[group]
        return entry if isinstance(entry, SsmParams) else entry[0]

    def _prepare(self) -> None:
        if self._stack is not None:
            return
        cfg = self._cfg
        if self._cache is None:
            self._cache = get_cache(cfg.l1, cfg.l2, cfg.mode)
            self.cache_builds += 1
        self._stack = compile_kernel_stack(self._params, cfg, self._cache)
        self.kernel_compiles += 1

        # (directions, F1, F2r, H) spectra of each channel's kernel, real part only:
        # for a real input Re(u * K) == u * Re(K)
        shape = fft_shape(cfg.l1, cfg.l2)
        real = self._stack.real_values()
        groups = np.array([cfg.group_of(c) for c in range(cfg.h)])
        per_channel = np.moveaxis(real[groups], 0, -1)  # (directions, L1, L2, H)
        self._spectra = sp_fft.rfft2(per_channel, s=shape, axes=(1, 2), workers=self._workers)
        self._skip = np.concatenate([self._group_params(g).d for g in range(cfg.n_ssm)])
        self._logger.debug("layer kernels prepared", extra={"phase": "compile"})

    def _check_input(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        cfg = self._cfg
        if x.ndim != 4 or x.shape[1:] != (cfg.l1, cfg.l2, cfg.h) or x.shape[0] < 1:
            batch = x.shape[0] if x.ndim == 4 else 1
            raise ShapeMismatch("input tensor", (batch, cfg.l1, cfg.l2, cfg.h), x.shape)
        require_finite("input tensor", x)
        return x

    def forward_sample(self, u: np.ndarray) -> np.ndarray:
        """Apply the layer to one (L1, L2, H) sample."""
        self._prepare()
        assert self._spectra is not None and self._skip is not None and self._stack is not None
        cfg = self._cfg
        shape = fft_shape(cfg.l1, cfg.l2)
        spectrum = sp_fft.rfft2(u, s=shape, axes=(0, 1), workers=self._workers)
        y = self._skip * u
        for direction, axes in enumerate(self._stack.flips):
            full = sp_fft.irfft2(
                spectrum * self._spectra[direction], s=shape, axes=(0, 1), workers=self._workers
            )
            o1, o2 = window_offsets(cfg.grid, axes)
            y = y + full[o1:o1 + cfg.l1, o2:o2 + cfg.l2]
        return y

    def forward(self, x: np.ndarray) -> np.ndarray:
        """
        Apply the layer to a (batch, L1, L2, H) tensor.

        Samples are processed one at a time with identical calls, so a batch
        result equals stacking per-sample results bit for bit.
        """
        x = self._check_input(x)
        self._prepare()
        return np.stack([self.forward_sample(sample) for sample in x])

    __call__ = forward


def apply_layer(x: np.ndarray, params: ParamSpec, cfg: LayerConfig) -> np.ndarray:
    """Functional form of Ssm2dLayer(cfg, params).forward(x)."""
    return Ssm2dLayer(cfg, params).forward(x)
