"""Local response normalization across embedding dimensions."""
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError


@dataclass(frozen=True)
class LRNParams:
    """Local response normalization parameters.

    ``b_i = a_i / (k + alpha * sum_{|j - i| <= size // 2} a_j ** 2) ** beta``
    """

    size: int = 5
    k: float = 1.0
    alpha: float = 1e-4
    beta: float = 0.75

    def __post_init__(self):
        if self.size < 1 or self.size % 2 == 0:
            raise ConfigError('LRN size must be a positive odd integer, '
                              'got {}'.format(self.size))
        if not self.k > 0:
            raise ConfigError('LRN k must be positive, got {}'.format(self.k))
        if not (np.isfinite(self.alpha) and np.isfinite(self.beta)):
            raise ConfigError('LRN alpha and beta must be finite')

    def as_dict(self):
        return {'size': self.size, 'k': self.k,
                'alpha': self.alpha, 'beta': self.beta}


def window_sum(x, size):
    """Sum ``x`` over a centered window of ``size`` along the last axis.

    The window is clipped at the vector bounds.
    """
    half = size // 2
    n = x.shape[-1]
    pad = [(0, 0)] * (x.ndim - 1) + [(half, half)]
    padded = np.pad(x, pad)
    out = np.zeros_like(x)
    for offset in range(size):
        out += padded[..., offset:offset + n]
    return out


def _denominator(a, lrn):
    return lrn.k + lrn.alpha * window_sum(a * a, lrn.size)


def lrn_forward(a, lrn):
    """Normalize activations along their last axis.

    Args:
        a: Vector or matrix of activations.
        lrn: LRNParams.

    Returns:
        Array of the same shape as ``a``.
    """
    a = np.asarray(a, dtype=np.float64)
    return a * _denominator(a, lrn) ** -lrn.beta


def lrn_backward(a, lrn, grad_out):
    """Vector-Jacobian product of lrn_forward at ``a``.

    With ``d_i`` the denominator base of unit ``i``, the full Jacobian gives
    ``g_m d_m^-beta - 2 alpha beta a_m sum_{i in win(m)} g_i a_i d_i^(-beta-1)``.

    Args:
        a: Input that was normalized.
        lrn: LRNParams used in the forward pass.
        grad_out: Gradient with respect to the normalized output.

    Returns:
        Gradient with respect to ``a``.
    """
    a = np.asarray(a, dtype=np.float64)
    grad_out = np.asarray(grad_out, dtype=np.float64)
    d = _denominator(a, lrn)
    scale = d ** -lrn.beta
    cross = window_sum(grad_out * a * scale / d, lrn.size)
    return grad_out * scale - 2.0 * lrn.alpha * lrn.beta * a * cross
