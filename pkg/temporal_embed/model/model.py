"""The frame embedding function.

``f(s; W_e) = Dropout(LRN(ReLU(W s + b)))`` with inverted dropout, so that
eval mode needs no rescaling.
"""
from dataclasses import dataclass, field, replace

import numpy as np

from ..enums import Mode
from ..errors import ConfigError
from .lrn import LRNParams, lrn_backward, lrn_forward


@dataclass(frozen=True, eq=False)
class EmbeddingModel:
    """Learned embedding parameters.

    Args:
        W: ``emb_dim x in_dim`` weight matrix.
        b: ``emb_dim`` bias vector.
        lrn: LRNParams of the normalization layer.
        dropout_rate: Probability of dropping a unit in train mode.
    """

    W: np.ndarray
    b: np.ndarray
    lrn: LRNParams = field(default_factory=LRNParams)
    dropout_rate: float = 0.5

    def __post_init__(self):
        W = np.asarray(self.W)
        b = np.asarray(self.b)
        if W.ndim != 2 or W.shape[0] < 1 or W.shape[1] < 1:
            raise ConfigError('W must be a non-empty matrix, got shape '
                              '{}'.format(W.shape))
        if b.shape != (W.shape[0],):
            raise ConfigError('b must have shape ({},), got {}'.format(
                W.shape[0], b.shape))
        if not (np.isfinite(W).all() and np.isfinite(b).all()):
            raise ConfigError('model parameters must be finite')
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ConfigError('dropout_rate must lie in [0, 1), got '
                              '{}'.format(self.dropout_rate))
        object.__setattr__(self, 'W', W)
        object.__setattr__(self, 'b', b)

    @property
    def in_dim(self):
        return self.W.shape[1]

    @property
    def emb_dim(self):
        return self.W.shape[0]

    def with_params(self, W, b):
        """Return a copy of the model holding new parameters."""
        return replace(self, W=W, b=b)

    def astype(self, dtype):
        """Return a copy of the model with parameters cast to ``dtype``."""
        return self.with_params(self.W.astype(dtype), self.b.astype(dtype))


@dataclass
class ForwardTrace:
    """Intermediate values of one forward pass, kept for backward."""

    input: np.ndarray
    pre_activation: np.ndarray
    relu_out: np.ndarray
    lrn_out: np.ndarray
    dropout_mask: np.ndarray
    output: np.ndarray


def init_model(in_dim, emb_dim, seed, lrn=None, dropout_rate=0.5):
    """Create a model with Xavier-uniform weights and zero bias.

    Args:
        in_dim: Input feature dimension.
        emb_dim: Embedding dimension.
        seed: Seed of the initialization stream.
        lrn: LRNParams, defaults to size 5, k 1.0, alpha 1e-4, beta 0.75.
        dropout_rate: Train-mode dropout probability.

    Returns:
        EmbeddingModel with float32 parameters.
    """
    if in_dim < 1 or emb_dim < 1:
        raise ConfigError('model dims must be positive, got in_dim={}, '
                          'emb_dim={}'.format(in_dim, emb_dim))

    bound = np.sqrt(6.0 / (in_dim + emb_dim))
    rng = np.random.default_rng(seed)
    W = rng.uniform(-bound, bound, size=(emb_dim, in_dim)).astype(np.float32)
    b = np.zeros(emb_dim, dtype=np.float32)
    return EmbeddingModel(W, b, lrn if lrn is not None else LRNParams(),
                          dropout_rate)


def embed(m, x, mode=Mode.Eval, rng=None):
    """Embed one frame vector or a matrix of frame vectors.

    Args:
        m: EmbeddingModel.
        x: Vector of length ``in_dim`` or ``N x in_dim`` matrix.
        mode: ``Mode.Train`` applies dropout, ``Mode.Eval`` does not.
        rng: numpy Generator, required in train mode when the model's
            dropout_rate is positive.

    Returns:
        ``(y, trace)`` where ``y`` has the leading shape of ``x`` and
        ``emb_dim`` columns.

    Raises:
        ValueError: Dimension mismatch or missing rng.
    """
    mode = Mode(mode)
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1:] != (m.in_dim,) or x.ndim > 2:
        raise ValueError('expected input of dim {}, got shape {}'.format(
            m.in_dim, x.shape))

    pre = x @ m.W.T.astype(np.float64) + m.b.astype(np.float64)
    relu = np.maximum(pre, 0.0)
    normed = lrn_forward(relu, m.lrn)

    mask = None
    output = normed
    if mode is Mode.Train and m.dropout_rate > 0.0:
        if rng is None:
            raise ValueError('train mode with dropout needs an rng')
        keep = rng.random(normed.shape) >= m.dropout_rate
        mask = keep / (1.0 - m.dropout_rate)
        output = normed * mask

    return output, ForwardTrace(x, pre, relu, normed, mask, output)


def backward(m, trace, dL_dy):
    """Backpropagate through a traced forward pass.

    Args:
        m: Model that produced the trace.
        trace: ForwardTrace returned by embed.
        dL_dy: Gradient with respect to the embedding, same shape as
            ``trace.output``.

    Returns:
        ``(dL_dW, dL_db, dL_dx)``. For a batch of inputs the parameter
        gradients are summed over rows.

    Raises:
        ValueError: Shape mismatch.
    """
    g = np.asarray(dL_dy, dtype=np.float64)
    if g.shape != trace.output.shape:
        raise ValueError('gradient shape {} does not match output shape '
                         '{}'.format(g.shape, trace.output.shape))

    if trace.dropout_mask is not None:
        g = g * trace.dropout_mask
    g = lrn_backward(trace.relu_out, m.lrn, g)
    g = g * (trace.pre_activation > 0.0)

    W = m.W.astype(np.float64)
    if g.ndim == 1:
        dW = np.outer(g, trace.input)
        db = g.copy()
    else:
        dW = g.T @ trace.input
        db = g.sum(axis=0)
    dx = g @ W
    return dW, db, dx
