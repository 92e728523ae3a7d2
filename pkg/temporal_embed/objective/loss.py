"""Ranking hinge loss between a target, its context and negative frames.

For a target embedding ``f``, context vector ``h`` and negative embeddings
``f_-`` the loss of one example is ``sum max(0, 1 - (f - f_-) . h)``.
Gradients flow into the target, the negatives and every context frame.
"""
from dataclasses import dataclass

import numpy as np

from ..enums import Mode
from ..errors import DataError
from ..model import backward, embed


@dataclass
class LossTerm:
    """One summand of the ranking loss and its gradients.

    Args:
        loss: Non-negative loss value.
        active: True when the margin is violated.
        d_target: Gradient with respect to the target embedding.
        d_negative: Gradient with respect to the negative embedding.
        d_context: Gradient with respect to the context vector.
    """

    loss: float
    active: bool
    d_target: np.ndarray
    d_negative: np.ndarray
    d_context: np.ndarray


@dataclass
class ParamGrads:
    """Gradients of a loss with respect to the model parameters."""

    W: np.ndarray
    b: np.ndarray

    @classmethod
    def zeros_like(cls, model):
        return cls(np.zeros(model.W.shape), np.zeros(model.b.shape))

    def __add__(self, other):
        return ParamGrads(self.W + other.W, self.b + other.b)

    def scaled(self, factor):
        return ParamGrads(self.W * factor, self.b * factor)

    def is_finite(self):
        return bool(np.isfinite(self.W).all() and np.isfinite(self.b).all())


def hinge_term(f_target, f_negative, h):
    """Compute one ranking hinge term.

    Args:
        f_target: Target embedding.
        f_negative: Negative embedding.
        h: Context vector.

    Returns:
        LossTerm. At the kink (margin exactly met) the loss and every
        gradient are zero.

    Raises:
        ValueError: Dimension mismatch.
    """
    f_target = np.asarray(f_target, dtype=np.float64)
    f_negative = np.asarray(f_negative, dtype=np.float64)
    h = np.asarray(h, dtype=np.float64)
    if not f_target.shape == f_negative.shape == h.shape or f_target.ndim != 1:
        raise ValueError('hinge term needs three vectors of equal dim, got '
                         '{}, {}, {}'.format(f_target.shape, f_negative.shape,
                                             h.shape))

    diff = f_target - f_negative
    loss = 1.0 - float(diff @ h)
    if loss > 0.0:
        return LossTerm(loss, True, -h, h.copy(), -diff)

    zero = np.zeros_like(h)
    return LossTerm(0.0, False, zero, zero.copy(), zero.copy())


def _gather(dataset, examples):
    """Stack the frames touched by ``examples`` into one matrix.

    Returns the feature matrix and, per example, the row offset and the
    number of context and negative rows.
    """
    features = {seq.id: seq.features for seq in dataset.sequences}

    def frame(seq_id, idx):
        frames = features.get(seq_id)
        if frames is None or not 0 <= idx < frames.shape[0]:
            raise DataError('example refers to a frame outside the dataset',
                            seq_id=seq_id, frame_idx=idx)
        return frames[idx]

    rows = []
    layout = []
    for example in examples:
        if not example.context_idxs or not example.negatives:
            raise DataError('example needs context frames and negatives',
                            seq_id=example.seq_id,
                            frame_idx=example.target_idx)
        layout.append((len(rows), len(example.context_idxs),
                       len(example.negatives)))
        rows.append(frame(example.seq_id, example.target_idx))
        rows.extend(frame(example.seq_id, i) for i in example.context_idxs)
        rows.extend(frame(s, i) for s, i in example.negatives)

    return np.asarray(rows, dtype=np.float64), layout


def batch_loss(model, dataset, examples, mode=Mode.Train, rng=None):
    """Loss and summed parameter gradients of a list of examples.

    All frames are embedded in one forward pass with shared parameters and
    backpropagated in one backward pass.

    Args:
        model: EmbeddingModel.
        dataset: Dataset the examples index into.
        examples: Sequence of TrainingExample.
        mode: Mode.Train draws dropout masks from ``rng``.
        rng: numpy Generator, needed in train mode with dropout.

    Returns:
        ``(losses, grads)``: per-example loss array and ParamGrads summed
        over the examples.

    Raises:
        DataError: An example refers to a frame outside the dataset.
    """
    X, layout = _gather(dataset, examples)
    Y, trace = embed(model, X, mode, rng)

    dY = np.zeros_like(Y)
    losses = np.zeros(len(layout))
    for n, (start, num_context, num_negative) in enumerate(layout):
        ctx = slice(start + 1, start + 1 + num_context)
        neg = slice(ctx.stop, ctx.stop + num_negative)
        target = Y[start]
        h = Y[ctx].sum(axis=0) / num_context
        diff = target - Y[neg]
        margins = 1.0 - diff @ h
        active = margins > 0.0

        losses[n] = margins[active].sum()
        dY[start] = -h * active.sum()
        dY[neg] = np.outer(active, h)
        dY[ctx] = -diff[active].sum(axis=0) / num_context

    dW, db, _ = backward(model, trace, dY)
    return losses, ParamGrads(dW, db)


def example_loss(model, dataset, example, mode=Mode.Train, rng=None):
    """Loss and parameter gradients of one training example.

    Args:
        model: EmbeddingModel.
        dataset: Dataset the example indexes into.
        example: TrainingExample.
        mode: Mode.Train draws dropout masks from ``rng``.
        rng: numpy Generator, needed in train mode with dropout.

    Returns:
        ``(loss, grads)`` with the loss summed over the example's negatives.
    """
    losses, grads = batch_loss(model, dataset, [example], mode, rng)
    return float(losses[0]), grads
