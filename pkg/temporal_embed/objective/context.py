"""Context representations around a target frame."""
from dataclasses import dataclass

import numpy as np

from ..enums import ContextVariant


@dataclass
class ContextVector:
    """A context vector and the frames it was built from.

    Args:
        h: Context vector of dim ``emb_dim``.
        source_indices: Positions of the contributing embeddings, or frame
            indices when the caller knows them.
        variant: ContextVariant that produced it.
    """

    h: np.ndarray
    source_indices: list
    variant: ContextVariant


def _mean(embeddings, expected, what):
    embeddings = np.asarray(embeddings, dtype=np.float64)
    if embeddings.ndim != 2:
        raise ValueError('{} context needs a list of equal-dim vectors'.format(
            what))
    if expected is not None and embeddings.shape[0] != expected:
        raise ValueError('{} context needs {} vectors, got {}'.format(
            what, expected, embeddings.shape[0]))
    if embeddings.shape[0] == 0:
        raise ValueError('{} context needs at least one vector'.format(what))
    return embeddings.sum(axis=0) / embeddings.shape[0]


def context_full(embeddings, T=None, source_indices=None):
    """Average the embeddings of the ``2T`` frames around a target.

    Args:
        embeddings: ``2T`` vectors ordered ``[j-T .. j-1, j+1 .. j+T]``.
        T: Window size. When given the vector count is checked against it.
        source_indices: Optional frame indices of the inputs.

    Returns:
        ContextVector with ``h = (1 / 2T) * sum(embeddings)``.

    Raises:
        ValueError: Wrong count or unequal dims.
    """
    if T is None and len(embeddings) % 2:
        raise ValueError('full context needs an even number of vectors, '
                         'got {}'.format(len(embeddings)))
    h = _mean(embeddings, None if T is None else 2 * T, 'full')
    if source_indices is None:
        source_indices = list(range(len(embeddings)))
    return ContextVector(h, list(source_indices), ContextVariant.Full)


def context_no_future(embeddings, T=None, source_indices=None):
    """Average the embeddings of the ``T`` frames before a target.

    Args:
        embeddings: ``T`` vectors ordered ``[j-T .. j-1]``.
        T: Window size. When given the vector count is checked against it.
        source_indices: Optional frame indices of the inputs.

    Returns:
        ContextVector with ``h = (1 / T) * sum(embeddings)``.
    """
    h = _mean(embeddings, T, 'no-future')
    if source_indices is None:
        source_indices = list(range(len(embeddings)))
    return ContextVector(h, list(source_indices), ContextVariant.NoFuture)


def context_no_temporal(sequence_len, target_idx, rng):
    """Draw the bag-of-frames context frame for a target.

    Args:
        sequence_len: Number of frames n in the sequence, at least 2.
        target_idx: Target frame index j.
        rng: numpy Generator.

    Returns:
        Frame index k drawn uniformly from ``{0 .. n-1} \\ {j}``.

    Raises:
        ValueError: Sequence shorter than two frames or target out of range.
    """
    if sequence_len < 2:
        raise ValueError('no-temporal context needs at least 2 frames, got '
                         '{}'.format(sequence_len))
    if not 0 <= target_idx < sequence_len:
        raise ValueError('target index {} out of range for {} frames'.format(
            target_idx, sequence_len))

    k = int(rng.integers(sequence_len - 1))
    return k + 1 if k >= target_idx else k


def build_context(variant, embeddings, source_indices=None):
    """Build the context vector of ``variant`` from its frame embeddings."""
    variant = ContextVariant(variant)
    if variant is ContextVariant.Full:
        return context_full(embeddings, source_indices=source_indices)
    if variant is ContextVariant.NoFuture:
        return context_no_future(embeddings, source_indices=source_indices)

    if len(embeddings) != 1:
        raise ValueError('no-temporal context is a single embedding, got '
                         '{}'.format(len(embeddings)))
    if source_indices is None:
        source_indices = [0]
    return ContextVector(np.asarray(embeddings[0], dtype=np.float64),
                         list(source_indices), ContextVariant.NoTemporal)
