"""Temporal order recovery."""
import logging

import numpy as np

from ..dataset import uniform_indices
from ..enums import Task
from ..errors import ConfigError, DataError
from .metrics import kendall_tau_distance, unit_rows
from .report import EvalReport


logger = logging.getLogger(__name__)


def recover_order_greedy(frame_embeddings):
    """Greedily order frames given the first two.

    Starting from ``[0, 1]``, the next frame is the unplaced one with the
    highest cosine similarity to the mean embedding of the last two placed
    frames, ties going to the lowest index.

    Args:
        frame_embeddings: ``m x e`` matrix or list of m vectors, m >= 3.

    Returns:
        List holding a permutation of ``0 .. m-1`` that starts with 0, 1.

    Raises:
        ValueError: Fewer than three frames.
    """
    E = np.atleast_2d(np.asarray(frame_embeddings, dtype=np.float64))
    m = E.shape[0]
    if m < 3:
        raise ValueError('order recovery needs at least 3 frames, got '
                         '{}'.format(m))

    units = unit_rows(E)
    order = [0, 1]
    remaining = list(range(2, m))
    while remaining:
        query = unit_rows((E[order[-2]] + E[order[-1]]) / 2.0)[0]
        scores = units[remaining] @ query
        order.append(remaining.pop(int(np.argmax(scores))))
    return order


def recover_group_order(groups):
    """Order groups of vectors (e.g. image clusters) by their mean vectors.

    Args:
        groups: Sequence of at least three ``k_i x e`` matrices. The first
            two groups are taken as the known start.

    Returns:
        Permutation of group indices.
    """
    means = [np.atleast_2d(np.asarray(g, dtype=np.float64)).mean(axis=0)
             for g in groups]
    return recover_order_greedy(means)


def order_recovery_eval(d, embedding, frames_per_video=12, scramble=True,
                        include_given=False, seed=0):
    """Mean Kendall tau distance of greedy order recovery.

    From every video with at least ``frames_per_video`` frames, that many
    frames are sampled uniformly and embedded. The frames after the first two
    are presented in a shuffled order (so ties cannot leak the true order),
    recovered greedily and compared to the true order.

    Args:
        d: Dataset.
        embedding: AbstractEmbedding.
        frames_per_video: Frames sampled per video, at least 4, or 3 with
            ``include_given``.
        scramble: Shuffle the frames handed to the greedy method.
        include_given: Also score the two given frames. By default only the
            ``frames_per_video - 2`` recovered positions are scored, so
            random embeddings score 50 in expectation.
        seed: Seed of the shuffling streams.

    Returns:
        EvalReport with one distance per video.

    Raises:
        ConfigError: Too few frames per video to score an order.
        DataError: No video qualifies.
    """
    # two frames are given and Kendall tau needs two scored positions
    least = 3 if include_given else 4
    if frames_per_video < least:
        raise ConfigError('order recovery needs frames_per_video >= {}, '
                          'got {}'.format(least, frames_per_video))

    per_query = []
    for position, seq in enumerate(d.sequences):
        if seq.num_frames < frames_per_video:
            continue

        frames = embedding.embed_frames(
            seq.features[uniform_indices(seq.num_frames, frames_per_video)])
        shown = np.arange(frames_per_video)
        if scramble:
            rng = np.random.default_rng([seed, position])
            shown[2:] = 2 + rng.permutation(frames_per_video - 2)

        recovered = shown[recover_order_greedy(frames[shown])].tolist()
        truth = list(range(frames_per_video))
        if not include_given:
            recovered, truth = recovered[2:], truth[2:]
        per_query.append((seq.id, kendall_tau_distance(recovered, truth)))

    if not per_query:
        raise DataError('no video has at least {} frames'.format(
            frames_per_video))

    report = EvalReport.from_scores(Task.OrderRecovery, per_query)
    logger.info('order recovery tau distance %.2f over %d videos',
                report.aggregate, len(per_query))
    return report


def distinct_subset(d, embedding, count, frames_per_video=12):
    """Videos whose sampled frames are least similar to each other.

    Distinctness is the mean pairwise cosine similarity between the
    uniformly sampled frames of a video; lower is more distinct.

    Args:
        d: Dataset.
        embedding: AbstractEmbedding used to measure similarity.
        count: Number of videos kept.
        frames_per_video: Frames sampled per video.

    Returns:
        Dataset of the ``count`` most distinct qualifying videos, in the
        original order.
    """
    scored = []
    for seq in d.sequences:
        if seq.num_frames < frames_per_video:
            continue
        units = unit_rows(embedding.embed_frames(
            seq.features[uniform_indices(seq.num_frames, frames_per_video)]))
        similarity = units @ units.T
        m = similarity.shape[0]
        mean = (similarity.sum() - np.trace(similarity)) / (m * (m - 1))
        scored.append((float(mean), seq.id))

    scored.sort()
    return d.subset(seq_id for _, seq_id in scored[:count])
