"""Event and temporal retrieval protocols."""
import logging
from collections import Counter

import numpy as np

from ..dataset import uniform_indices
from ..enums import Task
from ..errors import DataError
from .decorators import labels_required
from .metrics import average_precision, rank_by_score, unit_rows
from .report import EvalReport


logger = logging.getLogger(__name__)


def _id_ranks(d):
    """Rank of every sequence id in sorted order, by dataset position."""
    order = sorted(range(len(d)), key=lambda i: d[i].id)
    ranks = np.empty(len(d), dtype=np.int64)
    ranks[order] = np.arange(len(d))
    return ranks


def video_embeddings(d, embedding, frames_per_video=4):
    """Represent every video by the mean of its frame embeddings.

    Args:
        d: Dataset.
        embedding: AbstractEmbedding.
        frames_per_video: Number of uniformly sampled frames averaged per
            video, or None to average every frame.

    Returns:
        ``len(d) x emb_dim`` matrix, one row per sequence in dataset order.
    """
    rows = []
    for seq in d.sequences:
        features = seq.features
        if frames_per_video is not None:
            features = features[uniform_indices(seq.num_frames,
                                                frames_per_video)]
        rows.append(embedding.embed_frames(features).mean(axis=0))
    return np.asarray(rows)


@labels_required
def event_retrieval_map(d, embedding, frames_per_video=4):
    """Mean average precision of retrieving videos of the same event.

    Every video is represented by the mean embedding of uniformly sampled
    frames. Each video in turn queries all others, ranked by cosine
    similarity with ties broken by sequence id.

    Args:
        d: Labeled Dataset.
        embedding: AbstractEmbedding.
        frames_per_video: Frames sampled per video.

    Returns:
        EvalReport with one AP per query video.

    Raises:
        DataError: Unlabeled sequence, or a class with a single member.
    """
    labels = np.array([seq.label for seq in d.sequences])
    for label, count in sorted(Counter(labels.tolist()).items()):
        if count < 2:
            lonely = d[int(np.flatnonzero(labels == label)[0])]
            raise DataError('class {} has a single video, its query has no '
                            'relevant items'.format(label), seq_id=lonely.id)

    U = unit_rows(video_embeddings(d, embedding, frames_per_video))
    similarity = U @ U.T
    id_ranks = _id_ranks(d)

    per_query = []
    for q, seq in enumerate(d.sequences):
        others = np.delete(np.arange(len(d)), q)
        ranked = others[rank_by_score(similarity[q, others], id_ranks[others])]
        per_query.append((seq.id,
                          average_precision(labels[ranked] == labels[q])))

    report = EvalReport.from_scores(Task.EventRetrieval, per_query)
    logger.info('event retrieval mAP %.4f over %d queries',
                report.aggregate, len(per_query))
    return report


def temporal_index_sets(n, num_context=4, num_positive=3, num_negative=12):
    """Frame indices of one temporal retrieval query.

    Context frames are ``uniform_indices(n, num_context)``. Positives are
    evenly spaced strictly between the middle two context frames. Up to
    ``num_negative`` same-video distractors are evenly spaced over the frames
    before the first middle context frame and after the second, context
    frames excluded.

    Args:
        n: Number of frames.
        num_context: Context frames (even, at least 2).
        num_positive: Positive frames.
        num_negative: Maximum same-video distractors.

    Returns:
        ``(context, positives, negatives)`` index lists, or None when the
        video is too short for disjoint sets.
    """
    context = uniform_indices(n, num_context)
    lo, hi = context[num_context // 2 - 1], context[num_context // 2]
    inside = list(range(lo + 1, hi))
    if len(inside) < num_positive:
        return None

    positives = [inside[i] for i in uniform_indices(len(inside), num_positive)]
    taken = set(context)
    pool = [i for i in range(n) if (i < lo or i > hi) and i not in taken]
    if not pool:
        return None

    count = min(num_negative, len(pool))
    if count < num_negative:
        logger.debug('%d-frame video leaves %d of %d distractors',
                     n, count, num_negative)
    negatives = [pool[i] for i in uniform_indices(len(pool), count)]
    return context, positives, negatives


def temporal_retrieval_map(d, embedding, min_len=19):
    """Mean average precision of retrieving frames between context frames.

    For every video of at least ``min_len`` frames the query is the mean
    embedding of its 4 context frames. The candidate pool holds its 3
    positives, its same-video distractors and every frame of every other
    video, ranked by cosine similarity with ties broken by (sequence id,
    frame index).

    Args:
        d: Dataset.
        embedding: AbstractEmbedding.
        min_len: Minimum number of frames of a query video.

    Returns:
        EvalReport with one AP per query video.

    Raises:
        DataError: No video qualifies.
    """
    frames = [embedding.embed_frames(seq.features) for seq in d.sequences]
    units = unit_rows(np.concatenate(frames))
    owner = np.concatenate([np.full(len(f), i) for i, f in enumerate(frames)])
    frame_idx = np.concatenate([np.arange(len(f)) for f in frames])
    id_ranks = _id_ranks(d)[owner]

    per_query = []
    for v, seq in enumerate(d.sequences):
        if seq.num_frames < min_len:
            continue
        sets = temporal_index_sets(seq.num_frames)
        if sets is None:
            logger.debug('skipping %s: too short for disjoint index sets',
                         seq.id)
            continue
        context, positives, negatives = sets

        own = owner == v
        candidates = np.flatnonzero(
            ~own | (own & np.isin(frame_idx, positives + negatives)))
        query = unit_rows(frames[v][context].mean(axis=0))[0]
        scores = units[candidates] @ query
        ranked = candidates[rank_by_score(scores, id_ranks[candidates],
                                          frame_idx[candidates])]
        relevant = (owner[ranked] == v) & np.isin(frame_idx[ranked], positives)
        per_query.append((seq.id, average_precision(relevant)))

    if not per_query:
        raise DataError('no video has at least {} frames'.format(min_len))

    report = EvalReport.from_scores(Task.TemporalRetrieval, per_query)
    logger.info('temporal retrieval mAP %.4f over %d queries',
                report.aggregate, len(per_query))
    return report


def retrieve_frames(query, d, embedding, top_k=10, exclude=None):
    """Nearest frames of ``d`` to a query frame.

    Args:
        query: Feature vector of the query frame.
        d: Dataset searched.
        embedding: AbstractEmbedding applied to query and dataset frames.
        top_k: Number of frames returned.
        exclude: Optional ``(seq_id, frame_idx)`` left out of the results,
            usually the query frame itself.

    Returns:
        List of ``(seq_id, frame_idx, cosine)`` tuples, best first.
    """
    q = unit_rows(embedding.embed_frames(np.atleast_2d(query)))[0]
    id_ranks = _id_ranks(d)

    scores, owners, indices = [], [], []
    for position, seq in enumerate(d.sequences):
        scores.append(unit_rows(embedding.embed_frames(seq.features)) @ q)
        owners.append(np.full(seq.num_frames, position))
        indices.append(np.arange(seq.num_frames))
    scores = np.concatenate(scores)
    owners = np.concatenate(owners)
    indices = np.concatenate(indices)

    results = []
    for i in rank_by_score(scores, id_ranks[owners], indices):
        hit = (d[int(owners[i])].id, int(indices[i]))
        if exclude is not None and hit == tuple(exclude):
            continue
        results.append(hit + (float(scores[i]),))
        if len(results) == top_k:
            break
    return results
