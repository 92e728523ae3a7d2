"""Similarity and ranking metrics."""
import numpy as np


def cosine(x, y):
    """Cosine similarity of two vectors, 0 if either has zero norm."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError('cosine needs vectors of equal dim, got {} and '
                         '{}'.format(x.shape, y.shape))
    norm = np.linalg.norm(x) * np.linalg.norm(y)
    if norm == 0.0:
        return 0.0
    return float(np.clip(x @ y / norm, -1.0, 1.0))


def unit_rows(M):
    """Scale every row of ``M`` to unit norm, leaving zero rows at zero."""
    M = np.atleast_2d(np.asarray(M, dtype=np.float64))
    norms = np.linalg.norm(M, axis=1, keepdims=True)
    return np.divide(M, norms, out=np.zeros_like(M), where=norms > 0)


def rank_by_score(scores, *tiebreaks):
    """Order candidates by descending score.

    Args:
        scores: Score per candidate.
        *tiebreaks: Integer keys per candidate, compared in order when
            scores are equal (ascending).

    Returns:
        Index array of candidates, best first.
    """
    keys = tuple(reversed(tiebreaks)) + (-np.asarray(scores),)
    return np.lexsort(keys)


def average_precision(ranked_relevance):
    """Average precision of a ranked list.

    Args:
        ranked_relevance: Relevance flag per rank, best rank first.

    Returns:
        Mean over relevant ranks k of the precision at k.

    Raises:
        ValueError: No relevant item.
    """
    relevant = np.asarray(ranked_relevance, dtype=bool)
    if not relevant.any():
        raise ValueError('average precision needs at least one relevant item')

    ranks = np.flatnonzero(relevant) + 1
    hits = np.arange(1, ranks.size + 1)
    return float(np.mean(hits / ranks))


def kendall_tau_distance(perm_a, perm_b):
    """Normalized Kendall tau distance between two orderings.

    Args:
        perm_a: Ordering of m items.
        perm_b: Ordering of the same m items, m at least 2.

    Returns:
        ``100 * discordant pairs / (m (m - 1) / 2)``.

    Raises:
        ValueError: The arguments are not orderings of the same items.
    """
    perm_a = list(perm_a)
    perm_b = list(perm_b)
    if len(perm_a) < 2 or len(perm_a) != len(perm_b):
        raise ValueError('Kendall tau needs two orderings of the same m >= 2 '
                         'items')
    position = {item: i for i, item in enumerate(perm_b)}
    if len(position) != len(perm_b) or set(perm_a) != set(position):
        raise ValueError('Kendall tau arguments must be permutations of the '
                         'same items')

    ranks = np.array([position[item] for item in perm_a])
    discordant = np.triu(ranks[:, None] > ranks[None, :], k=1).sum()
    m = len(ranks)
    return 100.0 * float(discordant) / (m * (m - 1) / 2)
