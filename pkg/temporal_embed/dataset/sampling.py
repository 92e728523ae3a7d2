"""Deterministic frame and sequence selection helpers."""
import numpy as np

from ..errors import DataError
from .dataset import Dataset


def uniform_indices(n, k):
    """Return k endpoint-inclusive, evenly spaced frame indices.

    Index ``i`` is ``round(i * (n - 1) / (k - 1))`` with halves rounded away
    from zero, computed in exact integer arithmetic. Duplicates appear when
    ``n < k``.

    Args:
        n: Number of frames, at least 1.
        k: Number of indices to return, at least 1.

    Returns:
        Non-decreasing list of k indices in ``[0, n - 1]``.

    Raises:
        ValueError: n or k below 1.
    """
    if n < 1 or k < 1:
        raise ValueError('uniform_indices needs n >= 1 and k >= 1, got '
                         'n={}, k={}'.format(n, k))
    if k == 1 or n == 1:
        return [0] * k

    # round-half-up of p/q for p, q >= 0 is floor((2p + q) / 2q)
    q = k - 1
    return [(2 * i * (n - 1) + q) // (2 * q) for i in range(k)]


def split_dataset(d, test_fraction, seed):
    """Split a dataset into train and test parts, stratified by label.

    Each label (unlabeled sequences form one group) is shuffled with a stream
    seeded by ``seed`` and ``round(test_fraction * size)`` of its members go
    to the test part, clamped so that groups of two or more keep at least one
    member on each side.

    Args:
        d: Dataset to split.
        test_fraction: Fraction of every group sent to the test part, in
            ``(0, 1)``.
        seed: Seed of the shuffling stream.

    Returns:
        A ``(train, test)`` pair of datasets, both in the original order.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError('test_fraction must lie in (0, 1), got {}'.format(
            test_fraction))

    groups = {}
    for seq in d.sequences:
        groups.setdefault(seq.label, []).append(seq.id)

    rng = np.random.default_rng(seed)
    test_ids = set()
    for label in sorted(groups, key=lambda x: (x is None, x)):
        ids = groups[label]
        order = rng.permutation(len(ids))
        count = int(np.floor(test_fraction * len(ids) + 0.5))
        if len(ids) >= 2:
            count = min(max(count, 1), len(ids) - 1)
        test_ids.update(ids[i] for i in order[:count])

    train = Dataset(d.dim, [s for s in d.sequences if s.id not in test_ids])
    test = Dataset(d.dim, [s for s in d.sequences if s.id in test_ids])
    if not len(train) or not len(test):
        raise DataError('dataset too small to split')

    return train, test
