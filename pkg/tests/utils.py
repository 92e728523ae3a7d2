"""Test utilites."""
import itertools

import numpy as np

from temporal_embed.dataset import Dataset, FeatureSequence


def central_difference(func, x, h=1e-4):
    """Numerical gradient of scalar ``func`` at array ``x``.

    Uses ``(f(x + h) - f(x - h)) / 2h`` per entry; ``x`` is restored.
    """
    grad = np.zeros(x.shape)
    for i in range(x.size):
        saved = x.flat[i]
        x.flat[i] = saved + h
        plus = func()
        x.flat[i] = saved - h
        minus = func()
        x.flat[i] = saved
        grad.flat[i] = (plus - minus) / (2.0 * h)
    return grad


def relative_error(analytic, numeric):
    """Norm-wise relative error between two gradients."""
    scale = np.linalg.norm(analytic) + np.linalg.norm(numeric)
    if scale == 0.0:
        return 0.0
    return np.linalg.norm(analytic - numeric) / scale


def brute_force_ap(relevance):
    """Average precision straight from its definition."""
    precisions = []
    for k in range(1, len(relevance) + 1):
        if relevance[k - 1]:
            precisions.append(sum(relevance[:k]) / k)
    return sum(precisions) / len(precisions)


def brute_force_discordant(perm_a, perm_b):
    """Count item pairs ordered differently by two orderings."""
    pos_a = {item: i for i, item in enumerate(perm_a)}
    pos_b = {item: i for i, item in enumerate(perm_b)}
    count = 0
    for x, y in itertools.combinations(perm_a, 2):
        if (pos_a[x] - pos_a[y]) * (pos_b[x] - pos_b[y]) < 0:
            count += 1
    return count


def circle_embeddings(m, degrees=10.0):
    """Points ``(cos i theta, sin i theta)`` for ``i = 0 .. m-1``."""
    theta = np.deg2rad(degrees) * np.arange(m)
    return np.stack([np.cos(theta), np.sin(theta)], axis=1)


def make_dataset(lengths, dim=4, seed=0, labels=None):
    """Dataset of random sequences with the given lengths."""
    rng = np.random.default_rng(seed)
    sequences = []
    for i, n in enumerate(lengths):
        label = None if labels is None else labels[i]
        sequences.append(FeatureSequence(
            'v{}'.format(i),
            rng.standard_normal((n, dim)).astype(np.float32),
            label=label))
    return Dataset(dim, sequences)
