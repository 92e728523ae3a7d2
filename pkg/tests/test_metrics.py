import itertools

import numpy as np
import pytest
from scipy import stats

from temporal_embed.evaluation import (average_precision, cosine,
                                       kendall_tau_distance, rank_by_score,
                                       unit_rows)
from utils import brute_force_ap, brute_force_discordant


def test_cosine_examples():
    assert cosine([1, 0], [0, 1]) == 0.0
    assert cosine([1, 2], [2, 4]) == pytest.approx(1.0)
    assert cosine([1, 2], [-1, -2]) == pytest.approx(-1.0)


def test_cosine_is_scale_invariant():
    rng = np.random.default_rng(0)
    for _ in range(20):
        x, y = rng.standard_normal((2, 5))
        assert cosine(2 * x, y) == pytest.approx(cosine(x, y))


def test_cosine_of_zero_vector():
    assert cosine([0, 0], [1, 2]) == 0.0


def test_cosine_rejects_mismatched_dims():
    with pytest.raises(ValueError):
        cosine([1, 2], [1, 2, 3])


def test_unit_rows_leaves_zero_rows():
    out = unit_rows([[3.0, 4.0], [0.0, 0.0]])

    assert out.tolist() == [[0.6, 0.8], [0.0, 0.0]]


def test_rank_by_score_breaks_ties_in_key_order():
    scores = [0.5, 0.9, 0.5, 0.5]

    assert rank_by_score(scores, [2, 0, 1, 1], [0, 0, 7, 3]).tolist() == \
        [1, 3, 2, 0]


def test_average_precision_examples():
    assert average_precision([1, 1, 0]) == 1.0
    assert average_precision([1, 0, 1]) == pytest.approx((1 + 2 / 3) / 2)
    assert average_precision([0, 0, 1]) == pytest.approx(1 / 3)


def test_average_precision_matches_brute_force():
    rng = np.random.default_rng(1)
    for _ in range(100):
        relevance = (rng.random(rng.integers(1, 30)) < 0.3).tolist()
        if not any(relevance):
            relevance[-1] = True
        assert average_precision(relevance) == pytest.approx(
            brute_force_ap(relevance), abs=1e-12)


def test_average_precision_needs_a_relevant_item():
    with pytest.raises(ValueError):
        average_precision([0, 0])


def test_kendall_examples():
    assert kendall_tau_distance([0, 1, 2, 3], [0, 1, 2, 3]) == 0.0
    assert kendall_tau_distance([3, 2, 1, 0], [0, 1, 2, 3]) == 100.0
    assert kendall_tau_distance([0, 1, 3, 2], [0, 1, 2, 3]) == \
        pytest.approx(100 / 6)


@pytest.mark.parametrize('m', [2, 3, 4, 5])
def test_kendall_exhaustive(m):
    identity = list(range(m))
    pairs = m * (m - 1) / 2
    for perm in itertools.permutations(identity):
        expected = 100.0 * brute_force_discordant(perm, identity) / pairs
        assert kendall_tau_distance(perm, identity) == pytest.approx(expected)


def test_kendall_matches_scipy():
    rng = np.random.default_rng(2)
    for _ in range(50):
        perm = rng.permutation(10)
        tau, _ = stats.kendalltau(perm, np.arange(10))
        # without ties tau = 1 - 4 D / (m (m - 1)), so distance = 50 (1 - tau)
        assert kendall_tau_distance(np.argsort(perm), range(10)) == \
            pytest.approx(50.0 * (1.0 - tau))


def test_kendall_is_symmetric():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = rng.permutation(8), rng.permutation(8)
        assert kendall_tau_distance(a, b) == kendall_tau_distance(b, a)


@pytest.mark.parametrize('a, b', [
    ([0], [0]),
    ([0, 1], [0, 1, 2]),
    ([0, 0, 1], [0, 1, 2]),
    ([0, 1, 5], [0, 1, 2]),
])
def test_kendall_rejects_non_permutations(a, b):
    with pytest.raises(ValueError):
        kendall_tau_distance(a, b)


def test_kendall_matches_brute_force_on_random_permutations():
    rng = np.random.default_rng(4)
    identity = list(range(10))
    for _ in range(100):
        perm = rng.permutation(10).tolist()
        expected = 100.0 * brute_force_discordant(perm, identity) / 45
        assert kendall_tau_distance(perm, identity) == pytest.approx(expected)
