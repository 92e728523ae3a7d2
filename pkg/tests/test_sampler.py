import numpy as np
import pytest

from temporal_embed.enums import ContextVariant
from temporal_embed.errors import ConfigError, DataError
from temporal_embed.sampler import (FrameSampler, SamplerConfig,
                                    assemble_batch, context_indices,
                                    feasible_targets, sample_example)
from utils import make_dataset


def test_feasible_targets():
    assert list(feasible_targets(9, 2, 1)) == [2, 3, 4, 5, 6]
    assert list(feasible_targets(9, 2, 2)) == [4]
    assert not len(feasible_targets(8, 2, 2))


def test_context_indices():
    assert context_indices(ContextVariant.Full, 6, 2, 2) == [2, 4, 8, 10]
    assert context_indices(ContextVariant.NoFuture, 6, 2, 2) == [2, 4]


def test_empty_hard_pool_gives_cross_negatives():
    d = make_dataset([5, 6, 7])
    cfg = SamplerConfig(T=2, strides=(1,), negatives_per_target=4,
                        hard_fraction=1.0)
    sampler = FrameSampler(d.subset(['v0', 'v1']), cfg)

    rng = np.random.default_rng(0)
    examples = [sampler.sample(rng) for _ in range(50)]
    on_short = [e for e in examples if e.seq_id == 'v0']

    assert on_short
    for example in on_short:
        assert example.target_idx == 2
        assert all(seq_id == 'v1' for seq_id, _ in example.negatives)
        assert len(example.negatives) == 4


def _check_example(d, cfg, example):
    seq = d.get(example.seq_id)
    n = seq.num_frames
    radius = cfg.T * example.stride

    assert example.stride in cfg.strides
    assert radius <= example.target_idx < n - radius
    assert len(example.negatives) == cfg.negatives_per_target
    if example.variant is ContextVariant.NoTemporal:
        assert len(example.context_idxs) == 1
        assert example.context_idxs[0] != example.target_idx
    else:
        assert example.context_idxs == context_indices(
            example.variant, example.target_idx, cfg.T, example.stride)

    hard = [i for s, i in example.negatives if s == example.seq_id]
    assert len(set(hard)) == len(hard)
    for i in hard:
        assert abs(i - example.target_idx) > radius
        assert i not in example.context_idxs
    for s, i in example.negatives:
        assert 0 <= i < d.get(s).num_frames


@pytest.mark.parametrize('variant', list(ContextVariant))
def test_batch_examples_are_valid(dataset, variant):
    cfg = SamplerConfig(T=2, strides=(1, 2, 4), negatives_per_target=5,
                        hard_fraction=0.4)

    batch = assemble_batch(dataset, cfg, 256, np.random.default_rng(1),
                           variant)

    assert len(batch) == 256
    for example in batch:
        assert example.variant is variant
        _check_example(dataset, cfg, example)


def test_hard_fraction_rounds_up(dataset):
    cfg = SamplerConfig(negatives_per_target=5, hard_fraction=0.5)

    assert FrameSampler(dataset, cfg).num_hard == 3


def test_no_hard_negatives(dataset):
    cfg = SamplerConfig(negatives_per_target=4, hard_fraction=0.0)
    batch = assemble_batch(dataset, cfg, 64, np.random.default_rng(2))

    for example in batch:
        assert all(s != example.seq_id for s, _ in example.negatives)


def test_same_seed_same_batch(dataset):
    cfg = SamplerConfig()

    a = assemble_batch(dataset, cfg, 32, np.random.default_rng(7))
    b = assemble_batch(dataset, cfg, 32, np.random.default_rng(7))

    assert a == b


def test_different_seeds_differ(dataset):
    cfg = SamplerConfig()
    reference = assemble_batch(dataset, cfg, 16, np.random.default_rng(0))

    for seed in range(1, 20):
        assert assemble_batch(dataset, cfg, 16,
                              np.random.default_rng(seed)) != reference


def test_own_stream_follows_config_seed(dataset):
    cfg = SamplerConfig(seed=11)

    a = FrameSampler(dataset, cfg).batch(8)
    b = FrameSampler(dataset, cfg).batch(8)

    assert a == b


def test_sequences_picked_evenly():
    d = make_dataset([20, 20])
    sampler = FrameSampler(d, SamplerConfig(strides=(1,)))
    rng = np.random.default_rng(3)

    picks = [sampler.sample(rng).seq_id for _ in range(100000)]

    assert picks.count('v0') / len(picks) == pytest.approx(0.5, abs=0.01)


def test_sample_example_is_one_draw(dataset):
    cfg = SamplerConfig()

    example = sample_example(dataset, cfg, np.random.default_rng(5))

    _check_example(dataset, cfg, example)


def test_needs_two_sequences():
    with pytest.raises(DataError):
        FrameSampler(make_dataset([30]), SamplerConfig())


def test_needs_a_complete_window():
    with pytest.raises(DataError):
        FrameSampler(make_dataset([4, 4]), SamplerConfig(T=2, strides=(1,)))


def test_short_sequences_skip_long_strides():
    d = make_dataset([6, 40])
    cfg = SamplerConfig(T=2, strides=(1, 4))
    batch = FrameSampler(d, cfg).batch(200, np.random.default_rng(0))

    assert {e.stride for e in batch if e.seq_id == 'v0'} == {1}


@pytest.mark.parametrize('kwargs', [
    {'T': 0},
    {'strides': ()},
    {'strides': (1, 1)},
    {'strides': (0, 2)},
    {'negatives_per_target': 0},
    {'hard_fraction': 1.5},
])
def test_invalid_config(kwargs):
    with pytest.raises(ConfigError):
        SamplerConfig(**kwargs)


def test_batch_size_must_be_positive(dataset):
    with pytest.raises(ConfigError):
        FrameSampler(dataset, SamplerConfig()).batch(0)
