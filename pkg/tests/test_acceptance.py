"""Directional checks of trained embeddings on the default synthetic data.

These train several models for thousands of iterations and only run with
``--runslow``.
"""
import numpy as np
import pytest

from temporal_embed.dataset import split_dataset
from temporal_embed.enums import ContextVariant
from temporal_embed.evaluation import (classify_dataset, event_retrieval_map,
                                       order_recovery_eval)
from temporal_embed.model import (ModelEmbedding, RawFeatureEmbedding,
                                  init_model)
from temporal_embed.sampler import SamplerConfig
from temporal_embed.synth import SynthSpec, generate
from temporal_embed.trainer import TrainConfig, train


SEEDS = (0, 1, 2)


def _train(d, seed, variant=ContextVariant.Full, hard_negatives=True):
    model = init_model(d.dim, 64, seed)
    sampler_cfg = SamplerConfig(seed=seed)
    train_cfg = TrainConfig(iterations=5000, seed=seed, variant=variant,
                            hard_negatives=hard_negatives, log_every=1000)
    model, _ = train(d, model, sampler_cfg, train_cfg)
    return ModelEmbedding(model)


@pytest.fixture(scope='module')
def runs():
    results = {}
    for seed in SEEDS:
        d = generate(SynthSpec(seed=seed))
        results[seed] = {
            'data': d,
            'raw': RawFeatureEmbedding(),
            'full': _train(d, seed),
            'no_temporal': _train(d, seed, ContextVariant.NoTemporal),
            'no_hard': _train(d, seed, hard_negatives=False),
        }
    yield results


def _event_map(run, name):
    return event_retrieval_map(run['data'], run[name]).aggregate


@pytest.mark.slow
@pytest.mark.parametrize('seed', SEEDS)
def test_full_model_beats_raw_and_bag_of_frames(runs, seed):
    run = runs[seed]
    full = _event_map(run, 'full')

    assert full >= 1.05 * _event_map(run, 'raw')
    assert full >= 1.05 * _event_map(run, 'no_temporal')


@pytest.mark.slow
def test_hard_negatives_help(runs):
    full = np.mean([_event_map(runs[s], 'full') for s in SEEDS])
    no_hard = np.mean([_event_map(runs[s], 'no_hard') for s in SEEDS])

    assert full >= no_hard


@pytest.mark.slow
def test_order_recovery_improves_on_raw_features(runs):
    full = np.mean([order_recovery_eval(runs[s]['data'],
                                        runs[s]['full']).aggregate
                    for s in SEEDS])
    raw = np.mean([order_recovery_eval(runs[s]['data'],
                                       runs[s]['raw']).aggregate
                   for s in SEEDS])

    assert full < 50.0
    assert full <= raw


@pytest.mark.slow
def test_classification_improves_on_raw_features(runs):
    scores = {'full': [], 'raw': []}
    for seed in SEEDS:
        train_set, test_set = split_dataset(runs[seed]['data'], 0.3, seed)
        for name in scores:
            scores[name].append(classify_dataset(
                train_set, test_set, runs[seed][name], seed=seed).aggregate)

    assert np.mean(scores['full']) >= np.mean(scores['raw'])
