"""Pytest configuration."""
import os.path
import sys

import pytest


my_path = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(my_path, '..'))

from temporal_embed.synth import SynthSpec, default_alias_pairs  # noqa: E402
from utils import make_dataset  # noqa: E402


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='run long acceptance tests')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return

    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def dataset():
    """Four unlabeled random sequences of dim 8."""
    yield make_dataset([20, 15, 30, 12], dim=8)


@pytest.fixture
def labeled_dataset():
    """Six labeled random sequences of dim 8, two per class."""
    yield make_dataset([20, 25, 20, 22, 30, 19], dim=8,
                       labels=[0, 0, 1, 1, 2, 2])


@pytest.fixture
def small_synth_spec():
    """A quick synthetic spec with aliased states."""
    yield SynthSpec(num_events=3, states_per_event=4, dim=8,
                    num_sequences=12, seq_len=24, emission_noise=0.1,
                    alias_pairs=default_alias_pairs(3, 4, 1), seed=3)
