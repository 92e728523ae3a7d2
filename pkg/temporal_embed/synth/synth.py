"""Synthetic feature sequences with planted temporal structure.

Each event is a left-to-right Markov chain over its own states. A sequence
picks one event, walks its chain and emits one noisy copy of the current
state's prototype per frame. Aliased state pairs from different events share
one prototype exactly, so only their temporal context tells them apart.

Every sequence also carries an appearance offset, constant over its frames
and confined to a few fixed directions of the feature space. It stands for
lighting, camera and background: it tells videos apart without saying
anything about their event.
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from ..dataset import Dataset, FeatureSequence
from ..errors import ConfigError


logger = logging.getLogger(__name__)

"""Probability of moving to the next state of the chain at every step"""
ADVANCE_PROBABILITY = 0.3


def default_alias_pairs(num_events, states_per_event, count):
    """Pair the final states of consecutive events.

    Pair ``i`` aliases the last state of event ``2i`` with the last state of
    event ``2i + 1`` (event indices wrap around). Chains end in their last
    state, so these are the states most frames of a sequence are emitted
    from.

    Returns:
        Tuple of ``(state, state)`` global state id pairs.
    """
    if num_events < 2:
        return ()
    last = states_per_event - 1
    pairs = []
    for i in range(count):
        a = (2 * i) % num_events
        b = (2 * i + 1) % num_events
        pairs.append((a * states_per_event + last,
                      b * states_per_event + last))
    return tuple(pairs)


@dataclass(frozen=True)
class SynthSpec:
    """Parameters of a synthetic dataset.

    Global state ids run ``event * states_per_event + state``. Prototypes
    are drawn with unit expected norm.

    Args:
        num_events: Number of events (class labels).
        states_per_event: Chain length of every event.
        dim: Feature dimension.
        num_sequences: Number of sequences generated.
        seq_len: Frames per sequence.
        emission_noise: Standard deviation of the isotropic emission noise.
        alias_pairs: ``(state, state)`` pairs sharing a prototype, each pair
            spanning two different events.
        appearance_shift: Standard deviation of the per-sequence appearance
            offset, in units of ``emission_noise``.
        appearance_dims: Number of feature directions the appearance offset
            lives in, clipped to ``dim``.
        seed: Seed of the generator.
    """

    num_events: int = 5
    states_per_event: int = 6
    dim: int = 32
    num_sequences: int = 200
    seq_len: int = 40
    emission_noise: float = 0.1
    alias_pairs: tuple = field(
        default_factory=lambda: default_alias_pairs(5, 6, 2))
    appearance_shift: float = 4.0
    appearance_dims: int = 4
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'alias_pairs',
                           tuple(tuple(int(s) for s in p)
                                 for p in self.alias_pairs))
        if min(self.num_events, self.states_per_event, self.dim,
               self.num_sequences, self.seq_len) < 1:
            raise ConfigError('synthetic dataset sizes must be positive')
        if self.emission_noise < 0:
            raise ConfigError('emission_noise must not be negative')
        if self.appearance_shift < 0 or self.appearance_dims < 0:
            raise ConfigError('appearance_shift and appearance_dims must not '
                              'be negative')

        num_states = self.num_events * self.states_per_event
        for a, b in self.alias_pairs:
            if not (0 <= a < num_states and 0 <= b < num_states):
                raise ConfigError('alias pair ({}, {}) outside the {} '
                                  'states'.format(a, b, num_states))
            if a // self.states_per_event == b // self.states_per_event:
                raise ConfigError('alias pair ({}, {}) must span two '
                                  'events'.format(a, b))


def _walk(rng, length, num_states):
    """State index per step of a left-to-right chain starting at 0."""
    advances = rng.random(length - 1) < ADVANCE_PROBABILITY
    steps = np.concatenate([[0], np.cumsum(advances)])
    return np.minimum(steps, num_states - 1)


def _basis(rng, spec):
    k = min(spec.appearance_dims, spec.dim)
    if k == 0:
        return np.zeros((spec.dim, 0))
    q, _ = np.linalg.qr(rng.standard_normal((spec.dim, k)))
    return q


def generate(spec):
    """Generate a labeled dataset with per-frame state annotations.

    Frame ``t`` of a sequence is ``prototype[state_t] + offset + noise_t``,
    where ``offset`` is drawn once per sequence inside the appearance basis.

    Args:
        spec: SynthSpec.

    Returns:
        Dataset whose sequences carry ``label`` (event) and ``state_ids``
        (global state id per frame).
    """
    root = np.random.SeedSequence(spec.seed)
    proto_seed, *seq_seeds = root.spawn(spec.num_sequences + 1)

    num_states = spec.num_events * spec.states_per_event
    proto_rng = np.random.default_rng(proto_seed)
    prototypes = proto_rng.standard_normal((num_states, spec.dim))
    prototypes /= np.sqrt(spec.dim)
    for a, b in spec.alias_pairs:
        prototypes[b] = prototypes[a]
    basis = _basis(proto_rng, spec)
    shift = spec.appearance_shift * spec.emission_noise

    sequences = []
    for i, seed in enumerate(seq_seeds):
        rng = np.random.default_rng(seed)
        event = int(rng.integers(spec.num_events))
        states = (event * spec.states_per_event +
                  _walk(rng, spec.seq_len, spec.states_per_event))
        noise = rng.standard_normal((spec.seq_len, spec.dim))
        offset = basis @ rng.standard_normal(basis.shape[1])
        features = (prototypes[states] + shift * offset +
                    spec.emission_noise * noise)
        sequences.append(FeatureSequence('synth-{:05d}'.format(i),
                                         features.astype(np.float32),
                                         label=event, state_ids=states))

    logger.info('generated %d synthetic sequences over %d events',
                spec.num_sequences, spec.num_events)
    return Dataset(spec.dim, sequences)
