import numpy as np
import pytest

from temporal_embed.errors import ConfigError
from temporal_embed.evaluation import event_retrieval_map
from temporal_embed.model import RawFeatureEmbedding
from temporal_embed.synth import SynthSpec, default_alias_pairs, generate


def test_default_alias_pairs():
    assert default_alias_pairs(5, 6, 2) == ((5, 11), (17, 23))
    assert default_alias_pairs(3, 4, 1) == ((3, 7),)
    assert default_alias_pairs(1, 6, 2) == ()


def test_shapes_and_annotations(small_synth_spec):
    d = generate(small_synth_spec)

    assert len(d) == 12
    assert d.dim == 8
    assert d.labeled
    for seq in d:
        assert seq.num_frames == 24
        assert seq.features.dtype == np.float32
        first = seq.label * 4
        assert seq.state_ids[0] == first
        assert first <= seq.state_ids.min()
        assert seq.state_ids.max() < first + 4
        # left to right, one step at a time
        assert set(np.diff(seq.state_ids)) <= {0, 1}


def test_generation_is_deterministic(small_synth_spec):
    a = generate(small_synth_spec)
    b = generate(small_synth_spec)

    assert a.ids == b.ids
    for x, y in zip(a, b):
        assert x.features.tobytes() == y.features.tobytes()


def test_seed_changes_data(small_synth_spec):
    a = generate(small_synth_spec)
    b = generate(SynthSpec(**{**small_synth_spec.__dict__, 'seed': 4}))

    assert a[0].features.tobytes() != b[0].features.tobytes()


def test_aliased_states_share_a_prototype():
    spec = SynthSpec(num_events=2, states_per_event=3, dim=4,
                     num_sequences=60, seq_len=30, emission_noise=0.0,
                     alias_pairs=((1, 4),), seed=0)

    d = generate(spec)
    by_state = {}
    for seq in d:
        for state, frame in zip(seq.state_ids, seq.features):
            by_state.setdefault(int(state), frame)

    assert set(by_state) >= {1, 4}
    assert by_state[1].tobytes() == by_state[4].tobytes()
    assert by_state[0].tobytes() != by_state[3].tobytes()


def test_noise_scale(small_synth_spec):
    quiet = generate(SynthSpec(**{**small_synth_spec.__dict__,
                                  'emission_noise': 0.0}))
    noisy = generate(small_synth_spec)

    # the per-sequence offset drops out around each sequence's mean
    residual = np.concatenate([
        (n.features - q.features) - (n.features - q.features).mean(axis=0)
        for n, q in zip(noisy, quiet)])
    assert residual.std() == pytest.approx(0.1, rel=0.1)


def test_appearance_offset_spans_few_directions():
    spec = SynthSpec(num_events=2, states_per_event=3, dim=8,
                     num_sequences=60, seq_len=40, appearance_dims=2, seed=5)
    quiet = generate(SynthSpec(**{**spec.__dict__, 'emission_noise': 0.0}))
    noisy = generate(spec)

    offsets = np.array([(n.features - q.features).mean(axis=0)
                        for n, q in zip(noisy, quiet)])
    s = np.linalg.svd(offsets, compute_uv=False)

    assert s[1] > 1.0
    assert s[2] < 0.2 * s[1]


def test_offsets_are_constant_within_a_sequence():
    spec = SynthSpec(num_events=2, states_per_event=3, dim=4,
                     num_sequences=10, seq_len=20, emission_noise=1e-3,
                     appearance_shift=1000.0, alias_pairs=(), seed=6)

    for seq in generate(spec):
        spread = seq.features - seq.features[0]
        same_state = seq.state_ids == seq.state_ids[0]
        assert np.abs(spread[same_state]).max() < 0.01


def test_events_are_separable_without_aliases_and_offsets():
    d = generate(SynthSpec(num_events=3, states_per_event=4, dim=32,
                           num_sequences=30, seq_len=30, emission_noise=0.05,
                           alias_pairs=(), appearance_shift=0.0, seed=1))

    assert event_retrieval_map(d, RawFeatureEmbedding()).aggregate > 0.9


@pytest.mark.parametrize('seed', [0, 1, 2])
def test_default_data_leaves_room_over_raw_features(seed):
    d = generate(SynthSpec(seed=seed))

    assert event_retrieval_map(d, RawFeatureEmbedding()).aggregate < 0.9


@pytest.mark.parametrize('kwargs', [
    {'num_events': 0},
    {'emission_noise': -0.1},
    {'alias_pairs': ((0, 1),)},
    {'alias_pairs': ((0, 99),)},
])
def test_invalid_spec(kwargs):
    with pytest.raises(ConfigError):
        SynthSpec(**kwargs)


def test_noiseless_states_repeat_exactly():
    spec = SynthSpec(num_events=2, states_per_event=3, dim=4,
                     num_sequences=10, seq_len=20, emission_noise=0.0,
                     alias_pairs=(), seed=2)

    for seq in generate(spec):
        for state in np.unique(seq.state_ids):
            frames = seq.features[seq.state_ids == state]
            assert (frames == frames[0]).all()
