"""Training example sampling.

Targets are drawn with a complete context window at one of several temporal
strides. Negatives mix hard negatives from the target's own sequence (outside
the context window) with frames from other sequences.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from ..enums import ContextVariant
from ..errors import ConfigError, DataError
from ..objective import context_no_temporal


@dataclass(frozen=True)
class SamplerConfig:
    """Sampler parameters.

    Args:
        T: Context window size.
        strides: Distinct positive temporal strides.
        negatives_per_target: Number of negatives per example.
        hard_fraction: Share of negatives drawn from the target's sequence.
        seed: Seed of the sampling stream.
    """

    T: int = 2
    strides: tuple = (1, 2, 4)
    negatives_per_target: int = 4
    hard_fraction: float = 0.5
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'strides', tuple(int(s) for s in self.strides))
        if self.T < 1:
            raise ConfigError('T must be at least 1, got {}'.format(self.T))
        if not self.strides or min(self.strides) < 1:
            raise ConfigError('strides must be non-empty and positive, got '
                              '{}'.format(self.strides))
        if len(set(self.strides)) != len(self.strides):
            raise ConfigError('strides must be distinct, got {}'.format(
                self.strides))
        if self.negatives_per_target < 1:
            raise ConfigError('negatives_per_target must be at least 1')
        if not 0.0 <= self.hard_fraction <= 1.0:
            raise ConfigError('hard_fraction must lie in [0, 1], got '
                              '{}'.format(self.hard_fraction))


@dataclass
class TrainingExample:
    """One (target, context, negatives) draw.

    Args:
        seq_id: Id of the target's sequence.
        target_idx: Target frame index.
        stride: Temporal stride of the context window.
        context_idxs: Frame indices of the context, in the target's sequence.
        negatives: List of ``(seq_id, frame_idx)`` negative frames.
        variant: ContextVariant the context was built for.
    """

    seq_id: str
    target_idx: int
    stride: int
    context_idxs: list
    negatives: list = field(default_factory=list)
    variant: ContextVariant = ContextVariant.Full


def feasible_targets(n, T, stride):
    """Return the range of targets with a complete window at ``stride``."""
    return range(T * stride, n - T * stride)


def context_indices(variant, target_idx, T, stride):
    """Frame indices of the temporal context of a target.

    Ordered ``[j-T*r .. j-r, j+r .. j+T*r]`` for the full context and
    ``[j-T*r .. j-r]`` for the no-future context.
    """
    past = [target_idx - t * stride for t in range(T, 0, -1)]
    if ContextVariant(variant) is ContextVariant.NoFuture:
        return past
    return past + [target_idx + t * stride for t in range(1, T + 1)]


class FrameSampler:
    """Draws training examples from a dataset.

    An instance holds the table of (sequence, stride) combinations that admit
    a complete context window. It is cheap to build and must not be shared
    between threads; give each worker its own instance and rng.

    Args:
        dataset: Dataset with at least two sequences.
        cfg: SamplerConfig.
        variant: ContextVariant of the examples.

    Raises:
        DataError: Fewer than two sequences, or no sequence admits a complete
            window at any stride.
    """

    def __init__(self, dataset, cfg, variant=ContextVariant.Full):
        if len(dataset) < 2:
            raise DataError('sampling needs at least 2 sequences, got '
                            '{}'.format(len(dataset)))

        self._dataset = dataset
        self._cfg = cfg
        self._variant = ContextVariant(variant)
        self._rng = np.random.default_rng(cfg.seed)
        self._lengths = [seq.num_frames for seq in dataset.sequences]

        self._eligible = []
        for position, n in enumerate(self._lengths):
            strides = [r for r in cfg.strides
                       if len(feasible_targets(n, cfg.T, r))]
            if strides:
                self._eligible.append((position, strides))

        if not self._eligible:
            raise DataError('no sequence admits a complete context window of '
                            'T={} at strides {}'.format(cfg.T, cfg.strides))

    @property
    def config(self):
        return self._cfg

    @property
    def variant(self):
        return self._variant

    @property
    def num_hard(self):
        """Number of hard negatives requested per example."""
        cfg = self._cfg
        return min(cfg.negatives_per_target,
                   math.ceil(round(cfg.hard_fraction *
                                   cfg.negatives_per_target, 9)))

    def _cross_negative(self, position, rng):
        other = int(rng.integers(len(self._lengths) - 1))
        if other >= position:
            other += 1
        frame = int(rng.integers(self._lengths[other]))
        return self._dataset[other].id, frame

    def sample(self, rng=None):
        """Draw one TrainingExample.

        Args:
            rng: numpy Generator, defaults to the sampler's own stream
                seeded with ``cfg.seed``.

        Returns:
            TrainingExample.
        """
        cfg = self._cfg
        rng = self._rng if rng is None else rng
        position, strides = self._eligible[int(rng.integers(len(self._eligible)))]
        seq = self._dataset[position]
        n = seq.num_frames
        stride = strides[int(rng.integers(len(strides)))]
        targets = feasible_targets(n, cfg.T, stride)
        j = targets[int(rng.integers(len(targets)))]

        if self._variant is ContextVariant.NoTemporal:
            context = [context_no_temporal(n, j, rng)]
        else:
            context = context_indices(self._variant, j, cfg.T, stride)

        radius = cfg.T * stride
        excluded = set(context)
        pool = [i for i in range(n)
                if abs(i - j) > radius and i not in excluded]
        num_hard = min(self.num_hard, len(pool))
        hard = []
        if num_hard:
            picks = rng.choice(len(pool), size=num_hard, replace=False)
            hard = [(seq.id, pool[int(p)]) for p in picks]

        cross = [self._cross_negative(position, rng)
                 for _ in range(cfg.negatives_per_target - num_hard)]

        return TrainingExample(seq.id, j, stride, context, hard + cross,
                               self._variant)

    def batch(self, batch_size, rng=None):
        """Draw ``batch_size`` independent examples."""
        rng = self._rng if rng is None else rng
        if batch_size < 1:
            raise ConfigError('batch_size must be at least 1, got {}'.format(
                batch_size))
        return [self.sample(rng) for _ in range(batch_size)]


def sample_example(d, cfg, rng, variant=ContextVariant.Full):
    """Draw one training example from ``d``.

    See FrameSampler for the sampling rules.
    """
    return FrameSampler(d, cfg, variant).sample(rng)


def assemble_batch(d, cfg, batch_size, rng, variant=ContextVariant.Full):
    """Draw a minibatch of ``batch_size`` training examples from ``d``."""
    return FrameSampler(d, cfg, variant).batch(batch_size, rng)
