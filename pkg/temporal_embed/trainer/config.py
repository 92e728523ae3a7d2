from dataclasses import dataclass

from ..enums import ContextVariant
from ..errors import ConfigError


@dataclass(frozen=True)
class TrainConfig:
    """Training loop parameters.

    Args:
        lr0: Initial learning rate.
        anneal_every: Iterations between learning rate steps.
        anneal_factor: Multiplier applied at every step, in ``(0, 1)``.
        batch_size: Examples per iteration.
        iterations: Total number of iterations.
        seed: Seed of the sampling and dropout streams.
        variant: ContextVariant to train.
        hard_negatives: Draw hard negatives from the target's sequence.
        checkpoint_every: Iterations between checkpoints.
        log_every: Iterations between progress log lines.
        workers: Number of threads computing per-chunk gradients.
        deterministic: Reduce chunk gradients in a fixed order.
    """

    lr0: float = 0.01
    anneal_every: int = 5000
    anneal_factor: float = 0.5
    batch_size: int = 256
    iterations: int = 5000
    seed: int = 0
    variant: ContextVariant = ContextVariant.Full
    hard_negatives: bool = True
    checkpoint_every: int = 1000
    log_every: int = 100
    workers: int = 1
    deterministic: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'variant', ContextVariant(self.variant))
        if self.lr0 < 0:
            raise ConfigError('lr0 must not be negative, got {}'.format(
                self.lr0))
        if self.anneal_every < 1:
            raise ConfigError('anneal_every must be at least 1')
        if not 0.0 < self.anneal_factor < 1.0:
            raise ConfigError('anneal_factor must lie in (0, 1), got '
                              '{}'.format(self.anneal_factor))
        if self.batch_size < 1 or self.iterations < 0:
            raise ConfigError('batch_size must be positive and iterations '
                              'non-negative')
        if self.checkpoint_every < 1 or self.log_every < 1:
            raise ConfigError('checkpoint_every and log_every must be '
                              'positive')
        if self.workers < 1:
            raise ConfigError('workers must be at least 1')


def lr_at(cfg, iteration):
    """Step-annealed learning rate at ``iteration``.

    ``lr0 * anneal_factor ** (iteration // anneal_every)``
    """
    if iteration < 0:
        raise ValueError('iteration must not be negative, got {}'.format(
            iteration))
    return cfg.lr0 * cfg.anneal_factor ** (iteration // cfg.anneal_every)
