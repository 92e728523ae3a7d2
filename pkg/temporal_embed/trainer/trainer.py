"""Minibatch SGD over the sampled ranking objective."""
import csv
import logging
import os.path
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field, replace

import numpy as np

from ..enums import Mode
from ..errors import DataError, NumericalError
from ..model import save_checkpoint
from ..objective import batch_loss
from ..sampler import FrameSampler
from .config import lr_at


logger = logging.getLogger(__name__)

"""File name of the final checkpoint written by train"""
FINAL_CHECKPOINT = 'final.bin'

"""File name of the loss log written by train"""
LOG_NAME = 'train_log.csv'


def checkpoint_name(iteration):
    return 'ckpt-{:08d}.bin'.format(iteration)


@dataclass
class TrainLog:
    """Per-iteration training trace."""

    iterations: list = field(default_factory=list)
    losses: list = field(default_factory=list)
    lrs: list = field(default_factory=list)
    wall_time: float = 0.0

    def append(self, iteration, loss, lr):
        self.iterations.append(iteration)
        self.losses.append(loss)
        self.lrs.append(lr)

    def __len__(self):
        return len(self.iterations)

    def write_csv(self, path):
        """Write ``iteration,loss,lr`` rows to ``path``."""
        with open(path, 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['iteration', 'loss', 'lr'])
            for row in zip(self.iterations, self.losses, self.lrs):
                writer.writerow([row[0], repr(row[1]), repr(row[2])])
        return path

    @classmethod
    def read_csv(cls, path, before=None):
        """Load a log written by write_csv.

        Args:
            path: CSV file.
            before: Keep only rows with an iteration below this one.

        Raises:
            DataError: Malformed row.
        """
        log = cls()
        with open(path, newline='') as f:
            reader = csv.reader(f)
            next(reader, None)
            for number, row in enumerate(reader, 2):
                try:
                    iteration = int(row[0])
                    loss, lr = float(row[1]), float(row[2])
                except (IndexError, ValueError):
                    raise DataError('{}:{}: malformed log row {!r}'.format(
                        path, number, row)) from None
                if before is None or iteration < before:
                    log.append(iteration, loss, lr)
        return log


def _chunk_gradients(model, dataset, examples, seed, iteration, chunk):
    rng = np.random.default_rng([seed, iteration, chunk + 1])
    return batch_loss(model, dataset, examples, Mode.Train, rng)


def _batch_gradients(model, dataset, batch, cfg, iteration, executor):
    """Mean loss and mean parameter gradient of a minibatch.

    The batch is split into ``cfg.workers`` contiguous chunks evaluated
    against the same frozen parameters. In deterministic mode chunk results
    are reduced in chunk order, otherwise in completion order.
    """
    bounds = np.linspace(0, len(batch), cfg.workers + 1).astype(int)
    chunks = [batch[lo:hi] for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]

    if executor is None:
        results = [_chunk_gradients(model, dataset, chunk, cfg.seed,
                                    iteration, c)
                   for c, chunk in enumerate(chunks)]
    else:
        futures = [executor.submit(_chunk_gradients, model, dataset, chunk,
                                   cfg.seed, iteration, c)
                   for c, chunk in enumerate(chunks)]
        if cfg.deterministic:
            results = [future.result() for future in futures]
        else:
            results = [future.result() for future in as_completed(futures)]

    losses, grads = results[0]
    total = losses.sum()
    for chunk_losses, chunk_grads in results[1:]:
        total += chunk_losses.sum()
        grads = grads + chunk_grads

    scale = 1.0 / len(batch)
    return total * scale, grads.scaled(scale)


def train(dataset, model, sampler_cfg, train_cfg, checkpoint_dir=None,
          start_iteration=0, config_digest='', history=None):
    """Learn embedding parameters by minibatch SGD.

    Every iteration draws a batch from streams seeded by
    ``(train_cfg.seed, iteration)``, so a run resumed from the checkpoint of
    iteration ``i`` continues exactly like an uninterrupted run.

    Args:
        dataset: Training Dataset.
        model: Initial EmbeddingModel (or the model of a resumed checkpoint).
        sampler_cfg: SamplerConfig.
        train_cfg: TrainConfig.
        checkpoint_dir: Directory for checkpoints and the loss CSV, or None
            to keep everything in memory.
        start_iteration: Number of iterations already completed by ``model``.
        config_digest: Digest written into every checkpoint header.
        history: TrainLog of the iterations before ``start_iteration``; its
            rows open the returned log so a resumed run writes the same CSV
            as an uninterrupted one.

    Returns:
        ``(model, log)``: the trained EmbeddingModel and its TrainLog.

    Raises:
        NumericalError: Non-finite loss or gradient.
        DataError: The dataset cannot be sampled.
    """
    if not train_cfg.hard_negatives:
        sampler_cfg = replace(sampler_cfg, hard_fraction=0.0)
    sampler = FrameSampler(dataset, sampler_cfg, train_cfg.variant)

    W = np.array(model.W, dtype=np.float32)
    b = np.array(model.b, dtype=np.float32)
    log = TrainLog()
    if history is not None:
        for row in zip(history.iterations, history.losses, history.lrs):
            if row[0] < start_iteration:
                log.append(*row)
    if log.iterations != list(range(start_iteration)):
        logger.warning('loss log covers %d of the %d iterations before the '
                       'start', len(log), start_iteration)
    resumed = len(log)
    started = time.monotonic()

    logger.info('training %s model %dx%d for iterations %d..%d',
                train_cfg.variant.value, model.emb_dim, model.in_dim,
                start_iteration, train_cfg.iterations)

    executor = (ThreadPoolExecutor(max_workers=train_cfg.workers)
                if train_cfg.workers > 1 else None)
    try:
        for iteration in range(start_iteration, train_cfg.iterations):
            rng = np.random.default_rng([train_cfg.seed, iteration])
            batch = sampler.batch(train_cfg.batch_size, rng)
            current = model.with_params(W, b)

            loss, grads = _batch_gradients(current, dataset, batch, train_cfg,
                                           iteration, executor)
            if not np.isfinite(loss):
                raise NumericalError('non-finite loss {}'.format(loss),
                                     iteration=iteration)
            if not grads.is_finite():
                raise NumericalError('non-finite gradient',
                                     iteration=iteration)

            lr = lr_at(train_cfg, iteration)
            W = (W - lr * grads.W).astype(np.float32)
            b = (b - lr * grads.b).astype(np.float32)
            if not (np.isfinite(W).all() and np.isfinite(b).all()):
                raise NumericalError('non-finite parameters after update',
                                     iteration=iteration)
            log.append(iteration, float(loss), lr)

            done = iteration + 1
            if done % train_cfg.log_every == 0:
                logger.info('iteration %d loss %.6f lr %g', done, loss, lr)
            if checkpoint_dir is not None and done % train_cfg.checkpoint_every == 0:
                save_checkpoint(model.with_params(W, b),
                                os.path.join(checkpoint_dir,
                                             checkpoint_name(done)),
                                done, config_digest)
                log.write_csv(os.path.join(checkpoint_dir, LOG_NAME))
    finally:
        if executor is not None:
            executor.shutdown()

    log.wall_time = time.monotonic() - started
    model = model.with_params(W, b)

    if checkpoint_dir is not None:
        save_checkpoint(model, os.path.join(checkpoint_dir, FINAL_CHECKPOINT),
                        max(train_cfg.iterations, start_iteration),
                        config_digest)
        log.write_csv(os.path.join(checkpoint_dir, LOG_NAME))

    logger.info('trained %d iterations in %.1fs', len(log) - resumed,
                log.wall_time)
    return model, log
