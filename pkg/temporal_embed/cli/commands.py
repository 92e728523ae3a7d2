"""Command line entry point.

Exit codes: 0 success, 1 usage or config error, 2 data error, 3 numerical
failure.
"""
import argparse
import logging
import os.path
import sys

from ..dataset import load_dataset, save_dataset, split_dataset
from ..enums import ContextVariant
from ..errors import ConfigError, DataError, NumericalError
from ..evaluation import (classify_dataset, distinct_subset,
                          event_retrieval_map, export_embeddings,
                          order_recovery_eval, temporal_retrieval_map)
from ..model import (ModelEmbedding, RawFeatureEmbedding, init_model,
                     load_checkpoint, save_checkpoint)
from ..synth import generate
from ..trainer import LOG_NAME, TrainLog, train
from .config import load_config


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3

"""Name of the checkpoint holding the untrained model"""
INITIAL_CHECKPOINT = 'init.bin'


class _ArgumentParser(argparse.ArgumentParser):
    """Argument parser reporting usage errors as ConfigError."""

    def error(self, message):
        raise ConfigError('{}: {}'.format(self.prog, message))


def _require(args, cfg, *names):
    for name in names:
        if not getattr(cfg, name):
            raise ConfigError('--{} is required for {}'.format(
                name.replace('_', '-'), args.command))


def _embedding(args, cfg):
    if args.raw_features:
        return RawFeatureEmbedding()
    if not cfg.checkpoint:
        raise ConfigError('{} needs --checkpoint or --raw-features'.format(
            args.command))
    model, _ = load_checkpoint(cfg.checkpoint)
    return ModelEmbedding(model)


def cmd_gen_synth(args, cfg):
    _require(args, cfg, 'out')
    save_dataset(generate(cfg.synth_spec()), cfg.out)
    return EXIT_OK


def _prior_log(checkpoint, start):
    """Loss log rows written next to ``checkpoint`` before ``start``."""
    path = os.path.join(os.path.dirname(checkpoint), LOG_NAME)
    if not os.path.isfile(path):
        logger.warning('no loss log next to %s, the new log starts at '
                       'iteration %d', checkpoint, start)
        return None
    return TrainLog.read_csv(path, before=start)


def cmd_train(args, cfg):
    _require(args, cfg, 'dataset', 'out')
    d = load_dataset(cfg.dataset)

    if args.resume:
        model, header = load_checkpoint(args.resume)
        start = int(header['iteration'])
        history = _prior_log(args.resume, start)
        if header.get('config_digest') != cfg.digest:
            logger.warning('config digest %s differs from the checkpoint '
                           'digest %s', cfg.digest, header.get('config_digest'))
        if model.in_dim != d.dim:
            raise DataError('checkpoint expects dim {}, dataset has {}'.format(
                model.in_dim, d.dim))
    else:
        model = init_model(d.dim, cfg.emb_dim, cfg.seed, cfg.lrn(),
                           cfg.dropout_rate)
        start = 0
        history = None
        save_checkpoint(model, os.path.join(cfg.out, INITIAL_CHECKPOINT), 0,
                        cfg.digest)

    train(d, model, cfg.sampler_config(), cfg.train_config(),
          checkpoint_dir=cfg.out, start_iteration=start,
          config_digest=cfg.digest, history=history)
    return EXIT_OK


def cmd_embed(args, cfg):
    _require(args, cfg, 'dataset', 'out')
    d = load_dataset(cfg.dataset)
    rows = export_embeddings(d, _embedding(args, cfg), cfg.out)
    logger.info('wrote %d frame embeddings to %s', rows, cfg.out)
    return EXIT_OK


def cmd_eval_event(args, cfg):
    _require(args, cfg, 'dataset', 'out')
    d = load_dataset(cfg.dataset)
    event_retrieval_map(d, _embedding(args, cfg), cfg.event_frames).write(
        cfg.out)
    return EXIT_OK


def cmd_eval_temporal(args, cfg):
    _require(args, cfg, 'dataset', 'out')
    d = load_dataset(cfg.dataset)
    temporal_retrieval_map(d, _embedding(args, cfg),
                           cfg.temporal_min_len).write(cfg.out)
    return EXIT_OK


def cmd_eval_order(args, cfg):
    _require(args, cfg, 'dataset', 'out')
    d = load_dataset(cfg.dataset)
    if cfg.distinct:
        # distinctness is judged on raw features so every row compares the
        # same videos
        d = distinct_subset(d, RawFeatureEmbedding(), cfg.distinct,
                            cfg.order_frames)
    order_recovery_eval(d, _embedding(args, cfg), cfg.order_frames,
                        seed=cfg.seed).write(cfg.out)
    return EXIT_OK


def cmd_eval_classify(args, cfg):
    _require(args, cfg, 'dataset', 'out')
    d = load_dataset(cfg.dataset)
    train_set, test_set = split_dataset(d, cfg.test_fraction, cfg.seed)
    classify_dataset(train_set, test_set, _embedding(args, cfg),
                     reg_lambda=cfg.classify_reg_lambda,
                     epochs=cfg.classify_epochs, lr=cfg.classify_lr,
                     seed=cfg.seed).write(cfg.out)
    return EXIT_OK


COMMANDS = {
    'gen-synth': (cmd_gen_synth, 'generate a synthetic dataset'),
    'train': (cmd_train, 'train an embedding model'),
    'embed': (cmd_embed, 'export frame embeddings as TSV'),
    'eval-event': (cmd_eval_event, 'event retrieval mAP'),
    'eval-temporal': (cmd_eval_temporal, 'temporal retrieval mAP'),
    'eval-order': (cmd_eval_order, 'temporal order recovery'),
    'eval-classify': (cmd_eval_classify, 'linear event classification'),
}


def build_parser():
    common = _ArgumentParser(add_help=False)
    common.add_argument('--config', help='flat key=value config file')
    common.add_argument('--dataset', help='dataset manifest')
    common.add_argument('--checkpoint', help='model checkpoint')
    common.add_argument('--out', help='output file, prefix or directory')
    common.add_argument('--seed', type=int)
    common.add_argument('--raw-features', action='store_true',
                        help='evaluate the input features directly')
    common.add_argument('--variant',
                        choices=[v.value for v in ContextVariant])
    common.add_argument('--no-hard-negatives', action='store_true')
    common.add_argument('-v', '--verbose', action='store_true')

    parser = _ArgumentParser(prog='temporal-embed',
                             description='Temporal frame embeddings.')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True
    for name, (_, help_text) in COMMANDS.items():
        sub = commands.add_parser(name, parents=[common], help=help_text)
        if name == 'train':
            sub.add_argument('--resume', help='checkpoint to continue from')
        if name == 'eval-order':
            sub.add_argument('--distinct', type=int,
                             help='keep the N videos with most distinct frames')
        if name == 'eval-classify':
            sub.add_argument('--test-fraction', type=float)
    return parser


def resolve_config(args):
    """Merge the config file with command line flags."""
    return load_config(
        args.config,
        dataset=args.dataset, checkpoint=args.checkpoint, out=args.out,
        seed=args.seed, variant=args.variant,
        hard_negatives=False if args.no_hard_negatives else None,
        distinct=getattr(args, 'distinct', None),
        test_fraction=getattr(args, 'test_fraction', None))


def main(argv=None):
    """Run one command and return its exit status."""
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s')

    try:
        cfg = resolve_config(args)
        logger.info('resolved config (digest %s):\n%s', cfg.digest,
                    '\n'.join(cfg.lines()))
        handler, _ = COMMANDS[args.command]
        return handler(args, cfg)
    except ConfigError as e:
        logger.error('%s', e)
        return EXIT_USAGE
    except (DataError, OSError) as e:
        logger.error('%s', e)
        return EXIT_DATA
    except NumericalError as e:
        logger.error('%s', e)
        return EXIT_NUMERICAL
    except ValueError as e:
        logger.error('invalid argument: %s', e)
        return EXIT_USAGE
