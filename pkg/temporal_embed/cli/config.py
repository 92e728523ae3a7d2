"""Flat ``key=value`` run configuration.

A config file holds one ``key=value`` pair per line; blank lines and lines
starting with ``#`` are ignored and unknown keys are rejected:

.. code-block:: text

    # model
    emb_dim=64
    strides=1,2,4
    variant=no_future
"""
import hashlib
from dataclasses import asdict, dataclass, fields, replace

from ..enums import ContextVariant
from ..errors import ConfigError
from ..model import LRNParams
from ..sampler import SamplerConfig
from ..synth import SynthSpec, default_alias_pairs
from ..trainer import TrainConfig


"""Keys naming files; they do not enter the config digest"""
PATH_KEYS = frozenset(['dataset', 'checkpoint', 'out'])

_TRUE = frozenset(['1', 'true', 'yes', 'on'])
_FALSE = frozenset(['0', 'false', 'no', 'off'])

"""Smallest accepted value of bounded integer and float keys"""
_AT_LEAST = {
    'emb_dim': 1,
    'event_frames': 1,
    'temporal_min_len': 1,
    # two given frames plus two scored ones
    'order_frames': 4,
    'distinct': 0,
    'classify_epochs': 1,
    'classify_reg_lambda': 0,
}


@dataclass(frozen=True)
class RunConfig:
    """Every setting of a run, resolved from defaults, file and flags."""

    # paths
    dataset: str = ''
    checkpoint: str = ''
    out: str = ''

    # model
    emb_dim: int = 64
    lrn_size: int = 5
    lrn_k: float = 1.0
    lrn_alpha: float = 1e-4
    lrn_beta: float = 0.75
    dropout_rate: float = 0.5

    # sampler
    window_size: int = 2
    strides: tuple = (1, 2, 4)
    negatives_per_target: int = 4
    hard_fraction: float = 0.5

    # trainer
    lr0: float = 0.01
    anneal_every: int = 5000
    anneal_factor: float = 0.5
    batch_size: int = 256
    iterations: int = 5000
    seed: int = 0
    variant: str = ContextVariant.Full.value
    hard_negatives: bool = True
    checkpoint_every: int = 1000
    log_every: int = 100
    workers: int = 1
    deterministic: bool = True

    # evaluation
    event_frames: int = 4
    temporal_min_len: int = 19
    order_frames: int = 12
    distinct: int = 0
    test_fraction: float = 0.3
    classify_reg_lambda: float = 1e-4
    classify_epochs: int = 100
    classify_lr: float = 0.1

    # synthetic data
    synth_num_events: int = 5
    synth_states_per_event: int = 6
    synth_dim: int = 32
    synth_num_sequences: int = 200
    synth_seq_len: int = 40
    synth_emission_noise: float = 0.1
    synth_alias_pairs: int = 2
    synth_appearance_shift: float = 4.0
    synth_appearance_dims: int = 4

    def __post_init__(self):
        try:
            ContextVariant(self.variant)
        except ValueError:
            raise ConfigError('unknown variant {!r}, expected one of {}'.format(
                self.variant,
                ', '.join(v.value for v in ContextVariant))) from None
        for key, low in _AT_LEAST.items():
            if getattr(self, key) < low:
                raise ConfigError('{} must be at least {}, got {!r}'.format(
                    key, low, getattr(self, key)))
        if not 0 < self.test_fraction < 1:
            raise ConfigError('test_fraction must be in (0, 1), got {!r}'
                              .format(self.test_fraction))
        if self.classify_lr <= 0:
            raise ConfigError('classify_lr must be positive, got {!r}'
                              .format(self.classify_lr))

    def lines(self, include_paths=True):
        """Sorted ``key=value`` lines of the resolved config."""
        values = asdict(self)
        return ['{}={}'.format(key, format_value(values[key]))
                for key in sorted(values)
                if include_paths or key not in PATH_KEYS]

    @property
    def digest(self):
        """SHA-256 of the resolved config, path keys excluded."""
        text = '\n'.join(self.lines(include_paths=False)) + '\n'
        return hashlib.sha256(text.encode('utf-8')).hexdigest()

    def lrn(self):
        return LRNParams(self.lrn_size, self.lrn_k, self.lrn_alpha,
                         self.lrn_beta)

    def sampler_config(self):
        return SamplerConfig(T=self.window_size, strides=self.strides,
                             negatives_per_target=self.negatives_per_target,
                             hard_fraction=self.hard_fraction, seed=self.seed)

    def train_config(self):
        return TrainConfig(lr0=self.lr0, anneal_every=self.anneal_every,
                           anneal_factor=self.anneal_factor,
                           batch_size=self.batch_size,
                           iterations=self.iterations, seed=self.seed,
                           variant=ContextVariant(self.variant),
                           hard_negatives=self.hard_negatives,
                           checkpoint_every=self.checkpoint_every,
                           log_every=self.log_every, workers=self.workers,
                           deterministic=self.deterministic)

    def synth_spec(self):
        return SynthSpec(
            num_events=self.synth_num_events,
            states_per_event=self.synth_states_per_event,
            dim=self.synth_dim,
            num_sequences=self.synth_num_sequences,
            seq_len=self.synth_seq_len,
            emission_noise=self.synth_emission_noise,
            alias_pairs=default_alias_pairs(self.synth_num_events,
                                            self.synth_states_per_event,
                                            self.synth_alias_pairs),
            appearance_shift=self.synth_appearance_shift,
            appearance_dims=self.synth_appearance_dims,
            seed=self.seed)


def format_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, tuple):
        return ','.join(str(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _coerce(key, kind, text):
    text = text.strip()
    try:
        if kind is bool:
            lowered = text.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError(text)
        if kind is tuple:
            return tuple(int(part) for part in text.split(',') if part.strip())
        return kind(text)
    except ValueError:
        raise ConfigError('invalid value {!r} for {}'.format(text, key)) from None


def parse_config_text(text, source='<config>'):
    """Parse ``key=value`` lines into a dict of typed values.

    Raises:
        ConfigError: Malformed line, unknown key or invalid value.
    """
    kinds = {f.name: f.type for f in fields(RunConfig)}
    values = {}
    for number, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        key, sep, value = line.partition('=')
        key = key.strip()
        if not sep:
            raise ConfigError('{}:{}: expected key=value, got {!r}'.format(
                source, number, line))
        if key not in kinds:
            raise ConfigError('{}:{}: unknown key {!r}'.format(
                source, number, key))
        values[key] = _coerce(key, kinds[key], value)
    return values


def load_config(path=None, **overrides):
    """Resolve a RunConfig from defaults, an optional file and overrides.

    Args:
        path: Optional config file.
        **overrides: Values that win over the file, None values ignored.

    Returns:
        RunConfig.
    """
    values = {}
    if path:
        try:
            with open(path, 'r') as f:
                values = parse_config_text(f.read(), source=path)
        except OSError as e:
            raise ConfigError('cannot read config {}: {}'.format(path, e)) from None

    known = {f.name for f in fields(RunConfig)}
    for key, value in overrides.items():
        if key not in known:
            raise ConfigError('unknown key {!r}'.format(key))
        if value is not None:
            values[key] = value

    return replace(RunConfig(), **values)
