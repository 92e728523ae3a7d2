"""Temporal embeddings of sequence frames learned from unlabeled sequences."""
from .dataset import Dataset, FeatureSequence, load_dataset, save_dataset
from .enums import ContextVariant, Mode, Task
from .errors import ConfigError, DataError, NumericalError, TemporalEmbedError
from .model import (EmbeddingModel, ModelEmbedding, RawFeatureEmbedding,
                    init_model)
from .sampler import SamplerConfig
from .trainer import TrainConfig, train


__version__ = '0.1.0'
