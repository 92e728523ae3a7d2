import numpy as np

from ..enums import Mode
from .abc import AbstractEmbedding
from .model import embed


class ModelEmbedding(AbstractEmbedding):
    """Embed frames with a trained model in eval mode (no dropout)."""

    def __init__(self, model):
        self._model = model

    @property
    def model(self):
        return self._model

    def embed_frames(self, features):
        output, _ = embed(self._model, np.atleast_2d(features), Mode.Eval)
        return output


class RawFeatureEmbedding(AbstractEmbedding):
    """Identity embedding, used for the raw-feature baseline."""

    def embed_frames(self, features):
        return np.atleast_2d(np.asarray(features, dtype=np.float64))
