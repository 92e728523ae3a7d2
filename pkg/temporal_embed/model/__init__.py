from .abc import AbstractEmbedding
from .checkpoint import load_checkpoint, save_checkpoint
from .embedding import ModelEmbedding, RawFeatureEmbedding
from .lrn import LRNParams, lrn_backward, lrn_forward
from .model import EmbeddingModel, ForwardTrace, backward, embed, init_model
