"""Abstract embedding classes."""
import abc


class AbstractEmbedding(abc.ABC):
    """Abstract base class for frame embeddings used by evaluation.

    Evaluation protocols only see frames through ``embed_frames``, so a
    trained model and the raw input features go through the same code.
    Subclasses implement ``embed_frames``.

    Usage example:

    .. code-block:: python

        class ScaledFeatures(AbstractEmbedding):
            def __init__(self, scale):
                self.scale = scale

            def embed_frames(self, features):
                return self.scale * np.asarray(features, dtype=np.float64)

        report = event_retrieval_map(dataset, ScaledFeatures(2.0))
    """

    @abc.abstractmethod
    def embed_frames(self, features):
        """Embed a matrix of frame feature vectors.

        Args:
            features: ``N x dim`` matrix of frame features.

        Returns:
            ``N x emb_dim`` float64 matrix of embeddings.
        """
        pass  # pragma: no cover

    def __call__(self, features):
        return self.embed_frames(features)
