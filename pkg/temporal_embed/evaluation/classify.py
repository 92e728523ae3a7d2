"""Linear max-margin event classification."""
import logging
from dataclasses import dataclass

import numpy as np

from ..enums import Task
from ..errors import DataError
from .decorators import labels_required
from .metrics import unit_rows
from .report import EvalReport
from .retrieval import video_embeddings


logger = logging.getLogger(__name__)


@dataclass
class LinearClassifier:
    """One-vs-rest linear classifier.

    Args:
        classes: Sorted class ids, one per row of ``W``.
        W: ``num_classes x dim`` weight matrix.
        b: Bias per class.
        reg_lambda: L2 regularization weight used in training.
    """

    classes: np.ndarray
    W: np.ndarray
    b: np.ndarray
    reg_lambda: float

    def decision_function(self, X):
        return np.atleast_2d(np.asarray(X, dtype=np.float64)) @ self.W.T + self.b

    def predict(self, X):
        """Class of highest score per row, ties going to the lowest class id."""
        return self.classes[np.argmax(self.decision_function(X), axis=1)]


def train_classifier(X, y, reg_lambda=1e-4, epochs=100, lr=0.1,
                     anneal_every=25, anneal_factor=0.5, seed=0):
    """Train one-vs-rest hinge-loss classifiers with L2 regularization.

    Every class minimizes ``lambda / 2 |w|^2 + mean max(0, 1 - y (w.x + b))``
    by plain SGD over a fixed epoch budget, visiting samples in a seeded
    shuffled order each epoch.

    Args:
        X: ``N x dim`` training vectors.
        y: Class id per row.
        reg_lambda: L2 regularization weight.
        epochs: Number of passes over the data.
        lr: Initial step size.
        anneal_every: Epochs between step size reductions.
        anneal_factor: Step size multiplier per reduction.
        seed: Seed of the shuffling stream.

    Returns:
        LinearClassifier.

    Raises:
        DataError: Fewer than two classes.
    """
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    y = np.asarray(y)
    classes = np.unique(y)
    if classes.size < 2:
        raise DataError('classifier needs at least 2 classes, got '
                        '{}'.format(classes.size))

    targets = np.where(y[:, None] == classes[None, :], 1.0, -1.0)
    W = np.zeros((classes.size, X.shape[1]))
    b = np.zeros(classes.size)
    rng = np.random.default_rng(seed)

    for epoch in range(epochs):
        step = lr * anneal_factor ** (epoch // anneal_every)
        for i in rng.permutation(X.shape[0]):
            x, t = X[i], targets[i]
            violated = t * (W @ x + b) < 1.0
            W *= 1.0 - step * reg_lambda
            W[violated] += step * np.outer(t[violated], x)
            b[violated] += step * t[violated]

    return LinearClassifier(classes, W, b, reg_lambda)


def classify_eval(clf, X, y, ids):
    """Accuracy of a classifier on labeled test vectors.

    Args:
        clf: LinearClassifier.
        X: ``N x dim`` test vectors.
        y: True class per row.
        ids: Query id per row.

    Returns:
        EvalReport with a 1/0 correctness score per query.
    """
    predicted = clf.predict(X)
    correct = predicted == np.asarray(y)
    return EvalReport.from_scores(Task.Classification,
                                  zip(ids, correct.astype(float)))


@labels_required
def classify_dataset(train, test, embedding, reg_lambda=1e-4, epochs=100,
                     lr=0.1, seed=0):
    """Train on one labeled dataset and report accuracy on another.

    Each video is the L2-normalized mean embedding of all its frames.

    Args:
        train: Labeled training Dataset.
        test: Labeled test Dataset.
        embedding: AbstractEmbedding.
        reg_lambda: L2 regularization weight.
        epochs: Number of SGD epochs.
        lr: Initial step size.
        seed: Seed of the shuffling stream.

    Returns:
        EvalReport of test accuracy.
    """
    if not test.labeled:
        raise DataError('classification test set needs labeled sequences')

    X_train = unit_rows(video_embeddings(train, embedding, None))
    X_test = unit_rows(video_embeddings(test, embedding, None))
    clf = train_classifier(X_train, [s.label for s in train.sequences],
                           reg_lambda=reg_lambda, epochs=epochs, lr=lr,
                           seed=seed)
    report = classify_eval(clf, X_test, [s.label for s in test.sequences],
                           test.ids)
    logger.info('classification accuracy %.4f on %d test videos',
                report.aggregate, len(test))
    return report
