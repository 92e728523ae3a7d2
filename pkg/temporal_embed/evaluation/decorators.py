"""Evaluation decorators."""
from functools import wraps

from ..errors import DataError


def labels_required(func):
    """Decorator to check that every sequence of a dataset is labeled.

    Allows protocols to be decorated like:

    .. code-block:: python

        @labels_required
        def event_retrieval_map(d, embedding):
            pass

    The dataset must be the first positional argument.

    Args:
        func: Function object being decorated.

    Returns:
        A function object that raises ``DataError`` naming the first
        unlabeled sequence before calling ``func``.
    """
    @wraps(func)
    def wrapper(d, *args, **kwargs):
        for seq in d.sequences:
            if seq.label is None:
                raise DataError('{} needs labeled sequences'.format(
                    func.__name__), seq_id=seq.id)

        return func(d, *args, **kwargs)

    return wrapper
