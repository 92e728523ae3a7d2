"""Exceptions raised by temporal_embed."""


class TemporalEmbedError(Exception):
    """Base class for all errors raised by the package."""


class DataError(TemporalEmbedError, ValueError):
    """Invalid or missing input data.

    Args:
        message: Human readable description.
        seq_id: Id of the offending sequence, if known.
        frame_idx: Index of the offending frame, if known.
    """

    def __init__(self, message, seq_id=None, frame_idx=None):
        self.seq_id = seq_id
        self.frame_idx = frame_idx
        where = []
        if seq_id is not None:
            where.append('sequence {!r}'.format(seq_id))
        if frame_idx is not None:
            where.append('frame {}'.format(frame_idx))
        if where:
            message = '{} ({})'.format(message, ', '.join(where))
        super().__init__(message)


class ConfigError(TemporalEmbedError, ValueError):
    """Unknown configuration key or invalid configuration value."""


class NumericalError(TemporalEmbedError, ArithmeticError):
    """Non-finite loss or gradient during training.

    Args:
        message: Human readable description.
        iteration: Training iteration at which the failure happened.
    """

    def __init__(self, message, iteration=None):
        self.iteration = iteration
        if iteration is not None:
            message = '{} at iteration {}'.format(message, iteration)
        super().__init__(message)
