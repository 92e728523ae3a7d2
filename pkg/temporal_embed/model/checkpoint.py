"""Model checkpoint files.

A checkpoint is one line of JSON (sorted keys) terminated by a newline,
followed by ``W`` in row-major order and then ``b``, both as little-endian
32-bit floats.
"""
import json
import os.path

import numpy as np

from ..errors import DataError
from .lrn import LRNParams
from .model import EmbeddingModel


PARAM_DTYPE = np.dtype('<f4')


def save_checkpoint(model, path, iteration=0, config_digest=''):
    """Write a checkpoint.

    Args:
        model: EmbeddingModel to store. Parameters are written as float32.
        path: Target file path.
        iteration: Number of training iterations completed.
        config_digest: Digest of the run config that produced the model.

    Returns:
        The path written.
    """
    header = {'in_dim': model.in_dim,
              'emb_dim': model.emb_dim,
              'lrn': model.lrn.as_dict(),
              'dropout_rate': model.dropout_rate,
              'iteration': int(iteration),
              'config_digest': config_digest}

    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    with open(path, 'wb') as f:
        f.write(json.dumps(header, sort_keys=True).encode('utf-8'))
        f.write(b'\n')
        f.write(np.ascontiguousarray(model.W, dtype=PARAM_DTYPE).tobytes())
        f.write(np.ascontiguousarray(model.b, dtype=PARAM_DTYPE).tobytes())

    return path


def load_checkpoint(path):
    """Read a checkpoint written by save_checkpoint.

    Args:
        path: Checkpoint file path.

    Returns:
        ``(model, header)`` where header is the decoded JSON dict.

    Raises:
        DataError: Missing, malformed or truncated file.
    """
    if not os.path.isfile(path):
        raise DataError('checkpoint not found: {}'.format(path))

    with open(path, 'rb') as f:
        line = f.readline()
        payload = f.read()

    try:
        header = json.loads(line.decode('utf-8'))
        in_dim = int(header['in_dim'])
        emb_dim = int(header['emb_dim'])
        lrn = LRNParams(**header['lrn'])
        dropout_rate = float(header['dropout_rate'])
    except (ValueError, KeyError, TypeError) as e:
        raise DataError('malformed checkpoint header in {}: {}'.format(
            path, e)) from None

    expected = (emb_dim * in_dim + emb_dim) * PARAM_DTYPE.itemsize
    if len(payload) != expected:
        raise DataError('checkpoint {} holds {} parameter bytes, expected '
                        '{}'.format(path, len(payload), expected))

    params = np.frombuffer(payload, dtype=PARAM_DTYPE).astype(np.float32)
    W = params[:emb_dim * in_dim].reshape(emb_dim, in_dim)
    b = params[emb_dim * in_dim:]
    return EmbeddingModel(W, b, lrn, dropout_rate), header
