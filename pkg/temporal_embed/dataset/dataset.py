"""Feature sequence collections and their on-disk format.

A dataset directory holds a JSON manifest and one raw payload per sequence:

.. code-block:: json

    {"dim": 4,
     "sequences": [{"id": "v0", "path": "seq-00000.f32", "num_frames": 3,
                    "label": 1, "states_path": "seq-00000.states.i32"}]}

Feature payloads are ``num_frames x dim`` little-endian 32-bit floats in
frame-major order with no header. State payloads are ``num_frames``
little-endian 32-bit signed integers.
"""
import json
import logging
import os.path
from dataclasses import dataclass, field

import numpy as np

from ..errors import DataError


logger = logging.getLogger(__name__)

"""Dtype of feature payloads"""
FEATURE_DTYPE = np.dtype('<f4')

"""Dtype of state annotation payloads"""
STATE_DTYPE = np.dtype('<i4')

"""File name of the manifest written by save_dataset"""
MANIFEST_NAME = 'manifest.json'


@dataclass(frozen=True, eq=False)
class FeatureSequence:
    """One video as an ordered list of frame feature vectors.

    Args:
        id: Unique sequence id.
        features: ``num_frames x dim`` float32 matrix.
        label: Optional integer event class.
        state_ids: Optional per-frame integer annotations.
    """

    id: str
    features: np.ndarray
    label: int = None
    state_ids: np.ndarray = None

    def __post_init__(self):
        features = np.ascontiguousarray(self.features, dtype=np.float32)
        if features.ndim != 2 or features.shape[0] < 1 or features.shape[1] < 1:
            raise DataError('features must be a non-empty 2-d matrix, got '
                            'shape {}'.format(features.shape), seq_id=self.id)
        bad = np.flatnonzero(~np.isfinite(features).all(axis=1))
        if bad.size:
            raise DataError('non-finite feature value',
                            seq_id=self.id, frame_idx=int(bad[0]))
        features.setflags(write=False)
        object.__setattr__(self, 'features', features)

        if self.label is not None:
            object.__setattr__(self, 'label', int(self.label))

        if self.state_ids is not None:
            states = np.ascontiguousarray(self.state_ids, dtype=np.int32)
            if states.shape != (features.shape[0],):
                raise DataError('state annotations must have one entry per '
                                'frame', seq_id=self.id)
            states.setflags(write=False)
            object.__setattr__(self, 'state_ids', states)

    @property
    def num_frames(self):
        return self.features.shape[0]

    @property
    def dim(self):
        return self.features.shape[1]


@dataclass(frozen=True)
class Dataset:
    """An immutable, ordered collection of feature sequences.

    Args:
        dim: Feature dimension shared by every sequence.
        sequences: Sequence of FeatureSequence objects with unique ids.
    """

    dim: int
    sequences: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if int(self.dim) < 1:
            raise DataError('dataset dim must be positive')
        object.__setattr__(self, 'dim', int(self.dim))
        object.__setattr__(self, 'sequences', tuple(self.sequences))

        seen = set()
        for seq in self.sequences:
            if seq.dim != self.dim:
                raise DataError('feature dim {} does not match dataset dim '
                                '{}'.format(seq.dim, self.dim), seq_id=seq.id)
            if seq.id in seen:
                raise DataError('duplicate sequence id', seq_id=seq.id)
            seen.add(seq.id)

    def __len__(self):
        return len(self.sequences)

    def __iter__(self):
        return iter(self.sequences)

    def __getitem__(self, index):
        return self.sequences[index]

    @property
    def ids(self):
        return [seq.id for seq in self.sequences]

    @property
    def labeled(self):
        """True if every sequence carries a label."""
        return all(seq.label is not None for seq in self.sequences)

    def get(self, seq_id):
        """Return the sequence with the given id.

        Raises:
            DataError: No such sequence.
        """
        for seq in self.sequences:
            if seq.id == seq_id:
                return seq

        raise DataError('unknown sequence', seq_id=seq_id)

    def subset(self, ids):
        """Return a dataset holding only the given ids, in dataset order."""
        wanted = set(ids)
        return Dataset(self.dim,
                       [seq for seq in self.sequences if seq.id in wanted])


def _payload_name(position, suffix):
    return 'seq-{:05d}{}'.format(position, suffix)


def save_dataset(d, directory):
    """Write a dataset as a manifest plus raw payloads.

    Args:
        d: Dataset to write.
        directory: Target directory, created if missing.

    Returns:
        Path of the written manifest.
    """
    os.makedirs(directory, exist_ok=True)

    entries = []
    for position, seq in enumerate(d.sequences):
        entry = {'id': seq.id,
                 'path': _payload_name(position, '.f32'),
                 'num_frames': seq.num_frames}
        with open(os.path.join(directory, entry['path']), 'wb') as f:
            f.write(seq.features.astype(FEATURE_DTYPE).tobytes(order='C'))

        if seq.label is not None:
            entry['label'] = seq.label

        if seq.state_ids is not None:
            entry['states_path'] = _payload_name(position, '.states.i32')
            with open(os.path.join(directory, entry['states_path']), 'wb') as f:
                f.write(seq.state_ids.astype(STATE_DTYPE).tobytes())

        entries.append(entry)

    manifest_path = os.path.join(directory, MANIFEST_NAME)
    with open(manifest_path, 'w') as f:
        json.dump({'dim': d.dim, 'sequences': entries}, f,
                  indent=2, sort_keys=True)
        f.write('\n')

    logger.info('saved %d sequences to %s', len(d), directory)
    return manifest_path


def _read_features(path, seq_id, num_frames, dim):
    if not os.path.isfile(path):
        raise DataError('missing payload {}'.format(path), seq_id=seq_id)

    with open(path, 'rb') as f:
        raw = f.read()

    row_bytes = dim * FEATURE_DTYPE.itemsize
    if len(raw) != num_frames * row_bytes:
        if num_frames and len(raw) % (num_frames * FEATURE_DTYPE.itemsize) == 0:
            raise DataError(
                'payload holds {}-dim frames, manifest dim is {}'.format(
                    len(raw) // (num_frames * FEATURE_DTYPE.itemsize), dim),
                seq_id=seq_id)
        raise DataError(
            'truncated payload: {} bytes for {} frames of dim {}'.format(
                len(raw), num_frames, dim),
            seq_id=seq_id, frame_idx=len(raw) // row_bytes)

    return np.frombuffer(raw, dtype=FEATURE_DTYPE).reshape(num_frames, dim)


def _read_states(path, seq_id, num_frames):
    if not os.path.isfile(path):
        raise DataError('missing states payload {}'.format(path),
                        seq_id=seq_id)

    with open(path, 'rb') as f:
        raw = f.read()

    if len(raw) != num_frames * STATE_DTYPE.itemsize:
        raise DataError('truncated states payload', seq_id=seq_id,
                        frame_idx=len(raw) // STATE_DTYPE.itemsize)

    return np.frombuffer(raw, dtype=STATE_DTYPE)


def load_dataset(manifest_path):
    """Load a dataset written by save_dataset (or any conforming producer).

    Args:
        manifest_path: Path of the JSON manifest. Payload paths inside it are
            relative to the manifest's directory.

    Returns:
        A validated, fully memory-resident Dataset.

    Raises:
        DataError: Missing file, malformed manifest, dim mismatch,
            truncated payload or non-finite value.
    """
    if not os.path.isfile(manifest_path):
        raise DataError('manifest not found: {}'.format(manifest_path))

    with open(manifest_path, 'r') as f:
        try:
            manifest = json.load(f)
        except ValueError as e:
            raise DataError('malformed manifest {}: {}'.format(
                manifest_path, e)) from None

    try:
        dim = int(manifest['dim'])
        entries = manifest['sequences']
    except (KeyError, TypeError):
        raise DataError('manifest must define "dim" and "sequences"') from None

    base = os.path.dirname(os.path.abspath(manifest_path))
    sequences = []
    for entry in entries:
        try:
            seq_id = str(entry['id'])
            num_frames = int(entry['num_frames'])
            path = os.path.join(base, entry['path'])
        except (KeyError, TypeError):
            raise DataError('manifest entry must define "id", "path" and '
                            '"num_frames"') from None
        if num_frames < 1:
            raise DataError('sequence has no frames', seq_id=seq_id)

        features = _read_features(path, seq_id, num_frames, dim)
        states = None
        if entry.get('states_path') is not None:
            states = _read_states(os.path.join(base, entry['states_path']),
                                  seq_id, num_frames)

        sequences.append(FeatureSequence(seq_id, features,
                                         label=entry.get('label'),
                                         state_ids=states))

    d = Dataset(dim, sequences)
    logger.info('loaded %d sequences of dim %d from %s',
                len(d), dim, manifest_path)
    return d
