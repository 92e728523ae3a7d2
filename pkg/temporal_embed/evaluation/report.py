"""Evaluation reports and embedding export."""
import csv
import json
import os.path
from dataclasses import dataclass, field

import numpy as np

from ..enums import Task


@dataclass
class EvalReport:
    """Result of one evaluation protocol.

    Args:
        task: Task evaluated.
        aggregate: mAP, mean Kendall tau distance or accuracy.
        per_query: List of ``(query id, score)`` pairs.
    """

    task: Task
    aggregate: float
    per_query: list = field(default_factory=list)

    @classmethod
    def from_scores(cls, task, per_query):
        """Build a report whose aggregate is the mean of ``per_query``."""
        per_query = [(str(q), float(s)) for q, s in per_query]
        aggregate = float(np.mean([s for _, s in per_query]))
        return cls(Task(task), aggregate, per_query)

    def to_dict(self):
        return {'task': self.task.value,
                'aggregate': self.aggregate,
                'per_query': [{'id': q, 'score': s}
                              for q, s in self.per_query]}

    def write_json(self, path):
        with open(path, 'w') as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)
            f.write('\n')
        return path

    def write_csv(self, path):
        with open(path, 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(['id', 'score'])
            for q, s in self.per_query:
                writer.writerow([q, repr(s)])
        return path

    def write(self, prefix):
        """Write ``<prefix>.json`` and ``<prefix>.csv``.

        Returns:
            Tuple of the two paths.
        """
        directory = os.path.dirname(prefix)
        if directory:
            os.makedirs(directory, exist_ok=True)
        return (self.write_json(prefix + '.json'),
                self.write_csv(prefix + '.csv'))


def export_embeddings(d, embedding, path):
    """Write every frame embedding of ``d`` as TSV.

    Each line is ``id, frame_idx, value_0 .. value_{e-1}``, for external
    plotting tools.

    Args:
        d: Dataset.
        embedding: AbstractEmbedding.
        path: Output file.

    Returns:
        Number of rows written.
    """
    rows = 0
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, delimiter='\t', lineterminator='\n')
        for seq in d.sequences:
            for idx, vector in enumerate(embedding.embed_frames(seq.features)):
                writer.writerow([seq.id, idx] + [repr(float(v)) for v in vector])
                rows += 1
    return rows
