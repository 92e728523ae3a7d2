from .classify import (LinearClassifier, classify_dataset, classify_eval,
                       train_classifier)
from .decorators import labels_required
from .metrics import (average_precision, cosine, kendall_tau_distance,
                      rank_by_score, unit_rows)
from .order import (distinct_subset, order_recovery_eval,
                    recover_group_order, recover_order_greedy)
from .report import EvalReport, export_embeddings
from .retrieval import (event_retrieval_map, retrieve_frames,
                        temporal_index_sets, temporal_retrieval_map,
                        video_embeddings)
