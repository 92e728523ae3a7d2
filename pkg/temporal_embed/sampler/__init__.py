from .sampler import (FrameSampler, SamplerConfig, TrainingExample,
                      assemble_batch, context_indices, feasible_targets,
                      sample_example)
