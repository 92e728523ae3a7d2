from .context import (ContextVector, build_context, context_full,
                      context_no_future, context_no_temporal)
from .loss import (LossTerm, ParamGrads, batch_loss, example_loss,
                   hinge_term)
