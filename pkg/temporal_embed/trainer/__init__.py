from .config import TrainConfig, lr_at
from .trainer import (FINAL_CHECKPOINT, LOG_NAME, TrainLog, checkpoint_name,
                      train)
