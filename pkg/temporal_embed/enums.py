from enum import Enum, unique


@unique
class ContextVariant(Enum):
    Full = 'full'
    NoFuture = 'no_future'
    NoTemporal = 'no_temporal'


@unique
class Mode(Enum):
    Train = 'train'
    Eval = 'eval'


@unique
class Task(Enum):
    EventRetrieval = 'event_retrieval'
    TemporalRetrieval = 'temporal_retrieval'
    OrderRecovery = 'order_recovery'
    Classification = 'classification'
