from .dataset import Dataset, FeatureSequence, load_dataset, save_dataset
from .sampling import split_dataset, uniform_indices
