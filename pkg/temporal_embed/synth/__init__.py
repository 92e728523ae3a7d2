from .synth import ADVANCE_PROBABILITY, SynthSpec, default_alias_pairs, generate
