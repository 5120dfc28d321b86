# FILE: switchcert/utils/rng.py

"""
Reproducible random streams.

Every stream is a Philox (counter-based) generator seeded through a
`SeedSequence` whose spawn key names the consumer, so trial `i` of an
ensemble draws the same numbers no matter how many workers run or in
which order trials finish.
"""

from typing import Tuple

import numpy as np

# spawn-key slots inside one Monte Carlo trial
SWITCHING_STREAM = 0
NOISE_STREAM = 1


def make_generator(seed: int, *key: int) -> np.random.Generator:
    """
    Build a Philox generator for `seed` and an optional substream key.

    Args:
        seed (int): Root seed of the run.
        *key (int): Substream path, e.g. (trial, NOISE_STREAM).

    Returns:
        np.random.Generator: Independent, deterministic stream.
    """
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(sequence))


def trial_generators(seed: int, trial: int) -> Tuple[np.random.Generator, np.random.Generator]:
    """Return the (switching, noise) generators of one ensemble trial."""
    return (
        make_generator(seed, trial, SWITCHING_STREAM),
        make_generator(seed, trial, NOISE_STREAM),
    )
