"""
Seeded random streams.

Every stream is a Philox4x64-10 counter-based generator keyed by a numpy
SeedSequence. Streams for the pieces of one instance are split off the
instance seed with fixed spawn keys, and per-trial seeds are a pure function
of (master_seed, n, p_rows, trial_index), so results never depend on the
order in which trials run.
"""

from enum import IntEnum

import numpy as np

RNG_ALGORITHM = "Philox4x64-10 keyed by numpy.random.SeedSequence"

_SEED_MASK = (1 << 64) - 1


class StreamLabel(IntEnum):
    """Fixed spawn keys for the streams of one instance"""
    SIGNAL = 1
    MATRIX = 2


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= _SEED_MASK:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int, label: StreamLabel = None) -> np.random.Generator:
    """Generator for one labelled stream of an instance seed"""
    spawn_key = () if label is None else (int(label),)
    sequence = np.random.SeedSequence(entropy=_check_seed(seed), spawn_key=spawn_key)
    return np.random.Generator(np.random.Philox(sequence))


def derive_trial_seed(master_seed: int, n: int, p_rows: int, trial_index: int) -> int:
    """64-bit seed of one trial"""
    sequence = np.random.SeedSequence(
        entropy=_check_seed(master_seed), spawn_key=(int(n), int(p_rows), int(trial_index))
    )
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
