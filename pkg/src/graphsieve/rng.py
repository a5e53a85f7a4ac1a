"""Counter-based deterministic random streams.

Every random decision in the package is a pure function of
``(seed, trial_index, counter)``: there is no generator state, so results
do not depend on evaluation order, worker count, or how many variates a
consumer skips.  The mixing function is the splitmix64 finalizer, applied
once per key component.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
_PHI = 0x9E3779B97F4A7C15
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB

# 53-bit uniforms: a variate is (hash >> 11) / 2**53.
UNIFORM_BITS = 53


def mix64(x: int) -> int:
    """splitmix64 finalizer on a 64-bit word (Python int reference)."""
    x &= _MASK
    x = ((x ^ (x >> 30)) * _MUL1) & _MASK
    x = ((x ^ (x >> 27)) * _MUL2) & _MASK
    return x ^ (x >> 31)


def _mix64_array(x: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer applied elementwise to a uint64 array."""
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MUL1)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MUL2)
    x ^= x >> np.uint64(31)
    return x


def stream_base(seed: int, trial_index: int) -> int:
    """Combined key for one trial; hashing it with a counter yields variates."""
    return mix64(mix64(seed & _MASK) ^ ((trial_index * _PHI) & _MASK))


def counter_hash(seed: int, trial_index: int, counter: int) -> int:
    """64-bit hash of (seed, trial_index, counter); scalar reference path."""
    return mix64(stream_base(seed, trial_index) ^ ((counter * _PHI) & _MASK))


def counter_hashes(seed: int, trial_index: int, counters: np.ndarray) -> np.ndarray:
    """Vectorized :func:`counter_hash` over a uint64 counter array."""
    keys = counters.astype(np.uint64) * np.uint64(_PHI)
    keys ^= np.uint64(stream_base(seed, trial_index))
    return _mix64_array(keys)


def counter_hash_matrix(
    seed: int, trial_indices: np.ndarray, counters: np.ndarray
) -> np.ndarray:
    """Hashes for a block of trials at once: shape (len(trials), len(counters)).

    Row t equals ``counter_hashes(seed, trial_indices[t], counters)`` bit for
    bit; batching changes nothing about the stream.
    """
    bases = _mix64_array(
        trial_indices.astype(np.uint64) * np.uint64(_PHI) ^ np.uint64(mix64(seed))
    )
    keys = counters.astype(np.uint64) * np.uint64(_PHI)
    return _mix64_array(bases[:, None] ^ keys[None, :])


def probability_threshold(p: float) -> int:
    """Integer threshold t such that P(hash >> 11 < t) = round(p * 2^53) / 2^53."""
    return int(p * (1 << UNIFORM_BITS))


def bernoulli_from_hash(h: int, threshold: int) -> bool:
    """Decide one Bernoulli draw from a hash (scalar reference path)."""
    return (h >> (64 - UNIFORM_BITS)) < threshold


def bernoulli_array(hashes: np.ndarray, threshold: int) -> np.ndarray:
    """Vectorized Bernoulli decisions from a uint64 hash array."""
    return (hashes >> np.uint64(64 - UNIFORM_BITS)) < np.uint64(threshold)
