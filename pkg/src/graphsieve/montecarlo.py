"""Reproducible Monte Carlo estimation of diameter probabilities.

Trials are embarrassingly parallel: trial outcomes are pure functions of
(seed, trial index), and aggregation is integer addition, so the success
count is identical for any worker count or trial order.  For families with
at most 16 candidate edges the predicate is precomputed for every possible
graph and trials are resolved by table lookup over hashed edge vectors;
this is the same random stream and the same predicate semantics as the
one-graph-at-a-time path, just batched.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass
from functools import lru_cache
from multiprocessing import get_context
from statistics import NormalDist

import numpy as np

from .errors import DomainError, GraphSieveError, ResourceError
from .graphs import (
    FamilyKind,
    GraphFamily,
    candidate_edges,
    family_success,
    graph_diameter,
    sample_graph,
)
from .rng import bernoulli_array, counter_hash_matrix, probability_threshold
from .sieve import enumerate_witness_pairs

__all__ = ["TrialEstimate", "estimate", "wilson_interval", "WORKERS_ENV_VAR"]

WORKERS_ENV_VAR = "GRAPHSIEVE_WORKERS"
_TABLE_MAX_EDGES = 16
_DEFAULT_MATRIX_BYTES = 1 << 30


@dataclass(frozen=True)
class TrialEstimate:
    """Outcome of a Monte Carlo run, reproducible from (family, p, seed)."""

    successes: int
    trials: int
    p_hat: float
    wilson_lo: float
    wilson_hi: float
    confidence: float
    seed: int
    family: GraphFamily
    p: float
    elapsed: float


def wilson_interval(successes: int, trials: int, confidence: float) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    With z the normal quantile at (1+confidence)/2 and ph = successes/trials:

        center = (ph + z^2/(2 trials)) / (1 + z^2/trials)
        half   = z * sqrt(ph(1-ph)/trials + z^2/(4 trials^2)) / (1 + z^2/trials)
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    if not 0 <= successes <= trials:
        raise DomainError(f"need 0 <= successes <= trials, got {successes}/{trials}")
    if not 0.0 < confidence < 1.0:
        raise DomainError(f"confidence must lie in (0,1), got {confidence}")
    z = NormalDist().inv_cdf(0.5 + confidence / 2.0)
    ph = successes / trials
    denom = 1.0 + z * z / trials
    center = (ph + z * z / (2.0 * trials)) / denom
    half = z * math.sqrt(ph * (1.0 - ph) / trials + z * z / (4.0 * trials * trials)) / denom
    # the interval contains ph; min/max absorb float residue at 0 and n
    lo = max(0.0, center - half)
    hi = min(1.0, center + half)
    return min(lo, ph), max(hi, ph)


def _default_workers() -> int:
    value = os.environ.get(WORKERS_ENV_VAR, "")
    try:
        return max(1, int(value))
    except ValueError:
        return 1


@lru_cache(maxsize=8)
def _predicate_table(family: GraphFamily) -> np.ndarray:
    """Success of every edge subset, indexed by the subset's bit code.

    Built by Gray-code enumeration with the witness-condition check (the
    same question the bitset predicates answer: every condition pair
    adjacent or relayed).
    """
    us, vs, _ = candidate_edges(family)
    edges = list(zip(us.tolist(), vs.tolist()))
    m = len(edges)
    n = family.n
    directed = family.directed
    adjacency_counts = not family.witness_same_part_only
    blist = [(b.u, b.v) for b in enumerate_witness_pairs(family)]
    out_masks = [0] * n
    in_masks = out_masks if not directed else [0] * n

    def ok() -> bool:
        for u, v in blist:
            if adjacency_counts and out_masks[u] & (1 << v):
                continue
            if out_masks[u] & in_masks[v]:
                continue
            return False
        return True

    table = np.zeros(1 << m, dtype=bool)
    code = 0
    table[0] = ok()
    for t in range(1, 1 << m):
        e = (t & -t).bit_length() - 1
        u, v = edges[e]
        bu, bv = 1 << u, 1 << v
        code ^= 1 << e
        if out_masks[u] & bv:
            out_masks[u] ^= bv
            in_masks[v] ^= bu  # aliases out_masks[v] when undirected
        else:
            out_masks[u] |= bv
            in_masks[v] |= bu
        table[code] = ok()
    table.flags.writeable = False
    return table


def _verify_trial(family: GraphFamily, p: float, seed: int, trial: int, fast: bool):
    g = sample_graph(family, p, seed, trial)
    if family.kind == FamilyKind.DIRECTED_BIPARTITE:
        # the directed witness event has no BFS characterization; re-check
        # it bit by bit from the definition
        slow = all(
            any(g.bit(u, w) and g.bit(w, v) for w in range(g.n))
            for u in range(g.n)
            for v in range(g.n)
            if u != v and family.part_of(u) == family.part_of(v)
        )
    else:
        slow = graph_diameter(g).at_most(family.target_diameter)
    if slow != fast:
        raise GraphSieveError(
            f"reference cross-check disagrees with fast predicate on trial "
            f"{trial} (seed {seed}): fast={fast}, reference={slow}"
        )


def _count_batched(
    family: GraphFamily, p: float, seed: int, lo: int, hi: int, verify_every: int
) -> int:
    _, _, ids = candidate_edges(family)
    m = len(ids)
    table = _predicate_table(family)
    threshold = probability_threshold(p)
    weights = (1 << np.arange(m, dtype=np.int64)).astype(np.int64)
    successes = 0
    chunk = max(1, (1 << 20) // max(m, 1))
    for start in range(lo, hi, chunk):
        stop = min(start + chunk, hi)
        trials = np.arange(start, stop, dtype=np.uint64)
        hashes = counter_hash_matrix(seed, trials, ids)
        present = bernoulli_array(hashes, threshold)
        codes = present @ weights
        results = table[codes]
        successes += int(results.sum())
        if verify_every:
            for offset in range(start, stop):
                if offset % verify_every == 0:
                    _verify_trial(
                        family, p, seed, offset, bool(results[offset - start])
                    )
    return successes


def _count_serial(
    family: GraphFamily, p: float, seed: int, lo: int, hi: int, verify_every: int
) -> int:
    successes = 0
    for trial in range(lo, hi):
        g = sample_graph(family, p, seed, trial)
        ok = family_success(family, g)
        successes += ok
        if verify_every and trial % verify_every == 0:
            _verify_trial(family, p, seed, trial, ok)
    return successes


def _count_range(
    family: GraphFamily, p: float, seed: int, lo: int, hi: int, verify_every: int
) -> int:
    m = len(candidate_edges(family)[0])
    if m <= _TABLE_MAX_EDGES:
        return _count_batched(family, p, seed, lo, hi, verify_every)
    return _count_serial(family, p, seed, lo, hi, verify_every)


def estimate(
    family: GraphFamily,
    p: float,
    trials: int,
    seed: int,
    confidence: float = 0.95,
    workers: int | None = None,
    verify_fraction: float = 0.0,
    max_matrix_bytes: int = _DEFAULT_MATRIX_BYTES,
) -> TrialEstimate:
    """Estimate P(diameter <= target) over independent trials.

    ``verify_fraction`` > 0 re-checks roughly that fraction of trials with
    the reference BFS diameter and raises on any disagreement.  The success
    count is a pure function of (family, p, trials, seed): worker count and
    scheduling cannot change it.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    if not 0.0 < p < 1.0:
        raise DomainError(f"edge probability must lie in (0,1), got {p}")
    n = family.n
    width = ((n + 63) // 64) * 64
    approx_bytes = n * width + 3 * n * width // 8
    if approx_bytes > max_matrix_bytes:
        raise ResourceError(
            f"adjacency working set ~{approx_bytes} bytes exceeds the cap "
            f"of {max_matrix_bytes}"
        )
    if not 0.0 <= verify_fraction <= 1.0:
        raise DomainError("verify_fraction must lie in [0,1]")
    verify_every = round(1.0 / verify_fraction) if verify_fraction > 0 else 0
    if workers is None:
        workers = _default_workers()

    start_time = time.perf_counter()
    if workers <= 1 or trials < 2 * workers:
        successes = _count_range(family, p, seed, 0, trials, verify_every)
    else:
        bounds = [trials * i // workers for i in range(workers + 1)]
        args = [
            (family, p, seed, bounds[i], bounds[i + 1], verify_every)
            for i in range(workers)
            if bounds[i] < bounds[i + 1]
        ]
        with get_context("fork").Pool(processes=workers) as pool:
            successes = sum(pool.starmap(_count_range, args))
    elapsed = time.perf_counter() - start_time

    lo, hi = wilson_interval(successes, trials, confidence)
    return TrialEstimate(
        successes=successes,
        trials=trials,
        p_hat=successes / trials,
        wilson_lo=lo,
        wilson_hi=hi,
        confidence=confidence,
        seed=seed,
        family=family,
        p=p,
        elapsed=elapsed,
    )
