"""Ground truth at desk scale: exhaustive weighted enumeration.

Every subset of a family's candidate edges is visited in Gray-code order
(one edge flips per step, so the adjacency masks update incrementally).
Successes are tallied per edge count, which turns the probability into the
polynomial sum_k count[k] * p^k * (1-p)^(m-k); a single enumeration then
serves every edge probability exactly.

The diameter decision here is the reference BFS, deliberately not the
bitset witness predicate the simulator uses, so oracle and system under
test cannot share a bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, ResourceError
from .graphs import GraphFamily, candidate_edges, masks_diameter_at_most
from .sieve import IncidenceStats, enumerate_witness_pairs

__all__ = [
    "EnumerationBudget",
    "DEFAULT_MAX_EDGES",
    "exact_diameter_prob",
    "brute_incidence_stats",
    "success_counts_by_edges",
]

DEFAULT_MAX_EDGES = 22
MAX_BRUTE_CONDITIONS = 64


@dataclass(frozen=True)
class EnumerationBudget:
    """Refusal threshold for 2^m edge-subset enumerations."""

    max_edges: int = DEFAULT_MAX_EDGES

    def check(self, family: GraphFamily) -> int:
        m = len(candidate_edges(family)[0])
        if m > self.max_edges:
            raise ResourceError(
                f"family has {m} candidate edges; enumeration budget is "
                f"{self.max_edges}"
            )
        return m


def _edge_list(family: GraphFamily) -> list[tuple[int, int]]:
    us, vs, _ = candidate_edges(family)
    return list(zip(us.tolist(), vs.tolist()))


@lru_cache(maxsize=32)
def success_counts_by_edges(
    family: GraphFamily, d: int, max_edges: int = DEFAULT_MAX_EDGES
) -> tuple[int, ...]:
    """count[k] = number of k-edge graphs in the family with diameter <= d."""
    m = EnumerationBudget(max_edges).check(family)
    edges = _edge_list(family)
    n = family.n
    directed = family.directed
    out_masks = [0] * n
    in_masks = out_masks if not directed else [0] * n
    counts = [0] * (m + 1)
    k = 0
    if masks_diameter_at_most(out_masks, n, d):  # empty graph (n = 1 only)
        counts[0] += 1
    for t in range(1, 1 << m):
        e = (t & -t).bit_length() - 1
        u, v = edges[e]
        bu, bv = 1 << u, 1 << v
        if out_masks[u] & bv:
            out_masks[u] ^= bv
            in_masks[v] ^= bu  # aliases out_masks[v] when undirected
            k -= 1
        else:
            out_masks[u] |= bv
            in_masks[v] |= bu
            k += 1
        if masks_diameter_at_most(out_masks, n, d):
            counts[k] += 1
    return tuple(counts)


def exact_diameter_prob(
    family: GraphFamily,
    p: Fraction,
    d: int | None = None,
    max_edges: int = DEFAULT_MAX_EDGES,
) -> Fraction:
    """Exact probability that a sample of the family has diameter <= d.

    d defaults to the family's target diameter and must match it when
    given (the sieve and simulator only ever ask that question).
    """
    if d is None:
        d = family.target_diameter
    if d != family.target_diameter:
        raise DomainError(
            f"family targets diameter {family.target_diameter}, asked for {d}"
        )
    p = Fraction(p)
    if not 0 < p < 1:
        raise DomainError(f"edge probability must lie in (0,1), got {p}")
    counts = success_counts_by_edges(family, d, max_edges)
    m = len(counts) - 1
    r, s = p.numerator, p.denominator
    total = sum(
        c * r**k * (s - r) ** (m - k) for k, c in enumerate(counts) if c
    )
    return Fraction(total, s**m)


def brute_incidence_stats(
    family: GraphFamily, p: Fraction, max_edges: int = DEFAULT_MAX_EDGES
) -> IncidenceStats:
    """Incidence sums by direct evaluation over every graph in the family.

    For each graph the unwitnessed conditions are counted from the
    definition; sum_deg and sum_joint are the weighted sums of that count
    and its square (the square enumerates ordered condition pairs,
    diagonal included).
    """
    p = Fraction(p)
    if not 0 < p < 1:
        raise DomainError(f"edge probability must lie in (0,1), got {p}")
    m = EnumerationBudget(max_edges).check(family)
    pairs = enumerate_witness_pairs(family)
    if len(pairs) > MAX_BRUTE_CONDITIONS:
        raise ResourceError(
            f"{len(pairs)} conditions exceed the brute-force cap of "
            f"{MAX_BRUTE_CONDITIONS}"
        )
    edges = _edge_list(family)
    n = family.n
    directed = family.directed
    adjacency_counts = not family.witness_same_part_only
    blist = [(b.u, b.v) for b in pairs]
    out_masks = [0] * n
    in_masks = out_masks if not directed else [0] * n

    deg_by_k = [0] * (m + 1)
    joint_by_k = [0] * (m + 1)
    k = 0

    def omega() -> int:
        bad = 0
        for u, v in blist:
            if adjacency_counts and out_masks[u] & (1 << v):
                continue
            if out_masks[u] & in_masks[v]:
                continue
            bad += 1
        return bad

    w = omega()
    deg_by_k[0] += w
    joint_by_k[0] += w * w
    for t in range(1, 1 << m):
        e = (t & -t).bit_length() - 1
        u, v = edges[e]
        bu, bv = 1 << u, 1 << v
        if out_masks[u] & bv:
            out_masks[u] ^= bv
            in_masks[v] ^= bu  # aliases out_masks[v] when undirected
            k -= 1
        else:
            out_masks[u] |= bv
            in_masks[v] |= bu
            k += 1
        w = omega()
        deg_by_k[k] += w
        joint_by_k[k] += w * w

    r, s = p.numerator, p.denominator
    denom = s**m
    sum_deg = Fraction(
        sum(c * r**kk * (s - r) ** (m - kk) for kk, c in enumerate(deg_by_k) if c),
        denom,
    )
    sum_joint = Fraction(
        sum(c * r**kk * (s - r) ** (m - kk) for kk, c in enumerate(joint_by_k) if c),
        denom,
    )
    return IncidenceStats(sum_deg, sum_joint, len(pairs))
