"""Exact sieve machinery for diameter events.

The incidence system: the "items" are the graphs of a family weighted by
their sampling probability, the "conditions" are vertex pairs, and a graph
is incident to a pair when the pair is *unwitnessed* in it (non-adjacent
with no common neighbor for diameter-2 events; lacking a common neighbor
for the bipartite diameter-3 event).  A graph hits the target diameter
exactly when no condition is incident.

Two inequalities then bracket the success probability:

    simple sieve:  P >= 1 - sum_b q(b)
    Turan sieve:   P <= sum_{b1,b2} Q(b1,b2) / (sum_b q(b))^2 - 1

with q(b) the probability that pair b is unwitnessed and Q(b1,b2) the
probability both pairs are simultaneously unwitnessed.  Everything in this
module is exact rational arithmetic; nothing is rounded.

Q is evaluated by local enumeration rather than by transcribing per-case
closed forms: the candidate edges among the (at most four) vertices of
b1 and b2 are enumerated exhaustively, and every external vertex
contributes an independent per-part factor.  One mechanism covers the
simple, directed, k-partite, and bipartite families alike; the per-case
closed forms live in the test suite as assertions instead of in the code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import BoundPair
from .errors import DomainError, ResourceError
from .graphs import GraphFamily

__all__ = [
    "WitnessPair",
    "IncidenceStats",
    "witness_pair",
    "enumerate_witness_pairs",
    "pair_survival_prob",
    "joint_survival_prob",
    "incidence_stats",
    "incidence_stats_naive",
    "simple_sieve_lower",
    "turan_sieve_upper",
    "sieve_bounds",
]

MAX_WITNESS_PAIRS = 10_000


@dataclass(frozen=True)
class WitnessPair:
    """A vertex pair acting as one sieve condition.

    Unordered pairs are normalized to u < v; directed families use ordered
    pairs as written.
    """

    u: int
    v: int
    part_u: int
    part_v: int


@dataclass(frozen=True)
class IncidenceStats:
    """Normalized incidence sums feeding the two sieve inequalities."""

    sum_deg: Fraction
    sum_joint: Fraction
    b_count: int


def witness_pair(family: GraphFamily, u: int, v: int) -> WitnessPair:
    """Validate and normalize a pair of vertices as a sieve condition."""
    n = family.n
    if not (0 <= u < n and 0 <= v < n) or u == v:
        raise DomainError(f"invalid vertex pair ({u},{v}) for n={n}")
    pu, pv = family.part_of(u), family.part_of(v)
    if family.witness_same_part_only and pu != pv:
        raise DomainError(
            "bipartite diameter-3 conditions pair vertices of the same part"
        )
    if not family.directed and u > v:
        u, v, pu, pv = v, u, pv, pu
    return WitnessPair(u, v, pu, pv)


def enumerate_witness_pairs(family: GraphFamily) -> list[WitnessPair]:
    """All sieve conditions of the family, in vertex order."""
    n = family.n
    out = []
    for u in range(n):
        pu = family.part_of(u)
        if family.directed:
            vs = (v for v in range(n) if v != u)
        else:
            vs = range(u + 1, n)
        for v in vs:
            pv = family.part_of(v)
            if family.witness_same_part_only and pu != pv:
                continue
            out.append(WitnessPair(u, v, pu, pv) if family.directed or u < v
                       else WitnessPair(v, u, pv, pu))
    return out


def _check_rational_p(p: Fraction) -> Fraction:
    p = Fraction(p)
    if not 0 < p < 1:
        raise DomainError(f"edge probability must lie in (0,1), got {p}")
    return p


# ----------------------------------------------------------------------
# Per-pair and joint survival probabilities
# ----------------------------------------------------------------------


def pair_survival_prob(family: GraphFamily, p: Fraction, b: WitnessPair) -> Fraction:
    """Exact probability that pair b is unwitnessed.

    Closed form: an adjacency factor (1-p) when the pair is a candidate
    edge, times (1-p^2) for every vertex that could serve as a common
    neighbor (for directed pairs: as a 2-arc relay).
    """
    p = _check_rational_p(p)
    parts = family.parts
    adj = (1 - p) if family.candidate_parts(b.part_u, b.part_v) else Fraction(1)
    relays = 0
    for c, size in enumerate(parts):
        if family.candidate_parts(c, b.part_u) and family.candidate_parts(c, b.part_v):
            relays += size - (c == b.part_u) - (c == b.part_v)
    return adj * (1 - p * p) ** relays


class _LocalSystem:
    """Edge-slot bookkeeping for enumerating a joint survival event."""

    def __init__(self, family: GraphFamily):
        self.family = family
        self.slots: dict[tuple[int, int], int] = {}

    def slot(self, x: int, y: int, parts: dict[int, int]) -> int | None:
        """Slot index of edge/arc x->y, or None when not a candidate."""
        if x == y or not self.family.candidate_parts(parts[x], parts[y]):
            return None
        key = (x, y) if self.family.directed else (min(x, y), max(x, y))
        if key not in self.slots:
            self.slots[key] = len(self.slots)
        return self.slots[key]


def _popcount_poly(counts: list[int], p: Fraction, slot_count: int) -> Fraction:
    q = 1 - p
    return sum(
        (Fraction(c) * p**k * q ** (slot_count - k) for k, c in enumerate(counts)),
        Fraction(0),
    )


def _enumerate_valid(
    slot_count: int, forbidden_bits: int, forbidden_pairs: list[int]
) -> list[int]:
    """Per-popcount counts of slot assignments violating no condition."""
    counts = [0] * (slot_count + 1)
    for config in range(1 << slot_count):
        if config & forbidden_bits:
            continue
        if any((config & m) == m for m in forbidden_pairs):
            continue
        counts[bin(config).count("1")] += 1
    return counts


def joint_survival_prob(
    family: GraphFamily, p: Fraction, b1: WitnessPair, b2: WitnessPair
) -> Fraction:
    """Exact probability that b1 and b2 are simultaneously unwitnessed.

    Identical pairs reduce to :func:`pair_survival_prob`.  Otherwise the
    candidate edges inside b1 u b2 are enumerated exhaustively, and each
    vertex outside contributes an independent factor it shares with all
    vertices of its part, raised to the part's remaining multiplicity.
    """
    p = _check_rational_p(p)
    if (b1.u, b1.v) == (b2.u, b2.v):
        return pair_survival_prob(family, p, b1)
    verts: list[int] = []
    for x in (b1.u, b1.v, b2.u, b2.v):
        if x not in verts:
            verts.append(x)
    parts = {x: family.part_of(x) for x in verts}
    system = _LocalSystem(family)

    forbidden_bits = 0
    forbidden_pairs: list[int] = []
    for b in (b1, b2):
        adj = system.slot(b.u, b.v, parts)
        if adj is not None:
            forbidden_bits |= 1 << adj
        for w in verts:
            if w in (b.u, b.v):
                continue
            s1 = system.slot(b.u, w, parts)
            s2 = system.slot(w, b.v, parts)
            if s1 is not None and s2 is not None:
                forbidden_pairs.append((1 << s1) | (1 << s2))
    slot_count = len(system.slots)
    counts = _enumerate_valid(slot_count, forbidden_bits, forbidden_pairs)
    result = _popcount_poly(counts, p, slot_count)

    member_count = [0] * len(family.parts)
    for x in verts:
        member_count[parts[x]] += 1
    for c, size in enumerate(family.parts):
        external = size - member_count[c]
        if external <= 0:
            continue
        factor = _external_factor(family, p, verts, parts, c, b1, b2)
        if factor != 1:
            result *= factor**external
    return result


def _external_factor(
    family: GraphFamily,
    p: Fraction,
    verts: list[int],
    parts: dict[int, int],
    part: int,
    b1: WitnessPair,
    b2: WitnessPair,
) -> Fraction:
    """P(an external vertex of the given part witnesses neither pair)."""
    w = -1  # sentinel vertex id for the external vertex
    local = dict(parts)
    local[w] = part
    system = _LocalSystem(family)
    pairs: list[int] = []
    for b in (b1, b2):
        s1 = system.slot(b.u, w, local)
        s2 = system.slot(w, b.v, local)
        if s1 is not None and s2 is not None:
            pairs.append((1 << s1) | (1 << s2))
    slot_count = len(system.slots)
    if not pairs:
        return Fraction(1)
    counts = _enumerate_valid(slot_count, 0, pairs)
    return _popcount_poly(counts, p, slot_count)


# ----------------------------------------------------------------------
# Incidence statistics by symmetry-orbit counting
# ----------------------------------------------------------------------


class _Placer:
    """Hands out representative vertex ids part by part."""

    def __init__(self, family: GraphFamily):
        self.offsets = (
            family.shape.offsets() if family.shape is not None else (0,)
        )
        self.used = [0] * len(family.parts)
        self.sizes = family.parts

    def take(self, part: int) -> int:
        v = self.offsets[part] + self.used[part]
        self.used[part] += 1
        assert self.used[part] <= self.sizes[part]
        return v


def _btypes_undirected(family: GraphFamily) -> list[tuple[tuple[int, int], int]]:
    parts = family.parts
    out = []
    for i in range(len(parts)):
        for j in range(i, len(parts)):
            if family.witness_same_part_only and i != j:
                continue
            count = (
                parts[i] * (parts[i] - 1) // 2 if i == j else parts[i] * parts[j]
            )
            if count:
                out.append(((i, j), count))
    return out


def _btypes_directed(family: GraphFamily) -> list[tuple[tuple[int, int], int]]:
    parts = family.parts
    out = []
    for i in range(len(parts)):
        for j in range(len(parts)):
            if family.witness_same_part_only and i != j:
                continue
            count = parts[i] * (parts[j] - (i == j))
            if count:
                out.append(((i, j), count))
    return out


def _sum_deg(family: GraphFamily, p: Fraction, btypes) -> tuple[Fraction, int]:
    total = Fraction(0)
    b_count = 0
    for (i, j), count in btypes:
        placer = _Placer(family)
        u, v = placer.take(i), placer.take(j)
        b = witness_pair(family, u, v)
        total += count * pair_survival_prob(family, p, b)
        b_count += count
    return total, b_count


def _joint_sum_undirected(family: GraphFamily, p: Fraction, btypes) -> Fraction:
    parts = family.parts
    k = len(parts)
    admissible = lambda i, j: (i == j) if family.witness_same_part_only else True
    total = Fraction(0)
    # identical pairs: the diagonal contributes q(b) itself
    for (i, j), count in btypes:
        placer = _Placer(family)
        b = witness_pair(family, placer.take(i), placer.take(j))
        total += count * pair_survival_prob(family, p, b)
    # pairs sharing exactly one vertex: shared in part a, others in parts b, g
    for a in range(k):
        for bp in range(k):
            if not admissible(min(a, bp), max(a, bp)):
                continue
            for g in range(k):
                if not admissible(min(a, g), max(a, g)):
                    continue
                count = (
                    parts[a]
                    * (parts[bp] - (bp == a))
                    * (parts[g] - (g == a) - (g == bp))
                )
                if count <= 0:
                    continue
                placer = _Placer(family)
                s = placer.take(a)
                c = placer.take(bp)
                d = placer.take(g)
                q = joint_survival_prob(
                    family, p, witness_pair(family, s, c), witness_pair(family, s, d)
                )
                total += count * q
    # disjoint pairs: choose b1 of one type, then b2 from the leftovers
    for (i, j), count1 in btypes:
        for (l, m), _ in btypes:
            removed_l = (l == i) + (l == j)
            removed_m = (m == i) + (m == j)
            if l == m:
                avail = parts[l] - removed_l
                count2 = avail * (avail - 1) // 2
            else:
                count2 = (parts[l] - removed_l) * (parts[m] - removed_m)
            if count2 <= 0:
                continue
            placer = _Placer(family)
            x, y = placer.take(i), placer.take(j)
            z, w = placer.take(l), placer.take(m)
            q = joint_survival_prob(
                family, p, witness_pair(family, x, y), witness_pair(family, z, w)
            )
            total += count1 * count2 * q
    return total


def _joint_sum_directed(family: GraphFamily, p: Fraction, btypes) -> Fraction:
    parts = family.parts
    k = len(parts)
    admissible = lambda i, j: (i == j) if family.witness_same_part_only else True
    total = Fraction(0)
    # roles for b2's endpoints: reuse b1's tail/head, or a fresh vertex per part
    U1, V1 = -1, -2
    roles = [U1, V1] + list(range(k))
    for (i, j), count1 in btypes:
        for ru in roles:
            for rv in roles:
                if ru == rv and ru in (U1, V1):
                    continue  # b2 endpoints must differ
                if (ru, rv) == (U1, V1):
                    continue  # identical pairs handled on the diagonal
                pu = i if ru == U1 else j if ru == V1 else ru
                pv = i if rv == U1 else j if rv == V1 else rv
                if not admissible(pu, pv):
                    continue
                used = {i: (i == j) + 1} if i == j else {i: 1, j: 1}
                count = count1
                if ru >= 0:
                    count *= parts[ru] - used.get(ru, 0)
                    used[ru] = used.get(ru, 0) + 1
                if rv >= 0:
                    count *= parts[rv] - used.get(rv, 0)
                if count <= 0:
                    continue
                placer = _Placer(family)
                u1, v1 = placer.take(i), placer.take(j)
                u2 = u1 if ru == U1 else v1 if ru == V1 else placer.take(ru)
                v2 = u1 if rv == U1 else v1 if rv == V1 else placer.take(rv)
                q = joint_survival_prob(
                    family,
                    p,
                    witness_pair(family, u1, v1),
                    witness_pair(family, u2, v2),
                )
                total += count * q
    # diagonal
    for (i, j), count in btypes:
        placer = _Placer(family)
        b = witness_pair(family, placer.take(i), placer.take(j))
        total += count * pair_survival_prob(family, p, b)
    return total


def incidence_stats(family: GraphFamily, p: Fraction) -> IncidenceStats:
    """Exact (sum_b q, sum_{b1,b2} Q, |B|) by symmetry-orbit counting.

    Pairs of conditions are grouped by the parts of their vertices and
    their overlap pattern; one local enumeration per orbit is weighted by
    the orbit size, so cost scales with the number of orbits rather than
    |B|^2.
    """
    p = _check_rational_p(p)
    if family.directed:
        btypes = _btypes_directed(family)
    else:
        btypes = _btypes_undirected(family)
    b_count = sum(c for _, c in btypes)
    if b_count > MAX_WITNESS_PAIRS:
        raise ResourceError(
            f"|B| = {b_count} exceeds the {MAX_WITNESS_PAIRS} condition guard"
        )
    sum_deg, _ = _sum_deg(family, p, btypes)
    if family.directed:
        sum_joint = _joint_sum_directed(family, p, btypes)
    else:
        sum_joint = _joint_sum_undirected(family, p, btypes)
    return IncidenceStats(sum_deg, sum_joint, b_count)


def incidence_stats_naive(family: GraphFamily, p: Fraction) -> IncidenceStats:
    """Reference O(|B|^2) summation; must equal :func:`incidence_stats`."""
    p = _check_rational_p(p)
    pairs = enumerate_witness_pairs(family)
    sum_deg = sum(
        (pair_survival_prob(family, p, b) for b in pairs), Fraction(0)
    )
    sum_joint = sum(
        (joint_survival_prob(family, p, b1, b2) for b1 in pairs for b2 in pairs),
        Fraction(0),
    )
    return IncidenceStats(sum_deg, sum_joint, len(pairs))


# ----------------------------------------------------------------------
# The sieve inequalities
# ----------------------------------------------------------------------


def simple_sieve_lower(stats: IncidenceStats) -> Fraction:
    """Normalized simple-sieve lower bound 1 - sum_deg (may be negative)."""
    return 1 - stats.sum_deg


def turan_sieve_upper(stats: IncidenceStats) -> Fraction:
    """Normalized Turan-sieve upper bound sum_joint / sum_deg^2 - 1.

    May exceed 1; the caller clamps.  Raises ZeroDivisionError when
    sum_deg = 0, in which case the sieve is inapplicable and the caller
    should report the trivial upper bound 1.
    """
    if stats.sum_deg == 0:
        raise ZeroDivisionError("Turan sieve needs sum_deg > 0")
    return stats.sum_joint / (stats.sum_deg * stats.sum_deg) - 1


def _clamp01(x: Fraction) -> Fraction:
    return Fraction(0) if x < 0 else Fraction(1) if x > 1 else x


def sieve_bounds(
    family: GraphFamily, p: Fraction
) -> tuple[BoundPair, Fraction, Fraction]:
    """Both sieve bounds for (family, p), exact and as a float BoundPair.

    Returns (pair, exact_lower, exact_upper) with the exact values clamped
    to [0,1].  For p in (0,1) every condition has positive survival
    probability, so the Turan denominator cannot vanish.
    """
    stats = incidence_stats(family, p)
    lower = simple_sieve_lower(stats)
    upper = turan_sieve_upper(stats)
    exact_lower = _clamp01(lower)
    exact_upper = _clamp01(upper)
    pair = BoundPair(
        lower_raw=float(lower),
        upper_raw=float(upper),
        lower=float(exact_lower),
        upper=float(exact_upper),
        source="sieve_exact",
        trivial_lower=lower <= 0,
        trivial_upper=upper >= 1,
    )
    return pair, exact_lower, exact_upper
