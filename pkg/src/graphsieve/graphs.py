"""Graph families, deterministic random generation, and diameter predicates.

The sampled object is a bitset adjacency matrix: row ``u`` is a fixed-width
vector of 64-bit words whose bit ``v`` is set iff the edge (arc) ``u -> v``
is present.  Common-neighbor questions then reduce to word-wise ANDs, which
is what makes the Monte Carlo simulator usable at thousands of vertices.

A slow all-sources BFS diameter is kept alongside as the reference
implementation; property tests pit it against the bitset predicates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .rng import bernoulli_array, counter_hashes, probability_threshold

__all__ = [
    "PartitionShape",
    "make_shape",
    "turan_shape",
    "FamilyKind",
    "GraphFamily",
    "AdjacencyMatrix",
    "Diameter",
    "INFINITE",
    "sample_graph",
    "has_diameter_le2",
    "directed_has_diameter_le2",
    "bipartite_has_diameter_le3",
    "directed_bipartite_has_diameter_le3",
    "graph_diameter",
    "family_success",
    "candidate_edges",
]


# ----------------------------------------------------------------------
# Partition shapes
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class PartitionShape:
    """Ordered part sizes (non-decreasing) of a vertex partition."""

    sizes: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.sizes)

    def total(self) -> int:
        return sum(self.sizes)

    def offsets(self) -> tuple[int, ...]:
        """Start index of each part under consecutive vertex numbering."""
        out = []
        acc = 0
        for s in self.sizes:
            out.append(acc)
            acc += s
        return tuple(out)

    def part_of(self, v: int) -> int:
        acc = 0
        for i, s in enumerate(self.sizes):
            acc += s
            if v < acc:
                return i
        raise DomainError(f"vertex {v} outside shape with {self.total()} vertices")

    def __str__(self) -> str:
        return "(" + ",".join(str(s) for s in self.sizes) + ")"


def make_shape(sizes) -> PartitionShape:
    """Build a shape from part sizes; input order is not significant."""
    sizes = list(sizes)
    if not sizes:
        raise DomainError("shape needs at least one part")
    for s in sizes:
        if not isinstance(s, int) or s < 1:
            raise DomainError(f"part sizes must be positive integers, got {s!r}")
    return PartitionShape(tuple(sorted(sizes)))


def turan_shape(n: int, k: int) -> PartitionShape:
    """k parts as equal as possible: n mod k parts of size ceil(n/k), rest floor."""
    if k < 1 or k > n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    small, large = divmod(n, k)
    return PartitionShape(tuple([small] * (k - large) + [small + 1] * large))


# ----------------------------------------------------------------------
# Graph families
# ----------------------------------------------------------------------


class FamilyKind(str, Enum):
    SIMPLE = "simple"
    DIRECTED = "directed"
    KPARTITE = "kpartite"
    DIRECTED_KPARTITE = "directed-kpartite"
    BIPARTITE = "bipartite"
    DIRECTED_BIPARTITE = "directed-bipartite"


_DIRECTED_KINDS = {
    FamilyKind.DIRECTED,
    FamilyKind.DIRECTED_KPARTITE,
    FamilyKind.DIRECTED_BIPARTITE,
}
_BIPARTITE_KINDS = {FamilyKind.BIPARTITE, FamilyKind.DIRECTED_BIPARTITE}
_PARTITE_KINDS = _BIPARTITE_KINDS | {FamilyKind.KPARTITE, FamilyKind.DIRECTED_KPARTITE}


@dataclass(frozen=True)
class GraphFamily:
    """A random-graph model: vertex structure plus edge candidacy rule.

    The target diameter is a function of the kind: bipartite kinds ask for
    diameter <= 3 (no bipartite graph other than the complete one has
    diameter 2), every other kind asks for diameter <= 2.
    """

    kind: FamilyKind
    n: int
    shape: PartitionShape | None = None

    # -- constructors ---------------------------------------------------

    @staticmethod
    def simple(n: int, directed: bool = False) -> "GraphFamily":
        if n < 2:
            raise DomainError("simple family needs n >= 2")
        return GraphFamily(FamilyKind.DIRECTED if directed else FamilyKind.SIMPLE, n)

    @staticmethod
    def kpartite(shape: PartitionShape, directed: bool = False) -> "GraphFamily":
        _validate_kpartite(shape)
        kind = FamilyKind.DIRECTED_KPARTITE if directed else FamilyKind.KPARTITE
        return GraphFamily(kind, shape.total(), shape)

    @staticmethod
    def bipartite(shape: PartitionShape, directed: bool = False) -> "GraphFamily":
        if shape.k != 2:
            raise DomainError(f"bipartite family needs exactly 2 parts, got {shape.k}")
        if shape.sizes[0] < 2:
            raise DomainError("bipartite family needs both parts of size >= 2")
        kind = FamilyKind.DIRECTED_BIPARTITE if directed else FamilyKind.BIPARTITE
        return GraphFamily(kind, shape.total(), shape)

    # -- structure ------------------------------------------------------

    @property
    def directed(self) -> bool:
        return self.kind in _DIRECTED_KINDS

    @property
    def target_diameter(self) -> int:
        return 3 if self.kind in _BIPARTITE_KINDS else 2

    @property
    def parts(self) -> tuple[int, ...]:
        """Part sizes; simple/directed graphs count as a single part."""
        return self.shape.sizes if self.shape is not None else (self.n,)

    @property
    def allows_intra_part_edges(self) -> bool:
        return self.kind not in _PARTITE_KINDS

    @property
    def witness_same_part_only(self) -> bool:
        """Whether the diameter event only constrains same-part vertex pairs."""
        return self.kind in _BIPARTITE_KINDS

    def candidate_parts(self, i: int, j: int) -> bool:
        """Can an edge run between a vertex of part i and one of part j?"""
        return i != j or self.allows_intra_part_edges

    def part_of(self, v: int) -> int:
        return 0 if self.shape is None else self.shape.part_of(v)

    def describe(self) -> str:
        if self.shape is None:
            return self.kind.value
        return f"{self.kind.value}{self.shape}"


def _validate_kpartite(shape: PartitionShape) -> None:
    n, k = shape.total(), shape.k
    if k < 3:
        raise DomainError(f"k-partite family needs k >= 3, got k={k}")
    if shape.sizes[k - 2] < 2:
        raise DomainError("k-partite family needs second-largest part >= 2")
    if n < k + 2:
        raise DomainError(f"k-partite family needs n >= k+2, got n={n}, k={k}")


# ----------------------------------------------------------------------
# Candidate edges and their stream identities
# ----------------------------------------------------------------------


def _pair_index(u: int, v: int, n: int) -> int:
    """Rank of the unordered pair (u < v) in row-major upper-triangle order."""
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def _arc_index(u: int, v: int, n: int) -> int:
    """Rank of the ordered pair (u != v) among all n(n-1) arcs."""
    return u * (n - 1) + (v - 1 if v > u else v)


@lru_cache(maxsize=64)
def candidate_edges(family: GraphFamily) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Endpoint arrays (us, vs) and stream identities for the family's edges.

    Stream identities are global pair/arc ranks, so an edge keeps the same
    identity across families on the same vertex set.  Arrays are read-only.
    """
    n = family.n
    if family.directed:
        us, vs = np.where(~np.eye(n, dtype=bool))
        ids = us * (n - 1) + vs - (vs > us)
    else:
        us, vs = np.triu_indices(n, k=1)
        ids = us * n - us * (us + 1) // 2 + (vs - us - 1)
    if not family.allows_intra_part_edges:
        part = np.repeat(np.arange(family.shape.k), family.shape.sizes)
        keep = part[us] != part[vs]
        us, vs, ids = us[keep], vs[keep], ids[keep]
    out = (
        np.ascontiguousarray(us, dtype=np.int64),
        np.ascontiguousarray(vs, dtype=np.int64),
        np.ascontiguousarray(ids, dtype=np.uint64),
    )
    for a in out:
        a.flags.writeable = False
    return out


# ----------------------------------------------------------------------
# Adjacency matrices
# ----------------------------------------------------------------------


def _pack_rows(mat: np.ndarray) -> np.ndarray:
    """Pack a (n, W*64) boolean matrix into (n, W) little-endian uint64 words."""
    packed = np.packbits(mat, axis=1, bitorder="little")
    words = np.ascontiguousarray(packed).view("<u8")
    words.flags.writeable = False
    return words


@dataclass(frozen=True)
class AdjacencyMatrix:
    """Immutable bitset adjacency structure.

    ``out_rows[u]`` holds the out-neighborhood of ``u`` (for undirected
    graphs, simply the neighborhood).  ``in_rows`` is the transpose view for
    directed graphs and the same array otherwise, kept so that two-hop tests
    are a row AND.
    """

    n: int
    directed: bool
    out_rows: np.ndarray
    in_rows: np.ndarray

    def __post_init__(self):
        if __debug__:
            self._assert_tail_bits_zero()

    def _assert_tail_bits_zero(self) -> None:
        # AND-based tests read whole words; bits past column n-1 must be 0.
        spill = self.words_per_row * 64 - self.n
        if spill:
            tail_mask = np.uint64(((1 << spill) - 1) << (64 - spill))
            assert not (self.out_rows[:, -1] & tail_mask).any()
            assert not (self.in_rows[:, -1] & tail_mask).any()

    @property
    def words_per_row(self) -> int:
        return self.out_rows.shape[1]

    def bit(self, u: int, v: int) -> bool:
        """Presence of edge/arc u -> v."""
        return bool((self.out_rows[u, v >> 6] >> np.uint64(v & 63)) & np.uint64(1))

    def edge_count(self) -> int:
        total = int(np.bitwise_count(self.out_rows).sum())
        return total if self.directed else total // 2

    def neighbors_out(self, u: int) -> list[int]:
        return _word_row_to_list(self.out_rows[u])

    def row_mask(self, u: int) -> int:
        """Out-neighborhood of u as one Python integer bitmask."""
        return int.from_bytes(self.out_rows[u].tobytes(), "little")

    @staticmethod
    def from_bool_matrix(mat: np.ndarray, directed: bool) -> "AdjacencyMatrix":
        n = mat.shape[0]
        if mat.shape[1] != n:
            raise DomainError("adjacency matrix must be square")
        if mat.dtype != bool:
            mat = mat.astype(bool)
        if not directed and not np.array_equal(mat, mat.T):
            raise DomainError("undirected adjacency must be symmetric")
        if mat.diagonal().any():
            raise DomainError("self-loops are not allowed")
        width = ((n + 63) // 64) * 64
        padded = np.zeros((n, width), dtype=bool)
        padded[:, :n] = mat
        out_rows = _pack_rows(padded)
        if directed:
            padded_t = np.zeros((n, width), dtype=bool)
            padded_t[:, :n] = mat.T
            in_rows = _pack_rows(padded_t)
        else:
            in_rows = out_rows
        return AdjacencyMatrix(n, directed, out_rows, in_rows)

    @staticmethod
    def from_edges(n: int, edges, directed: bool = False) -> "AdjacencyMatrix":
        mat = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            mat[u, v] = True
            if not directed:
                mat[v, u] = True
        return AdjacencyMatrix.from_bool_matrix(mat, directed)

    @staticmethod
    def complete(n: int, directed: bool = False) -> "AdjacencyMatrix":
        mat = ~np.eye(n, dtype=bool)
        return AdjacencyMatrix.from_bool_matrix(mat, directed)


def _word_row_to_list(row: np.ndarray) -> list[int]:
    mask = int.from_bytes(row.tobytes(), "little")
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ----------------------------------------------------------------------
# Sampling
# ----------------------------------------------------------------------


def sample_graph(
    family: GraphFamily, p: float, seed: int, trial_index: int
) -> AdjacencyMatrix:
    """Draw one graph; each candidate edge present independently with prob. p.

    The decision for an edge is a pure function of (seed, trial_index, edge
    identity), so repeated calls agree bit for bit and trials can be
    evaluated in any order or on any number of workers.
    """
    if not 0.0 < p < 1.0:
        raise DomainError(f"edge probability must lie in (0,1), got {p}")
    us, vs, ids = candidate_edges(family)
    hashes = counter_hashes(seed, trial_index, ids)
    present = bernoulli_array(hashes, probability_threshold(p))
    n = family.n
    width = ((n + 63) // 64) * 64
    mat = np.zeros((n, width), dtype=bool)
    mat[us[present], vs[present]] = True
    if family.directed:
        out_rows = _pack_rows(mat)
        mat_t = np.zeros((n, width), dtype=bool)
        mat_t[:, :n] = mat[:, :n].T
        in_rows = _pack_rows(mat_t)
    else:
        mat[vs[present], us[present]] = True
        out_rows = _pack_rows(mat)
        in_rows = out_rows
    return AdjacencyMatrix(n, family.directed, out_rows, in_rows)


# ----------------------------------------------------------------------
# Fast diameter predicates (bitset path)
# ----------------------------------------------------------------------


def _with_self_bits(rows: np.ndarray, n: int) -> np.ndarray:
    closed = rows.copy()
    idx = np.arange(n)
    closed[idx, idx >> 6] |= np.uint64(1) << (idx & 63).astype(np.uint64)
    return closed


def _all_pairs_intersect(rows_a: np.ndarray, rows_b: np.ndarray) -> bool:
    """Whether rows_a[u] AND rows_b[v] is nonzero for every vertex pair.

    With the same array twice, only unordered pairs u < v are checked;
    distinct arrays mean ordered pairs (the u = v diagonal is vacuous for
    closed rows, which always share the self bit).
    """
    n = rows_a.shape[0]
    if rows_a.shape[1] == 1:
        col_a = rows_a[:, 0]
        col_b = rows_b[:, 0]
        return bool((col_a[:, None] & col_b[None, :]).all())
    buf = np.empty_like(rows_b)
    same = rows_a is rows_b
    for u in range(n - 1 if same else n):
        block = rows_b[u + 1 :] if same else rows_b
        m = block.shape[0]
        np.bitwise_and(block, rows_a[u], out=buf[:m])
        if not np.bitwise_or.reduce(buf[:m], axis=1).all():
            return False
    return True


def has_diameter_le2(g: AdjacencyMatrix) -> bool:
    """True iff every vertex pair is adjacent or shares a neighbor.

    Uses closed neighborhoods: N[u] and N[v] intersect exactly when u ~ v or
    some w is adjacent to both, so one AND per pair decides the predicate.
    """
    if g.directed:
        raise DomainError("has_diameter_le2 expects an undirected graph")
    closed = _with_self_bits(g.out_rows, g.n)
    return _all_pairs_intersect(closed, closed)


def directed_has_diameter_le2(g: AdjacencyMatrix) -> bool:
    """True iff every ordered pair (u,v) has an arc u->v or a 2-arc path."""
    if not g.directed:
        raise DomainError("directed_has_diameter_le2 expects a directed graph")
    closed_out = _with_self_bits(g.out_rows, g.n)
    closed_in = _with_self_bits(g.in_rows, g.n)
    return _all_pairs_intersect(closed_out, closed_in)


def _same_part_pairs_witnessed(
    rows_a: np.ndarray, rows_b: np.ndarray, shape: PartitionShape, ordered: bool
) -> bool:
    offset = 0
    for size in shape.sizes:
        for u in range(offset, offset + size - 1):
            block = rows_b[u + 1 : offset + size]
            if not np.bitwise_or.reduce(block & rows_a[u], axis=1).all():
                return False
            if ordered:
                block = rows_a[u + 1 : offset + size]
                if not np.bitwise_or.reduce(block & rows_b[u], axis=1).all():
                    return False
        offset += size
    return True


def bipartite_has_diameter_le3(g: AdjacencyMatrix, shape: PartitionShape) -> bool:
    """True iff every same-part pair has a common neighbor.

    With both parts of size >= 2 this is equivalent to the graph being
    connected with diameter <= 3 (the equivalence is property-tested against
    BFS rather than assumed).
    """
    _check_bipartite_args(g, shape, directed=False)
    return _same_part_pairs_witnessed(g.out_rows, g.out_rows, shape, ordered=False)


def directed_bipartite_has_diameter_le3(
    g: AdjacencyMatrix, shape: PartitionShape
) -> bool:
    """True iff every same-part ordered pair (u,v) has a 2-arc path u->w->v.

    Interpretation note: for directed bipartite graphs the success event is
    defined exactly as this witness condition (there is no adjacency term,
    same-part arcs not being candidates).
    """
    _check_bipartite_args(g, shape, directed=True)
    return _same_part_pairs_witnessed(g.out_rows, g.in_rows, shape, ordered=True)


def _check_bipartite_args(g: AdjacencyMatrix, shape: PartitionShape, directed: bool):
    if shape.k != 2 or shape.sizes[0] < 2:
        raise DomainError("bipartite check needs two parts of size >= 2")
    if shape.total() != g.n:
        raise DomainError(
            f"shape covers {shape.total()} vertices but graph has {g.n}"
        )
    if g.directed != directed:
        raise DomainError("graph orientation does not match the predicate")


# ----------------------------------------------------------------------
# Reference BFS diameter
# ----------------------------------------------------------------------

INFINITE = math.inf


@dataclass(frozen=True)
class Diameter:
    """Graph diameter; ``math.inf`` marks a disconnected graph."""

    value: float

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    def at_most(self, d: int) -> bool:
        return self.value <= d


def masks_diameter(masks: list[int], n: int) -> float:
    """Max eccentricity by level-synchronous BFS from every source."""
    if n == 1:
        return 0
    full = (1 << n) - 1
    worst = 0
    for s in range(n):
        seen = 1 << s
        frontier = seen
        depth = 0
        while seen != full:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= masks[low.bit_length() - 1]
                f ^= low
            nxt &= ~seen
            if not nxt:
                return INFINITE
            seen |= nxt
            frontier = nxt
            depth += 1
        worst = max(worst, depth)
    return worst


def masks_diameter_at_most(masks: list[int], n: int, d: int) -> bool:
    """BFS per source with early exit once depth d is exceeded."""
    full = (1 << n) - 1
    for s in range(n):
        seen = 1 << s
        frontier = seen
        depth = 0
        while seen != full:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= masks[low.bit_length() - 1]
                f ^= low
            nxt &= ~seen
            if not nxt:
                return False
            depth += 1
            if depth > d:
                return False
            seen |= nxt
            frontier = nxt
    return True


def graph_diameter(g: AdjacencyMatrix) -> Diameter:
    """Reference diameter: BFS from every vertex, Infinite if disconnected.

    For directed graphs the BFS follows out-arcs, so Infinite means not
    strongly connected.  No performance guarantee; this exists to check the
    bitset predicates, not to replace them.
    """
    masks = [g.row_mask(u) for u in range(g.n)]
    return Diameter(masks_diameter(masks, g.n))


# ----------------------------------------------------------------------
# Family success dispatch
# ----------------------------------------------------------------------


def family_success(family: GraphFamily, g: AdjacencyMatrix) -> bool:
    """Did this sample achieve the family's target diameter?"""
    if family.kind == FamilyKind.BIPARTITE:
        return bipartite_has_diameter_le3(g, family.shape)
    if family.kind == FamilyKind.DIRECTED_BIPARTITE:
        return directed_bipartite_has_diameter_le3(g, family.shape)
    if family.directed:
        return directed_has_diameter_le2(g)
    return has_diameter_le2(g)
