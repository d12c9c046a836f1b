"""Graphs, vertex subsets, generators and the edge-list file format.

Vertices are the integers ``0..n-1``.  Subsets of vertices are stored as
Python ints used as bitsets (bit ``v`` set iff ``v`` is a member); the
:class:`VertexSubset` wrapper is what the public API hands back.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "VertexSubset",
    "SubdividedClawSpec",
    "GenerationError",
    "build_graph",
    "boundary",
    "vol",
    "stretch",
    "gen_subdivided_claw",
    "gen_efree_block",
    "gen_skewstar_witness",
    "gen_random_cubic_bipartite",
    "check_expansion",
    "expansion_constant",
    "bipartition",
    "is_connected",
    "ball",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "complete_bipartite",
    "empty_graph",
    "line_graph",
    "disjoint_union",
    "induced_subgraph",
    "random_bounded_degree_graph",
    "random_tree",
    "write_edge_list",
    "read_edge_list",
    "format_edge_list",
    "parse_edge_list",
]

EXPANSION_CAP = 14


class GenerationError(RuntimeError):
    """A randomized generator ran out of retries."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class VertexSubset:
    """Set of vertices of an ``n``-vertex graph, stored as a bitset."""

    bits: int
    universe_size: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.universe_size:
            raise ValueError("subset has members outside 0..n-1")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int] = ()) -> VertexSubset:
        mask = 0
        for v in vertices:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range for n={n}")
            mask |= 1 << v
        return cls(mask, n)

    @classmethod
    def empty(cls, n: int) -> VertexSubset:
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> VertexSubset:
        return cls((1 << n) - 1, n)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.universe_size and bool(self.bits >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return _bits(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def _check(self, other: VertexSubset) -> None:
        if other.universe_size != self.universe_size:
            raise ValueError("universe mismatch")

    def __or__(self, other: VertexSubset) -> VertexSubset:
        self._check(other)
        return VertexSubset(self.bits | other.bits, self.universe_size)

    def __and__(self, other: VertexSubset) -> VertexSubset:
        self._check(other)
        return VertexSubset(self.bits & other.bits, self.universe_size)

    def __sub__(self, other: VertexSubset) -> VertexSubset:
        self._check(other)
        return VertexSubset(self.bits & ~other.bits, self.universe_size)

    def __xor__(self, other: VertexSubset) -> VertexSubset:
        self._check(other)
        return VertexSubset(self.bits ^ other.bits, self.universe_size)

    def __le__(self, other: VertexSubset) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def complement(self) -> VertexSubset:
        return VertexSubset(((1 << self.universe_size) - 1) & ~self.bits, self.universe_size)

    def hamming(self, other: VertexSubset) -> int:
        self._check(other)
        return (self.bits ^ other.bits).bit_count()

    def to_list(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"VertexSubset({self.to_list()}, n={self.universe_size})"


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    max_degree: int
    masks: tuple[int, ...] = field(repr=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def neighborhood_mask(self, mask: int) -> int:
        """Union of the neighbourhoods of the vertices in ``mask``."""
        out = 0
        for v in _bits(mask):
            out |= self.masks[v]
        return out

    def is_independent(self, mask: int | VertexSubset) -> bool:
        if isinstance(mask, VertexSubset):
            mask = mask.bits
        return all(self.masks[v] & mask == 0 for v in _bits(mask))

    def subset(self, vertices: Iterable[int] = ()) -> VertexSubset:
        return VertexSubset.of(self.n, vertices)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges}, max_degree={self.max_degree})"


@dataclass(frozen=True, order=True)
class SubdividedClawSpec:
    """Leg lengths ``i <= j <= k`` of the subdivided claw S_{i,j,k}."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if not 1 <= self.i <= self.j <= self.k:
            raise ValueError(f"need 1 <= i <= j <= k, got {(self.i, self.j, self.k)}")

    @classmethod
    def parse(cls, text: str) -> SubdividedClawSpec:
        i, j, k = sorted(int(x) for x in text.replace(" ", "").split(","))
        return cls(i, j, k)


# named subdivided claws
CLAW = SubdividedClawSpec(1, 1, 1)
FORK = SubdividedClawSpec(1, 1, 2)
E_GRAPH = SubdividedClawSpec(1, 2, 2)
SKEW_STAR = SubdividedClawSpec(1, 2, 3)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a simple graph; duplicate edges are merged, loops rejected."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    masks = tuple(sum(1 << w for w in s) for s in nbrs)
    max_degree = max((len(a) for a in adjacency), default=0)
    return Graph(n, adjacency, max_degree, masks)


def boundary(G: Graph, S: VertexSubset) -> VertexSubset:
    """Vertices outside ``S`` that have a neighbour in ``S``."""
    if S.universe_size != G.n:
        raise ValueError("subset universe does not match graph")
    return VertexSubset(G.neighborhood_mask(S.bits) & ~S.bits, G.n)


def vol(delta: int, t: int) -> int:
    """Upper bound on the size of a radius-``t`` ball when degrees are at most ``delta``."""
    if delta < 3:
        raise ValueError("vol needs delta >= 3")
    if t < 0:
        raise ValueError("radius must be non-negative")
    return 1 + delta * ((delta - 1) ** t - 1) // (delta - 2)


def ball(G: Graph, v: int, radius: int) -> set[int]:
    """Vertices within graph distance ``radius`` of ``v``."""
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        if dist[u] == radius:
            continue
        for w in G.adjacency[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return set(dist)


def distances_from(G: Graph, v: int) -> list[int]:
    """BFS distances from ``v``; -1 marks unreachable vertices."""
    dist = [-1] * G.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in G.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        return True
    return min(distances_from(G, 0)) >= 0


def bipartition(G: Graph) -> tuple[list[int], list[int]] | None:
    """A 2-colouring ``(side0, side1)`` of ``G``, or ``None`` if ``G`` has an odd cycle."""
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in G.adjacency[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return [v for v in range(G.n) if color[v] == 0], [v for v in range(G.n) if color[v] == 1]


def stretch(G: Graph, subdivisions_per_edge: int) -> tuple[Graph, dict[int, int]]:
    """Replace every edge by a path with ``subdivisions_per_edge`` internal vertices.

    Original vertices keep their ids; the internal vertices of edge ``(u, v)``
    (taken in ``G.edges`` order) are numbered consecutively from ``u`` towards ``v``.
    """
    m = subdivisions_per_edge
    if m < 0:
        raise ValueError("subdivisions_per_edge must be >= 0")
    branch_map = {v: v for v in range(G.n)}
    edges = []
    nxt = G.n
    for u, v in G.edges:
        chain = [u, *range(nxt, nxt + m), v]
        nxt += m
        edges.extend(zip(chain, chain[1:]))
    return build_graph(nxt, edges), branch_map


def gen_subdivided_claw(spec: SubdividedClawSpec) -> Graph:
    """S_{i,j,k}: centre 0, legs numbered outward one after the other."""
    edges = []
    nxt = 1
    for length in (spec.i, spec.j, spec.k):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges)


# One tile of the E-free family, ids 0..9 for the labels A..J of the drawing.
# K4 on A,B,C,D; 4-cycle C-E-F-G; 4-cycle B-H-I-J.
_BLOCK_EDGES = [
    (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
    (2, 4), (4, 5), (5, 6), (6, 2),
    (1, 7), (7, 8), (8, 9), (9, 1),
]
_A, _D, _F, _I = 0, 3, 5, 8


def gen_efree_block(rows: int, cols: int) -> Graph:
    """The E-free (but not fork-free) tiling, ``rows`` x ``cols`` blocks.

    Tiles sit on a grid exactly as drawn: the far corner ``F`` of the square
    hanging off ``C`` is the ``A`` corner of the tile to the right, and the top
    corner ``I`` of the square hanging off ``B`` is the ``D`` corner of the tile
    above.  A single tile has 10 vertices.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be positive")
    ids: dict[tuple[int, int, int], int] = {}

    def key(i: int, j: int, label: int) -> tuple[int, int, int]:
        # canonicalise shared corners onto the tile that owns them as F / I
        if label == _A and i > 0:
            return (i - 1, j, _F)
        if label == _D and j > 0:
            return (i, j - 1, _I)
        return (i, j, label)

    edges = []
    for j in range(rows):
        for i in range(cols):
            for a, b in _BLOCK_EDGES:
                ka, kb = key(i, j, a), key(i, j, b)
                for k in (ka, kb):
                    if k not in ids:
                        ids[k] = len(ids)
                edges.append((ids[ka], ids[kb]))
    return build_graph(len(ids), edges)


def gen_skewstar_witness(path_len: int) -> Graph:
    """An E plus a path ``a .. b`` with ``path_len`` edges, ``a`` joined to all of the E.

    Vertices 0..5 are the E (centre 0), ``a = 6``, ``b = 6 + path_len``.
    """
    if path_len < 2:
        raise ValueError("path_len must be >= 2")
    e = gen_subdivided_claw(E_GRAPH)
    a = 6
    edges = list(e.edges)
    edges += [(a + i, a + i + 1) for i in range(path_len)]
    edges += [(a, x) for x in range(6)]
    return build_graph(7 + path_len, edges)


def gen_random_cubic_bipartite(n: int, seed: int | np.random.Generator | None = None,
                               max_tries: int = 1000) -> Graph:
    """Cubic bipartite graph on parts ``0..n-1`` and ``n..2n-1``.

    Union of three uniformly random perfect matchings, rejected and redrawn
    whenever two of them share an edge.
    """
    if n < 1:
        raise ValueError("part size must be positive")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        perms = [rng.permutation(n) for _ in range(3)]
        pairs = {(u, int(p[u])) for p in perms for u in range(n)}
        if len(pairs) == 3 * n:
            return build_graph(2 * n, [(u, n + w) for u, w in sorted(pairs)])
    raise GenerationError(f"no simple cubic bipartite graph on {n}+{n} vertices after {max_tries} tries")


def _parts(G: Graph, left: Sequence[int] | None) -> tuple[list[int], list[int]]:
    if left is None:
        half = G.n // 2
        left = list(range(half))
        right = list(range(half, G.n))
        lmask = (1 << half) - 1
        if G.n % 2 or any(G.masks[u] & lmask for u in left) or any(G.masks[u] & ~lmask for u in right):
            parts = bipartition(G)
            if parts is None:
                raise ValueError("graph is not bipartite")
            left, right = parts
    else:
        left = sorted(left)
        right = sorted(set(range(G.n)) - set(left))
        lmask = sum(1 << u for u in left)
        if any(G.masks[u] & lmask for u in left) or any(G.masks[u] & ~lmask for u in right):
            raise ValueError("given left side is not a bipartition")
    if len(left) != len(right):
        raise ValueError("parts are unbalanced")
    return left, right


def _neighbor_counts(G: Graph, side: list[int], other: list[int]) -> np.ndarray:
    """|N(S)| for every subset S of ``side`` (indexed by bitmask over ``side``)."""
    pos = {v: i for i, v in enumerate(other)}
    nbr = [sum(1 << pos[w] for w in G.adjacency[u]) for u in side]
    table = np.zeros(1 << len(side), dtype=np.int64)
    for i, m in enumerate(nbr):
        table[1 << i: 1 << (i + 1)] = table[: 1 << i] | m
    return np.bitwise_count(table.astype(np.uint64)).astype(np.int64)


def _expansion_table(G: Graph, left: Sequence[int] | None, cap: int):
    left, right = _parts(G, left)
    n = len(left)
    if n > cap:
        raise ValueError(f"part size {n} exceeds expansion-check cap {cap}")
    limit = (2 * n) // 3
    out = []
    for side, other in ((left, right), (right, left)):
        counts = _neighbor_counts(G, side, other)
        sizes = np.bitwise_count(np.arange(1 << n, dtype=np.uint64)).astype(np.int64)
        keep = (sizes >= 1) & (sizes <= limit)
        out.append((sizes[keep], counts[keep]))
    return out


def check_expansion(G: Graph, alpha: float, left: Sequence[int] | None = None,
                    cap: int = EXPANSION_CAP) -> bool:
    """True iff every one-sided set of size at most 2n/3 has >= (1+alpha)|S| neighbours.

    Exhaustive over all subsets; parts default to the first and second half of
    the vertex ids (falling back to a 2-colouring).
    """
    ratio = 1 + Fraction(alpha)
    for sizes, counts in _expansion_table(G, left, cap):
        if len(sizes) and np.any(counts * ratio.denominator < sizes * ratio.numerator):
            return False
    return True


def expansion_constant(G: Graph, left: Sequence[int] | None = None,
                       cap: int = EXPANSION_CAP) -> Fraction | None:
    """Largest ``alpha`` accepted by :func:`check_expansion`; ``None`` if no set is tested."""
    best = None
    for sizes, counts in _expansion_table(G, left, cap):
        for size in np.unique(sizes):
            worst = int(counts[sizes == size].min())
            a = Fraction(worst, int(size)) - 1
            best = a if best is None or a < best else best
    return best


# --- small families used by tests, demos and the CLI -------------------------

def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(u, a + w) for u in range(a) for w in range(b)])


def line_graph(G: Graph) -> Graph:
    """Vertices are the edges of ``G`` (in ``G.edges`` order); adjacent iff they share an endpoint."""
    edges = G.edges
    at: dict[int, list[int]] = {v: [] for v in range(G.n)}
    for idx, (u, v) in enumerate(edges):
        at[u].append(idx)
        at[v].append(idx)
    return build_graph(len(edges), [p for ids in at.values() for p in combinations(ids, 2)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges]
        offset += g.n
    return build_graph(offset, edges)


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph, relabelled ``0..k-1``; also returns the new -> old id list."""
    keep = sorted(set(vertices))
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u, v in G.edges if u in pos and v in pos]
    return build_graph(len(keep), edges), keep


def random_bounded_degree_graph(n: int, max_degree: int, edge_prob: float,
                                rng: np.random.Generator) -> Graph:
    """Random graph: candidate edges in random order, kept with ``edge_prob`` if degrees allow."""
    pairs = list(combinations(range(n), 2))
    order = rng.permutation(len(pairs))
    keep = rng.random(len(pairs)) < edge_prob
    deg = [0] * n
    edges = []
    for idx in order:
        if not keep[idx]:
            continue
        u, v = pairs[idx]
        if deg[u] < max_degree and deg[v] < max_degree:
            deg[u] += 1
            deg[v] += 1
            edges.append((u, v))
    return build_graph(n, edges)


def random_tree(n: int, max_degree: int, rng: np.random.Generator) -> Graph:
    """Random tree grown by attaching each new vertex to a uniformly chosen unsaturated vertex."""
    deg = [0] * n
    edges = []
    open_ = [0]
    for v in range(1, n):
        idx = int(rng.integers(len(open_)))
        u = open_[idx]
        edges.append((u, v))
        deg[u] += 1
        deg[v] += 1
        if deg[u] >= max_degree:
            open_[idx] = open_[-1]
            open_.pop()
        if max_degree > 1:
            open_.append(v)
    return build_graph(n, edges)


# --- edge-list text format ---------------------------------------------------

def format_edge_list(G: Graph) -> str:
    edges = G.edges
    lines = [f"{G.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list must start with a line 'n m'")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for row in body:
        if len(row) != 2:
            raise ValueError(f"bad edge line: {' '.join(row)!r}")
        edges.append((int(row[0]), int(row[1])))
    return build_graph(n, edges)


def write_edge_list(G: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(G))


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())
