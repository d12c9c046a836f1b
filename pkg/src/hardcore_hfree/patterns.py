"""Induced-subgraph search and the empirical harnesses for the claw lemmas."""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .graph import (
    CLAW,
    E_GRAPH,
    FORK,
    SKEW_STAR,
    Graph,
    SubdividedClawSpec,
    bipartition,
    gen_subdivided_claw,
    is_connected,
    vol,
)

__all__ = [
    "Embedding",
    "PatternTooLarge",
    "Verdict",
    "find_induced",
    "is_induced_embedding",
    "is_subdivided_claw_free",
    "named_pattern",
    "verify_claw_to_s11t",
    "verify_e_to_s12t",
]

PATTERN_CAP = 12

NAMED = {"claw": CLAW, "fork": FORK, "e": E_GRAPH, "skew_star": SKEW_STAR, "skewstar": SKEW_STAR}


class PatternTooLarge(ValueError):
    pass


class Verdict(enum.Enum):
    PREMISE_FAILED = "premise_failed"
    CONFIRMED = "confirmed"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"


@dataclass(frozen=True)
class Embedding:
    """``mapping[a]`` is the host vertex playing pattern vertex ``a``."""

    mapping: tuple[int, ...]

    def __getitem__(self, a: int) -> int:
        return self.mapping[a]

    def __len__(self) -> int:
        return len(self.mapping)


def named_pattern(name: str) -> Graph:
    """Pattern graph for a name (``claw``, ``fork``, ``e``, ``skew_star``) or an ``i,j,k`` triple."""
    key = name.strip().lower()
    if key in NAMED:
        return gen_subdivided_claw(NAMED[key])
    return gen_subdivided_claw(SubdividedClawSpec.parse(key))


def is_induced_embedding(host: Graph, pattern: Graph, emb: Embedding) -> bool:
    m = emb.mapping
    if len(m) != pattern.n or len(set(m)) != len(m):
        return False
    return all(pattern.has_edge(a, b) == host.has_edge(m[a], m[b])
               for a in range(pattern.n) for b in range(a + 1, pattern.n))


def _search_order(pattern: Graph) -> list[int]:
    # BFS per component from its highest-degree vertex, so within a component
    # every later vertex has a placed neighbour
    order: list[int] = []
    seen: set[int] = set()
    while len(order) < pattern.n:
        start = max((a for a in range(pattern.n) if a not in seen),
                    key=lambda a: (pattern.degree(a), -a))
        order.append(start)
        seen.add(start)
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b in sorted(pattern.adjacency[a], key=lambda x: (-pattern.degree(x), x)):
                if b not in seen:
                    seen.add(b)
                    order.append(b)
                    queue.append(b)
    return order


def find_induced(host: Graph, pattern: Graph, cap: int = PATTERN_CAP) -> Embedding | None:
    """First induced copy of ``pattern`` in ``host`` in lexicographic search order.

    Pattern vertices are placed in BFS order; candidates for each are tried in
    increasing host id, pruned by degree and by exact adjacency/non-adjacency to
    the vertices already placed.
    """
    if pattern.n > cap:
        raise PatternTooLarge(f"pattern has {pattern.n} vertices, cap is {cap}")
    if pattern.n == 0:
        return Embedding(())
    if pattern.n > host.n:
        return None

    order = _search_order(pattern)
    pos = {a: i for i, a in enumerate(order)}
    # for step i: an earlier pattern neighbour (anchor), and earlier nbr / non-nbr steps
    anchor = [min((pos[b] for b in pattern.adjacency[order[i]] if pos[b] < i), default=None)
              for i in range(len(order))]
    earlier_nbrs = [[pos[b] for b in pattern.adjacency[a] if pos[b] < pos[a]] for a in order]
    earlier_non = [[j for j in range(i) if not pattern.has_edge(order[i], order[j])]
                   for i in range(len(order))]
    need_deg = [pattern.degree(a) for a in order]
    hmask = host.masks
    hdeg = [len(a) for a in host.adjacency]
    k = len(order)
    img = [0] * k

    def extend(i: int, used: int) -> bool:
        if i == k:
            return True
        if anchor[i] is None:
            candidates = range(host.n)
        else:
            candidates = host.adjacency[img[anchor[i]]]
        nbr_mask = 0
        for j in earlier_nbrs[i]:
            nbr_mask |= 1 << img[j]
        non_mask = 0
        for j in earlier_non[i]:
            non_mask |= 1 << img[j]
        for c in candidates:
            if used >> c & 1 or hdeg[c] < need_deg[i]:
                continue
            m = hmask[c]
            if m & nbr_mask != nbr_mask or m & non_mask:
                continue
            img[i] = c
            if extend(i + 1, used | 1 << c):
                return True
        return False

    if not extend(0, 0):
        return None
    mapping = [0] * pattern.n
    for i, a in enumerate(order):
        mapping[a] = img[i]
    return Embedding(tuple(mapping))


def is_subdivided_claw_free(G: Graph, spec: SubdividedClawSpec) -> bool:
    return find_induced(G, gen_subdivided_claw(spec)) is None


def _verify(G: Graph, premise_pattern: SubdividedClawSpec, conclusion: SubdividedClawSpec,
            radius: int, need_bipartite: bool) -> Verdict:
    if G.n == 0 or not is_connected(G):
        return Verdict.PREMISE_FAILED
    if need_bipartite and bipartition(G) is None:
        return Verdict.PREMISE_FAILED
    if G.max_degree < 3 or G.n <= vol(G.max_degree, radius):
        return Verdict.PREMISE_FAILED
    if is_subdivided_claw_free(G, premise_pattern):
        return Verdict.PREMISE_FAILED
    if is_subdivided_claw_free(G, conclusion):
        return Verdict.COUNTEREXAMPLE
    return Verdict.CONFIRMED


def verify_claw_to_s11t(G: Graph, t: int) -> Verdict:
    """Large connected graph with an induced claw must contain an induced S_{1,1,t}."""
    if t < 2:
        raise ValueError("t must be >= 2")
    return _verify(G, CLAW, SubdividedClawSpec(1, 1, t), t + 1, need_bipartite=False)


def verify_e_to_s12t(G: Graph, t: int) -> Verdict:
    """Large connected bipartite graph with an induced E must contain an induced S_{1,2,t}."""
    if t < 3:
        raise ValueError("t must be >= 3")
    return _verify(G, E_GRAPH, SubdividedClawSpec(1, 2, t), t + 2, need_bipartite=True)
