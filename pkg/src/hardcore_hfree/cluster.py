"""Red/blue cluster coupling between the two single-vertex pinnings.

A red set ``R`` is drawn with ``v`` pinned to 1, an independent blue set ``B``
with ``v`` pinned to 0.  The cluster is grown breadth first from ``v``; the
blue set is then overwritten by the red one outside the cluster.  The output
pair differs exactly on the cluster.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Literal

import numpy as np

from .exact import (
    CapExceeded,
    Distribution,
    HardCoreModel,
    independent_set_masks,
    pinned_distribution,
    pinned_reduction,
)
from .graph import Graph, VertexSubset, vol
from .sim import RngStream, sample_stationary_batch

__all__ = [
    "Cluster",
    "CoupledPair",
    "ClusterStatistics",
    "W1Estimate",
    "grow_cluster",
    "couple",
    "exact_coupling_pushforward",
    "exact_cluster_size_mean",
    "cluster_statistics",
    "check_layer_bound",
    "layer_bound",
    "w1_upper_bound",
]

Sampler = Literal["exact", "chain", "auto"]
EXACT_SAMPLER_CAP = 1 << 16
PAIR_CAP = 1 << 20


@dataclass(frozen=True)
class Cluster:
    root: int
    layers: tuple[VertexSubset, ...]
    vertices: VertexSubset

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    @property
    def widths(self) -> list[int]:
        return [len(layer) for layer in self.layers]

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class CoupledPair:
    red: VertexSubset
    blue: VertexSubset
    cluster: Cluster


def _layers(masks: tuple[int, ...], n: int, red: int, blue: int, v: int) -> list[int]:
    layer = 1 << v
    unprocessed = ((1 << n) - 1) & ~layer
    out = [layer]
    depth = 0
    while layer:
        reach = 0
        m = layer
        while m:
            low = m & -m
            reach |= masks[low.bit_length() - 1]
            m ^= low
        frontier = unprocessed & reach & ~layer
        layer = frontier & (blue if depth % 2 == 0 else red)
        unprocessed &= ~frontier
        depth += 1
        if layer:
            out.append(layer)
    return out


def grow_cluster(G: Graph, R: VertexSubset, B: VertexSubset, v: int) -> Cluster:
    """Layered BFS from ``v``.

    Each round takes the unprocessed boundary of the current layer, keeps its
    blue vertices at even depth and its red vertices at odd depth, and marks
    the whole boundary processed whether coloured or not.  Stops at the first
    empty layer.
    """
    if v not in R:
        raise ValueError("root must be in the red set")
    if not (G.is_independent(R) and G.is_independent(B)):
        raise ValueError("red and blue sets must be independent")
    layers = _layers(G.masks, G.n, R.bits, B.bits, v)
    union = 0
    for layer in layers:
        union |= layer
    return Cluster(v, tuple(VertexSubset(m, G.n) for m in layers), VertexSubset(union, G.n))


def _rewrite(red: int, blue: int, cluster: int) -> int:
    return (blue & cluster) | (red & ~cluster)


class _ExactPinnedSampler:
    def __init__(self, M: HardCoreModel, v: int, cap: int):
        self.red = pinned_distribution(M, {v: 1}, exact=False, cap=cap)
        self.blue = pinned_distribution(M, {v: 0}, exact=False, cap=cap)
        self._pr = np.array(self.red.probs, dtype=float)
        self._pb = np.array(self.blue.probs, dtype=float)

    def draw(self, rng: RngStream, size: int) -> tuple[list[int], list[int]]:
        gen = rng.generator
        ri = gen.choice(len(self._pr), size=size, p=self._pr)
        bi = gen.choice(len(self._pb), size=size, p=self._pb)
        return [self.red.masks[i] for i in ri], [self.blue.masks[i] for i in bi]


class _ChainPinnedSampler:
    def __init__(self, M: HardCoreModel, v: int, burn_in: int | None):
        self.M, self.v, self.burn_in = M, v, burn_in

    def draw(self, rng: RngStream, size: int) -> tuple[list[int], list[int]]:
        red = sample_stationary_batch(self.M, {self.v: 1}, self.burn_in, size, rng)
        blue = sample_stationary_batch(self.M, {self.v: 0}, self.burn_in, size, rng)
        return red, blue


def _resolve(M: HardCoreModel, v: int, sampler: Sampler, burn_in: int | None, cap: int):
    if not 0 <= v < M.graph.n:
        raise ValueError(f"vertex {v} out of range")
    if sampler == "auto":
        try:
            return _ExactPinnedSampler(M, v, cap)
        except CapExceeded:
            return _ChainPinnedSampler(M, v, burn_in)
    if sampler == "exact":
        return _ExactPinnedSampler(M, v, cap)
    if sampler == "chain":
        return _ChainPinnedSampler(M, v, burn_in)
    raise ValueError(f"unknown sampler {sampler!r}")


def couple(M: HardCoreModel, v: int, rng: RngStream, sampler: Sampler = "exact",
           burn_in: int | None = None, cap: int = EXACT_SAMPLER_CAP) -> CoupledPair:
    """One draw of the coupling; the red set is returned untouched."""
    src = _resolve(M, v, sampler, burn_in, cap)
    (red,), (blue,) = src.draw(rng, 1)
    return _pair(M.graph, red, blue, v)


def _pair(G: Graph, red: int, blue: int, v: int) -> CoupledPair:
    cluster = grow_cluster(G, VertexSubset(red, G.n), VertexSubset(blue, G.n), v)
    new_blue = _rewrite(red, blue, cluster.vertices.bits)
    return CoupledPair(VertexSubset(red, G.n), VertexSubset(new_blue, G.n), cluster)


@dataclass(frozen=True)
class _PairTable:
    """Every (red, blue) support pair of the two pinnings with its deterministic outcome."""

    size_sum: np.ndarray      # |R| + |B|
    out_index: np.ndarray     # index into outputs
    cluster_size: np.ndarray
    max_width: np.ndarray
    outputs: tuple[int, ...]
    red_sizes: np.ndarray
    blue_sizes: np.ndarray


@lru_cache(maxsize=64)
def _pair_table(G: Graph, v: int, cap: int) -> _PairTable:
    def support(pin: int) -> list[int]:
        H, old_ids, ones = pinned_reduction(G, {v: pin})
        sub = independent_set_masks(H, cap)
        out = []
        for m in sub:
            m = int(m)
            full = ones
            while m:
                low = m & -m
                full |= 1 << old_ids[low.bit_length() - 1]
                m ^= low
            out.append(full)
        return out

    reds, blues = support(1), support(0)
    if len(reds) * len(blues) > cap:
        raise CapExceeded(f"{len(reds) * len(blues)} support pairs exceed {cap}")
    out_ids: dict[int, int] = {}
    size_sum, out_index, csize, width = [], [], [], []
    for r in reds:
        rs = r.bit_count()
        for b in blues:
            layers = _layers(G.masks, G.n, r, b, v)
            c = 0
            for layer in layers:
                c |= layer
            out = _rewrite(r, b, c)
            size_sum.append(rs + b.bit_count())
            out_index.append(out_ids.setdefault(out, len(out_ids)))
            csize.append(c.bit_count())
            width.append(max(layer.bit_count() for layer in layers))
    return _PairTable(
        np.array(size_sum), np.array(out_index), np.array(csize), np.array(width),
        tuple(out_ids), np.array([r.bit_count() for r in reds]), np.array([b.bit_count() for b in blues]),
    )


def _eval(coeffs: np.ndarray, lam, exact: bool):
    if exact:
        lam = Fraction(lam)
        return sum((int(c) * lam ** k for k, c in enumerate(coeffs) if c), Fraction(0))
    return float(sum(float(c) * float(lam) ** k for k, c in enumerate(coeffs) if c))


def _poly(sizes: np.ndarray, lam, exact: bool):
    return _eval(np.bincount(sizes, minlength=1), lam, exact)


def _grouped(keys: np.ndarray, n_keys: int, sizes: np.ndarray) -> np.ndarray:
    """counts[key, k] = number of pairs with that key and |R| + |B| = k."""
    counts = np.zeros((n_keys, int(sizes.max()) + 1), dtype=np.int64)
    np.add.at(counts, (keys, sizes), 1)
    return counts


def exact_coupling_pushforward(M: HardCoreModel, v: int, cap: int = PAIR_CAP,
                               exact: bool | None = None) -> Distribution:
    """Law of the rewritten blue set, summed exactly over all (red, blue) pairs."""
    table = _pair_table(M.graph, v, cap)
    exact = M.rational if exact is None else exact
    norm = _poly(table.red_sizes, M.lam, exact) * _poly(table.blue_sizes, M.lam, exact)
    counts = _grouped(table.out_index, len(table.outputs), table.size_sum)
    weights = {out: _eval(counts[idx], M.lam, exact) / norm for idx, out in enumerate(table.outputs)}
    items = sorted(weights.items())
    return Distribution(M.graph.n, tuple(m for m, _ in items), tuple(p for _, p in items))


def exact_cluster_size_mean(M: HardCoreModel, v: int, cap: int = PAIR_CAP,
                            exact: bool | None = None):
    """E|C| under exact sampling of both pinnings; equals the coupling's mean Hamming distance."""
    table = _pair_table(M.graph, v, cap)
    exact = M.rational if exact is None else exact
    norm = _poly(table.red_sizes, M.lam, exact) * _poly(table.blue_sizes, M.lam, exact)
    counts = _grouped(table.cluster_size, int(table.cluster_size.max()) + 1, table.size_sum)
    total = sum((c * _eval(counts[c], M.lam, exact) for c in range(len(counts)) if counts[c].any()),
                Fraction(0) if exact else 0.0)
    return total / norm


@dataclass(frozen=True)
class ClusterStatistics:
    replicas: int
    mean_size: float
    stderr: float
    max_size: int
    max_layer_width: int
    layer_width_histogram: dict[int, int] = field(default_factory=dict)
    size_histogram: dict[int, int] = field(default_factory=dict)


def cluster_statistics(M: HardCoreModel, v: int, replicas: int, rng: RngStream,
                       sampler: Sampler = "auto", burn_in: int | None = None,
                       cap: int = EXACT_SAMPLER_CAP) -> ClusterStatistics:
    """Cluster sizes and layer widths over independent coupling replicas."""
    if replicas < 1:
        raise ValueError("replicas must be >= 1")
    src = _resolve(M, v, sampler, burn_in, cap)
    reds, blues = src.draw(rng, replicas)
    G = M.graph
    sizes = np.empty(replicas, dtype=np.int64)
    widths: Counter[int] = Counter()
    max_width = 0
    for i, (r, b) in enumerate(zip(reds, blues)):
        layers = _layers(G.masks, G.n, r, b, v)
        size = 0
        for layer in layers:
            w = layer.bit_count()
            widths[w] += 1
            size += w
            max_width = max(max_width, w)
        sizes[i] = size
    stderr = float(sizes.std(ddof=1) / math.sqrt(replicas)) if replicas > 1 else 0.0
    return ClusterStatistics(
        replicas=replicas,
        mean_size=float(sizes.mean()),
        stderr=stderr,
        max_size=int(sizes.max()),
        max_layer_width=max_width,
        layer_width_histogram=dict(sorted(widths.items())),
        size_histogram={int(k): int(c) for k, c in zip(*np.unique(sizes, return_counts=True))},
    )


def layer_bound(delta: int, t: int) -> int:
    """2 vol(max(delta, 3), 2t); graphs of degree below 3 are measured against delta = 3."""
    return 2 * vol(max(delta, 3), 2 * t)


def check_layer_bound(G: Graph, t: int, observed: Cluster) -> bool:
    """Every layer of ``observed`` has at most 2 vol(delta, 2t) vertices.

    The caller is responsible for ``G`` being S_{t,t,t}-free.
    """
    if t < 2:
        raise ValueError("t must be >= 2")
    bound = layer_bound(G.max_degree, t)
    return all(w <= bound for w in observed.widths)


@dataclass(frozen=True)
class W1Estimate:
    value: float | Fraction
    stderr: float
    exact: bool


def w1_upper_bound(M: HardCoreModel, v: int, replicas: int = 0, rng: RngStream | None = None,
                   mode: Literal["exact", "chain", "sampled"] = "exact",
                   burn_in: int | None = None) -> W1Estimate:
    """Mean Hamming distance of the coupled pair, E|C|, an upper bound on W1 between the pinnings.

    ``exact`` sums over all support pairs; ``sampled`` and ``chain`` average
    ``replicas`` draws using exact or Glauber samplers respectively.
    """
    if mode == "exact":
        return W1Estimate(exact_cluster_size_mean(M, v), 0.0, True)
    if replicas < 1 or rng is None:
        raise ValueError("sampled estimates need replicas >= 1 and an rng")
    stats = cluster_statistics(M, v, replicas, rng, "exact" if mode == "sampled" else "chain", burn_in)
    return W1Estimate(stats.mean_size, stats.stderr, False)
