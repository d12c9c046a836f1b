"""Exact computation for the hard-core model on small graphs.

Everything here goes through explicit enumeration of independent sets.  When
the fugacity is an ``int`` or :class:`~fractions.Fraction` results are exact
rationals (distributions only while they have at most ``EXACT_ATOM_CAP``
atoms); a ``float`` fugacity gives double precision throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from .graph import Graph, VertexSubset, induced_subgraph

__all__ = [
    "CapExceeded",
    "HardCoreModel",
    "Distribution",
    "TransitionMatrix",
    "independent_set_masks",
    "enumerate_independent_sets",
    "independence_polynomial",
    "partition_function",
    "hardcore_distribution",
    "pinned_distribution",
    "marginal",
    "marginals",
    "tv_distance",
    "transition_matrix",
    "worst_case_tv",
    "exact_mixing_time",
    "exact_w1_hamming",
]

ENUMERATION_CAP = 1 << 22
EXACT_ATOM_CAP = 1 << 12
MIXING_STATE_CAP = 4096
W1_ATOM_CAP = 2000
FLOAT_TOL = 1e-9


class CapExceeded(RuntimeError):
    """An exact computation would exceed its configured size cap."""


Number = "int | Fraction | float"


@dataclass(frozen=True)
class HardCoreModel:
    graph: Graph
    lam: int | Fraction | float

    def __post_init__(self):
        if isinstance(self.lam, bool) or not self.lam > 0:
            raise ValueError("fugacity must be positive")

    @property
    def rational(self) -> bool:
        return isinstance(self.lam, Rational)

    @property
    def occupation_prob(self):
        """lambda / (1 + lambda), the add probability of a single-site update."""
        if self.rational:
            return Fraction(self.lam) / (1 + Fraction(self.lam))
        return self.lam / (1.0 + self.lam)


def _popcount(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return np.array([int(x).bit_count() for x in arr], dtype=np.int64)
    return np.bitwise_count(arr).astype(np.int64)


def independent_set_masks(G: Graph, cap: int = ENUMERATION_CAP) -> np.ndarray:
    """All independent sets as sorted bitmasks (``uint64``, or ``object`` beyond 63 vertices)."""
    wide = G.n > 63
    dtype = object if wide else np.uint64
    sets = np.zeros(1, dtype=dtype)
    for v in range(G.n):
        lower = G.masks[v] & ((1 << v) - 1)
        if wide:
            ok = np.array([int(s) & lower == 0 for s in sets], dtype=bool)
            ext = np.array([int(s) | 1 << v for s in sets[ok]], dtype=object)
        else:
            ok = (sets & np.uint64(lower)) == 0
            ext = sets[ok] | np.uint64(1 << v)
        if len(sets) + len(ext) > cap:
            raise CapExceeded(f"more than {cap} independent sets")
        sets = np.concatenate([sets, ext])
    sets.sort()
    return sets


def enumerate_independent_sets(G: Graph, cap: int = ENUMERATION_CAP) -> list[VertexSubset]:
    return [VertexSubset(int(m), G.n) for m in independent_set_masks(G, cap)]


def independence_polynomial(G: Graph, cap: int = ENUMERATION_CAP) -> list[int]:
    """Coefficients ``c[k]`` = number of independent sets of size ``k``."""
    sizes = _popcount(independent_set_masks(G, cap))
    return [int(c) for c in np.bincount(sizes, minlength=1)]


def _eval_poly(coeffs: Sequence[int], lam):
    if isinstance(lam, Rational):
        lam = Fraction(lam)
        total = sum((c * lam ** k for k, c in enumerate(coeffs)), Fraction(0))
        return total.numerator if total.denominator == 1 else total
    return float(sum(c * lam ** k for k, c in enumerate(coeffs)))


def partition_function(M: HardCoreModel, cap: int = ENUMERATION_CAP):
    """Sum of lambda^|I| over all independent sets (exact for rational lambda)."""
    return _eval_poly(independence_polynomial(M.graph, cap), M.lam)


@dataclass(frozen=True)
class Distribution:
    """Finitely supported law on subsets of ``0..n-1``; atoms sorted by bitmask."""

    n: int
    masks: tuple[int, ...]
    probs: tuple

    def __post_init__(self):
        if len(self.masks) != len(self.probs):
            raise ValueError("masks and probs differ in length")
        if len(set(self.masks)) != len(self.masks):
            raise ValueError("atoms must be distinct")

    @classmethod
    def from_weights(cls, n: int, weights: Mapping[int, object]) -> Distribution:
        items = sorted((m, w) for m, w in weights.items() if w != 0)
        total = sum(w for _, w in items)
        return cls(n, tuple(m for m, _ in items), tuple(w / total for _, w in items))

    @classmethod
    def point_mass(cls, subset: VertexSubset) -> Distribution:
        one = Fraction(1)
        return cls(subset.universe_size, (subset.bits,), (one,))

    @property
    def exact(self) -> bool:
        return all(isinstance(p, Rational) for p in self.probs)

    @property
    def atoms(self) -> list[tuple[VertexSubset, object]]:
        return [(VertexSubset(m, self.n), p) for m, p in zip(self.masks, self.probs)]

    def as_dict(self) -> dict[int, object]:
        return dict(zip(self.masks, self.probs))

    def prob(self, subset: VertexSubset | int):
        key = subset.bits if isinstance(subset, VertexSubset) else subset
        return self.as_dict().get(key, 0)

    def __len__(self) -> int:
        return len(self.masks)

    def to_float(self) -> Distribution:
        return Distribution(self.n, self.masks, tuple(float(p) for p in self.probs))


def _weights(lam, sizes: np.ndarray, exact: bool):
    if exact:
        lam = Fraction(lam)
        powers = {int(k): lam ** int(k) for k in np.unique(sizes)}
        return [powers[int(k)] for k in sizes]
    return list(np.power(float(lam), sizes.astype(float)))


def _use_exact(M: HardCoreModel, count: int, exact: bool | None) -> bool:
    if exact is None:
        return M.rational and count <= EXACT_ATOM_CAP
    if exact and not M.rational:
        raise ValueError("exact arithmetic needs a rational fugacity")
    return exact


def _distribution(n: int, masks: np.ndarray, lam, exact: bool) -> Distribution:
    sizes = _popcount(masks)
    w = _weights(lam, sizes, exact)
    total = sum(w, Fraction(0)) if exact else math.fsum(w)
    return Distribution(n, tuple(int(m) for m in masks), tuple(x / total for x in w))


def hardcore_distribution(M: HardCoreModel, exact: bool | None = None,
                          cap: int = ENUMERATION_CAP) -> Distribution:
    masks = independent_set_masks(M.graph, cap)
    return _distribution(M.graph.n, masks, M.lam, _use_exact(M, len(masks), exact))


def _check_pins(G: Graph, pins: Mapping[int, int]) -> tuple[int, int]:
    ones = zeros = 0
    for v, val in pins.items():
        if not 0 <= v < G.n:
            raise ValueError(f"pinned vertex {v} out of range")
        if val not in (0, 1):
            raise ValueError(f"pin value for {v} must be 0 or 1")
        if val:
            ones |= 1 << v
        else:
            zeros |= 1 << v
    if not G.is_independent(ones):
        raise ValueError("vertices pinned to 1 must be pairwise non-adjacent")
    return ones, zeros


def pinned_reduction(G: Graph, pins: Mapping[int, int]) -> tuple[Graph, list[int], int]:
    """Graph left after deleting 0-pinned vertices and closed neighbourhoods of 1-pinned ones.

    Returns ``(H, old_ids, ones_mask)``: any independent set ``J`` of ``H``
    extends to ``ones_mask | J`` (mapped through ``old_ids``) in ``G``.
    """
    ones, zeros = _check_pins(G, pins)
    removed = zeros | ones | G.neighborhood_mask(ones)
    keep = [v for v in range(G.n) if not removed >> v & 1]
    H, old_ids = induced_subgraph(G, keep)
    return H, old_ids, ones


def _lift(masks: np.ndarray, old_ids: Sequence[int], ones: int) -> list[int]:
    out = []
    for m in masks:
        m = int(m)
        full = ones
        i = 0
        while m:
            if m & 1:
                full |= 1 << old_ids[i]
            m >>= 1
            i += 1
        out.append(full)
    return out


def pinned_distribution(M: HardCoreModel, pins: Mapping[int, int], exact: bool | None = None,
                        cap: int = ENUMERATION_CAP) -> Distribution:
    """Hard-core law conditioned on the pins, built by deleting pinned vertices.

    Pinning to 0 deletes the vertex; pinning to 1 deletes it with its
    neighbours, and the 1-pinned vertices are added back to every atom.
    """
    H, old_ids, ones = pinned_reduction(M.graph, pins)
    sub = independent_set_masks(H, cap)
    full = np.array(sorted(_lift(sub, old_ids, ones)), dtype=object)
    # weights only depend on the free part, the pinned ones are a common factor
    sizes = _popcount(full) - ones.bit_count()
    use = _use_exact(M, len(full), exact)
    w = _weights(M.lam, sizes, use)
    total = sum(w, Fraction(0)) if use else math.fsum(w)
    return Distribution(M.graph.n, tuple(int(m) for m in full), tuple(x / total for x in w))


def marginals(M: HardCoreModel, cap: int = ENUMERATION_CAP) -> list:
    """P(v in I) for every vertex, exact for rational lambda."""
    masks = independent_set_masks(M.graph, cap)
    sizes = _popcount(masks)
    Z_coeffs = np.bincount(sizes, minlength=1)
    Z = _eval_poly([int(c) for c in Z_coeffs], M.lam)
    out = []
    for v in range(M.graph.n):
        if masks.dtype == object:
            has = np.array([int(m) >> v & 1 for m in masks], dtype=bool)
        else:
            has = (masks >> np.uint64(v)) & np.uint64(1) == 1
        num = _eval_poly([int(c) for c in np.bincount(sizes[has], minlength=1)], M.lam)
        out.append(Fraction(num) / Z if M.rational else num / Z)
    return out


def marginal(M: HardCoreModel, v: int, cap: int = ENUMERATION_CAP):
    if not 0 <= v < M.graph.n:
        raise ValueError(f"vertex {v} out of range")
    return marginals(M, cap)[v]


def tv_distance(mu: Distribution, nu: Distribution):
    """Half the l1 distance, over the union of supports."""
    if mu.n != nu.n:
        raise ValueError("universe mismatch")
    a, b = mu.as_dict(), nu.as_dict()
    total = sum((abs(a.get(m, 0) - b.get(m, 0)) for m in set(a) | set(b)), Fraction(0))
    return total / 2


@dataclass(frozen=True)
class TransitionMatrix:
    """One step of single-site Glauber dynamics on the independent sets of a graph."""

    states: tuple[int, ...]
    matrix: sp.csr_matrix
    rows: tuple[dict[int, object], ...] | None = None

    @property
    def size(self) -> int:
        return len(self.states)

    def index(self, subset: VertexSubset | int) -> int:
        key = subset.bits if isinstance(subset, VertexSubset) else subset
        i = int(np.searchsorted(np.array(self.states, dtype=object), key))
        if i >= len(self.states) or self.states[i] != key:
            raise KeyError(key)
        return i


def _glauber_entries(G: Graph, states: np.ndarray, lam, exact: bool):
    n = G.n
    lam_ = Fraction(lam) if exact else float(lam)
    p_add = lam_ / (1 + lam_) / n
    p_del = 1 / (1 + lam_) / n
    stay_blocked = Fraction(1, n) if exact else 1.0 / n
    S = states.astype(object) if exact or states.dtype == object else states
    index = {int(m): i for i, m in enumerate(states)}
    rows: list[dict[int, object]] = [dict() for _ in range(len(states))]
    for i, s in enumerate(S):
        s = int(s)
        row = rows[i]
        for v in range(n):
            bit = 1 << v
            if G.masks[v] & s:
                row[i] = row.get(i, 0) + stay_blocked
                continue
            j_in = index[s | bit]
            j_out = index[s & ~bit]
            row[j_in] = row.get(j_in, 0) + p_add
            row[j_out] = row.get(j_out, 0) + p_del
    return rows


def transition_matrix(M: HardCoreModel, cap: int = MIXING_STATE_CAP,
                      exact: bool | None = None) -> TransitionMatrix:
    """Exact one-step kernel: uniform vertex, then add w.p. lambda/(1+lambda) if unblocked, else remove.

    ``rows`` holds exact rational rows when exact arithmetic is in use.
    """
    G = M.graph
    states = independent_set_masks(G, cap)
    if G.n == 0:
        one = Fraction(1) if M.rational else 1.0
        return TransitionMatrix((0,), sp.csr_matrix(np.ones((1, 1))), ({0: one},))
    use = _use_exact(M, len(states), exact)
    rows = _glauber_entries(G, states, M.lam, use)
    r_idx, c_idx, vals = [], [], []
    for i, row in enumerate(rows):
        for j, p in row.items():
            r_idx.append(i)
            c_idx.append(j)
            vals.append(float(p))
    mat = sp.csr_matrix((vals, (r_idx, c_idx)), shape=(len(states), len(states)))
    return TransitionMatrix(tuple(int(s) for s in states), mat, tuple(rows) if use else None)


def _stationary_vector(M: HardCoreModel, states: Sequence[int]) -> np.ndarray:
    sizes = np.array([s.bit_count() for s in states], dtype=float)
    logw = sizes * math.log(float(M.lam))
    w = np.exp(logw - logw.max())
    return w / w.sum()


def _worst_tv(Pt: np.ndarray, pi: np.ndarray) -> float:
    return float(0.5 * np.abs(Pt - pi[None, :]).sum(axis=1).max())


class _Powers:
    """P, P^2, P^4, ... computed lazily as dense arrays."""

    def __init__(self, P: np.ndarray):
        self.cache = [P]

    def __getitem__(self, j: int) -> np.ndarray:
        while len(self.cache) <= j:
            last = self.cache[-1]
            self.cache.append(last @ last)
        return self.cache[j]


def _matrix_power(powers: _Powers, t: int, size: int) -> np.ndarray:
    out = np.eye(size)
    j = 0
    while t:
        if t & 1:
            out = out @ powers[j]
        t >>= 1
        j += 1
    return out


def _setup_mixing(M: HardCoreModel, cap: int):
    T = transition_matrix(M, cap=cap, exact=False)
    return _Powers(T.matrix.toarray()), _stationary_vector(M, T.states), T.size


def worst_case_tv(M: HardCoreModel, times: Iterable[int], cap: int = MIXING_STATE_CAP) -> list[float]:
    """d(t) = max over starting independent sets of the TV distance to stationarity."""
    powers, pi, size = _setup_mixing(M, cap)
    return [_worst_tv(_matrix_power(powers, t, size), pi) for t in times]


def exact_mixing_time(M: HardCoreModel, cap: int = MIXING_STATE_CAP, max_log2_steps: int = 48) -> int:
    """Smallest t with d(t) <= 1/4.

    Uses that d(t) is non-increasing: find the largest t with d(t) > 1/4 by
    binary lifting over the powers P^(2^j).
    """
    powers, pi, size = _setup_mixing(M, cap)
    if _worst_tv(np.eye(size), pi) <= 0.25:
        return 0
    K = 0
    while _worst_tv(powers[K], pi) > 0.25:
        K += 1
        if K > max_log2_steps:
            raise RuntimeError("no convergence within the step budget")
    t = 0
    current = np.eye(size)
    for j in range(K - 1, -1, -1):
        candidate = current @ powers[j]
        if _worst_tv(candidate, pi) > 0.25:
            current = candidate
            t += 1 << j
    return t + 1


def _cost_matrix(a: Sequence[int], b: Sequence[int]) -> np.ndarray:
    if max(list(a) + list(b), default=0) < 1 << 63:
        A = np.array(a, dtype=np.uint64)[:, None]
        B = np.array(b, dtype=np.uint64)[None, :]
        return np.bitwise_count(A ^ B).astype(np.int64)
    return np.array([[(x ^ y).bit_count() for y in b] for x in a], dtype=np.int64)


def _w1_exact(mu: Distribution, nu: Distribution, cost: np.ndarray) -> Fraction:
    import networkx as nx

    denom = math.lcm(*(Fraction(p).denominator for p in mu.probs + nu.probs))
    supply = [int(Fraction(p) * denom) for p in mu.probs]
    demand = [int(Fraction(p) * denom) for p in nu.probs]
    g = nx.DiGraph()
    for i, s in enumerate(supply):
        g.add_node(("a", i), demand=-s)
    for j, d in enumerate(demand):
        g.add_node(("b", j), demand=d)
    for i in range(len(supply)):
        for j in range(len(demand)):
            g.add_edge(("a", i), ("b", j), weight=int(cost[i, j]))
    flow_cost, _ = nx.network_simplex(g)
    return Fraction(flow_cost, denom)


def _w1_float(mu: Distribution, nu: Distribution, cost: np.ndarray) -> float:
    m, k = cost.shape
    a = np.array([float(p) for p in mu.probs])
    b = np.array([float(p) for p in nu.probs])
    rows = sp.kron(sp.eye(m), np.ones((1, k)))
    cols = sp.kron(np.ones((1, m)), sp.eye(k))
    A_eq = sp.vstack([rows, cols]).tocsr()
    b_eq = np.concatenate([a, b])
    res = linprog(cost.ravel().astype(float), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    if res.status != 0:
        raise RuntimeError(f"transport LP failed: {res.message}")
    return float(res.fun)


def exact_w1_hamming(mu: Distribution, nu: Distribution, cap: int = W1_ATOM_CAP, exact: bool | None = None):
    """Wasserstein-1 distance under Hamming cost, by solving the transport problem.

    Rational inputs go through an integer network-simplex solve and return a
    :class:`Fraction`; float inputs go through a sparse LP.
    """
    if mu.n != nu.n:
        raise ValueError("universe mismatch")
    if len(mu) + len(nu) > cap:
        raise CapExceeded(f"combined support {len(mu) + len(nu)} exceeds {cap}")
    cost = _cost_matrix(mu.masks, nu.masks)
    if exact is None:
        exact = mu.exact and nu.exact
    if exact:
        return _w1_exact(mu, nu, cost)
    return _w1_float(mu, nu, cost)
