"""Stretched cubic bipartite expanders and their balance bottleneck.

The stretched graph replaces each base edge by a path with ``2*ell`` internal
vertices.  Independent sets are grouped by how many original ("branch")
vertices they occupy on each side; the weight of each group is computed
exactly by summing over branch patterns and multiplying per-edge transfer
weights for the internal path vertices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .exact import CapExceeded
from .graph import (
    Graph,
    VertexSubset,
    bipartition,
    expansion_constant,
    gen_random_cubic_bipartite,
    stretch,
)

__all__ = [
    "TorpidInstance",
    "BalanceWeights",
    "ConductanceReport",
    "build_instance",
    "find_expander",
    "path_transfer",
    "balance_weights",
    "deficient_path_count",
    "max_balanced_size",
    "cardinality_bound",
    "conductance_ratio",
    "paper_bound_log2",
    "threshold_log2_lambda",
]

BRANCH_CAP = 24


@dataclass(frozen=True)
class TorpidInstance:
    base: Graph
    stretched: Graph
    ell: int
    alpha: Fraction | None
    branch_map: dict[int, int]
    left: tuple[int, ...]
    right: tuple[int, ...]

    @property
    def n(self) -> int:
        """Part size of the base graph."""
        return len(self.left)


def build_instance(base: Graph, ell: int, left: Sequence[int] | None = None,
                   alpha: Fraction | None = None, verify: bool = True) -> TorpidInstance:
    """Stretch ``base`` by ``2*ell`` per edge and record its measured expansion constant."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if left is None:
        half = base.n // 2
        lmask = (1 << half) - 1
        if base.n % 2 == 0 and all(base.masks[u] & lmask == 0 for u in range(half)) \
                and all(base.masks[u] & ~lmask == 0 for u in range(half, base.n)):
            left = list(range(half))
        else:
            parts = bipartition(base)
            if parts is None:
                raise ValueError("base graph must be bipartite")
            left = parts[0]
    left = tuple(sorted(left))
    right = tuple(v for v in range(base.n) if v not in set(left))
    if verify and alpha is None and len(left) == len(right):
        alpha = expansion_constant(base, left)
    stretched, branch_map = stretch(base, 2 * ell)
    return TorpidInstance(base, stretched, ell, alpha, branch_map, left, right)


def find_expander(n: int, seed: int, tries: int = 200) -> tuple[Graph, Fraction]:
    """Best of ``tries`` random cubic bipartite graphs by measured expansion constant."""
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(tries):
        g = gen_random_cubic_bipartite(n, rng)
        a = expansion_constant(g)
        if a is not None and (best is None or a > best[1]):
            best = (g, a)
    if best is None:
        raise ValueError("no candidate had a testable expansion constant")
    return best


def path_transfer(ell: int, lam) -> list[list]:
    """Weights of the internal path of one stretched edge, by endpoint occupancy.

    ``P[a][b]`` sums lambda^|J| over independent sets J of the ``2*ell``
    internal vertices that avoid neighbours of occupied endpoints.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    lam = Fraction(lam) if isinstance(lam, Rational) else lam
    F = [1, 1 + lam]
    for _ in range(2, 2 * ell + 1):
        F.append(F[-1] + lam * F[-2])
    F = [_normalize(f) for f in F]
    return [[F[2 * ell], F[2 * ell - 1]], [F[2 * ell - 1], F[2 * ell - 2]]]


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass(frozen=True)
class _Patterns:
    """Per branch pattern: occupied counts on each side, deficiency, boundary-edge count."""

    k_left: np.ndarray
    k_right: np.ndarray
    deficient: np.ndarray
    single: np.ndarray


def _patterns(inst: TorpidInstance, cap: int) -> _Patterns:
    nb = inst.base.n
    if nb > cap:
        raise CapExceeded(f"{nb} branch vertices exceed the cap {cap}")
    pats = np.arange(1 << nb, dtype=np.int64)
    bit = [(pats >> v) & 1 for v in range(nb)]
    k_left = sum((bit[v] for v in inst.left), np.zeros_like(pats))
    k_right = sum((bit[v] for v in inst.right), np.zeros_like(pats))
    deficient = np.zeros_like(pats)
    single = np.zeros_like(pats)
    for u, v in inst.base.edges:
        both = bit[u] & bit[v]
        deficient += both
        single += bit[u] ^ bit[v]
    return _Patterns(k_left, k_right, deficient, single)


@dataclass(frozen=True)
class BalanceWeights:
    w_less: object
    w_eq: object
    w_greater: object
    table: dict[tuple[int, int], object] = field(default_factory=dict)

    @property
    def total(self):
        return self.w_less + self.w_eq + self.w_greater


def balance_weights(inst: TorpidInstance, lam, cap: int = BRANCH_CAP) -> BalanceWeights:
    """Total weight of independent sets with fewer / equal / more occupied left than right branch vertices.

    Sums over all branch patterns (branch vertices are pairwise non-adjacent in
    the stretched graph), each weighted by lambda^|pattern| times the path
    transfer weight of every base edge.  ``table`` is keyed by
    ``(|I & V_L|, |I & V_R|)``.
    """
    pats = _patterns(inst, cap)
    P = path_transfer(inst.ell, lam)
    m = inst.base.num_edges
    keys = np.stack([pats.k_left, pats.k_right, pats.single, pats.deficient], axis=1)
    uniq, counts = np.unique(keys, axis=0, return_counts=True)
    exact = isinstance(lam, Rational)
    lam_ = Fraction(lam) if exact else float(lam)
    table: dict[tuple[int, int], object] = {}
    for (kl, kr, c10, c11), cnt in zip(uniq.tolist(), counts.tolist()):
        c00 = m - c10 - c11
        w = cnt * lam_ ** (kl + kr) * P[0][0] ** c00 * P[1][0] ** c10 * P[1][1] ** c11
        table[(kl, kr)] = table.get((kl, kr), 0) + w
    table = {k: _normalize(v) for k, v in sorted(table.items())}
    zero = 0 if exact else 0.0
    less = sum((w for (kl, kr), w in table.items() if kl < kr), zero)
    eq = sum((w for (kl, kr), w in table.items() if kl == kr), zero)
    greater = sum((w for (kl, kr), w in table.items() if kl > kr), zero)
    return BalanceWeights(_normalize(less), _normalize(eq), _normalize(greater), table)


def deficient_path_count(inst: TorpidInstance, branch_pattern: VertexSubset) -> int:
    """Base edges with both endpoints in the pattern; their paths hold one fewer internal vertex."""
    if branch_pattern.universe_size != inst.base.n:
        raise ValueError("pattern must be a subset of the base vertices")
    s = branch_pattern.bits
    return sum(1 for u, v in inst.base.edges if s >> u & 1 and s >> v & 1)


def max_balanced_size(inst: TorpidInstance, cap: int = BRANCH_CAP) -> int:
    """Largest independent set of the stretched graph with equally many left and right branch vertices.

    For a fixed branch pattern S the best filling of the internal vertices
    has size ell per base edge minus one per deficient edge.
    """
    pats = _patterns(inst, cap)
    balanced = pats.k_left == pats.k_right
    sizes = pats.k_left + pats.k_right + inst.ell * inst.base.num_edges - pats.deficient
    return int(sizes[balanced].max())


def cardinality_bound(inst: TorpidInstance) -> float:
    """(3 ell + 2/(2+alpha)) n, the ceiling on balanced set sizes for a (1+alpha)-expander base."""
    if inst.alpha is None:
        raise ValueError("instance has no measured expansion constant")
    return (3 * inst.ell + 2 / (2 + float(inst.alpha))) * inst.n


def paper_bound_log2(ell: int, alpha, lam, n: int) -> float:
    """log2 of (2^(6 ell + 2) * lambda^(2/(2+alpha) - 1))^n."""
    return n * (6 * ell + 2 + (2 / (2 + float(alpha)) - 1) * _log2(lam))


def threshold_log2_lambda(ell: int, alpha, target: float = 0.5) -> float:
    """log2 lambda at which 2^(6 ell + 2) lambda^(2/(2+alpha) - 1) equals ``target``."""
    a = float(alpha)
    return (6 * ell + 2 - math.log2(target)) * (2 + a) / a


def _log2(x) -> float:
    if isinstance(x, Fraction):
        return math.log2(x.numerator) - math.log2(x.denominator)
    return math.log2(x)


@dataclass(frozen=True)
class ConductanceReport:
    n: int
    ell: int
    alpha: Fraction | None
    lam: object
    weights: BalanceWeights
    ratio: object
    log2_ratio: float
    log2_bound: float | None

    @property
    def bound(self) -> float | None:
        return None if self.log2_bound is None else 2.0 ** self.log2_bound

    @property
    def below_bound(self) -> bool:
        return self.log2_bound is not None and self.log2_ratio < self.log2_bound


def conductance_ratio(inst: TorpidInstance, lam, cap: int = BRANCH_CAP) -> ConductanceReport:
    """w_eq / min(w_less, w_greater), with the expansion-based bound at the measured alpha."""
    w = balance_weights(inst, lam, cap)
    lo = min(w.w_less, w.w_greater)
    if isinstance(lam, Rational):
        ratio = Fraction(w.w_eq) / Fraction(lo)
        ratio = _normalize(ratio)
        log2_ratio = _log2(Fraction(ratio))
    else:
        ratio = w.w_eq / lo
        log2_ratio = math.log2(ratio)
    log2_bound = None if inst.alpha is None else paper_bound_log2(inst.ell, inst.alpha, lam, inst.n)
    return ConductanceReport(inst.n, inst.ell, inst.alpha, lam, w, ratio, log2_ratio, log2_bound)
