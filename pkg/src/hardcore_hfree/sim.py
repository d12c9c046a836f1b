"""Monte Carlo engines: Glauber dynamics, the unconstrained product chain, and their monotone coupling."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .exact import HardCoreModel, pinned_reduction
from .graph import Graph, VertexSubset

__all__ = [
    "RngStream",
    "ChainState",
    "TrajectorySummary",
    "CoupledRun",
    "default_burn_in",
    "glauber_step",
    "product_chain_step",
    "run_glauber",
    "monotone_coupled_run",
    "sample_stationary",
    "sample_stationary_batch",
]

RNG_ALGORITHM = "philox4x64"


class RngStream:
    """Seeded Philox stream; ``spawn(i)`` derives the stream for replica ``i``."""

    algorithm = RNG_ALGORITHM

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.generator = np.random.Generator(np.random.Philox(np.random.SeedSequence(self.seed)))

    def spawn(self, replica: int) -> RngStream:
        derived = np.random.SeedSequence([self.seed, int(replica)]).generate_state(1, np.uint64)[0]
        return RngStream(int(derived))

    def vertex(self, n: int) -> int:
        return int(self.generator.integers(n))

    def uniform(self) -> float:
        return float(self.generator.random())

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, algorithm={self.algorithm!r})"


@dataclass(frozen=True)
class ChainState:
    occupancy: VertexSubset
    step_count: int = 0

    @classmethod
    def empty(cls, n: int) -> ChainState:
        return cls(VertexSubset.empty(n))


def default_burn_in(n: int) -> int:
    return 50 * n * math.ceil(math.log(n + 1)) if n else 0


def glauber_step(state: ChainState, M: HardCoreModel, rng: RngStream) -> ChainState:
    """One update: uniform vertex; if no neighbour is occupied, occupy w.p. lambda/(1+lambda) else vacate."""
    G = M.graph
    s = state.occupancy.bits
    v = rng.vertex(G.n)
    if G.masks[v] & s:
        return ChainState(state.occupancy, state.step_count + 1)
    if rng.uniform() < float(M.occupation_prob):
        s |= 1 << v
    else:
        s &= ~(1 << v)
    return ChainState(VertexSubset(s, G.n), state.step_count + 1)


def product_chain_step(state: ChainState, M: HardCoreModel, rng: RngStream) -> ChainState:
    """Same update with the neighbour test removed; its stationary law is the Bernoulli product."""
    n = M.graph.n
    s = state.occupancy.bits
    v = rng.vertex(n)
    if rng.uniform() < float(M.occupation_prob):
        s |= 1 << v
    else:
        s &= ~(1 << v)
    return ChainState(VertexSubset(s, n), state.step_count + 1)


@dataclass(frozen=True)
class TrajectorySummary:
    final: VertexSubset
    steps: int
    occupancy_fraction: np.ndarray  # per vertex, fraction of the steps 1..T it was occupied


def _draws(rng: RngStream, n: int, steps: int) -> tuple[np.ndarray, np.ndarray]:
    return rng.generator.integers(n, size=steps), rng.generator.random(steps)


def _tally(occupied_time: list[int], last_change: list[int], s: int, n: int, steps: int) -> np.ndarray:
    out = np.array(occupied_time, dtype=float)
    for v in range(n):
        if s >> v & 1:
            out[v] += steps - last_change[v]
    return out / steps if steps else out


def run_glauber(M: HardCoreModel, steps: int, rng: RngStream,
                start: VertexSubset | None = None) -> TrajectorySummary:
    """Run ``steps`` Glauber updates; one vertex draw and one uniform per step."""
    G = M.graph
    n = G.n
    s = start.bits if start is not None else 0
    if not G.is_independent(s):
        raise ValueError("start state is not an independent set")
    if n == 0 or steps == 0:
        return TrajectorySummary(VertexSubset(s, n), steps, np.zeros(n))
    verts, us = _draws(rng, n, steps)
    p = float(M.occupation_prob)
    masks = G.masks
    occ = [0] * n
    since = [0] * n
    for t in range(steps):
        v = int(verts[t])
        if masks[v] & s:
            continue
        was = s >> v & 1
        now = us[t] < p
        if was and not now:
            s &= ~(1 << v)
            occ[v] += t - since[v]
        elif now and not was:
            s |= 1 << v
            since[v] = t
    return TrajectorySummary(VertexSubset(s, n), steps, _tally(occ, since, s, n, steps))


@dataclass(frozen=True)
class CoupledRun:
    upper: TrajectorySummary
    lower: TrajectorySummary
    dominance_held: bool


def monotone_coupled_run(M: HardCoreModel, steps: int, rng: RngStream) -> CoupledRun:
    """Product chain from all-ones above Glauber from all-zeros, sharing vertex and uniform each step.

    The upper chain occupies ``v`` iff ``U < lambda/(1+lambda)``; the lower one
    does the same when ``v`` is unblocked and otherwise stays put.
    """
    G = M.graph
    n = G.n
    full = (1 << n) - 1
    up, lo = full, 0
    held = True
    if n and steps:
        verts, us = _draws(rng, n, steps)
        p = float(M.occupation_prob)
        masks = G.masks
        occ_u, since_u = [0] * n, [0] * n
        occ_l, since_l = [0] * n, [0] * n
        for t in range(steps):
            v = int(verts[t])
            bit = 1 << v
            on = us[t] < p
            if on:
                if not up & bit:
                    up |= bit
                    since_u[v] = t
            elif up & bit:
                up &= ~bit
                occ_u[v] += t - since_u[v]
            if not masks[v] & lo:
                if on:
                    if not lo & bit:
                        lo |= bit
                        since_l[v] = t
                elif lo & bit:
                    lo &= ~bit
                    occ_l[v] += t - since_l[v]
            if lo & ~up:
                held = False
        upper = TrajectorySummary(VertexSubset(up, n), steps, _tally(occ_u, since_u, up, n, steps))
        lower = TrajectorySummary(VertexSubset(lo, n), steps, _tally(occ_l, since_l, lo, n, steps))
    else:
        upper = TrajectorySummary(VertexSubset(up, n), steps, np.zeros(n))
        lower = TrajectorySummary(VertexSubset(lo, n), steps, np.zeros(n))
    return CoupledRun(upper, lower, held and lo & ~up == 0)


def _glauber_batch(G: Graph, lam, burn_in: int, replicas: int, rng: RngStream) -> np.ndarray:
    """``replicas`` independent Glauber chains from the empty set, advanced in lockstep."""
    n = G.n
    states = np.zeros(replicas, dtype=np.uint64)
    if n == 0:
        return states
    if n > 63:
        raise ValueError("batched sampler supports at most 63 vertices")
    nb = np.array(G.masks, dtype=np.uint64)
    bits = np.left_shift(np.uint64(1), np.arange(n, dtype=np.uint64))
    p = float(lam) / (1.0 + float(lam))
    gen = rng.generator
    for _ in range(burn_in):
        v = gen.integers(n, size=replicas)
        u = gen.random(replicas)
        free = (states & nb[v]) == 0
        bit = bits[v]
        on = free & (u < p)
        off = free & ~(u < p)
        states = np.where(on, states | bit, np.where(off, states & ~bit, states))
    return states


def _lift_masks(masks: np.ndarray, old_ids: list[int], ones: int) -> list[int]:
    out = []
    for m in masks:
        m = int(m)
        full = ones
        while m:
            low = m & -m
            full |= 1 << old_ids[low.bit_length() - 1]
            m ^= low
        out.append(full)
    return out


def sample_stationary_batch(M: HardCoreModel, pins: Mapping[int, int], burn_in: int | None,
                            replicas: int, rng: RngStream) -> list[int]:
    """Approximate samples (bitmasks) from the pinned hard-core law, one chain per replica."""
    H, old_ids, ones = pinned_reduction(M.graph, pins)
    if burn_in is None:
        burn_in = default_burn_in(H.n)
    states = _glauber_batch(H, M.lam, burn_in, replicas, rng)
    return _lift_masks(states, old_ids, ones)


def sample_stationary(M: HardCoreModel, pins: Mapping[int, int], burn_in: int | None,
                      rng: RngStream) -> VertexSubset:
    """Glauber dynamics on the pin-reduced graph for ``burn_in`` steps, pins re-applied."""
    H, old_ids, ones = pinned_reduction(M.graph, pins)
    if burn_in is None:
        burn_in = default_burn_in(H.n)
    final = run_glauber(HardCoreModel(H, M.lam), burn_in, rng).final
    return VertexSubset(_lift_masks([final.bits], old_ids, ones)[0], M.graph.n)
