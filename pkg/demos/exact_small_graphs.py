"""
Exact hard-core quantities on small graphs
==========================================

Partition functions, marginals, mixing times and W1 distances between the two
pinnings of a vertex, all by enumeration.
"""
from fractions import Fraction

from hardcore_hfree.exact import (
    HardCoreModel,
    exact_mixing_time,
    exact_w1_hamming,
    marginals,
    partition_function,
    pinned_distribution,
    tv_distance,
    worst_case_tv,
)
from hardcore_hfree.graph import cycle_graph, path_graph
from hardcore_hfree.patterns import named_pattern

# The claw at lambda = 1: Z = 1 + 4 + 3 + 1 and the centre is occupied only by {centre}.
claw = named_pattern("claw")
M = HardCoreModel(claw, 1)
print("Z(claw) =", partition_function(M))
print("marginals:", [str(p) for p in marginals(M)])

# Marginals always sit between lam/(1+lam)^(D+1) and lam/(1+lam).
lam = Fraction(4)
for name, G in [("claw", claw), ("C7", cycle_graph(7)), ("P6", path_graph(6))]:
    ps = marginals(HardCoreModel(G, lam))
    print(f"{name}: min {min(ps)} >= {lam / (1 + lam) ** (G.max_degree + 1)}, max {max(ps)} <= {lam / (1 + lam)}")

# Mixing time: first t with worst-case TV <= 1/4; then d(k t) <= 2^-k.
t = exact_mixing_time(M)
print("t_mix(claw, 1) =", t)
print("d(k t_mix), k=1..4:", [f"{d:.4f}" for d in worst_case_tv(M, [k * t for k in range(1, 5)])])

# Single edge: the two pinnings of an endpoint have disjoint supports (TV 1) and W1 = 3/2.
edge = HardCoreModel(path_graph(2), 1)
mu0, mu1 = pinned_distribution(edge, {1: 0}), pinned_distribution(edge, {1: 1})
print("edge: TV =", tv_distance(mu0, mu1), " W1 =", exact_w1_hamming(mu0, mu1))
