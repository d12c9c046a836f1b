"""
The red/blue cluster coupling
=============================

Draw red from the 1-pinning and blue from the 0-pinning at a vertex v, grow
the alternating cluster from v, and swap colours inside it.  The new blue set
has the 0-pinned law, and its Hamming distance to red is the cluster size.
"""
from fractions import Fraction

from hardcore_hfree.cluster import (
    cluster_statistics,
    couple,
    exact_cluster_size_mean,
    exact_coupling_pushforward,
)
from hardcore_hfree.exact import HardCoreModel, exact_w1_hamming, pinned_distribution, tv_distance
from hardcore_hfree.graph import complete_bipartite, cycle_graph, line_graph
from hardcore_hfree.sim import RngStream

# One draw on a 9-cycle.
M = HardCoreModel(cycle_graph(9), 2.0)
pair = couple(M, 0, RngStream(4))
print("red  :", pair.red.to_list())
print("blue :", pair.blue.to_list())
print("layers:", [layer.to_list() for layer in pair.cluster.layers])

# The pushforward of blue is exactly the 0-pinned law on claw-free graphs.
L = line_graph(complete_bipartite(3, 3))
for lam in (Fraction(1, 2), Fraction(8)):
    ML = HardCoreModel(L, lam)
    push = exact_coupling_pushforward(ML, 0)
    print(f"line graph of K33, lam={lam}: TV(pushforward, mu^(v,0)) = {tv_distance(push, pinned_distribution(ML, {0: 0}))}")

# Expected cluster size bounds W1 between the two pinnings.
ML = HardCoreModel(L, 1)
w1 = exact_w1_hamming(pinned_distribution(ML, {0: 0}), pinned_distribution(ML, {0: 1}))
print(f"W1 = {float(w1):.4f} <= E|C| = {float(exact_cluster_size_mean(ML, 0)):.4f}")

# On cycles every BFS layer has at most two vertices.
stats = cluster_statistics(HardCoreModel(cycle_graph(40), 4.0), 0, 5000, RngStream(5))
print(f"C40, lam=4: mean |C| {stats.mean_size:.2f} +- {stats.stderr:.2f}, max layer width {stats.max_layer_width}")
