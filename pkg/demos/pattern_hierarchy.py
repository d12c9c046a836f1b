"""
Subdivided claws and the graph families around them
===================================================

Induced-subgraph search for subdivided claws, the tiled E-free family that
still contains forks, and a skew-star-free graph that is not E-free.
"""
import numpy as np

from hardcore_hfree.graph import E_GRAPH, SKEW_STAR, gen_efree_block, gen_skewstar_witness, random_tree
from hardcore_hfree.patterns import find_induced, is_subdivided_claw_free, named_pattern, verify_e_to_s12t

block = gen_efree_block(1, 1)
print("fork in the basic block at", find_induced(block, named_pattern("fork")).mapping)
for rows, cols in [(1, 1), (2, 2), (3, 3)]:
    G = gen_efree_block(rows, cols)
    print(f"{rows}x{cols} tiling: n={G.n}, E-free={is_subdivided_claw_free(G, E_GRAPH)}")

W = gen_skewstar_witness(5)
print("witness: skew-star-free =", is_subdivided_claw_free(W, SKEW_STAR),
      " E-free =", is_subdivided_claw_free(W, E_GRAPH))

# Large bipartite graphs with an induced E contain a long S_{1,2,t}.
rng = np.random.default_rng(0)
verdicts = [verify_e_to_s12t(random_tree(110, 3, rng), 3).value for _ in range(20)]
print("E -> S_{1,2,3} on random trees:", {v: verdicts.count(v) for v in set(verdicts)})
