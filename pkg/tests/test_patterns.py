from __future__ import annotations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from hardcore_hfree.graph import (
    CLAW,
    E_GRAPH,
    SKEW_STAR,
    SubdividedClawSpec,
    build_graph,
    complete_bipartite,
    cycle_graph,
    gen_efree_block,
    gen_skewstar_witness,
    induced_subgraph,
    path_graph,
    random_bounded_degree_graph,
    random_tree,
)
from hardcore_hfree.patterns import (
    PatternTooLarge,
    Verdict,
    find_induced,
    is_induced_embedding,
    is_subdivided_claw_free,
    named_pattern,
    verify_claw_to_s11t,
    verify_e_to_s12t,
)


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges)
    return H


def nx_contains_induced(host, pattern) -> bool:
    return GraphMatcher(to_nx(host), to_nx(pattern)).subgraph_is_isomorphic()


class TestFindInduced:
    def test_claw_in_claw(self):
        emb = find_induced(named_pattern("claw"), named_pattern("claw"))
        assert emb is not None and emb[0] == 0

    def test_no_claw_in_cycle(self):
        assert find_induced(cycle_graph(6), named_pattern("claw")) is None

    def test_fork_in_block(self):
        G = gen_efree_block(1, 1)
        emb = find_induced(G, named_pattern("fork"))
        assert emb is not None and is_induced_embedding(G, named_pattern("fork"), emb)

    def test_claw_in_k4_not_induced(self):
        assert find_induced(nx_to(nx.complete_graph(4)), named_pattern("claw")) is None

    def test_cap(self):
        with pytest.raises(PatternTooLarge):
            find_induced(path_graph(20), path_graph(13))

    def test_disconnected_pattern(self):
        two_edges = build_graph(4, [(0, 1), (2, 3)])
        assert find_induced(path_graph(5), two_edges) is not None
        assert find_induced(path_graph(4), two_edges) is None

    @given(st.integers(0, 10**9))
    @settings(max_examples=150, deadline=None)
    def test_random_induced_subsets_found(self, seed):
        rng = np.random.default_rng(seed)
        G = random_bounded_degree_graph(int(rng.integers(5, 30)), 5, float(rng.uniform(0.1, 0.5)), rng)
        verts = rng.choice(G.n, 5, replace=False).tolist()
        pattern, _ = induced_subgraph(G, verts)
        emb = find_induced(G, pattern)
        assert emb is not None and is_induced_embedding(G, pattern, emb)

    @given(st.integers(0, 10**9), st.sampled_from(["claw", "fork", "e", "skew_star", "1,1,3", "2,2,2"]))
    @settings(max_examples=150, deadline=None)
    def test_agrees_with_networkx(self, seed, name):
        rng = np.random.default_rng(seed)
        G = random_bounded_degree_graph(int(rng.integers(4, 16)), 4, float(rng.uniform(0.1, 0.5)), rng)
        P = named_pattern(name)
        emb = find_induced(G, P)
        assert (emb is not None) == nx_contains_induced(G, P)
        assert is_subdivided_claw_free(G, SubdividedClawSpec.parse(name) if "," in name
                                       else {"claw": CLAW, "fork": SubdividedClawSpec(1, 1, 2),
                                             "e": E_GRAPH, "skew_star": SKEW_STAR}[name]) == (emb is None)


def nx_to(H):
    return build_graph(H.number_of_nodes(), H.edges)


class TestFreeness:
    def test_cycle_claw_free(self):
        assert is_subdivided_claw_free(cycle_graph(9), CLAW)

    def test_witness_skewstar_free(self):
        assert is_subdivided_claw_free(gen_skewstar_witness(5), SKEW_STAR)

    def test_witness_not_e_free(self):
        assert not is_subdivided_claw_free(gen_skewstar_witness(5), E_GRAPH)

    def test_witness_small_contains_e(self):
        assert not is_subdivided_claw_free(gen_skewstar_witness(2), E_GRAPH)

    @pytest.mark.parametrize("rows,cols", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 3)])
    def test_efree_block(self, rows, cols):
        G = gen_efree_block(rows, cols)
        assert is_subdivided_claw_free(G, E_GRAPH)
        assert not is_subdivided_claw_free(G, SubdividedClawSpec(1, 1, 2))

    def test_efree_block_networkx(self):
        assert not nx_contains_induced(gen_efree_block(2, 2), named_pattern("e"))


def long_legged_star(leg: int):
    edges = []
    nxt = 1
    for _ in range(3):
        prev = 0
        for _ in range(leg):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges)


class TestVerifiers:
    def test_claw_too_small(self):
        assert verify_claw_to_s11t(named_pattern("claw"), 2) is Verdict.PREMISE_FAILED

    def test_long_star_confirmed(self):
        G = long_legged_star(8)
        assert G.n > 22
        assert verify_claw_to_s11t(G, 2) is Verdict.CONFIRMED

    def test_short_legs_premise_failed(self):
        assert verify_claw_to_s11t(long_legged_star(5), 2) is Verdict.PREMISE_FAILED

    def test_cycle_premise_failed(self):
        assert verify_claw_to_s11t(cycle_graph(40), 2) is Verdict.PREMISE_FAILED

    def test_witness_not_bipartite(self):
        assert verify_e_to_s12t(gen_skewstar_witness(5), 3) is Verdict.PREMISE_FAILED

    def test_e_too_small(self):
        assert verify_e_to_s12t(named_pattern("e"), 3) is Verdict.PREMISE_FAILED

    def test_large_bipartite_confirmed(self):
        rng = np.random.default_rng(11)
        hits = 0
        for _ in range(20):
            T = random_tree(120, 3, rng)
            v = verify_e_to_s12t(T, 3)
            assert v is not Verdict.COUNTEREXAMPLE
            hits += v is Verdict.CONFIRMED
        assert hits > 0

    def test_small_bipartite_premise_failed(self):
        assert verify_e_to_s12t(complete_bipartite(3, 3), 3) is Verdict.PREMISE_FAILED

    def test_t_validation(self):
        with pytest.raises(ValueError):
            verify_claw_to_s11t(path_graph(3), 1)
        with pytest.raises(ValueError):
            verify_e_to_s12t(path_graph(3), 2)

    def test_verdict_values(self):
        assert {v.value for v in Verdict} == {"premise_failed", "confirmed", "COUNTEREXAMPLE"}
