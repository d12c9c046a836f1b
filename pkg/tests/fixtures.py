"""Shared graph fixtures for the test suite."""
from __future__ import annotations

import numpy as np

from hardcore_hfree.graph import (
    Graph,
    build_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    gen_efree_block,
    gen_skewstar_witness,
    is_connected,
    line_graph,
    path_graph,
    random_bounded_degree_graph,
)
from hardcore_hfree.patterns import find_induced, named_pattern

CUBE = build_graph(8, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4),
                       (0, 4), (1, 5), (2, 6), (3, 7)])
PETERSEN = build_graph(10, [(i, (i + 1) % 5) for i in range(5)]
                       + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
                       + [(i, i + 5) for i in range(5)])
K33 = complete_bipartite(3, 3)
SINGLE_VERTEX = empty_graph(1)
EDGE = path_graph(2)


def claw_free_fixtures() -> dict[str, Graph]:
    """Connected claw-free graphs with at most 12 vertices."""
    out = {"single_vertex": SINGLE_VERTEX, "edge": EDGE}
    for n in range(3, 9):
        out[f"path{n}"] = path_graph(n)
    for n in range(3, 11):
        out[f"cycle{n}"] = cycle_graph(n)
    for n in (4, 5):
        out[f"K{n}"] = complete_graph(n)
    out["line_K4"] = line_graph(complete_graph(4))
    out["line_K33"] = line_graph(K33)
    out["line_cube"] = line_graph(CUBE)
    claw = named_pattern("claw")
    assert all(find_induced(g, claw) is None and is_connected(g) for g in out.values())
    return out


def general_fixtures() -> dict[str, Graph]:
    """Fixture graphs with at most 16 vertices, including graphs with induced claws."""
    out = dict(claw_free_fixtures())
    for name in ("claw", "fork", "e", "skew_star"):
        out[name] = named_pattern(name)
    out["efree_block"] = gen_efree_block(1, 1)
    out["skewstar_witness2"] = gen_skewstar_witness(2)
    out["skewstar_witness5"] = gen_skewstar_witness(5)
    out["K33"] = K33
    out["cube"] = CUBE
    out["petersen"] = PETERSEN
    out["path16"] = path_graph(16)
    out["cycle16"] = cycle_graph(16)
    out["two_edges"] = build_graph(4, [(0, 1), (2, 3)])
    rng = np.random.default_rng(20261019)
    for i in range(6):
        out[f"random{i}"] = random_bounded_degree_graph(int(rng.integers(6, 13)), 4, 0.35, rng)
    return out
