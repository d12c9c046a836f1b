from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from hardcore_hfree.exact import HardCoreModel, independent_set_masks, partition_function
from hardcore_hfree.graph import (
    VertexSubset,
    check_expansion,
    complete_bipartite,
    gen_random_cubic_bipartite,
    path_graph,
)
from hardcore_hfree.torpid import (
    balance_weights,
    build_instance,
    cardinality_bound,
    conductance_ratio,
    deficient_path_count,
    find_expander,
    max_balanced_size,
    paper_bound_log2,
    path_transfer,
    threshold_log2_lambda,
)

K33 = complete_bipartite(3, 3)


def transfer_by_enumeration(ell, lam):
    """Weights of independent sets of the 2*ell internal vertices of a path, by endpoint state."""
    m = 2 * ell
    P = [[0, 0], [0, 0]]
    for a in (0, 1):
        for b in (0, 1):
            for bits in itertools.product((0, 1), repeat=m):
                if any(bits[i] and bits[i + 1] for i in range(m - 1)):
                    continue
                if (a and bits[0]) or (b and bits[-1]):
                    continue
                P[a][b] += Fraction(lam) ** sum(bits)
    return P


class TestPathTransfer:
    def test_examples(self):
        assert path_transfer(1, 1) == [[3, 2], [2, 1]]
        assert path_transfer(1, 2) == [[5, 3], [3, 1]]

    @pytest.mark.parametrize("ell", range(1, 7))
    @pytest.mark.parametrize("lam", [1, Fraction(1, 2), 3])
    def test_against_enumeration(self, ell, lam):
        assert path_transfer(ell, lam) == transfer_by_enumeration(ell, lam)

    @pytest.mark.parametrize("ell", range(1, 7))
    def test_stretched_edge_partition(self, ell):
        lam = Fraction(2, 3)
        P = path_transfer(ell, lam)
        total = sum(lam ** (a + b) * P[a][b] for a in (0, 1) for b in (0, 1))
        assert total == partition_function(HardCoreModel(path_graph(2 * ell + 2), lam))

    @pytest.mark.parametrize("ell", range(1, 6))
    def test_p11_degree(self, ell):
        # with lam = 2^10 the top power dominates the base-1024 digits
        lam = 1 << 10
        p11 = path_transfer(ell, lam)[1][1]
        assert (p11.bit_length() - 1) // 10 == ell - 1

    def test_float(self):
        assert path_transfer(2, 0.5)[0][0] == pytest.approx(float(path_transfer(2, Fraction(1, 2))[0][0]))


class TestInstance:
    @pytest.mark.parametrize("n,ell", [(3, 1), (4, 2), (5, 3)])
    def test_vertex_count(self, n, ell):
        inst = build_instance(gen_random_cubic_bipartite(n, 0), ell)
        assert inst.stretched.n == (6 * ell + 2) * n
        assert inst.n == n
        assert check_expansion(inst.base, float(inst.alpha))

    def test_find_expander(self):
        G, alpha = find_expander(5, 0, tries=20)
        assert all(G.degree(v) == 3 for v in range(10))
        assert check_expansion(G, float(alpha))


class TestBalanceWeights:
    def test_single_edge(self):
        inst = build_instance(path_graph(2), 1, verify=False)
        w = balance_weights(inst, 1)
        assert (w.w_less, w.w_eq, w.w_greater) == (2, 4, 2)
        assert w.total == 8 == partition_function(HardCoreModel(path_graph(4), 1))

    @pytest.mark.parametrize("lam", [1, Fraction(1, 2), 3])
    def test_k33_matches_partition_function(self, lam):
        inst = build_instance(K33, 1)
        w = balance_weights(inst, lam)
        assert w.total == partition_function(HardCoreModel(inst.stretched, lam))
        assert w.total == sum(w.table.values())

    def test_k33_against_set_enumeration(self):
        inst = build_instance(K33, 1)
        masks = independent_set_masks(inst.stretched)
        lmask = sum(1 << inst.branch_map[v] for v in inst.left)
        rmask = sum(1 << inst.branch_map[v] for v in inst.right)
        lam = Fraction(3, 2)
        buckets = {"<": Fraction(0), "=": Fraction(0), ">": Fraction(0)}
        for m in masks.tolist():
            kl, kr = (m & lmask).bit_count(), (m & rmask).bit_count()
            key = "<" if kl < kr else "=" if kl == kr else ">"
            buckets[key] += lam ** m.bit_count()
        w = balance_weights(inst, lam)
        assert (w.w_less, w.w_eq, w.w_greater) == (buckets["<"], buckets["="], buckets[">"])

    @pytest.mark.parametrize("n,ell", [(3, 1), (4, 1), (4, 2)])
    def test_one_sided_lower_bound(self, n, ell):
        inst = build_instance(gen_random_cubic_bipartite(n, 2), ell)
        for lam in (1, 4, 64):
            w = balance_weights(inst, lam)
            floor = lam ** ((3 * ell + 1) * n)
            assert w.w_less >= floor and w.w_greater >= floor

    def test_float_matches_exact(self):
        inst = build_instance(gen_random_cubic_bipartite(4, 1), 1)
        exact = balance_weights(inst, 4)
        fl = balance_weights(inst, 4.0)
        assert fl.w_eq == pytest.approx(float(exact.w_eq), rel=1e-12)


class TestDeficiency:
    def test_examples(self):
        inst = build_instance(K33, 1)
        assert deficient_path_count(inst, VertexSubset.empty(6)) == 0
        assert deficient_path_count(inst, VertexSubset.of(6, inst.left)) == 0
        assert deficient_path_count(inst, VertexSubset.full(6)) == 9

    def test_max_balanced_k33_brute_force(self):
        inst = build_instance(K33, 1)
        masks = independent_set_masks(inst.stretched).tolist()
        lmask = sum(1 << v for v in inst.left)
        rmask = sum(1 << v for v in inst.right)
        best = max(m.bit_count() for m in masks if (m & lmask).bit_count() == (m & rmask).bit_count())
        assert max_balanced_size(inst) == best

    @pytest.mark.parametrize("n", range(3, 9))
    def test_expansion_deficiency(self, n):
        base, alpha = find_expander(n, 100 + n, tries=30)
        inst = build_instance(base, 1, alpha=alpha)
        a = alpha
        for lbits in range(1 << n):
            k = lbits.bit_count()
            for rbits in range(1 << n):
                if rbits.bit_count() != k:
                    continue
                S = VertexSubset(sum(1 << inst.left[i] for i in range(n) if lbits >> i & 1)
                                 | sum(1 << inst.right[i] for i in range(n) if rbits >> i & 1), 2 * n)
                d = deficient_path_count(inst, S)
                if Fraction(n) / (2 + a) <= k <= Fraction(2 * n, 3):
                    assert d >= (2 + a) * k - n
                if k > Fraction(2 * n, 3):
                    assert d >= 6 * k - 3 * n

    @pytest.mark.parametrize("n", range(3, 8))
    @pytest.mark.parametrize("ell", [1, 2])
    def test_cardinality_bounds(self, n, ell):
        base, alpha = find_expander(n, n, tries=30)
        inst = build_instance(base, ell, alpha=alpha)
        size = max_balanced_size(inst)
        assert size <= cardinality_bound(inst) + 1e-9
        assert size < (3 * ell + 1) * n


class TestConductance:
    def test_small_lambda_sanity(self):
        inst = build_instance(gen_random_cubic_bipartite(4, 0), 1)
        assert conductance_ratio(inst, 0.01).ratio >= 1

    def test_below_bound_above_threshold(self):
        base, alpha = find_expander(5, 3, tries=50)
        inst = build_instance(base, 1, alpha=alpha)
        lam = 2 ** (int(threshold_log2_lambda(1, alpha)) + 1)
        r = conductance_ratio(inst, lam)
        assert r.below_bound
        assert r.log2_bound == pytest.approx(paper_bound_log2(1, alpha, lam, 5))

    def test_exact_ratio(self):
        inst = build_instance(K33, 1)
        r = conductance_ratio(inst, 1)
        w = r.weights
        assert r.ratio == Fraction(w.w_eq, min(w.w_less, w.w_greater))

    def test_threshold_formula(self):
        assert threshold_log2_lambda(1, Fraction(1, 2)) == pytest.approx(45.0)
        lam_log2 = threshold_log2_lambda(1, 1)
        assert paper_bound_log2(1, 1, 2.0 ** lam_log2, 1) == pytest.approx(-1.0)
