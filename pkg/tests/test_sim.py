from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from scipy import stats

from fixtures import EDGE, SINGLE_VERTEX, general_fixtures
from hardcore_hfree.exact import HardCoreModel, exact_mixing_time, pinned_distribution, transition_matrix
from hardcore_hfree.graph import VertexSubset, path_graph, random_bounded_degree_graph
from hardcore_hfree.patterns import named_pattern
from hardcore_hfree.sim import (
    ChainState,
    RngStream,
    default_burn_in,
    glauber_step,
    monotone_coupled_run,
    product_chain_step,
    run_glauber,
    sample_stationary,
    sample_stationary_batch,
)


def three_sigma(p, n):
    return 3 * np.sqrt(p * (1 - p) / n)


class TestRng:
    def test_reproducible(self):
        a, b = RngStream(5), RngStream(5)
        assert [a.uniform() for _ in range(5)] == [b.uniform() for _ in range(5)]

    def test_spawn_distinct(self):
        r = RngStream(5)
        assert r.spawn(0).seed != r.spawn(1).seed
        assert r.spawn(3).seed == RngStream(5).spawn(3).seed


class TestGlauberStep:
    def test_large_lambda_adds(self):
        M = HardCoreModel(SINGLE_VERTEX, 10**6)
        assert M.occupation_prob == pytest.approx(1, abs=1e-5)
        rng = RngStream(1)
        added = sum(len(glauber_step(ChainState.empty(1), M, rng).occupancy) for _ in range(1000))
        assert added >= 998

    def test_blocked_vertex_unchanged(self):
        M = HardCoreModel(EDGE, 1.0)
        state = ChainState(VertexSubset.of(2, [0]))
        rng = RngStream(2)
        for _ in range(200):
            nxt = glauber_step(state, M, rng)
            assert 1 not in nxt.occupancy
            assert nxt.step_count == 1

    def test_one_step_row(self):
        M = HardCoreModel(EDGE, 1.0)
        T = transition_matrix(HardCoreModel(EDGE, 1))
        row = {T.states[j]: float(p) for j, p in T.rows[T.index(0)].items()}
        trials = 100_000
        rng = RngStream(3)
        counts = {0: 0, 1: 0, 2: 0}
        for _ in range(trials):
            counts[glauber_step(ChainState.empty(2), M, rng).occupancy.bits] += 1
        for m, p in row.items():
            assert abs(counts[m] / trials - p) <= three_sigma(p, trials)

    def test_run_matches_steps(self):
        # run_glauber draws the same vertex/uniform sequence as its own block draws
        M = HardCoreModel(path_graph(6), 2.0)
        a = run_glauber(M, 500, RngStream(9))
        b = run_glauber(M, 500, RngStream(9))
        assert a.final == b.final
        assert np.array_equal(a.occupancy_fraction, b.occupancy_fraction)

    def test_rejects_dependent_start(self):
        with pytest.raises(ValueError):
            run_glauber(HardCoreModel(EDGE, 1.0), 10, RngStream(0), VertexSubset.of(2, [0, 1]))


class TestProductChain:
    def test_occupancy_frequency(self):
        lam = 1.5
        G = path_graph(5)
        M = HardCoreModel(G, lam)
        rng = RngStream(4)
        state = ChainState(VertexSubset.empty(5))
        steps = 50_000
        occ = np.zeros(5)
        for _ in range(steps):
            state = product_chain_step(state, M, rng)
            occ += [v in state.occupancy for v in range(5)]
        p = lam / (1 + lam)
        # successive states are correlated; allow the autocorrelation factor 2n - 1
        tol = three_sigma(p, steps) * np.sqrt(2 * 5 - 1)
        assert np.all(np.abs(occ / steps - p) <= tol)

    def test_single_vertex_matches_glauber(self):
        M = HardCoreModel(SINGLE_VERTEX, 2.0)
        a, b = RngStream(8), RngStream(8)
        s1 = s2 = ChainState.empty(1)
        for _ in range(100):
            s1 = glauber_step(s1, M, a)
            s2 = product_chain_step(s2, M, b)
            assert s1.occupancy == s2.occupancy


class TestCoupledRun:
    def test_zero_steps(self):
        run = monotone_coupled_run(HardCoreModel(path_graph(4), 1.0), 0, RngStream(0))
        assert run.dominance_held
        assert len(run.upper.final) == 4 and len(run.lower.final) == 0

    @pytest.mark.parametrize("seed", range(5))
    def test_dominance(self, seed):
        rng = np.random.default_rng(seed)
        G = random_bounded_degree_graph(20, 4, 0.3, rng)
        run = monotone_coupled_run(HardCoreModel(G, 3.0), 100_000, RngStream(seed))
        assert run.dominance_held
        assert run.lower.final <= run.upper.final

    def test_upper_marginals(self):
        lam = 2.0
        M = HardCoreModel(named_pattern("fork"), lam)
        steps = 200_000
        run = monotone_coupled_run(M, steps, RngStream(6))
        p = lam / (1 + lam)
        tol = three_sigma(p, steps) * np.sqrt(2 * 5 - 1)
        assert np.all(np.abs(run.upper.occupancy_fraction - p) <= tol)


class TestStationarySampler:
    def test_default_burn_in(self):
        assert default_burn_in(0) == 0
        assert default_burn_in(10) == 50 * 10 * 3

    def test_edge_pinned_zero(self):
        M = HardCoreModel(EDGE, 1.0)
        masks = sample_stationary_batch(M, {1: 0}, 50, 20_000, RngStream(1))
        frac = np.mean([m == 1 for m in masks])
        assert set(masks) <= {0, 1}
        assert abs(frac - 0.5) <= three_sigma(0.5, 20_000)

    def test_claw_centre_pinned(self):
        M = HardCoreModel(named_pattern("claw"), 3.0)
        for r in range(50):
            s = sample_stationary(M, {0: 1}, 100, RngStream(r))
            assert s.to_list() == [0]

    def test_single_vertex_bernoulli(self):
        lam = 0.5
        masks = sample_stationary_batch(HardCoreModel(SINGLE_VERTEX, lam), {}, 20, 50_000, RngStream(2))
        p = lam / (1 + lam)
        assert abs(np.mean(masks) - p) <= three_sigma(p, 50_000)

    def test_batch_and_scalar_agree_in_law(self):
        M = HardCoreModel(path_graph(3), 1.0)
        scalar = [sample_stationary(M, {}, 150, RngStream(100 + r)).bits for r in range(3000)]
        batch = sample_stationary_batch(M, {}, 150, 3000, RngStream(7))
        table = np.array([[scalar.count(m) for m in (0, 1, 2, 4, 5)],
                          [batch.count(m) for m in (0, 1, 2, 4, 5)]])
        assert stats.chi2_contingency(table).pvalue > 1e-3

    @pytest.mark.slow
    @pytest.mark.parametrize("name,pins", [("claw", {}), ("fork", {1: 0}), ("efree_block", {0: 0})])
    def test_chi_square_million(self, name, pins):
        G = general_fixtures()[name]
        M = HardCoreModel(G, 1.5)
        exact = pinned_distribution(HardCoreModel(G, Fraction(3, 2)), pins)
        t = exact_mixing_time(HardCoreModel(G, 1.5))
        # 20 t_mix steps put each chain within 2^-20 of stationarity in TV
        samples = sample_stationary_batch(M, pins, 20 * t, 10**6, RngStream(11))
        values, counts = np.unique(np.array(samples, dtype=np.int64), return_counts=True)
        observed = dict(zip(values.tolist(), counts.tolist()))
        assert set(observed) <= set(exact.masks)
        f_obs = [observed.get(m, 0) for m in exact.masks]
        f_exp = [float(p) * 10**6 for p in exact.probs]
        assert stats.chisquare(f_obs, f_exp).pvalue > 1e-4
