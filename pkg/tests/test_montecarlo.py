import math

import pytest

from corebound import (
    choose,
    exact_exactly_one,
    exact_global,
    exact_local,
    mc_global,
    mc_local,
)
from conftest import min_degree_prob_oracle


class TestEstimates:
    def test_reproducible(self, warm_kernels):
        a = mc_local(5, 3, 0.3, 1, "connectivity", trials=2000, seed=11)
        b = mc_local(5, 3, 0.3, 1, "connectivity", trials=2000, seed=11)
        assert a == b
        c = mc_local(5, 3, 0.3, 1, "connectivity", trials=2000, seed=12)
        assert a.successes != c.successes

    def test_partitioned_runs_merge(self, warm_kernels):
        whole = mc_global(6, 3, 0.2, 2, trials=3000, seed=5)
        head = mc_global(6, 3, 0.2, 2, trials=1800, seed=5)
        tail = mc_global(6, 3, 0.2, 2, trials=1200, seed=5, start=1800)
        assert head.successes + tail.successes == whole.successes
        assert head.merge(tail) == whole

    def test_merge_requires_same_seed(self):
        a = mc_local(4, 3, 0.5, 1, trials=10, seed=1)
        b = mc_local(4, 3, 0.5, 1, trials=10, seed=2)
        with pytest.raises(ValueError):
            a.merge(b)

    def test_stderr_formula(self):
        est = mc_local(4, 3, 0.5, 1, "connectivity", trials=1000, seed=0)
        assert est.mean == est.successes / est.trials
        assert est.stderr == pytest.approx(
            math.sqrt(est.mean * (1 - est.mean) / est.trials), abs=1e-15
        )

    def test_bad_args(self):
        with pytest.raises(ValueError):
            mc_local(4, 3, 0.5, 1, trials=0)
        with pytest.raises(ValueError):
            mc_local(4, 3, 0.5, 1, predicate="nonsense")
        with pytest.raises(ValueError):
            mc_global(4, 3, 1.5, 1)


class TestMcLocal:
    def test_certain_edge(self, warm_kernels):
        est = mc_local(3, 3, 1.0, 1, "connectivity", trials=100, seed=0)
        assert est.mean == 1.0

    def test_single_vertex_connected(self, warm_kernels):
        # u < k: no candidate edges at all, but a singleton is connected
        est = mc_local(1, 3, 0.5, 1, "connectivity", trials=50, seed=0)
        assert est.mean == 1.0
        est2 = mc_local(2, 3, 0.5, 1, "connectivity", trials=50, seed=0)
        assert est2.mean == 0.0

    def test_single_edge_probability(self, warm_kernels):
        est = mc_local(3, 3, 0.5, 1, "connectivity", trials=20_000, seed=2)
        assert abs(est.mean - 0.5) <= 3 * est.stderr

    def test_connectivity_matches_pinned_value(self, warm_kernels):
        est = mc_local(4, 3, 0.5, 1, "connectivity", trials=20_000, seed=3)
        assert abs(est.mean - 0.6875) <= 3.5 * est.stderr

    def test_min_degree_predicate(self, warm_kernels):
        oracle = min_degree_prob_oracle(5, 3, 0.4, 2)
        est = mc_local(5, 3, 0.4, 2, "min-degree", trials=20_000, seed=4)
        se = math.sqrt(oracle * (1 - oracle) / est.trials)
        assert abs(est.mean - oracle) <= 4 * se


class TestMcGlobal:
    def test_below_edge_size(self, warm_kernels):
        est = mc_global(2, 3, 0.9, 1, trials=200, seed=0)
        assert est.mean == 0.0

    def test_single_edge(self, warm_kernels):
        est = mc_global(3, 3, 0.7, 1, trials=20_000, seed=6)
        assert abs(est.mean - 0.7) <= 3.5 * est.stderr

    @pytest.mark.parametrize("r", [1, 2])
    @pytest.mark.parametrize("p", [0.2, 0.5, 0.8])
    def test_against_exact(self, warm_kernels, r, p):
        ex = exact_global(5, 3, p, r)
        est = mc_global(5, 3, p, r, trials=20_000, seed=8)
        se = math.sqrt(max(ex * (1 - ex), 1e-300) / est.trials)
        assert abs(est.mean - ex) <= 4 * se + 1e-9


class TestExactGlobal:
    def test_single_edge(self):
        for p in (0.0, 0.3, 1.0):
            assert exact_global(3, 3, p, 1) == pytest.approx(p, abs=1e-12)

    def test_any_edge_gives_one_core(self):
        # only the empty hypergraph lacks a 1-core
        assert exact_global(4, 3, 0.5, 1) == pytest.approx(15 / 16, abs=1e-12)

    def test_four_vertices_two_core(self):
        # 2-core needs >= 3 of the 4 triples present: 4 p^3 (1-p) + p^4
        for p in (0.2, 0.5, 0.8):
            expected = 4 * p**3 * (1 - p) + p**4
            assert exact_global(4, 3, p, 2) == pytest.approx(expected, abs=1e-12)

    def test_complete_hypergraph_threshold(self):
        # at p=1 the answer is the indicator C(v-1, k-1) >= r
        for v, k, r in [(4, 3, 3), (4, 3, 4), (5, 3, 6), (5, 3, 7), (5, 4, 4), (5, 4, 5)]:
            expected = 1.0 if choose(v - 1, k - 1) >= r else 0.0
            assert exact_global(v, k, 1.0, r) == expected

    def test_guard(self):
        with pytest.raises(ValueError):
            exact_global(7, 3, 0.5, 1)  # C(7,3) = 35 > 20


class TestExactExactlyOne:
    def test_at_most_one_core_possible(self):
        for p in (0.2, 0.7):
            assert exact_exactly_one(3, 3, p, 1, "minimal") == pytest.approx(p, abs=1e-12)
            assert exact_exactly_one(3, 3, p, 1, "maximal") == pytest.approx(p, abs=1e-12)

    def test_p_zero(self):
        assert exact_exactly_one(4, 3, 0.0, 1, "minimal") == 0.0
        assert exact_exactly_one(4, 3, 0.0, 1, "maximal") == 0.0

    def test_semantics_differ_when_cores_nest(self):
        # v=4, r=1: each present edge is a minimal core; the union is the one
        # maximal core.  Exactly one minimal core <=> exactly one edge.
        p = 0.5
        assert exact_exactly_one(4, 3, p, 1, "minimal") == pytest.approx(
            4 * p * (1 - p) ** 3, abs=1e-12
        )
        assert exact_exactly_one(4, 3, p, 1, "maximal") == pytest.approx(15 / 16, abs=1e-12)

    def test_semantics_argument(self):
        with pytest.raises(ValueError):
            exact_exactly_one(4, 3, 0.5, 1, "median")


class TestExactLocal:
    def test_single_edge(self):
        for p in (0.0, 0.4, 1.0):
            assert exact_local(3, 3, p, 1) == pytest.approx(p, abs=1e-12)

    def test_four_vertices_r2(self):
        # all-vertex 2-core needs >= 3 of the 4 triples
        for p in (0.2, 0.5):
            expected = 4 * p**3 * (1 - p) + p**4
            assert exact_local(4, 3, p, 2) == pytest.approx(expected, abs=1e-12)

    def test_matches_enumeration_oracle(self):
        for p in (0.3, 0.6):
            assert exact_local(5, 3, p, 2) == pytest.approx(
                min_degree_prob_oracle(5, 3, p, 2), abs=1e-12
            )
