import math

import pytest

from corebound import (
    GlobalComputation,
    LocalProvider,
    at_least_one_bound,
    exact_exactly_one,
    exact_global,
    exactly_one_core,
    interleaving_bounds,
    mc_global,
)
from corebound.global_prob import _geometric_bound
from corebound.numerics import ProbValue


def connectivity_comp(v, p, k=3, r=1):
    return GlobalComputation(v, p, k, r, LocalProvider("connectivity", k, p, r))


class TestLoneCoreProb:
    def test_worked_example(self):
        # v=4, u=3, k=3, r=1, p=0.5: 4 * 0.5 * (1 - 0.6875)^1
        comp = connectivity_comp(4, 0.5)
        assert comp.lone_core_prob(3).value == pytest.approx(0.625, abs=1e-12)

    def test_top_size_is_local_value(self):
        comp = connectivity_comp(5, 0.3)
        local = LocalProvider("connectivity", 3, 0.3, 1).value(5).value
        assert comp.lone_core_prob(5).value == pytest.approx(local, abs=1e-15)

    def test_p_zero(self):
        comp = connectivity_comp(6, 0.0)
        for u in range(3, 7):
            assert comp.lone_core_prob(u).value == 0.0


class TestNoDistinctCoreProb:
    def test_top_size_gives_one(self):
        comp = connectivity_comp(5, 0.4)
        assert comp.no_distinct_core_prob(5).value == 1.0

    def test_leftover_below_edge_size(self):
        comp = connectivity_comp(5, 0.4)
        assert comp.no_distinct_core_prob(3).value == 1.0  # 2 leftover vertices

    def test_matches_exact_complement_when_unique_core_possible(self):
        # r=2, leftover 4 vertices: only the full 4-set can carry a 2-core, so
        # the recursive subinstance values are exact and the complement equals
        # 1 - P[any 2-core on 4 vertices].
        p = 0.5
        comp = GlobalComputation(8, p, 3, 2, LocalProvider("exact-enum", 3, p, 2))
        expected = 1.0 - exact_global(4, 3, p, 2)
        assert comp.no_distinct_core_prob(4).value == pytest.approx(expected, abs=1e-12)

    def test_definitional_identity(self):
        p = 0.2
        comp = GlobalComputation(8, p, 3, 1, LocalProvider("exact-enum", 3, p, 1))
        sizes = comp.sizes(4)
        expected = 1.0 - math.fsum(pv.value for pv in sizes.values())
        assert comp.no_distinct_core_prob(4).value == pytest.approx(expected, abs=1e-15)


class TestExactlyOneCore:
    def test_below_edge_size(self):
        res = exactly_one_core(2, 0.9, 3, 1)
        assert res.exactly_one.value == 0.0
        assert res.per_size == {}

    def test_single_edge_anchor_exact(self):
        for p in (0.25, 0.5, 0.7):
            res = exactly_one_core(3, p, 3, 1)
            assert res.exactly_one.value == p

    def test_single_edge_r2_zero(self):
        res = exactly_one_core(3, 0.5, 3, 2, method="exact-enum")
        assert res.exactly_one.value == 0.0

    def test_unique_core_instance_matches_oracle(self):
        # v=4, r=2: the only possible core set is all four vertices, so the
        # composition with exact local values equals both oracle counts.
        for p in (0.2, 0.5, 0.8):
            res = exactly_one_core(4, p, 3, 2, method="exact-enum")
            assert res.exactly_one.valid
            expected = exact_exactly_one(4, 3, p, 2, "minimal")
            assert res.exactly_one.value == pytest.approx(expected, abs=1e-12)
            assert exact_exactly_one(4, 3, p, 2, "maximal") == pytest.approx(expected, abs=1e-12)

    def test_overcount_is_flagged_not_clamped(self):
        res = exactly_one_core(5, 0.5, 3, 2, method="exact-enum")
        assert res.exactly_one.value > 1.0
        assert not res.exactly_one.valid
        assert not res.bound.valid

    def test_per_size_keys(self):
        res = exactly_one_core(6, 0.2, 3, 1)
        assert sorted(res.per_size) == [3, 4, 5, 6]


class TestGeometricBound:
    def test_zero(self):
        assert _geometric_bound(ProbValue(0.0)).value == 0.0

    def test_half(self):
        assert _geometric_bound(ProbValue(0.5)).value == 1.0

    def test_tenth(self):
        pv = _geometric_bound(ProbValue(0.1))
        assert pv.value == pytest.approx(0.1 / 0.9, abs=1e-12)
        assert pv.valid

    def test_at_or_above_one_is_invalid(self):
        pv = _geometric_bound(ProbValue(1.0))
        assert pv.value == 1.0 and not pv.valid
        pv = _geometric_bound(ProbValue.checked(1.3))
        assert pv.value == 1.0 and not pv.valid

    def test_vacuous_bound_is_noted_but_valid(self):
        pv = _geometric_bound(ProbValue(0.6))
        assert pv.value == pytest.approx(1.5)
        assert pv.valid
        assert "vacuous" in pv.note

    def test_invalid_input_propagates(self):
        pv = _geometric_bound(ProbValue(0.3, valid=False, note="broken upstream"))
        assert not pv.valid
        assert pv.note == "broken upstream"


class TestInterleavingBounds:
    def test_r1_bounds_coincide(self):
        lower, upper = interleaving_bounds(6, 0.1, 3, 1)
        assert lower.value == upper.value

    def test_p_zero(self):
        lower, upper = interleaving_bounds(6, 0.0, 3, 2)
        assert (lower.value, upper.value) == (0.0, 0.0)

    def test_ordering_on_sparse_grid(self):
        # overhead-2 style points where both bounds stay meaningful
        cases = [(18, 9), (24, 12), (30, 15), (36, 18)]
        for v, e in cases:
            p = e / math.comb(v, 3)
            lower, upper = interleaving_bounds(v, p, 3, 2)
            assert lower.valid and upper.valid
            assert lower.value <= upper.value + 1e-12

    def test_bracket_holds_against_mc(self, warm_kernels):
        v, e = 8, 5
        p = e / math.comb(v, 3)
        lower, upper = interleaving_bounds(v, p, 3, 2)
        est = mc_global(v, 3, p, 2, trials=10_000, seed=3)
        assert lower.value - 3 * est.stderr <= est.mean <= upper.value + 3 * est.stderr


class TestProviders:
    def test_unknown_method(self):
        with pytest.raises(ValueError):
            LocalProvider("magic", 3, 0.5, 1)

    def test_provider_param_mismatch(self):
        provider = LocalProvider("connectivity", 3, 0.5, 1)
        with pytest.raises(ValueError):
            GlobalComputation(5, 0.4, 3, 1, provider)

    def test_interleaved_is_power_of_connectivity(self):
        conn = LocalProvider("connectivity", 3, 0.3, 2)
        inter = LocalProvider("interleaved", 3, 0.3, 2)
        for u in (3, 4, 5, 6):
            assert inter.value(u).value == pytest.approx(conn.value(u).value ** 2, abs=1e-15)

    def test_exact_enum_matches_connectivity_semantics_gap(self):
        # at u=4, k=3, r=1 min-degree coverage equals connectivity (no room
        # for a disjoint second component), so the two providers agree
        exact = LocalProvider("exact-enum", 3, 0.5, 1)
        conn = LocalProvider("connectivity", 3, 0.5, 1)
        assert exact.value(4).value == pytest.approx(conn.value(4).value, abs=1e-12)

    def test_breakdown_at_populated(self):
        u = 150
        p = u / math.comb(u, 3)
        res = exactly_one_core(u, p, 3, 1, method="connectivity")
        assert res.breakdown_at is not None
        assert not res.exactly_one.valid

    def test_at_least_one_bound_smoke(self):
        pv = at_least_one_bound(6, 0.05, 3, 2, method="covering")
        assert pv.valid
        assert 0.0 <= pv.value
