import itertools

import numpy as np
import pytest

from ladderkit import (
    AllNaturals,
    Explicit,
    KthPowers,
    WindowColoring,
    WindowProperty,
    check_window_property,
    diffset_members,
    distance_graph_chromatic_window,
    find_mono_ap,
    longest_mono_s_sequence,
    max_s_free_subset,
    order_in_set,
    walk_order_experiment,
)
from ladderkit.colorings import interval_blocking_coloring


class TestCheckWindowProperty:
    def test_vdw_holds_at_9(self):
        v = check_window_property(
            WindowProperty("Ladder", AllNaturals(), r=2, n_max=9, k=3))
        assert v.holds

    def test_vdw_fails_at_8_with_validated_counterexample(self):
        v = check_window_property(
            WindowProperty("Ladder", AllNaturals(), r=2, n_max=8, k=3))
        assert v.outcome == "fails"
        ce = v.counterexample
        assert ce is not None
        assert find_mono_ap(ce, AllNaturals(), 3) is None

    def test_chrom_intersective_pigeonhole(self):
        v = check_window_property(
            WindowProperty("ChromIntersective", Explicit([1, 2]), r=2,
                           n_max=3))
        assert v.holds

    def test_empty_spec_trivially_fails(self):
        v = check_window_property(
            WindowProperty("Accessible", Explicit([100]), r=2, n_max=5, k=2))
        assert v.outcome == "fails"
        assert v.counterexample is not None

    def test_k1_trivially_holds(self):
        v = check_window_property(
            WindowProperty("Accessible", Explicit([100]), r=2, n_max=5, k=1))
        assert v.holds

    def test_budget_gives_unknown(self):
        v = check_window_property(
            WindowProperty("Ladder", AllNaturals(), r=2, n_max=9, k=3),
            node_budget=10)
        assert v.outcome == "unknown"

    def test_monotone_in_window(self):
        for n in (9, 10, 11):
            v = check_window_property(
                WindowProperty("Ladder", AllNaturals(), r=2, n_max=n, k=3))
            assert v.holds

    @pytest.mark.parametrize("prop", [
        WindowProperty("Ladder", AllNaturals(), r=2, n_max=8, k=3),
        WindowProperty("Ladder", AllNaturals(), r=2, n_max=9, k=3),
        WindowProperty("Ladder", Explicit([1, 2]), r=3, n_max=10, k=3),
        WindowProperty("Accessible", Explicit([1, 2]), r=2, n_max=8, k=4),
        WindowProperty("Accessible", KthPowers(2), r=3, n_max=12, k=2),
        WindowProperty("ChromIntersective", KthPowers(2), r=2, n_max=6),
        WindowProperty("ChromIntersective", KthPowers(2), r=3, n_max=12),
    ])
    def test_symmetry_breaking_soundness(self, prop):
        a = check_window_property(prop, symmetry_breaking=True)
        b = check_window_property(prop, symmetry_breaking=False)
        assert a.outcome == b.outcome

    @pytest.mark.parametrize("spec,n", [
        (Explicit([1, 2]), 3), (KthPowers(2), 5), (Explicit([3]), 6),
    ])
    def test_accessible_k2_equals_chrom_intersective(self, spec, n):
        for r in (2, 3):
            a = check_window_property(
                WindowProperty("Accessible", spec, r=r, n_max=n, k=2))
            b = check_window_property(
                WindowProperty("ChromIntersective", spec, r=r, n_max=n))
            assert a.outcome == b.outcome

    def test_failed_verdicts_block_the_searcher(self):
        v = check_window_property(
            WindowProperty("Accessible", KthPowers(2), r=2, n_max=10, k=3))
        if v.outcome == "fails":
            w = longest_mono_s_sequence(v.counterexample, KthPowers(2))
            assert len(w.elements) < 3

    def test_property_json_round_trip(self):
        for p in (WindowProperty("Ladder", AllNaturals(), r=2, n_max=8, k=3),
                  WindowProperty("GridForced", AllNaturals(), r=2, n_max=6,
                                 dims=(2, 2))):
            assert WindowProperty.from_json(p.to_json()) == p

    def test_grid_forced_small_window_fails(self):
        v = check_window_property(
            WindowProperty("GridForced", AllNaturals(), r=2, n_max=4,
                           dims=(2, 2)), node_budget=100_000)
        assert v.outcome == "fails"


class TestOrderInSet:
    def test_unit_steps(self):
        om = order_in_set(list(range(1, 11)), Explicit([1]))
        assert all(om.orders[x] == 11 - x for x in range(1, 11))
        assert om.k_max == 10 and om.top_class == (1,)

    def test_no_members(self):
        om = order_in_set(list(range(1, 11)), Explicit([100]))
        assert set(om.orders.values()) == {1}
        assert om.top_class == tuple(range(1, 11))

    def test_small_square_instance(self):
        # brute-force longest-chain oracle on {1,2,5,10,17} with squares:
        # the only square difference present is 2-1, so orders are
        # {1:2, 2:1, 5:1, 10:1, 17:1}
        om = order_in_set([1, 2, 5, 10, 17], KthPowers(2))
        assert om.orders == {1: 2, 2: 1, 5: 1, 10: 1, 17: 1}
        assert om.k_max == 2 and om.top_class == (1,)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(53)
        spec = KthPowers(2)

        def brute(x, eset):
            best = 1
            for y in eset:
                if y > x and spec.contains(y - x):
                    best = max(best, 1 + brute(y, eset))
            return best

        for _ in range(20):
            elems = sorted(rng.choice(np.arange(1, 120),
                                      size=int(rng.integers(3, 15)),
                                      replace=False).tolist())
            om = order_in_set(elems, spec)
            eset = set(elems)
            for x in elems:
                assert om.orders[x] == brute(x, eset)

    def test_postconditions_on_random_instances(self):
        rng = np.random.default_rng(59)
        spec = KthPowers(2)
        for _ in range(30):
            elems = sorted(rng.choice(np.arange(1, 300),
                                      size=int(rng.integers(3, 50)),
                                      replace=False).tolist())
            om = order_in_set(elems, spec)  # raises if decomposition fails
            rest = [x for x in om.elements if x not in set(om.top_class)]
            if rest:
                sub = order_in_set(rest, spec)
                assert sub.k_max <= om.k_max - 1


def brute_max_s_free(members, n_max):
    """Literal 2^n subset scan, vectorized over bitmask codes."""
    codes = np.arange(1 << n_max, dtype=np.uint32)
    ok = np.ones(codes.size, dtype=bool)
    for s in members:
        ok &= (codes & (codes >> np.uint32(s))) == 0
    pop = np.zeros(1 << 16, dtype=np.uint8)
    for i in range(1, 1 << 16):
        pop[i] = pop[i >> 1] + (i & 1)
    sizes = pop[codes & 0xFFFF].astype(np.int64) + pop[codes >> np.uint32(16)]
    return int(sizes[ok].max())


class TestMaxSFreeSubset:
    def test_matching_complement(self):
        res = max_s_free_subset(Explicit([1]), 10)
        assert res.exact and len(res) == 5

    def test_three_periodic(self):
        res = max_s_free_subset(Explicit([1, 2]), 9)
        assert res.exact and len(res) == 3
        a = res.elements
        assert all(b - x not in (1, 2) for x in a for b in a if b > x)

    def test_squares_window_exact(self):
        res = max_s_free_subset(KthPowers(2), 40)
        assert res.exact
        small = max_s_free_subset(KthPowers(2), 20)
        members = diffset_members(KthPowers(2), 19)
        assert len(small) == brute_max_s_free(members, 20)

    def test_greedy_fallback_flagged(self):
        res = max_s_free_subset(KthPowers(2), 500, exact_limit=100)
        assert not res.exact and res.note
        a = set(res.elements)
        assert all(not KthPowers(2).contains(b - x)
                   for x in a for b in a if b > x)

    def test_budget_fallback(self):
        res = max_s_free_subset(Explicit([1]), 60, node_budget=50)
        assert not res.exact


def brute_k_colorable(members, n_max, k):
    """Independent plain backtracking, no symmetry breaking."""
    colors = [0] * (n_max + 1)

    def go(x):
        if x > n_max:
            return True
        bad = {colors[x - s] for s in members if s < x}
        for col in range(1, k + 1):
            if col not in bad:
                colors[x] = col
                if go(x + 1):
                    return True
        colors[x] = 0
        return False

    return go(1)


class TestChromaticWindow:
    def test_unit_distance(self):
        res = distance_graph_chromatic_window(Explicit([1]), 8)
        assert res.exact and res.number == 2

    def test_triangle(self):
        res = distance_graph_chromatic_window(Explicit([1, 2]), 9)
        assert res.exact and res.number == 3

    def test_coloring_is_proper(self):
        for spec, n in ((KthPowers(2), 30), (Explicit([1, 3, 4]), 25)):
            res = distance_graph_chromatic_window(spec, n)
            members = diffset_members(spec, n - 1)
            cols = res.coloring.color_array()
            for s in members:
                assert not np.any(cols[:-s] == cols[s:])

    def test_squares_window_matches_brute_force(self):
        res = distance_graph_chromatic_window(KthPowers(2), 30)
        assert res.exact
        members = diffset_members(KthPowers(2), 29)
        assert brute_k_colorable(members, 30, res.number)
        assert not brute_k_colorable(members, 30, res.number - 1)

    def test_upper_bound_fallback_flagged(self):
        res = distance_graph_chromatic_window(KthPowers(2), 200)
        assert not res.exact and res.note


class TestWalkOrderExperiment:
    def test_unit_distance_alternating_optimum(self):
        rep = walk_order_experiment(Explicit([1]), 2, 24, trials=3, seed=1,
                                    local_steps=5000)
        assert rep.best_chain_length == 1

    def test_seeded_candidate_is_interval_bounded(self):
        n = 512
        prefix = [2 ** i for i in range(1, 13)]
        cand, plan = interval_blocking_coloring(prefix, 1, n)
        spec = Explicit([s for s in prefix if s <= n - 1])
        rep = walk_order_experiment(spec, 4, n, trials=3, seed=2,
                                    local_steps=20, candidates=[cand])
        assert rep.candidate_lengths == [
            len(longest_mono_s_sequence(cand, spec).elements)]
        assert rep.best_chain_length == min(min(rep.trial_lengths),
                                            rep.candidate_lengths[0])
        # the candidate's longest chain stays inside one plan interval
        chain = longest_mono_s_sequence(cand, spec).elements
        bounds = plan.boundaries()
        first = next(j for j, hi in enumerate(bounds) if chain[0] <= hi)
        lo = bounds[first - 1] + 1 if first else 1
        assert all(lo <= x <= bounds[first] for x in chain)

    def test_report_is_labeled_heuristic(self):
        rep = walk_order_experiment(KthPowers(2), 2, 100, trials=2, seed=3)
        assert "heuristic" in rep.note
