"""Hedonic games: model, verification, FA core algorithms, searches and parameters."""

import random
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paramsoc.errors import ContractError, DomainError, ResourceLimitError, UnsupportedKindError
from paramsoc.hedonic import (
    HedonicInstance, Partition, Witness, compare, ea_nash_exist_fas, fa_core_verify_bounded,
    fa_core_verify_colorcoded, fa_scc_partition, fa_unbounded_blocking, measure_parameters,
    nash_search_symmetric, trial_count, verify, welfare,
)
from paramsoc.hedonic.friends import _PhaseTwo
from paramsoc.hedonic.params import feedback_arc_set
from paramsoc.hedonic.stability import (
    blocking_tuples, check_witness, envy_witnesses, is_blocking, search_blocking,
)
from paramsoc.oracles import all_blocking, brute_force_hedonic, enumerate_partitions

from conftest import part

CONCEPTS = ("nash", "indiv", "core", "strict_core")


@st.composite
def games(draw, max_n=6, models=("additive", "fa", "ea")):
    n = draw(st.integers(1, max_n))
    model = draw(st.sampled_from(models))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    if model == "additive":
        util = {pq: draw(st.integers(-3, 3)) for pq in pairs if draw(st.booleans())}
        return HedonicInstance.additive(n, util)
    arcs = [pq for pq in pairs if draw(st.integers(0, 2)) == 0]
    return HedonicInstance.friends(n, arcs, model)


@st.composite
def game_and_partition(draw, **kw):
    inst = draw(games(**kw))
    labels = draw(st.lists(st.integers(0, inst.n - 1), min_size=inst.n, max_size=inst.n))
    blocks = {}
    for i, b in enumerate(labels):
        blocks.setdefault(b, []).append(i)
    return inst, Partition.from_lists(list(blocks.values()), inst.n)


# ---------------------------------------------------------------- model

class TestModel:
    def test_values(self, friends_fa, friends_ea, additive4):
        assert friends_fa.value(0, {0, 1, 2, 3}) == (2, -1)
        assert friends_ea.value(0, {0, 1, 2, 3}) == (-1, 2)
        assert additive4.value(0, {0, 1, 2}) == 0
        assert additive4.value(1, {1, 3}) == 1

    def test_codes_order_like_values(self, friends_fa, friends_ea):
        for inst in (friends_fa, friends_ea):
            coalitions = [frozenset(c) | {0} for r in range(4) for c in combinations(range(1, 4), r)]
            for S in coalitions:
                for T in coalitions:
                    assert (inst.code(0, S) < inst.code(0, T)) == (inst.value(0, S) < inst.value(0, T))

    def test_compare(self, additive4):
        assert compare(additive4, 0, {0, 1}, {0}) == "prefers"
        assert compare(additive4, 0, {0, 2}, {0}) == "dispreferred"
        assert compare(additive4, 0, {0}, {0}) == "indifferent"
        with pytest.raises(DomainError):
            compare(additive4, 0, {1}, {0})

    @pytest.mark.parametrize("arcs", [[(0, 0)], [(0, 5)]])
    def test_bad_arcs(self, arcs):
        with pytest.raises(DomainError):
            HedonicInstance.friends(3, arcs, "fa")

    def test_utility_limit(self):
        with pytest.raises(DomainError):
            HedonicInstance.additive(2, {(0, 1): 2**31})

    def test_symmetric(self, additive4):
        assert not additive4.symmetric
        assert HedonicInstance.additive(2, {(0, 1): 3, (1, 0): 3}).symmetric

    def test_with_model(self, friends_fa):
        assert friends_fa.with_model("ea").model == "ea"

    def test_partition(self):
        p = Partition.from_lists([[3, 1], [0], [2]])
        assert p.as_lists() == [[0], [1, 3], [2]]
        assert p.kappa == 2 and p.size == 3 and p.of(3) == frozenset({1, 3})
        with pytest.raises(DomainError):
            Partition.from_lists([[0, 1], [1]])
        with pytest.raises(DomainError):
            Partition.from_lists([[0], [2]], 3)

    def test_partition_must_match_instance(self, friends_fa):
        with pytest.raises(DomainError):
            verify(friends_fa, Partition.singletons(3), "nash")


# ---------------------------------------------------------------- verification

class TestExampleGames:
    def test_fa_grand_coalition(self, friends_fa):
        for c in CONCEPTS:
            assert verify(friends_fa, Partition.grand(4), c) is None

    def test_fa_triple(self, friends_fa):
        p = part([1, 2, 3], [4])
        for c in ("indiv", "core", "strict_core"):
            assert verify(friends_fa, p, c) is None
        witnesses = list(envy_witnesses(friends_fa, p))
        assert [(w.agent, w.target) for w in witnesses] == [(2, frozenset({3})), (3, frozenset({0, 1, 2}))]
        assert verify(friends_fa, p, "nash") == witnesses[0]

    def test_ea_game(self, friends_ea):
        p = part([1, 2], [3], [4])
        assert verify(friends_ea, p, "core") is None
        assert verify(friends_ea, p, "indiv") is None
        w = verify(friends_ea, p, "strict_core")
        assert w.kind == "weakly_blocking_coalition" and w.agents == frozenset({0, 2})
        assert brute_force_hedonic(friends_ea, "nash") is None
        assert brute_force_hedonic(friends_ea, "strict_core") is None
        assert ea_nash_exist_fas(friends_ea) is None

    def test_additive_game(self, additive4):
        singles = Partition.singletons(4)
        assert verify(additive4, singles, "core") is None
        tuples = [(w.agent, w.target) for w in blocking_tuples(additive4, singles)]
        assert tuples == [(0, frozenset({1})), (1, frozenset({3}))]
        good = part([1, 2, 4], [3])
        for c in CONCEPTS:
            assert verify(additive4, good, c) is None

    def test_aliases(self, additive4):
        singles = Partition.singletons(4)
        assert verify(additive4, singles, "is") == verify(additive4, singles, "indiv")
        with pytest.raises(DomainError):
            verify(additive4, singles, "pareto")


class TestVerificationProperties:
    @settings(max_examples=200, deadline=None)
    @given(game_and_partition())
    def test_lattice(self, case):
        inst, p = case
        stable = {c: verify(inst, p, c) is None for c in CONCEPTS}
        assert not stable["nash"] or stable["indiv"]
        assert not stable["strict_core"] or (stable["core"] and stable["indiv"])

    @settings(max_examples=200, deadline=None)
    @given(game_and_partition())
    def test_witnesses_reverify(self, case):
        inst, p = case
        for c in CONCEPTS:
            w = verify(inst, p, c)
            if w is not None:
                assert check_witness(inst, p, w)

    @settings(max_examples=150, deadline=None)
    @given(game_and_partition(), st.booleans())
    def test_search_matches_oracle(self, case, weak):
        inst, p = case
        found = search_blocking(inst, p, weak)
        every = list(all_blocking(inst, p, weak))
        assert found == (every[0] if every else None)

    @settings(max_examples=100, deadline=None)
    @given(game_and_partition(), st.booleans())
    def test_search_backends_agree(self, case, weak):
        from paramsoc import kernels
        inst, p = case
        found = set()
        for name in kernels.available_backends():
            with kernels.using_backend(name):
                found.add(search_blocking(inst, p, weak))
        assert len(found) == 1

    def test_budget(self, additive4):
        with pytest.raises(ResourceLimitError):
            verify(additive4, Partition.singletons(4), "core", node_budget=2)

    def test_check_witness_rejects_fakes(self, additive4):
        singles = Partition.singletons(4)
        assert not check_witness(additive4, singles, Witness("blocking_coalition", frozenset({0, 2})))
        assert not check_witness(additive4, singles, Witness("envy", frozenset({0}), frozenset({2})))


# ---------------------------------------------------------------- friend appreciation

class TestFriendAppreciation:
    def test_scc_partition_of_example(self, friends_fa):
        assert fa_scc_partition(friends_fa).as_lists() == [[0, 1, 2, 3]]

    def test_needs_fa(self, friends_ea):
        with pytest.raises(UnsupportedKindError):
            fa_scc_partition(friends_ea)
        with pytest.raises(UnsupportedKindError):
            fa_core_verify_colorcoded(friends_ea, Partition.singletons(4))

    @settings(max_examples=150, deadline=None)
    @given(game_and_partition(max_n=7, models=("fa",)), st.sampled_from(["strict", "weak"]))
    def test_peeling_finds_large_coalitions(self, case, mode):
        inst, p = case
        weak = mode == "weak"
        large = list(all_blocking(inst, p, weak, min_size=p.kappa + 1))
        w = fa_unbounded_blocking(inst, p, mode)
        if w is None:
            assert not large
        else:
            assert len(w.agents) > p.kappa
            assert is_blocking(inst, p, w.agents, weak)

    @settings(max_examples=150, deadline=None)
    @given(game_and_partition(max_n=7, models=("fa",)), st.sampled_from(["strict", "weak"]))
    def test_bounded_is_exact(self, case, mode):
        inst, p = case
        w = fa_core_verify_bounded(inst, p, mode)
        exact = verify(inst, p, "core" if mode == "strict" else "strict_core")
        assert (w is None) == (exact is None)
        if w is not None:
            assert check_witness(inst, p, w)

    @settings(max_examples=100, deadline=None)
    @given(games(max_n=7, models=("fa",)))
    def test_scc_partition_in_strict_core(self, inst):
        assert verify(inst, fa_scc_partition(inst), "strict_core") is None

    @settings(max_examples=150, deadline=None)
    @given(game_and_partition(max_n=7, models=("fa",)), st.integers(0, 3))
    def test_colorcoded_sound(self, case, seed):
        inst, p = case
        w = fa_core_verify_colorcoded(inst, p, delta=1e-3, seed=seed, exhaustive_cutoff=0)
        exact = fa_core_verify_bounded(inst, p, "strict")
        if w is not None:
            assert is_blocking(inst, p, w.agents, weak=False)
            assert exact is not None
        if exact is None:
            assert w is None

    def test_colorcoded_exact_mode_matches(self):
        rng = random.Random(5)
        for _ in range(60):
            n = rng.randint(2, 7)
            arcs = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < 0.35]
            inst = HedonicInstance.friends(n, arcs, "fa")
            labels = [rng.randrange(n) for _ in range(n)]
            blocks = {}
            for i, b in enumerate(labels):
                blocks.setdefault(b, []).append(i)
            p = Partition.from_lists(list(blocks.values()), n)
            exact = fa_core_verify_bounded(inst, p, "strict")
            got = fa_core_verify_colorcoded(inst, p)
            assert (got is None) == (exact is None)

    def test_trial_count(self):
        assert trial_count(0, 0.1) == 1
        assert trial_count(1, 0.1) == 1
        assert trial_count(3, 1e-3) == int(np.ceil(np.e ** 3 * 3 * np.log(1e3)))
        with pytest.raises(ValueError):
            fa_core_verify_colorcoded(HedonicInstance.friends(2, [], "fa"), Partition.singletons(2), delta=0)


def three_singleton_game():
    """Only blocking coalition: agent 0 of a triangle with a chain of three singletons."""
    arcs = [(i, j) for i in range(3) for j in range(3) if i != j]
    arcs += [(0, 3), (0, 4), (0, 5), (3, 0), (4, 3), (5, 4)]
    arcs += [(i, j) for i in range(6, 10) for j in range(6, 10) if i != j]
    inst = HedonicInstance.friends(10, arcs, "fa")
    p = Partition.from_lists([[0, 1, 2], [3], [4], [5], [6, 7, 8, 9]], 10)
    return inst, p


class TestPhaseTwo:
    def test_three_singleton_completion(self):
        inst, p = three_singleton_game()
        assert fa_unbounded_blocking(inst, p, "strict") is None
        target = frozenset({0, 3, 4, 5})
        assert list(all_blocking(inst, p, weak=False)) == [target]
        for cutoff in (0, None):
            phase = _PhaseTwo(inst, p, np.random.default_rng(1), 1e-3, cutoff)
            assert phase.search(frozenset({0}), 4) == target
            assert phase.search(frozenset({0}), 3) is None
            assert phase.search(frozenset({1}), 4) is None

    def test_full_verifier_finds_it(self):
        inst, p = three_singleton_game()
        for seed in range(5):
            w = fa_core_verify_colorcoded(inst, p, delta=1e-3, seed=seed, exhaustive_cutoff=0)
            assert w is not None and w.agents == frozenset({0, 3, 4, 5})
        assert fa_core_verify_bounded(inst, p, "strict").agents == frozenset({0, 3, 4, 5})

    def test_sink_component_reported(self):
        inst = HedonicInstance.friends(3, [(0, 1), (1, 0), (2, 0)], "fa")
        w = fa_core_verify_colorcoded(inst, Partition.grand(3))
        assert w.agents == frozenset({0, 1})

    def test_singleton_cycle_reported(self):
        inst = HedonicInstance.friends(3, [(0, 1), (1, 2), (2, 0)], "fa")
        w = fa_core_verify_colorcoded(inst, Partition.singletons(3))
        assert w.agents == frozenset({0, 1, 2})


# ---------------------------------------------------------------- searches

class TestSearches:
    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 7), st.data())
    def test_symmetric_dynamics(self, n, data):
        util = {}
        for i in range(n):
            for j in range(i + 1, n):
                u = data.draw(st.integers(-5, 5))
                if u:
                    util[(i, j)] = util[(j, i)] = u
        inst = HedonicInstance.additive(n, util)
        ledger = []
        out = nash_search_symmetric(inst, ledger=ledger)
        assert verify(inst, out, "nash") is None
        steps = [0] + ledger
        assert all(a < b for a, b in zip(steps, steps[1:]))
        assert ledger == [] or ledger[-1] == welfare(inst, out)
        assert len(ledger) <= n * n * max((abs(u) for u in util.values()), default=0)

    def test_symmetric_contracts(self, additive4, friends_fa):
        with pytest.raises(ContractError):
            nash_search_symmetric(additive4)
        with pytest.raises(UnsupportedKindError):
            nash_search_symmetric(friends_fa)
        big = HedonicInstance.additive(2, {(0, 1): 9, (1, 0): 9})
        with pytest.raises(ContractError):
            nash_search_symmetric(big, utility_cap=5)

    @settings(max_examples=120, deadline=None)
    @given(games(max_n=6, models=("ea",)))
    def test_ea_nash_matches_brute_force(self, inst):
        found = ea_nash_exist_fas(inst)
        exists = brute_force_hedonic(inst, "nash") is not None
        assert (found is not None) == exists
        if found is not None:
            assert verify(inst, found, "nash") is None


# ---------------------------------------------------------------- parameters and oracles

class TestParameters:
    def test_additive(self, additive4):
        rep = measure_parameters(additive4)
        assert rep.max_degree == 3
        assert rep.distinct_utility_count == 5
        assert rep.feedback_number == 1 and rep.feedback_certified

    def test_friends(self, friends_fa, friends_ea):
        rep = measure_parameters(friends_fa, Partition.grand(4))
        assert rep.feedback_number == 2 and rep.kappa == 4 and rep.num_coalitions == 1
        ea = measure_parameters(friends_ea)
        assert ea.feedback_number == 0 and ea.feedback_arc_number == 2

    @settings(max_examples=100, deadline=None)
    @given(games(max_n=6, models=("fa",)))
    def test_feedback_arc_set_minimum(self, inst):
        import networkx as nx
        g = nx.DiGraph()
        g.add_nodes_from(range(inst.n))
        g.add_edges_from(inst.friendship)
        arcs, certified = feedback_arc_set(g)
        h = g.copy()
        h.remove_edges_from(arcs)
        assert nx.is_directed_acyclic_graph(h)
        assert certified
        edges = sorted(g.edges())
        for r in range(len(arcs)):
            for sub in combinations(edges, r):
                h = g.copy()
                h.remove_edges_from(sub)
                assert not nx.is_directed_acyclic_graph(h)
            if r >= 3:
                break


def test_partition_enumeration_is_complete():
    seen = {tuple(map(tuple, p.as_lists())) for p in enumerate_partitions(5)}
    assert len(seen) == 52
