"""Brute-force oracles, the clique reduction and the seeded generators."""

from fractions import Fraction

import pytest

from paramsoc.errors import DomainError, ResourceLimitError
from paramsoc.hedonic import HedonicInstance
from paramsoc.multiwinner import solve_cc_xp_misrep
from paramsoc.oracles import (
    SHAPES, CliqueInput, GeneratorSpec, bell, blocker_sizes, brute_force_committees,
    brute_force_hedonic, clique_bound, clique_layout, clique_to_cc_instance, committee_objective,
    enumerate_partitions, generate, has_clique,
)
from paramsoc.profiles import PreferenceProfile


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203), (7, 877), (8, 4140)])
def test_bell_numbers(n, count):
    assert bell(n) == count
    assert sum(1 for _ in enumerate_partitions(n)) == count


def test_partitions_distinct_and_valid():
    seen = set()
    for p in enumerate_partitions(5):
        key = tuple(map(tuple, p.as_lists()))
        assert key not in seen
        seen.add(key)
        assert sorted(a for c in p.coalitions for a in c) == list(range(5))


def test_partition_guards():
    with pytest.raises(DomainError):
        next(enumerate_partitions(0))
    with pytest.raises(ResourceLimitError):
        next(enumerate_partitions(13))
    with pytest.raises(ResourceLimitError):
        brute_force_hedonic(HedonicInstance.friends(11, [], "fa"), "nash")


def test_committee_oracle_example(linear_committee_profile, approval_committee_profile):
    assert brute_force_committees(linear_committee_profile, "monroe", 2) == (3, [(1, 3), (2, 3)])
    assert brute_force_committees(approval_committee_profile, "pav", 2) == (Fraction(6), [(0, 1)])
    assert committee_objective(approval_committee_profile, "mav", (0, 4)) == 3
    with pytest.raises(DomainError):
        committee_objective(approval_committee_profile, "stv", (0,))


def test_monroe_oracle_respects_window():
    p = PreferenceProfile.from_rankings([[0, 1, 2], [0, 1, 2], [0, 2, 1]], 3)
    # three voters, two seats: member 1 must take at least one voter
    assert committee_objective(p, "monroe", (0, 1)) == 1
    assert committee_objective(p, "cc", (0, 1)) == 0


def graph(n, edges, h):
    return CliqueInput(n, tuple(edges), h)


class TestCliqueReduction:
    def test_triangle_yes(self):
        g = graph(3, [(0, 1), (1, 2), (0, 2)], 3)
        inst = clique_to_cc_instance(g)
        assert inst.k == 3 and inst.bound == Fraction(clique_bound(g)) == 21
        assert inst.profile.m == clique_layout(g)["m"]
        assert inst.profile.n == 3 + 2 * 3 * 3
        assert solve_cc_xp_misrep(inst) is not None

    def test_path_no_triangle(self):
        g = graph(3, [(0, 1), (1, 2)], 3)
        assert not has_clique(g)
        assert solve_cc_xp_misrep(clique_to_cc_instance(g)) is None

    def test_edgeless_no_edge(self):
        g = graph(3, [], 2)
        assert solve_cc_xp_misrep(clique_to_cc_instance(g)) is None

    def test_literal_blockers_counterexample(self):
        g = graph(2, [], 2)
        assert blocker_sizes(g, literal=True) == (2, 0)
        assert blocker_sizes(g) == (clique_bound(g) - 1,) * 2
        assert solve_cc_xp_misrep(clique_to_cc_instance(g, literal_blockers=True)) is not None
        assert solve_cc_xp_misrep(clique_to_cc_instance(g)) is None

    def test_too_few_edges(self):
        with pytest.raises(DomainError):
            clique_to_cc_instance(graph(3, [], 3))

    @pytest.mark.parametrize("n,edges,h", [(2, [(0, 0)], 2), (2, [(0, 1), (1, 0)], 2), (2, [(0, 1)], 3),
                                           (2, [(0, 2)], 2)])
    def test_bad_graphs(self, n, edges, h):
        with pytest.raises(DomainError):
            graph(n, edges, h)

    def test_layout_is_a_partition_of_alternatives(self):
        g = graph(4, [(0, 1), (1, 2), (2, 3)], 2)
        lay = clique_layout(g)
        used = lay["a"] + lay["b"] + lay["c"] + [x for B in lay["B"] + lay["C"] for x in B]
        assert sorted(used) == list(range(lay["m"]))


class TestGenerators:
    @pytest.mark.parametrize("shape,params", [
        ("random_linear", {"m": 4, "n": 5}),
        ("random_approval", {"m": 5, "n": 4, "b": 2}),
        ("random_additive", {"n": 5, "umax": 3, "density": 0.5, "symmetric": 1}),
        ("random_fe", {"n": 5, "density": 0.4, "model": "ea"}),
    ])
    def test_deterministic(self, shape, params):
        a = generate(GeneratorSpec(7, shape, params))
        b = generate(GeneratorSpec(7, shape, params))
        assert a == b
        assert set(params) == set(SHAPES[shape])

    def test_seed_matters(self):
        spec = {"m": 6, "n": 6}
        assert generate(GeneratorSpec(1, "random_linear", spec)) != generate(GeneratorSpec(2, "random_linear", spec))

    def test_approval_bound(self):
        p = generate(GeneratorSpec(3, "random_approval", {"m": 6, "n": 40, "b": 2}))
        assert max(len(s) for s in p.approval_sets) <= 2

    def test_symmetric_additive(self):
        inst = generate(GeneratorSpec(3, "random_additive", {"n": 6, "umax": 4, "density": 0.7, "symmetric": "yes"}))
        assert inst.symmetric

    def test_header(self):
        spec = GeneratorSpec(9, "random_linear", {"m": 3, "n": 2})
        assert spec.header() == "generator numpy-pcg64 v1 seed=9 shape=random_linear(m=3,n=2)"

    def test_bad_specs(self):
        with pytest.raises(DomainError):
            GeneratorSpec(0, "random_graph", {})
        with pytest.raises(DomainError):
            GeneratorSpec(0, "random_linear", {"m": 3})
        with pytest.raises(DomainError):
            generate(GeneratorSpec(0, "random_fe", {"n": 3, "density": 0.5, "model": "additive"}))
