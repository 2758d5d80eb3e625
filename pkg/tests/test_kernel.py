"""PAV kernelization: verdicts, reductions and index maps."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from paramsoc.errors import ContractError, UnsupportedKindError
from paramsoc.multiwinner import MultiWinnerInstance, pav_kernelize, pav_score
from paramsoc.oracles import brute_force_committees
from paramsoc.profiles import PreferenceProfile


def decide(inst: MultiWinnerInstance) -> bool:
    best, _ = brute_force_committees(inst.profile, "pav", inst.k)
    return best >= inst.bound


@st.composite
def pav_instances(draw):
    m = draw(st.integers(1, 7))
    b = draw(st.integers(1, 3))
    sets = draw(st.lists(st.sets(st.integers(0, m - 1), max_size=min(b, m)), min_size=1, max_size=8))
    k = draw(st.integers(1, m))
    p = PreferenceProfile.from_approvals(sets, m)
    S = draw(st.fractions(min_value=0, max_value=len(sets) + 1, max_denominator=6))
    return MultiWinnerInstance(p, k, S)


@settings(max_examples=300, deadline=None)
@given(pav_instances())
def test_kernel_preserves_answer(inst):
    out = pav_kernelize(inst)
    truth = decide(inst)
    if out.verdict == "yes":
        assert truth
        assert len(out.witness.committee) == inst.k
        assert pav_score(inst.profile, out.witness.committee) >= inst.bound
    else:
        assert out.verdict == "reduced"
        red = out.reduced_instance
        assert decide(red) == truth
        assert red.profile.m <= inst.profile.m
        assert len(out.alt_map) == red.profile.m
        assert len(out.voter_map) == red.profile.n


@settings(max_examples=100, deadline=None)
@given(pav_instances())
def test_index_maps_keep_approvals(inst):
    out = pav_kernelize(inst)
    if out.verdict != "reduced" or not out.voter_map:
        return
    red = out.reduced_instance.profile
    for i, v in enumerate(out.voter_map):
        orig = {out.alt_map[a] for a in red.approval_sets[i]}
        assert orig <= inst.profile.approval_sets[v]


def test_popular_alternative():
    p = PreferenceProfile.from_approvals([{0}, {0}, {0, 1}], 2)
    out = pav_kernelize(MultiWinnerInstance(p, 1, Fraction(3)))
    assert out.verdict == "yes" and out.reason == "popular-alternative"


def test_greedy_rule():
    p = PreferenceProfile.from_approvals([{0}, {1}, {2}], 3)
    out = pav_kernelize(MultiWinnerInstance(p, 2, Fraction(2)))
    assert out.verdict == "yes" and out.witness.objective >= 2


def test_no_support():
    p = PreferenceProfile.from_approvals([set(), set()], 3)
    out = pav_kernelize(MultiWinnerInstance(p, 2, Fraction(1)))
    assert out.verdict == "reduced"
    assert not decide(out.reduced_instance)


def test_contracts():
    lin = PreferenceProfile.from_rankings([[0, 1]], 2)
    with pytest.raises(UnsupportedKindError):
        pav_kernelize(MultiWinnerInstance(lin, 1, Fraction(1)))
    app = PreferenceProfile.from_approvals([{0}], 2)
    with pytest.raises(ContractError):
        pav_kernelize(MultiWinnerInstance(app, 1))
