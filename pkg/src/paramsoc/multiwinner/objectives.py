"""Objective functions and optimal voter-to-member assignments."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..errors import DomainError, UnsupportedKindError
from ..profiles import PreferenceProfile

RULES = ("monroe", "cc", "mav", "pav")


def check_rule(rule: str) -> str:
    rule = rule.lower()
    if rule not in RULES:
        raise DomainError(f"unknown rule {rule!r}; expected one of {RULES}")
    return rule


@lru_cache(maxsize=None)
def harmonic(x: int) -> Fraction:
    """Partial harmonic number ``1 + 1/2 + ... + 1/x`` (0 for ``x = 0``)."""
    return sum((Fraction(1, j) for j in range(1, x + 1)), Fraction(0))


def harmonic_weights(k: int) -> tuple[int, list[int]]:
    """Integer weights ``L * h(x)`` for ``x = 0..k`` with ``L = lcm(1..k)``."""
    scale = lcm(*range(1, k + 1)) if k >= 1 else 1
    return scale, [int(harmonic(x) * scale) for x in range(k + 1)]


def check_committee(profile: PreferenceProfile, committee: Sequence[int]) -> tuple[int, ...]:
    comm = tuple(sorted(set(int(a) for a in committee)))
    if len(comm) != len(committee):
        raise DomainError("committee contains duplicates")
    if any(not (0 <= a < profile.m) for a in comm):
        raise DomainError("committee member out of range")
    return comm


def cost_matrix(profile: PreferenceProfile) -> list[list[int]]:
    """Per voter and alternative penalty: rank (linear) or 0/1 disapproval (approval)."""
    if profile.is_linear:
        return [list(r) for r in profile.ranks]
    return [[0 if a in s else 1 for a in range(profile.m)] for s in profile.approval_sets]


def misrepresentation(profile: PreferenceProfile, rule: str, committee: Sequence[int],
                      assignment: Sequence[Optional[int]]) -> int:
    """Misrepresentation of a committee under a given assignment.

    Rank sum for linear profiles, number of voters assigned to a member they
    do not approve for approval profiles. Monroe assignments must also respect
    the proportional window of ``floor(n/k)`` to ``ceil(n/k)`` voters per member.
    """
    rule = check_rule(rule)
    if rule not in ("monroe", "cc"):
        raise DomainError("misrepresentation applies to the monroe and cc rules")
    comm = set(check_committee(profile, committee))
    if len(assignment) != profile.n or any(a is None for a in assignment):
        raise DomainError("assignment must map every voter")
    if any(a not in comm for a in assignment):
        raise DomainError("assignment leaves the committee")
    if rule == "monroe":
        check_proportional(profile.n, comm, assignment)
    cost = cost_matrix(profile)
    return sum(cost[v][a] for v, a in enumerate(assignment))


def check_proportional(n: int, committee, assignment) -> None:
    k = len(committee)
    low, high = n // k, -(-n // k)
    for a in committee:
        c = sum(1 for x in assignment if x == a)
        if not (low <= c <= high):
            raise DomainError(f"member {a} receives {c} voters, outside [{low}, {high}]")


def approval_score(profile: PreferenceProfile, committee, assignment) -> int:
    """Number of voters who approve of their assigned member."""
    if profile.is_linear:
        raise UnsupportedKindError("approval score needs an approval profile")
    return sum(1 for v, a in enumerate(assignment) if a in profile.approval_sets[v])


def mav_distance(profile: PreferenceProfile, committee: Sequence[int]) -> int:
    """Largest Hamming distance between the committee and an approval set."""
    if profile.is_linear:
        raise UnsupportedKindError("MAV needs an approval profile")
    w = set(check_committee(profile, committee))
    return max((len(s ^ w) for s in profile.approval_sets), default=0)


def mav_score(profile: PreferenceProfile, committee: Sequence[int]) -> int:
    return profile.m - mav_distance(profile, committee)


def pav_score(profile: PreferenceProfile, committee: Sequence[int]) -> Fraction:
    """Exact PAV score, a sum of partial harmonic numbers."""
    if profile.is_linear:
        raise UnsupportedKindError("PAV needs an approval profile")
    w = set(check_committee(profile, committee))
    return sum((harmonic(len(s & w)) for s in profile.approval_sets), Fraction(0))


# ---------------------------------------------------------------- assignments

def _cc_assignment(cost, committee) -> tuple[int, ...]:
    return tuple(min(committee, key=lambda a: (row[a], a)) for row in cost)


def _monroe_matrix(cost, committee):
    """Square cost matrix of the capacity-window transportation problem.

    Each member owns ``floor(n/k)`` required slots and, when ``k`` does not
    divide ``n``, one optional slot. ``k - n mod k`` dummy rows fill the
    unused optional slots at no cost and are barred from required ones.
    """
    n, k = len(cost), len(committee)
    q, r = divmod(n, k)
    owners = [a for a in committee for _ in range(q)]
    optional = list(committee) if r else []
    cols = owners + optional
    big = (max((max(row) for row in cost), default=0) + 1) * (n + 1)
    mat = np.zeros((len(cols), len(cols)), dtype=np.int64)
    for v, row in enumerate(cost):
        mat[v, :] = [row[a] for a in cols]
    for d in range(n, len(cols)):
        mat[d, :len(owners)] = big
    return mat, cols, big


def monroe_cost(cost, committee) -> int:
    """Optimal proportional misrepresentation for a fixed committee."""
    n, k = len(cost), len(committee)
    if n < k:
        raise DomainError(f"Monroe needs at least k={k} voters, got {n}")
    mat, _, _ = _monroe_matrix(cost, committee)
    rows, cols = linear_sum_assignment(mat)
    return int(mat[rows, cols].sum())


def _monroe_assignment(cost, committee) -> tuple[int, ...]:
    n, k = len(cost), len(committee)
    if n < k:
        raise DomainError(f"Monroe needs at least k={k} voters, got {n}")
    mat, cols, big = _monroe_matrix(cost, committee)
    rows, sol = linear_sum_assignment(mat)
    target = int(mat[rows, sol].sum())
    out = []
    # fix voters one at a time to their smallest member that keeps optimality
    for v in range(n):
        for a in committee:
            trial = mat.copy()
            trial[v, [j for j, c in enumerate(cols) if c != a]] = big * (n + 1)
            rr, cc = linear_sum_assignment(trial)
            if int(trial[rr, cc].sum()) == target:
                mat = trial
                out.append(a)
                break
        else:  # pragma: no cover - optimality is always attainable
            raise AssertionError("no optimal extension found")
    return tuple(out)


def optimal_assignment(profile: PreferenceProfile, rule: str, committee: Sequence[int]) -> tuple[int, ...]:
    """Best assignment of voters to committee members.

    CC maps each voter to its cheapest member (smallest index on ties). Monroe
    solves a minimum-cost transportation problem with per-member capacities
    between ``floor(n/k)`` and ``ceil(n/k)`` and returns the lexicographically
    smallest optimal assignment vector.
    """
    rule = check_rule(rule)
    comm = check_committee(profile, committee)
    if not comm:
        raise DomainError("empty committee")
    cost = cost_matrix(profile)
    if rule == "cc":
        return _cc_assignment(cost, comm)
    if rule == "monroe":
        return _monroe_assignment(cost, comm)
    raise DomainError("assignments exist only for the monroe and cc rules")
