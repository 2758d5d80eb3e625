"""Exact and parameterized solvers for Monroe, CC, MAV and PAV."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from numbers import Rational
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .. import kernels
from ..errors import ContractError, DomainError, ResourceLimitError, UnsupportedKindError
from ..profiles import PreferenceProfile, recognize_sc, recognize_sp
from .objectives import (
    check_rule,
    cost_matrix,
    harmonic,
    harmonic_weights,
    mav_distance,
    monroe_cost,
    optimal_assignment,
    pav_score,
)

Number = Union[int, Fraction]


@dataclass(frozen=True)
class MultiWinnerInstance:
    """A profile, a committee size and an optional bound.

    ``bound`` is the misrepresentation bound R for Monroe, CC and MAV or the
    score bound S for PAV; it is stored as an exact rational.
    """

    profile: PreferenceProfile
    k: int
    bound: Optional[Fraction] = None

    def __post_init__(self):
        if not (1 <= self.k <= self.profile.m):
            raise DomainError(f"committee size k={self.k} outside [1, {self.profile.m}]")
        if self.bound is not None:
            if not isinstance(self.bound, (Rational, float)):
                raise DomainError("bound must be a number")
            b = Fraction(self.bound)
            if b < 0:
                raise DomainError("bound must be non-negative")
            object.__setattr__(self, "bound", b)


@dataclass(frozen=True)
class CommitteeSolution:
    """Winning committee, optional assignment and objective value.

    ``objective`` is the misrepresentation for Monroe and CC, the largest
    Hamming distance for MAV and the (exact) score for PAV.
    """

    committee: tuple[int, ...]
    assignment: Optional[tuple[int, ...]]
    objective: Number
    rule: str
    algo: str = "enum"


def _require_budget(count: int, node_budget: Optional[int]) -> None:
    if node_budget is not None and count > node_budget:
        raise ResourceLimitError(f"{count} search nodes exceed the budget of {node_budget}")


def evaluate(profile: PreferenceProfile, rule: str, committee: Sequence[int], algo: str = "eval") -> CommitteeSolution:
    """Objective (and optimal assignment) of one committee."""
    rule = check_rule(rule)
    comm = tuple(sorted(committee))
    if rule in ("monroe", "cc"):
        sigma = optimal_assignment(profile, rule, comm)
        cost = cost_matrix(profile)
        return CommitteeSolution(comm, sigma, sum(cost[v][a] for v, a in enumerate(sigma)), rule, algo)
    if rule == "mav":
        return CommitteeSolution(comm, None, mav_distance(profile, comm), rule, algo)
    return CommitteeSolution(comm, None, pav_score(profile, comm), rule, algo)


def _check_kind(profile: PreferenceProfile, rule: str) -> None:
    if rule in ("mav", "pav") and profile.is_linear:
        raise UnsupportedKindError(f"{rule} needs an approval profile")


def solve_by_committee_enumeration(instance: MultiWinnerInstance, rule: str,
                                   node_budget: Optional[int] = None) -> CommitteeSolution:
    """Exact optimum over all size-``k`` committees (lexicographically first on ties)."""
    rule = check_rule(rule)
    p, k = instance.profile, instance.k
    _check_kind(p, rule)
    _require_budget(comb(p.m, k), node_budget)
    if rule == "cc":
        _, best = kernels.cc_best(cost_matrix(p), p.m, k)
    elif rule == "mav":
        _, best = kernels.mav_best(p.approval_masks, [0] * p.n, p.m, k)
    elif rule == "pav":
        _, weights = harmonic_weights(k)
        _, best = kernels.pav_best(p.approval_masks, weights, p.m, k)
    else:
        cost = cost_matrix(p)
        best, best_val = None, None
        for c in combinations(range(p.m), k):
            val = monroe_cost(cost, c)
            if best_val is None or val < best_val:
                best, best_val = c, val
    return evaluate(p, rule, best, "enum")


def _pad(profile: PreferenceProfile, chosen, k: int) -> tuple[int, ...]:
    out = set(chosen)
    for a in range(profile.m):
        if len(out) >= k:
            break
        out.add(a)
    return tuple(sorted(out))


def solve_cc_by_voter_partition(instance: MultiWinnerInstance,
                                node_budget: Optional[int] = None) -> CommitteeSolution:
    """Exact CC by enumerating partitions of the voters into at most ``k`` blocks.

    Each block is represented by its cheapest single alternative; unused
    seats are filled with the smallest free alternatives.
    """
    p, k = instance.profile, instance.k
    cost = cost_matrix(p)
    n, m = p.n, p.m
    if k >= n:
        if p.is_linear:
            chosen = {order[0] for order in p.linear_orders}
        else:
            chosen = {min(s) for s in p.approval_sets if s}
        return evaluate(p, "cc", _pad(p, chosen, k), "partition")

    block_cache: dict[int, tuple[int, int]] = {}

    def block_best(mask: int) -> tuple[int, int]:
        hit = block_cache.get(mask)
        if hit is None:
            voters = [v for v in range(n) if mask >> v & 1]
            hit = min((sum(cost[v][a] for v in voters), a) for a in range(m))
            block_cache[mask] = hit
        return hit

    best_val, candidates = None, []
    nodes = 0
    blocks: list[int] = []

    def rec(v: int) -> None:
        nonlocal best_val, candidates, nodes
        if v == n:
            nodes += 1
            _require_budget(nodes, node_budget)
            total, alts = 0, set()
            for mask in blocks:
                c, a = block_best(mask)
                total += c
                alts.add(a)
            if best_val is None or total < best_val:
                best_val, candidates = total, [alts]
            elif total == best_val:
                candidates.append(alts)
            return
        for i in range(len(blocks)):
            blocks[i] |= 1 << v
            rec(v + 1)
            blocks[i] &= ~(1 << v)
        if len(blocks) < k:
            blocks.append(1 << v)
            rec(v + 1)
            blocks.pop()

    rec(0)
    sols = [evaluate(p, "cc", _pad(p, alts, k), "partition") for alts in candidates]
    return min(sols, key=lambda s: (s.objective, s.committee))


def _undominated(ranks: list[list[int]], m: int, R: int) -> set:
    """Alternatives not dominated by another for every type (ranks capped at ``R + 1``).

    Equal columns keep their smallest index, so the relation is a strict
    order and every dropped alternative has a kept dominator.
    """
    if not ranks:
        return set(range(m))
    D = np.minimum(np.asarray(ranks, dtype=np.int64), R + 1)
    keep = set()
    idx = np.arange(m)
    for a in range(m):
        col = D[:, a:a + 1]
        weak = (D <= col).all(axis=0)
        strict = (D < col).any(axis=0)
        if not (weak & (strict | (idx < a))).any():
            keep.add(a)
    return keep


def solve_cc_xp_misrep(instance: MultiWinnerInstance,
                       node_budget: Optional[int] = None) -> Optional[CommitteeSolution]:
    """Decide whether some committee has CC misrepresentation at most ``R``.

    Voters with identical rankings are merged into weighted types. Each type is
    either served by its top choice or by an alternative of rank at most ``R``;
    a type only ever considers its best current member or a strictly better new
    alternative, and a coverage bound prunes states that cannot fit in ``k``
    seats within the remaining budget. Alternatives dominated by another one
    for every type, with ranks above ``R`` treated as equal, are never needed
    and are dropped up front.
    """
    p, k = instance.profile, instance.k
    if not p.is_linear:
        raise UnsupportedKindError("the XP misrepresentation search needs a linear profile")
    if instance.bound is None:
        raise ContractError("a misrepresentation bound R is required")
    R = int(instance.bound)  # ranks are integers, so floor(R) is equivalent
    counts: dict[tuple, int] = {}
    for o in p.linear_orders:
        counts[o] = counts.get(o, 0) + 1
    types = sorted(counts.items(), key=lambda t: (-t[1], t[0]))
    orders = [t[0] for t in types]
    mult = [t[1] for t in types]
    ranks = []
    for o in orders:
        r = [0] * p.m
        for pos, a in enumerate(o):
            r[a] = pos
        ranks.append(r)
    T = len(types)
    keep = _undominated(ranks, p.m, R)
    orders = [[a for a in o[:R + 1] if a in keep] for o in orders]
    failed: dict[tuple[int, frozenset], int] = {}
    nodes = 0

    def lower_bound(idx: int, chosen: frozenset, spent: int) -> int:
        """Cost lower bound for types idx.. given that at most k-|chosen| seats remain.

        Each type's cost is capped at ``R + 1``, which any failing type exceeds.
        """
        seats = k - len(chosen)
        base = 0
        saving: dict[int, int] = {}
        for t in range(idx, T):
            r = ranks[t]
            cur = min(min((r[a] for a in chosen), default=R + 1), R + 1)
            c = mult[t]
            if cur == 0:
                continue
            base += c * cur
            for a in orders[t]:
                if r[a] >= cur:
                    break
                saving[a] = saving.get(a, 0) + c * (cur - r[a])
        gains = sorted(saving.values(), reverse=True)[:seats]
        return spent + max(0, base - sum(gains))

    def rec(idx: int, chosen: frozenset, spent: int):
        nonlocal nodes
        nodes += 1
        _require_budget(nodes, node_budget)
        if idx == T:
            return chosen
        key = (idx, chosen)
        if failed.get(key, R + 1) <= spent:
            return None
        if lower_bound(idx, chosen, spent) > R:
            failed[key] = min(failed.get(key, R + 1), spent)
            return None
        r, c = ranks[idx], mult[idx]
        best_in = min(chosen, key=lambda a: (r[a], a)) if chosen else None
        limit = r[best_in] if best_in is not None else p.m
        if best_in is not None and limit == 0:
            res = rec(idx + 1, chosen, spent)
            if res is not None:
                return res
        else:
            if len(chosen) < k:
                for a in orders[idx]:
                    if r[a] >= limit:
                        break
                    extra = c * r[a]
                    if spent + extra > R:
                        break
                    res = rec(idx + 1, chosen | {a}, spent + extra)
                    if res is not None:
                        return res
            if best_in is not None and spent + c * limit <= R:
                res = rec(idx + 1, chosen, spent + c * limit)
                if res is not None:
                    return res
        failed[key] = min(failed.get(key, R + 1), spent)
        return None

    found = rec(0, frozenset(), 0)
    if found is None:
        return None
    sol = evaluate(p, "cc", _pad(p, found, k), "xp-misrep")
    if sol.objective > R:  # pragma: no cover - guarded by construction
        raise AssertionError("witness exceeds the bound")
    return sol


def pav_greedy_small_score(instance: MultiWinnerInstance) -> CommitteeSolution:
    """Greedy committee whose PAV score is at least ``min(k, n')``.

    ``n'`` counts voters with a nonempty approval set. Each step prefers an
    unused alternative whose supporters are all still uncovered, then any
    alternative approved by some uncovered voter, then the smallest unused one.
    Every step of the first two kinds covers a new voter, which yields the bound.
    """
    p, k = instance.profile, instance.k
    if p.is_linear:
        raise UnsupportedKindError("PAV needs an approval profile")
    S = instance.bound if instance.bound is not None else Fraction(0)
    active = [v for v in range(p.n) if p.approval_sets[v]]
    if S > min(k, len(active)):
        raise ContractError(f"greedy needs S <= min(k, n') = {min(k, len(active))}, got S = {S}")
    supporters = [frozenset(v for v in active if a in p.approval_sets[v]) for a in range(p.m)]
    chosen: list[int] = []
    covered: set[int] = set()
    while len(chosen) < k:
        free = [a for a in range(p.m) if a not in chosen]
        pick = next((a for a in free if supporters[a] and not (supporters[a] & covered)), None)
        if pick is None:
            pick = next((a for a in free if supporters[a] - covered), None)
        if pick is None:
            pick = free[0]
        chosen.append(pick)
        covered |= supporters[pick]
    sol = CommitteeSolution(tuple(sorted(chosen)), None, pav_score(p, chosen), "pav", "greedy")
    if sol.objective < S:  # pragma: no cover - the covering argument forbids it
        raise AssertionError("greedy committee below the score bound")
    return sol


def _pav_by_voter_types(profile: PreferenceProfile, k: int, node_budget: Optional[int]):
    """Exact PAV optimum after merging alternatives with identical supporter sets.

    Only the number of seats given to each supporter-set class matters, so the
    search ranges over at most ``2^n`` classes and is practical when ``n`` is small.
    """
    classes: dict[frozenset, list[int]] = {}
    for a in range(profile.m):
        sup = frozenset(v for v in range(profile.n) if a in profile.approval_sets[v])
        classes.setdefault(sup, []).append(a)
    keys = sorted(classes, key=lambda s: (-len(s), classes[s][0]))
    best = [None, None]
    nodes = 0
    load = [0] * profile.n

    def score_of() -> Fraction:
        return sum((harmonic(x) for x in load), Fraction(0))

    picked: list[int] = []

    def rec(i: int, left: int):
        nonlocal nodes
        nodes += 1
        _require_budget(nodes, node_budget)
        if left == 0 or i == len(keys):
            if left:
                return
            s = score_of()
            comm = tuple(sorted(picked))
            if best[0] is None or s > best[0] or (s == best[0] and comm < best[1]):
                best[0], best[1] = s, comm
            return
        sup, alts = keys[i], classes[keys[i]]
        rest = sum(len(classes[key]) for key in keys[i + 1:])
        for c in range(min(left, len(alts)), -1, -1):
            if left - c > rest:
                break
            for v in sup:
                load[v] += c
            picked.extend(alts[:c])
            rec(i + 1, left - c)
            del picked[len(picked) - c:]
            for v in sup:
                load[v] -= c

    rec(0, k)
    return best[0], best[1]


def solve_pav_score_xp(instance: MultiWinnerInstance,
                       node_budget: Optional[int] = None) -> Optional[CommitteeSolution]:
    """Decide whether some committee reaches PAV score ``S``.

    Small bounds go to the greedy construction, bounds of at least ``n`` to
    the exact search over supporter-set classes and the rest to committee
    enumeration.
    """
    p, k = instance.profile, instance.k
    if p.is_linear:
        raise UnsupportedKindError("PAV needs an approval profile")
    if instance.bound is None:
        raise ContractError("a score bound S is required")
    S = instance.bound
    active = sum(1 for s in p.approval_sets if s)
    if S <= min(k, active):
        return pav_greedy_small_score(instance)
    if S >= active:
        value, comm = _pav_by_voter_types(p, k, node_budget)
        algo = "xp-voters"
    else:
        sol = solve_by_committee_enumeration(instance, "pav", node_budget)
        value, comm = sol.objective, sol.committee
        algo = "xp-enum"
    if value < S:
        return None
    return CommitteeSolution(comm, None, pav_score(p, comm), "pav", algo)


InnerSolver = Callable[[PreferenceProfile, int, Sequence[int]], tuple[int, tuple[int, ...]]]


def exact_mav_inner(profile: PreferenceProfile, k: int, offsets: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Exact inner MAV solver: minimise ``max_v offsets[v] + |V_v xor W|`` over size-``k`` committees."""
    return kernels.mav_best(profile.approval_masks, list(offsets), profile.m, k)


def solve_mav_with_deletion_set(instance: MultiWinnerInstance, deleted: Sequence[int],
                                inner: Optional[InnerSolver] = None) -> CommitteeSolution:
    """MAV via a deletion set to a single-peaked or single-crossing profile.

    Every subset of ``deleted`` is tried as the deleted part of the committee;
    the remaining seats go to ``inner`` on the structured residual profile, with
    each voter's distance on the deleted alternatives passed as an offset.
    """
    p, k = instance.profile, instance.k
    if p.is_linear:
        raise UnsupportedKindError("MAV needs an approval profile")
    deleted = sorted(set(int(a) for a in deleted))
    if any(not (0 <= a < p.m) for a in deleted):
        raise DomainError("deleted alternative out of range")
    keep = [a for a in range(p.m) if a not in deleted]
    residual = p.restrict(alternatives=keep)
    if recognize_sp(residual) is None and recognize_sc(residual) is None:
        raise ContractError("profile minus the deletion set is neither single-peaked nor single-crossing")
    inner = inner or exact_mav_inner
    dset = set(deleted)
    best = None
    for size in range(0, min(len(deleted), k) + 1):
        rest = k - size
        if rest > len(keep):
            continue
        for part in combinations(deleted, size):
            part_set = set(part)
            offsets = [len((s & dset) ^ part_set) for s in p.approval_sets]
            if rest == 0:
                value = max((o + len(s - dset) for o, s in zip(offsets, p.approval_sets)), default=0)
                inside = ()
            else:
                value, inside = inner(residual, rest, offsets)
            committee = tuple(sorted(part_set | {keep[a] for a in inside}))
            if best is None or (value, committee) < best:
                best = (value, committee)
    value, committee = best
    if mav_distance(p, committee) != value:  # pragma: no cover - inner solver contract
        raise ContractError("inner solver reported an inconsistent value")
    return CommitteeSolution(committee, None, value, "mav", "deletion-set")
