"""Kernelization of the PAV decision problem for max approval size ``b`` and score ``S``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..errors import ContractError, UnsupportedKindError
from ..profiles import PreferenceProfile
from .objectives import pav_score
from .solvers import CommitteeSolution, MultiWinnerInstance, pav_greedy_small_score


@dataclass(frozen=True)
class KernelOutcome:
    """Result of :func:`pav_kernelize`.

    ``verdict`` is ``"yes"`` (with a ``witness`` committee of the original
    instance) or ``"reduced"`` (with an equivalent ``reduced_instance``).
    ``alt_map[j]`` and ``voter_map[i]`` give the original index of reduced
    alternative ``j`` and voter ``i``; ``reason`` names the deciding rule.
    """

    verdict: str
    reduced_instance: Optional[MultiWinnerInstance]
    alt_map: tuple[int, ...] = ()
    voter_map: tuple[int, ...] = ()
    witness: Optional[CommitteeSolution] = None
    reason: str = ""
    trace: tuple[str, ...] = field(default=(), compare=False)


def _greedy_disjoint(alts, sup, limit=None) -> list[int]:
    picked, used = [], set()
    for a in alts:
        if not (sup[a] & used):
            picked.append(a)
            used |= sup[a]
            if limit is not None and len(picked) >= limit:
                break
    return picked


def pav_kernelize(instance: MultiWinnerInstance) -> KernelOutcome:
    """Reduce a PAV instance ``(profile, k, S)`` or certify a yes-answer.

    Rules, in order: drop empty voters and unsupported alternatives; an
    alternative with ``S`` supporters; the greedy bound ``S <= min(k, n)``; the
    trivial kernel for ``S >= n``; cap each supporter-set class at ``k``
    alternatives; the large-support rule ``|A(a)| >= ceil(S / ln k)``; disjoint
    selections inside each support level ``l`` in ``[ceil(S/k), ceil(S/ln k))``;
    finally, walking support levels ``j`` downwards, if the level-``j``
    alternatives whose voters approve nothing with larger support contain
    ``(k-1)j + 1`` alternatives with pairwise disjoint supporters, every
    optimal committee avoids lower levels and the rest of that class, which
    are deleted. Every yes-witness is re-checked with the exact score.
    """
    p, k = instance.profile, instance.k
    if p.is_linear:
        raise UnsupportedKindError("PAV needs an approval profile")
    if instance.bound is None:
        raise ContractError("a score bound S is required")
    S = instance.bound
    trace: list[str] = []

    def yes(committee, reason) -> KernelOutcome:
        comm = set(committee)
        for a in range(p.m):
            if len(comm) >= k:
                break
            comm.add(a)
        comm = tuple(sorted(comm))
        score = pav_score(p, comm)
        if score < S:  # pragma: no cover - each rule certifies its bound
            raise AssertionError(f"rule {reason} produced a committee below S")
        trace.append(reason)
        return KernelOutcome("yes", None, witness=CommitteeSolution(comm, None, score, "pav", "kernel"),
                             reason=reason, trace=tuple(trace))

    def reduced(alts, reason) -> KernelOutcome:
        alts = sorted(alts)
        if not alts:
            # nothing can be approved: a one-alternative, voterless NO instance
            empty = PreferenceProfile.from_approvals([], 1)
            trace.append(reason)
            return KernelOutcome("reduced", MultiWinnerInstance(empty, 1, S), (0,), (), None,
                                 reason, tuple(trace))
        keep = set(alts)
        voters = [v for v in range(p.n) if p.approval_sets[v] & keep]
        sub = p.restrict(voters=voters, alternatives=alts)
        trace.append(reason)
        return KernelOutcome("reduced", MultiWinnerInstance(sub, min(k, len(alts)), S),
                             tuple(alts), tuple(voters), None, reason, tuple(trace))

    if S <= 0:
        return yes((), "zero-bound")
    active = [v for v in range(p.n) if p.approval_sets[v]]
    sup = {a: frozenset(v for v in active if a in p.approval_sets[v]) for a in range(p.m)}
    alts = [a for a in range(p.m) if sup[a]]
    if not alts:
        return reduced([], "no-support")
    k1 = min(k, len(alts))

    for a in alts:
        if len(sup[a]) >= S:
            return yes((a,), "popular-alternative")
    if S <= min(k, len(active)):
        return yes(pav_greedy_small_score(MultiWinnerInstance(p, k, S)).committee, "greedy")
    if S >= len(active):
        return reduced(alts, "few-voters")
    if k1 == 1:
        # a single seat scores at most max |A(a)| < S
        return reduced([], "single-seat")

    classes: dict[frozenset, list[int]] = {}
    for a in alts:
        classes.setdefault(sup[a], []).append(a)
    capped = sorted(a for group in classes.values() for a in group[:k1])
    if len(capped) < len(alts):
        trace.append("cap-duplicates")
    alts = capped

    high = math.ceil(S / Fraction(math.log(k1)))
    L = [a for a in alts if len(sup[a]) >= high]
    if len(L) >= k1:
        comm = L[:k1]
        if pav_score(p, comm) >= S:
            return yes(comm, "large-support")
    low = math.ceil(S / k1)
    for ell in range(low, high):
        level = [a for a in alts if len(sup[a]) == ell]
        picked = _greedy_disjoint(level, sup, k1)
        if len(picked) >= k1:
            return yes(picked, f"disjoint-level-{ell}")

    for j in range(low - 1, 0, -1):
        above = set()
        for a in alts:
            if len(sup[a]) > j:
                above |= sup[a]
        Y = [a for a in alts if len(sup[a]) == j and not (sup[a] & above)]
        need = (k1 - 1) * j + 1
        D = _greedy_disjoint(Y, sup, need)
        if len(D) >= need:
            drop = {a for a in alts if len(sup[a]) < j} | (set(Y) - set(D))
            alts = [a for a in alts if a not in drop]
            trace.append(f"prune-level-{j}")
            break
    return reduced(alts, "bounded")
