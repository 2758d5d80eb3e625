"""Searching for stable partitions."""

from __future__ import annotations

from typing import Optional

from ..errors import ContractError, DomainError, ResourceLimitError, UnsupportedKindError
from .model import ADDITIVE, EA, HedonicInstance, Partition
from .stability import NASH, verify

DEFAULT_UTILITY_CAP = 10**6


def welfare(instance: HedonicInstance, partition: Partition) -> int:
    """Utilitarian welfare: the sum of every agent's utility for its coalition."""
    return sum(instance.value(i, partition.of(i)) for i in range(instance.n))


def nash_search_symmetric(instance: HedonicInstance, utility_cap: int = DEFAULT_UTILITY_CAP,
                          ledger: Optional[list] = None) -> Partition:
    """Nash-stable partition of a symmetric additive game by improving moves.

    Starts from singletons and lets the first envious agent move. Each move
    raises welfare by twice the mover's gain, so at most ``n^2 max|u|`` moves
    happen. The welfare after each move is appended to ``ledger`` if given.
    """
    if instance.model != ADDITIVE:
        raise UnsupportedKindError("nash_search_symmetric needs an additive instance")
    if not instance.symmetric:
        raise ContractError("utilities must be symmetric")
    peak = max((abs(u) for _, u in instance.utilities), default=0)
    if peak > utility_cap:
        raise ContractError(f"max |u| = {peak} exceeds the cap {utility_cap}")
    n = instance.n
    limit = n * n * peak
    coalitions = [frozenset({i}) for i in range(n)]
    part = Partition(tuple(coalitions))
    moves = 0
    while True:
        w = verify(instance, part, NASH)
        if w is None:
            return part
        moves += 1
        if moves > limit:  # pragma: no cover - excluded by the welfare argument
            raise ResourceLimitError("improving moves exceeded the welfare bound")
        i, target = w.agent, w.target
        rest = [c for c in part.coalitions if c != target and i not in c]
        left = part.of(i) - {i}
        if left:
            rest.append(left)
        rest.append(target | {i})
        part = Partition.from_lists(rest, n)
        if ledger is not None:
            ledger.append(welfare(instance, part))


def mutual_agents(instance: HedonicInstance) -> list[int]:
    """Agents with at least one mutual friendship."""
    fr = instance.out_neighbors
    return sorted({i for i, j in instance.friendship if i in fr[j]})


def ea_nash_exist_fas(instance: HedonicInstance, node_budget: Optional[int] = 1 << 22) -> Optional[Partition]:
    """Nash-stable partition under enemy aversion, or ``None`` if none exists.

    In such a partition every coalition consists of pairwise mutual friends,
    so only agents on mutual friendships (at most twice the feedback arc
    number) can share a coalition. Their partitions into mutual cliques are
    enumerated in restricted-growth order with everyone else alone.
    """
    if instance.model != EA:
        raise UnsupportedKindError("ea_nash_exist_fas needs an enemy-aversion instance")
    fr = instance.out_neighbors
    agents = mutual_agents(instance)
    others = [frozenset({i}) for i in range(instance.n) if i not in set(agents)]
    nodes = 0

    def mutual(i, j):
        return j in fr[i] and i in fr[j]

    blocks: list[list[int]] = []

    def rec(idx):
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise ResourceLimitError(f"partition search exceeded {node_budget} nodes")
        if idx == len(agents):
            part = Partition.from_lists([*blocks, *others], instance.n)
            return part if verify(instance, part, NASH) is None else None
        a = agents[idx]
        for blk in blocks:
            if all(mutual(a, x) for x in blk):
                blk.append(a)
                found = rec(idx + 1)
                blk.pop()
                if found is not None:
                    return found
        blocks.append([a])
        found = rec(idx + 1)
        blocks.pop()
        return found

    result = rec(0)
    if result is not None:
        for c in result.coalitions:
            if any(not mutual(i, j) for i in c for j in c if i != j):  # pragma: no cover
                raise DomainError("Nash-stable coalition with a non-mutual pair")
    return result
