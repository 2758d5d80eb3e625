"""Stability verification with certifying witnesses."""

from __future__ import annotations

from math import comb
from typing import Iterator, Optional

from .. import kernels
from ..errors import DomainError, ResourceLimitError
from .model import (
    ADDITIVE, BLOCKING, ENVY, FA, MODEL_CODE, TUPLE, WEAKLY_BLOCKING,
    HedonicInstance, Partition, Witness, check_partition,
)

NASH, INDIV, CORE, STRICT_CORE = "nash", "indiv", "core", "strict_core"
CONCEPTS = (NASH, INDIV, CORE, STRICT_CORE)
ALIASES = {"is": INDIV, "individual": INDIV, "score": STRICT_CORE, "strict-core": STRICT_CORE}
DEFAULT_NODE_BUDGET = 1 << 24


def check_concept(concept: str) -> str:
    concept = ALIASES.get(concept.lower(), concept.lower())
    if concept not in CONCEPTS:
        raise DomainError(f"unknown stability concept {concept!r}")
    return concept


def _targets(partition: Partition, agent: int):
    yield frozenset()
    own = partition.of(agent)
    for c in partition.coalitions:
        if c is not own:
            yield c


def envy_witnesses(instance: HedonicInstance, partition: Partition) -> Iterator[Witness]:
    """Every ``(agent, B)`` with ``B`` in the partition or empty that the agent envies."""
    check_partition(instance, partition)
    for i in range(instance.n):
        here = instance.value(i, partition.of(i))
        for B in _targets(partition, i):
            if instance.value(i, B | {i}) > here:
                yield Witness(ENVY, frozenset({i}), B)


def blocking_tuples(instance: HedonicInstance, partition: Partition) -> Iterator[Witness]:
    """Every blocking tuple ``(agent, B)`` with ``B`` in the partition or empty."""
    check_partition(instance, partition)
    for i in range(instance.n):
        here = instance.value(i, partition.of(i))
        for B in _targets(partition, i):
            joined = B | {i}
            if instance.value(i, joined) > here and all(
                instance.value(j, joined) >= instance.value(j, B) for j in B
            ):
                yield Witness(TUPLE, frozenset({i}), B)


def is_blocking(instance: HedonicInstance, partition: Partition, coalition, weak: bool) -> bool:
    """Whether ``coalition`` strictly (or, with ``weak``, weakly) blocks."""
    B = frozenset(coalition)
    if not B or any(not (0 <= a < instance.n) for a in B):
        return False
    strict_seen = False
    for a in B:
        new, old = instance.value(a, B), instance.value(a, partition.of(a))
        if new > old:
            strict_seen = True
        elif new < old or not weak:
            return False
    return strict_seen


def check_witness(instance: HedonicInstance, partition: Partition, witness: Witness) -> bool:
    """Re-verify a witness against its defining predicate."""
    if witness.kind in (ENVY, TUPLE):
        if len(witness.agents) != 1 or witness.target is None:
            return False
        i = witness.agent
        B = witness.target
        if B and B not in partition.coalitions:
            return False
        if B == partition.of(i):
            return False
        joined = B | {i}
        if instance.value(i, joined) <= instance.value(i, partition.of(i)):
            return False
        if witness.kind == TUPLE:
            return all(instance.value(j, joined) >= instance.value(j, B) for j in B)
        return True
    if witness.kind == BLOCKING:
        return is_blocking(instance, partition, witness.agents, weak=False)
    if witness.kind == WEAKLY_BLOCKING:
        return is_blocking(instance, partition, witness.agents, weak=True)
    return False


def _current_codes(instance: HedonicInstance, partition: Partition) -> list[int]:
    return [instance.code(i, partition.of(i)) for i in range(instance.n)]


def _best_codes(instance: HedonicInstance) -> list[int]:
    """Upper bound on each agent's value over all coalitions."""
    n = instance.n
    if instance.model == ADDITIVE:
        return [sum(u for u in row if u > 0) for row in instance.util_matrix]
    if instance.model == FA:
        return [len(instance.out_neighbors[i]) * n + (n - 1) for i in range(n)]
    return [(n - 1) * n + len(instance.out_neighbors[i]) for i in range(n)]


def search_blocking(instance: HedonicInstance, partition: Partition, weak: bool,
                    min_size: int = 1, max_size: Optional[int] = None,
                    node_budget: Optional[int] = DEFAULT_NODE_BUDGET) -> Optional[frozenset]:
    """First (size, then lex) blocking coalition within the size window.

    Agents that cannot reach their current value in any coalition are
    dropped first. Raises :class:`ResourceLimitError` when the number of
    subsets to inspect exceeds ``node_budget``.
    """
    check_partition(instance, partition)
    n = instance.n
    cur = _current_codes(instance, partition)
    best = _best_codes(instance)
    cands = [i for i in range(n) if best[i] > cur[i] or (weak and best[i] >= cur[i])]
    top = len(cands) if max_size is None else min(max_size, len(cands))
    if node_budget is not None:
        work = sum(comb(len(cands), s) for s in range(max(min_size, 1), top + 1))
        if work > node_budget:
            raise ResourceLimitError(f"core search needs {work} subsets, budget is {node_budget}")
    model = instance.model
    mask = kernels.first_blocking(
        MODEL_CODE[model], n,
        instance.util_matrix if model == ADDITIVE else None,
        None if model == ADDITIVE else list(instance.friend_masks),
        cur, cands, weak, min_size, top,
    )
    if mask < 0:
        return None
    return frozenset(i for i in range(n) if mask >> i & 1)


def verify(instance: HedonicInstance, partition: Partition, concept: str,
           node_budget: Optional[int] = DEFAULT_NODE_BUDGET) -> Optional[Witness]:
    """Return a witness refuting ``concept`` for ``partition``, or ``None`` if stable.

    ``nash`` and ``indiv`` scan agents in increasing order and targets with the
    empty coalition first, then partition coalitions by smallest member.
    ``core`` and ``strict_core`` return the first strictly (resp. weakly)
    blocking coalition by size, then lexicographically.
    """
    concept = check_concept(concept)
    if concept == NASH:
        return next(envy_witnesses(instance, partition), None)
    if concept == INDIV:
        return next(blocking_tuples(instance, partition), None)
    weak = concept == STRICT_CORE
    found = search_blocking(instance, partition, weak, node_budget=node_budget)
    if found is None:
        return None
    return Witness(WEAKLY_BLOCKING if weak else BLOCKING, found)
