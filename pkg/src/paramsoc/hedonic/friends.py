"""Core verification and construction under friend appreciation."""

from __future__ import annotations

import math
from itertools import combinations
from typing import Optional

import networkx as nx
import numpy as np

from ..errors import ResourceLimitError, UnsupportedKindError
from .model import BLOCKING, FA, WEAKLY_BLOCKING, HedonicInstance, Partition, Witness, check_partition
from .stability import DEFAULT_NODE_BUDGET, is_blocking, search_blocking

STRICT, WEAK = "strict", "weak"


def _require_fa(instance: HedonicInstance) -> None:
    if instance.model != FA:
        raise UnsupportedKindError("this verifier needs a friend-appreciation instance")


def _check_mode(mode: str) -> bool:
    if mode not in (STRICT, WEAK):
        raise ValueError(f"mode must be {STRICT!r} or {WEAK!r}")
    return mode == WEAK


def _kind(weak: bool) -> str:
    return WEAKLY_BLOCKING if weak else BLOCKING


def _friend_counts(instance: HedonicInstance, partition: Partition) -> list[int]:
    fr = instance.out_neighbors
    return [len(fr[i] & partition.of(i)) for i in range(instance.n)]


def fa_unbounded_blocking(instance: HedonicInstance, partition: Partition,
                          mode: str = STRICT) -> Optional[Witness]:
    """Blocking coalition larger than the largest coalition of ``partition``.

    Peels agents from the grand coalition until every survivor has more
    friends among the survivors than in its own coalition. A coalition of
    size above ``kappa`` blocks (weakly or strictly, which coincide at that
    size) exactly when all its members gain a friend, so the fixpoint is the
    largest such coalition; it is returned when it exceeds ``kappa``.
    """
    _require_fa(instance)
    weak = _check_mode(mode)
    check_partition(instance, partition)
    base = _friend_counts(instance, partition)
    fr = instance.out_neighbors
    alive = set(range(instance.n))
    inside = {i: len(fr[i] & alive) for i in alive}
    queue = [i for i in alive if inside[i] <= base[i]]
    while queue:
        i = queue.pop()
        if i not in alive:
            continue
        alive.discard(i)
        for j in alive:
            if i in fr[j]:
                inside[j] -= 1
                if inside[j] == base[j]:
                    queue.append(j)
    if len(alive) > partition.kappa:
        return Witness(_kind(weak), frozenset(alive))
    return None


def fa_core_verify_bounded(instance: HedonicInstance, partition: Partition, mode: str = STRICT,
                           node_budget: Optional[int] = DEFAULT_NODE_BUDGET) -> Optional[Witness]:
    """Exact core (``strict``) or strict-core (``weak``) verification.

    Enumerates coalitions up to size ``kappa`` (``kappa + 1`` in weak mode)
    in (size, lex) order, then falls back to :func:`fa_unbounded_blocking`.
    """
    _require_fa(instance)
    weak = _check_mode(mode)
    top = partition.kappa + (1 if weak else 0)
    found = search_blocking(instance, partition, weak, max_size=top, node_budget=node_budget)
    if found is not None:
        return Witness(_kind(weak), found)
    return fa_unbounded_blocking(instance, partition, mode)


def fa_scc_partition(instance: HedonicInstance) -> Partition:
    """Partition into strongly connected components of the friendship digraph."""
    _require_fa(instance)
    g = nx.DiGraph()
    g.add_nodes_from(range(instance.n))
    g.add_edges_from(instance.friendship)
    return Partition.from_lists(nx.strongly_connected_components(g), instance.n)


def trial_count(size: int, delta: float) -> int:
    """Colorings needed to hit a fixed ``size``-vertex set colorfully w.p. ``1 - delta``."""
    if size <= 1:
        return 1
    return math.ceil(math.exp(size) * size * math.log(1.0 / delta))


def _sink_component(instance: HedonicInstance, coalition) -> Optional[frozenset]:
    g = nx.DiGraph()
    g.add_nodes_from(coalition)
    g.add_edges_from((i, j) for i, j in instance.friendship if i in coalition and j in coalition)
    if nx.is_strongly_connected(g):
        return None
    cond = nx.condensation(g)
    sinks = [frozenset(cond.nodes[c]["members"]) for c in cond if cond.out_degree(c) == 0]
    return min(sinks, key=lambda s: sorted(s))


def _singleton_cycle(instance: HedonicInstance, singles: set) -> Optional[frozenset]:
    g = nx.DiGraph()
    g.add_nodes_from(singles)
    g.add_edges_from((i, j) for i, j in instance.friendship if i in singles and j in singles)
    comps = [frozenset(c) for c in nx.strongly_connected_components(g) if len(c) > 1]
    return min(comps, key=lambda s: sorted(s)) if comps else None


class _PhaseTwo:
    """Search for a blocking coalition mixing chosen non-singletons with singletons."""

    def __init__(self, instance, partition, rng, delta, exhaustive_cutoff):
        self.inst = instance
        self.part = partition
        self.fr = instance.out_neighbors
        self.rng = rng
        self.delta = delta
        self.cutoff = exhaustive_cutoff
        self.singles = sorted(a for c in partition.coalitions if len(c) == 1 for a in c)
        sset = set(self.singles)
        self.children = {v: sorted(u for u in sset if v in self.fr[u]) for v in self.singles}
        g = nx.DiGraph()
        g.add_nodes_from(self.singles)
        g.add_edges_from((u, v) for v in self.singles for u in self.children[v])
        self.topo = list(nx.lexicographical_topological_sort(g))
        self.base = _friend_counts(instance, partition)

    def requirements(self, members, b):
        """Singleton friends each member needs, or ``None`` if impossible."""
        q = b - len(members)
        need = {}
        for a in members:
            own = len(self.part.of(a))
            have = len(self.fr[a] & members)
            r = max(0, self.base[a] - have + (1 if b >= own else 0))
            if r > q:
                return None
            need[a] = r
        return need

    def search(self, members: frozenset, b: int) -> Optional[frozenset]:
        q = b - len(members)
        need = self.requirements(members, b)
        if need is None:
            return None
        if q == 0:
            return members if is_blocking(self.inst, self.part, members, weak=False) else None
        grounded = {s for s in self.singles if self.fr[s] & members}
        # singletons that can reach a grounded singleton inside the singleton layer
        cands, stack = set(grounded), list(grounded)
        while stack:
            v = stack.pop()
            for u in self.children[v]:
                if u not in cands:
                    cands.add(u)
                    stack.append(u)
        if len(cands) < q:
            return None
        for a, r in need.items():
            if len(self.fr[a] & cands) < r:
                return None
        trials = trial_count(q, self.delta)
        cutoff = trials if self.cutoff is None else self.cutoff
        if math.comb(len(cands), q) <= cutoff:
            for X in combinations(sorted(cands), q):
                B = members | frozenset(X)
                if is_blocking(self.inst, self.part, B, weak=False):
                    return B
            return None
        req = [(a, r) for a, r in sorted(need.items()) if r > 0]
        order = [v for v in self.topo if v in cands]
        for _ in range(trials):
            colors = dict(zip(order, self.rng.integers(0, q, size=len(order)).tolist()))
            X = self._colorful_forest(order, colors, q, req, grounded, cands)
            if X is not None:
                B = members | X
                if is_blocking(self.inst, self.part, B, weak=False):
                    return B
        return None

    def _colorful_forest(self, order, colors, q, req, grounded, cands):
        """Colorful in-forest whose roots have a friend among the members.

        ``T[v]`` maps ``(colors used, capped requirement counts)`` to a vertex
        set forming an in-tree rooted at ``v``; roots are then merged.
        """
        caps = tuple(r for _, r in req)

        def add(vec1, vec2):
            return tuple(min(c, x + y) for c, x, y in zip(caps, vec1, vec2))

        T = {}
        for v in order:
            vec = tuple(1 if v in self.fr[a] else 0 for a, _ in req)
            states = {(1 << colors[v], add(vec, (0,) * len(caps))): 1 << v}
            for u in self.children[v]:
                if u not in cands:
                    continue
                for (c1, v1), s1 in list(states.items()):
                    for (c2, v2), s2 in T[u].items():
                        if not c1 & c2:
                            states.setdefault((c1 | c2, add(v1, v2)), s1 | s2)
            T[v] = states
        full = (1 << q) - 1
        forest = {(0, (0,) * len(caps)): 0}
        for v in order:
            if v not in grounded:
                continue
            for (c1, v1), s1 in list(forest.items()):
                for (c2, v2), s2 in T[v].items():
                    if not c1 & c2:
                        key = (c1 | c2, add(v1, v2))
                        if key not in forest:
                            forest[key] = s1 | s2
                            if key == (full, caps):
                                mask = s1 | s2
                                return frozenset(i for i in cands if mask >> i & 1)
        return None


def fa_core_verify_colorcoded(instance: HedonicInstance, partition: Partition, delta: float = 1e-3,
                              seed: int = 0, exhaustive_cutoff: Optional[int] = None,
                              node_budget: Optional[int] = DEFAULT_NODE_BUDGET) -> Optional[Witness]:
    """Randomized core verification parameterized by ``kappa`` and the feedback number.

    Phase one reports the sink component of a coalition that is not strongly
    connected, a cycle among singleton agents, or a large blocking coalition
    found by peeling. Phase two tries every set of at most ``kappa``
    non-singleton agents with every target size ``b <= kappa`` and looks for
    singletons completing a blocking coalition; these form an in-forest
    rooted at agents with a friend among the chosen members, found by
    color-coding. A returned witness is always valid; ``None`` is wrong with
    probability at most ``delta`` per candidate. Candidate sets with at most
    ``exhaustive_cutoff`` singleton choices (default: the trial count) are
    checked exhaustively instead.
    """
    _require_fa(instance)
    check_partition(instance, partition)
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    for c in partition.coalitions:
        if len(c) > 1:
            sink = _sink_component(instance, c)
            if sink is not None:
                return Witness(BLOCKING, sink)
    singles = {a for c in partition.coalitions if len(c) == 1 for a in c}
    cyc = _singleton_cycle(instance, singles)
    if cyc is not None:
        return Witness(BLOCKING, cyc)
    big = fa_unbounded_blocking(instance, partition, STRICT)
    if big is not None:
        return big
    kappa = partition.kappa
    nonsingles = sorted(set(range(instance.n)) - singles)
    work = sum(math.comb(len(nonsingles), s) for s in range(1, kappa + 1)) * kappa
    if node_budget is not None and work > node_budget:
        raise ResourceLimitError(f"phase two needs {work} candidates, budget is {node_budget}")
    phase = _PhaseTwo(instance, partition, np.random.default_rng(seed), delta, exhaustive_cutoff)
    for b in range(1, kappa + 1):
        for size in range(1, b + 1):
            for members in combinations(nonsingles, size):
                found = phase.search(frozenset(members), b)
                if found is not None:
                    return Witness(BLOCKING, found)
    return None
