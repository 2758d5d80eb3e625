"""Structural parameters of hedonic instances."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .model import ADDITIVE, EA, HedonicInstance, Partition, check_partition

FAS_NODE_LIMIT = 200_000


@dataclass(frozen=True)
class ParameterReport:
    """Parameters of an instance (and optionally a partition).

    ``feedback_number`` is the feedback arc number of the preference digraph,
    except for enemy aversion where it is the feedback edge number of the
    mutual-friendship graph; ``feedback_arc_number`` is always the digraph
    value. ``feedback_set`` is the removed arc or edge set and
    ``feedback_certified`` tells whether it is provably minimum.
    """

    max_degree: int
    distinct_utility_count: int
    feedback_number: int
    feedback_set: tuple[tuple[int, int], ...]
    feedback_certified: bool
    feedback_arc_number: int
    kappa: Optional[int] = None
    num_coalitions: Optional[int] = None

    def as_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "distinct_utility_count": self.distinct_utility_count,
            "feedback_number": self.feedback_number,
            "feedback_set": [list(a) for a in self.feedback_set],
            "feedback_certified": self.feedback_certified,
            "feedback_arc_number": self.feedback_arc_number,
            "kappa": self.kappa,
            "num_coalitions": self.num_coalitions,
        }


def _digraph(instance: HedonicInstance) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(instance.n))
    if instance.model == ADDITIVE:
        g.add_edges_from(a for a, _ in instance.utilities)
    else:
        g.add_edges_from(instance.friendship)
    return g


def _greedy_fas(g: nx.DiGraph) -> set:
    """Upper bound: repeatedly drop the smallest arc of some cycle."""
    h = g.copy()
    removed = set()
    while True:
        try:
            cyc = nx.find_cycle(h)
        except nx.NetworkXNoCycle:
            return removed
        arc = min((u, v) for u, v, *_ in cyc)
        h.remove_edge(*arc)
        removed.add(arc)


def _shortest_cycle(h: nx.DiGraph) -> Optional[list]:
    """Arcs of a shortest directed cycle (BFS from every vertex), or ``None``."""
    best = None
    for s in sorted(h.nodes):
        parent = {s: None}
        frontier, depth = [s], 1
        while frontier and (best is None or depth < len(best)):
            depth += 1
            nxt = []
            for u in frontier:
                for v in sorted(h.successors(u)):
                    if v == s:
                        path = [u]
                        while parent[path[-1]] is not None:
                            path.append(parent[path[-1]])
                        cyc = path[::-1]
                        if best is None or len(cyc) < len(best):
                            best = cyc
                    elif v not in parent:
                        parent[v] = u
                        nxt.append(v)
            frontier = nxt
    if best is None:
        return None
    return list(zip(best, best[1:] + best[:1]))


def _exact_fas(g: nx.DiGraph, upper: int, limit: int) -> Optional[set]:
    """Minimum feedback arc set by iterative deepening, or ``None`` past ``limit`` nodes."""
    nodes = 0

    def rec(h, budget):
        nonlocal nodes
        nodes += 1
        if nodes > limit:
            raise OverflowError
        cyc = _shortest_cycle(h)
        if cyc is None:
            return set()
        if budget == 0:
            return None
        for arc in sorted(cyc):
            h.remove_edge(*arc)
            sub = rec(h, budget - 1)
            h.add_edge(*arc)
            if sub is not None:
                return sub | {arc}
        return None

    try:
        for budget in range(upper + 1):
            found = rec(g.copy(), budget)
            if found is not None:
                return found
    except OverflowError:
        return None
    return None  # pragma: no cover - the greedy set bounds the search


def feedback_arc_set(g: nx.DiGraph, node_limit: int = FAS_NODE_LIMIT) -> tuple[set, bool]:
    """Feedback arc set and whether it is certified minimum.

    Strongly connected components are handled separately. The residual
    graph is always checked to be acyclic.
    """
    total, certified = set(), True
    for comp in nx.strongly_connected_components(g):
        if len(comp) < 2:
            continue
        sub = nx.DiGraph(g.subgraph(comp))
        upper = _greedy_fas(sub)
        exact = _exact_fas(sub, len(upper), node_limit)
        if exact is None:
            certified = False
            total |= upper
        else:
            total |= exact
    residual = g.copy()
    residual.remove_edges_from(total)
    if not nx.is_directed_acyclic_graph(residual):  # pragma: no cover
        raise AssertionError("feedback arc set leaves a cycle")
    return total, certified


def feedback_edge_set(g: nx.Graph) -> set:
    """Edges outside a spanning forest (always minimum)."""
    forest = nx.minimum_spanning_tree(g)
    return {tuple(sorted(e)) for e in g.edges if not forest.has_edge(*e)}


def measure_parameters(instance: HedonicInstance, partition: Optional[Partition] = None) -> ParameterReport:
    """Max degree, distinct utilities, feedback number and partition shape."""
    g = _digraph(instance)
    n = instance.n
    delta = max((len(set(g.successors(i)) | set(g.predecessors(i))) for i in range(n)), default=0)
    mat = instance.util_matrix
    values = {mat[i][j] for i in range(n) for j in range(n) if i != j}
    arcs, certified = feedback_arc_set(g)
    if instance.model == EA:
        mutual = nx.Graph()
        mutual.add_nodes_from(range(n))
        mutual.add_edges_from((i, j) for i, j in instance.friendship if i < j and (j, i) in instance.friendship)
        fset, fcert = feedback_edge_set(mutual), True
        residual = mutual.copy()
        residual.remove_edges_from(fset)
        if not nx.is_forest(residual):  # pragma: no cover
            raise AssertionError("feedback edge set leaves a cycle")
    else:
        fset, fcert = arcs, certified
    kappa = size = None
    if partition is not None:
        check_partition(instance, partition)
        kappa, size = partition.kappa, partition.size
    return ParameterReport(
        max_degree=delta,
        distinct_utility_count=len(values),
        feedback_number=len(fset),
        feedback_set=tuple(sorted(fset)),
        feedback_certified=fcert,
        feedback_arc_number=len(arcs),
        kappa=kappa,
        num_coalitions=size,
    )
