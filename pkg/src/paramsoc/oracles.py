"""Brute-force reference implementations, instance generators and enumeration helpers.

Everything here is deliberately simple and independent of the solvers it
certifies: committees and axes are found by plain enumeration, partitions by
restricted growth strings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import DomainError, ResourceLimitError
from .hedonic.model import EA, FA, HedonicInstance, Partition
from .hedonic.stability import verify
from .multiwinner.solvers import MultiWinnerInstance
from .profiles import PreferenceProfile

GENERATOR_ID = "numpy-pcg64"
GENERATOR_VERSION = 1
PARTITION_LIMIT = 12
HEDONIC_LIMIT = 10


# ---------------------------------------------------------------- partitions

def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every set partition of ``range(n)`` once, in restricted-growth-string order."""
    if n < 1:
        raise DomainError("need at least one element")
    if n > PARTITION_LIMIT:
        raise ResourceLimitError(f"n={n} exceeds the enumeration guard of {PARTITION_LIMIT}")
    rgs = [0] * n
    while True:
        blocks: list[list[int]] = []
        for i, b in enumerate(rgs):
            if b == len(blocks):
                blocks.append([])
            blocks[b].append(i)
        yield Partition(tuple(frozenset(b) for b in blocks))
        # next restricted growth string
        i = n - 1
        while i > 0:
            if rgs[i] <= max(rgs[:i]):
                rgs[i] += 1
                for j in range(i + 1, n):
                    rgs[j] = 0
                break
            i -= 1
        else:
            return


def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def brute_force_hedonic(instance: HedonicInstance, concept: str) -> Optional[Partition]:
    """First partition (restricted-growth order) stable under ``concept``."""
    if instance.n > HEDONIC_LIMIT:
        raise ResourceLimitError(f"n={instance.n} exceeds the brute-force guard of {HEDONIC_LIMIT}")
    for part in enumerate_partitions(instance.n):
        if verify(instance, part, concept) is None:
            return part
    return None


def all_blocking(instance: HedonicInstance, partition: Partition, weak: bool,
                 min_size: int = 1) -> Iterator[frozenset]:
    """Every (weakly) blocking coalition of size at least ``min_size``, by plain value comparison."""
    n = instance.n
    for size in range(max(min_size, 1), n + 1):
        for B in combinations(range(n), size):
            S = frozenset(B)
            gains = [instance.value(a, S) > instance.value(a, partition.of(a)) for a in B]
            keeps = [instance.value(a, S) >= instance.value(a, partition.of(a)) for a in B]
            if (weak and all(keeps) and any(gains)) or (not weak and all(gains)):
                yield S


# ---------------------------------------------------------------- committees

def _harmonic(x: int) -> Fraction:
    return sum((Fraction(1, j) for j in range(1, x + 1)), Fraction(0))


def _monroe_by_dp(cost: list[list[int]], committee: Sequence[int]) -> int:
    n, k = len(cost), len(committee)
    low, high = n // k, -(-n // k)
    memo: dict = {}

    def rec(v, counts):
        if v == n:
            return 0 if all(c >= low for c in counts) else None
        key = (v, counts)
        if key in memo:
            return memo[key]
        best = None
        for idx, a in enumerate(committee):
            if counts[idx] < high:
                rest = rec(v + 1, counts[:idx] + (counts[idx] + 1,) + counts[idx + 1:])
                if rest is not None and (best is None or cost[v][a] + rest < best):
                    best = cost[v][a] + rest
        memo[key] = best
        return best

    return rec(0, (0,) * k)


def committee_objective(profile: PreferenceProfile, rule: str, committee: Sequence[int]):
    """Objective of one committee computed from the definitions."""
    W = set(committee)
    if profile.is_linear:
        cost = [[o.index(a) for a in range(profile.m)] for o in profile.linear_orders]
    else:
        cost = [[0 if a in s else 1 for a in range(profile.m)] for s in profile.approval_sets]
    if rule == "cc":
        return sum(min(row[a] for a in W) for row in cost)
    if rule == "monroe":
        return _monroe_by_dp(cost, sorted(W))
    if rule == "mav":
        return max((len(set(s) ^ W) for s in profile.approval_sets), default=0)
    if rule == "pav":
        return sum((_harmonic(len(set(s) & W)) for s in profile.approval_sets), Fraction(0))
    raise DomainError(f"unknown rule {rule!r}")


def brute_force_committees(profile: PreferenceProfile, rule: str, k: int) -> tuple[object, list[tuple[int, ...]]]:
    """Optimal objective and every optimal committee (minimise, except PAV which maximises)."""
    best, winners = None, []
    sign = -1 if rule == "pav" else 1
    for W in combinations(range(profile.m), k):
        val = committee_objective(profile, rule, W)
        if val is None:
            continue
        if best is None or sign * val < sign * best:
            best, winners = val, [W]
        elif val == best:
            winners.append(W)
    return best, winners


# ---------------------------------------------------------------- recognition

def _interval(positions: Sequence[int]) -> bool:
    return not positions or max(positions) - min(positions) + 1 == len(positions)


def sp_on(profile: PreferenceProfile, axis: Sequence[int]) -> bool:
    """Single-peakedness along ``axis`` checked from the definition."""
    pos = {a: i for i, a in enumerate(axis)}
    if profile.is_linear:
        return all(_interval([pos[a] for a in o[:t]]) for o in profile.linear_orders for t in range(1, profile.m + 1))
    return all(_interval([pos[a] for a in s]) for s in profile.approval_sets)


def sc_on(profile: PreferenceProfile, order: Sequence[int]) -> bool:
    """Single-crossingness along the voter ``order`` checked from the definition."""
    if profile.is_linear:
        ranks = [{a: i for i, a in enumerate(profile.linear_orders[v])} for v in order]
        for a, b in combinations(range(profile.m), 2):
            pattern = [r[a] < r[b] for r in ranks]
            changes = sum(1 for x, y in zip(pattern, pattern[1:]) if x != y)
            if changes > 1:
                return False
        return True
    where = {v: i for i, v in enumerate(order)}
    return all(_interval([where[v] for v in range(profile.n) if a in profile.approval_sets[v]])
               for a in range(profile.m))


def brute_force_axis(profile: PreferenceProfile, structure: str) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest SP alternative axis or SC voter order, by permutations."""
    if structure == "sp":
        return next((p for p in permutations(range(profile.m)) if sp_on(profile, p)), None)
    if structure == "sc":
        return next((p for p in permutations(range(profile.n)) if sc_on(profile, p)), None)
    raise DomainError(f"unknown structure {structure!r}")


def brute_force_deletion(profile: PreferenceProfile, structure: str, mode: str) -> tuple[int, ...]:
    """Lexicographically first minimum deletion set, by subset enumeration."""
    universe = profile.n if mode == "voters" else profile.m
    for size in range(universe + 1):
        for removed in combinations(range(universe), size):
            keep = [e for e in range(universe) if e not in removed]
            sub = profile.restrict(voters=keep) if mode == "voters" else profile.restrict(alternatives=keep)
            if brute_force_axis(sub, structure) is not None:
                return removed
    raise AssertionError("the empty profile is always structured")  # pragma: no cover


# ---------------------------------------------------------------- clique reduction

@dataclass(frozen=True)
class CliqueInput:
    """Simple undirected graph on ``range(n)`` and a clique size ``h``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    h: int

    def __post_init__(self):
        norm = []
        for u, v in self.edges:
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"edge ({u}, {v}) leaves the vertex range")
            norm.append((min(u, v), max(u, v)))
        if len(set(norm)) != len(norm):
            raise DomainError("parallel edges")
        if not (2 <= self.h <= self.n):
            raise DomainError(f"clique size h={self.h} outside [2, {self.n}]")
        object.__setattr__(self, "edges", tuple(sorted(norm)))


def has_clique(graph: CliqueInput) -> bool:
    adj = set(graph.edges)
    return any(all((u, v) in adj for u, v in combinations(S, 2))
               for S in combinations(range(graph.n), graph.h))


def clique_bound(graph: CliqueInput) -> int:
    return graph.h + 2 * graph.h * comb(graph.h, 2)


def blocker_sizes(graph: CliqueInput, literal: bool = False) -> tuple[int, int]:
    """Dummies per vertex and per edge.

    ``literal`` uses ``n`` and ``m`` dummies. By default each set has at least
    ``R - 1`` dummies so that every alternative below the blockers costs more
    than ``R``; with fewer, small graphs give wrong answers (two isolated
    vertices and ``h = 2`` become a yes-instance).
    """
    n, m = graph.n, len(graph.edges)
    if literal:
        return n, m
    R = clique_bound(graph)
    return max(n, R - 1), max(m, R - 1)


def clique_layout(graph: CliqueInput, literal: bool = False) -> dict:
    """Alternative indices of the reduction: vertex blocks then edge blocks."""
    n, m = graph.n, len(graph.edges)
    bv, be = blocker_sizes(graph, literal)
    vertex = [i * (bv + 2) for i in range(n)]
    start = n * (bv + 2)
    edge = [start + j * (be + 1) for j in range(m)]
    return {
        "a": vertex,
        "b": [x + 1 for x in vertex],
        "B": [list(range(x + 2, x + 2 + bv)) for x in vertex],
        "c": edge,
        "C": [list(range(x + 1, x + 1 + be)) for x in edge],
        "m": start + m * (be + 1),
    }


def clique_to_cc_instance(graph: CliqueInput, literal_blockers: bool = False) -> MultiWinnerInstance:
    """CC instance with bound ``R`` that is a yes-instance iff ``graph`` has an ``h``-clique.

    Vertex ``i`` yields alternatives ``a_i``, ``b_i`` and a blocker set and a
    voter ranking ``b_i, a_i, blockers``; edge ``{i, s}`` yields ``c_j``, a
    blocker set and ``h`` voters each ranking ``c_j, a_i, blockers`` and
    ``c_j, a_s, blockers``. Remaining alternatives follow in ascending order.
    Committee size is ``m - C(h,2) + n`` and the bound ``R = h + 2h C(h,2)``;
    blocker sizes follow :func:`blocker_sizes`. Raises :class:`DomainError`
    when the committee size would be below one.
    """
    n, h = graph.n, graph.h
    m_hat = len(graph.edges)
    lay = clique_layout(graph, literal_blockers)
    k = m_hat - comb(h, 2) + n
    if k < 1:
        raise DomainError(f"committee size {k} is not positive; the graph has too few edges")
    R = clique_bound(graph)
    total = lay["m"]

    def ranking(head):
        seen = set(head)
        return list(head) + [a for a in range(total) if a not in seen]

    orders = [ranking([lay["b"][i], lay["a"][i], *lay["B"][i]]) for i in range(n)]
    for j, (u, s) in enumerate(graph.edges):
        for end in (u, s):
            row = ranking([lay["c"][j], lay["a"][end], *lay["C"][j]])
            orders.extend(list(row) for _ in range(h))
    profile = PreferenceProfile.from_rankings(orders, total)
    return MultiWinnerInstance(profile, k, Fraction(R))


# ---------------------------------------------------------------- generators

SHAPES = {
    "random_linear": ("m", "n"),
    "random_approval": ("m", "n", "b"),
    "random_additive": ("n", "umax", "density", "symmetric"),
    "random_fe": ("n", "density", "model"),
}


@dataclass(frozen=True)
class GeneratorSpec:
    """Seed plus a named shape and its parameters."""

    seed: int
    shape: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise DomainError(f"unknown shape {self.shape!r}; expected one of {sorted(SHAPES)}")
        missing = [p for p in SHAPES[self.shape] if p not in self.params]
        if missing:
            raise DomainError(f"shape {self.shape} needs parameters {missing}")

    def header(self) -> str:
        args = ",".join(f"{k}={self.params[k]}" for k in SHAPES[self.shape])
        return f"generator {GENERATOR_ID} v{GENERATOR_VERSION} seed={self.seed} shape={self.shape}({args})"


def generate(spec: GeneratorSpec):
    """Deterministic pseudo-random instance for ``spec``."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    p = spec.params
    if spec.shape == "random_linear":
        m, n = int(p["m"]), int(p["n"])
        return PreferenceProfile.from_rankings([rng.permutation(m).tolist() for _ in range(n)], m)
    if spec.shape == "random_approval":
        m, n, b = int(p["m"]), int(p["n"]), int(p["b"])
        sets = []
        for _ in range(n):
            size = int(rng.integers(0, min(b, m) + 1))
            sets.append(sorted(rng.choice(m, size=size, replace=False).tolist()))
        return PreferenceProfile.from_approvals(sets, m)
    if spec.shape == "random_additive":
        n, umax, dens = int(p["n"]), int(p["umax"]), float(p["density"])
        symmetric = str(p["symmetric"]).lower() in ("1", "true", "yes")
        util = {}
        for i in range(n):
            for j in range(n):
                if i == j or (symmetric and j < i):
                    continue
                if rng.random() < dens:
                    u = int(rng.integers(1, umax + 1)) * (1 if rng.random() < 0.5 else -1)
                    util[(i, j)] = u
                    if symmetric:
                        util[(j, i)] = u
        return HedonicInstance.additive(n, util)
    n, dens, model = int(p["n"]), float(p["density"]), str(p["model"])
    if model not in (FA, EA):
        raise DomainError("random_fe needs model fa or ea")
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < dens]
    return HedonicInstance.friends(n, arcs, model)
