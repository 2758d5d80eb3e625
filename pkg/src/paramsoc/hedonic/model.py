"""Hedonic game instances, partitions, witnesses and preference comparison.

Agents are 0-based. Preferences come from either an integer utility digraph
(``additive``) or a friendship digraph read under friend appreciation
(``fa``) or enemy aversion (``ea``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional

from ..errors import DomainError

ADDITIVE, FA, EA = "additive", "fa", "ea"
MODELS = (ADDITIVE, FA, EA)
MODEL_CODE = {ADDITIVE: 0, FA: 1, EA: 2}
UTILITY_LIMIT = 2**31 - 1

PREFERS, INDIFFERENT, DISPREFERRED = "prefers", "indifferent", "dispreferred"


@dataclass(frozen=True)
class HedonicInstance:
    """``n`` agents with additive utilities or a friendship digraph.

    Use :meth:`additive` or :meth:`friends` to build validated instances.
    ``utilities`` holds the nonzero ``((i, j), u)`` pairs sorted by arc;
    ``friendship`` holds arcs ``(i, j)`` meaning ``i`` regards ``j`` as a friend.
    """

    n: int
    model: str
    utilities: tuple[tuple[tuple[int, int], int], ...] = ()
    friendship: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("a hedonic game needs at least one agent")
        if self.model not in MODELS:
            raise DomainError(f"unknown model {self.model!r}")
        arcs = [a for a, _ in self.utilities] if self.model == ADDITIVE else list(self.friendship)
        for i, j in arcs:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise DomainError(f"arc ({i}, {j}) leaves the agent range")
            if i == j:
                raise DomainError(f"self-arc at agent {i}")
        if self.model == ADDITIVE:
            if self.friendship:
                raise DomainError("additive instances carry no friendship arcs")
            for _, u in self.utilities:
                if abs(u) > UTILITY_LIMIT:
                    raise DomainError(f"utility {u} exceeds the 32-bit cap")
        elif self.utilities:
            raise DomainError("friends-and-enemies instances carry no utilities")

    @classmethod
    def additive(cls, n: int, utilities: Mapping[tuple[int, int], int]) -> "HedonicInstance":
        items = tuple(sorted(((int(i), int(j)), int(u)) for (i, j), u in utilities.items() if u != 0))
        return cls(n, ADDITIVE, utilities=items)

    @classmethod
    def friends(cls, n: int, arcs: Iterable[tuple[int, int]], model: str) -> "HedonicInstance":
        if model not in (FA, EA):
            raise DomainError("friendship instances use model 'fa' or 'ea'")
        return cls(n, model, friendship=frozenset((int(i), int(j)) for i, j in arcs))

    def with_model(self, model: str) -> "HedonicInstance":
        """Same friendship graph read under another friends-and-enemies model."""
        return HedonicInstance.friends(self.n, self.friendship, model)

    @cached_property
    def util_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Dense ``n x n`` utilities; for fa/ea the additive embedding."""
        n = self.n
        mat = [[0] * n for _ in range(n)]
        if self.model == ADDITIVE:
            for (i, j), u in self.utilities:
                mat[i][j] = u
        else:
            friend, enemy = (n, -1) if self.model == FA else (1, -n)
            for i in range(n):
                for j in range(n):
                    if i != j:
                        mat[i][j] = friend if (i, j) in self.friendship else enemy
        return tuple(tuple(r) for r in mat)

    @cached_property
    def friend_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for i, j in self.friendship:
            masks[i] |= 1 << j
        return tuple(masks)

    @cached_property
    def out_neighbors(self) -> tuple[frozenset, ...]:
        """Friends (fa/ea) or agents with nonzero utility (additive)."""
        out = [set() for _ in range(self.n)]
        arcs = [a for a, _ in self.utilities] if self.model == ADDITIVE else self.friendship
        for i, j in arcs:
            out[i].add(j)
        return tuple(frozenset(s) for s in out)

    @property
    def symmetric(self) -> bool:
        """True iff ``u_i(j) == u_j(i)`` for every pair (additive only)."""
        m = self.util_matrix
        return all(m[i][j] == m[j][i] for i in range(self.n) for j in range(i + 1, self.n))

    def value(self, agent: int, coalition) -> tuple[int, ...] | int:
        """Comparable value of ``coalition`` for ``agent`` (larger is better)."""
        if self.model == ADDITIVE:
            row = self.util_matrix[agent]
            return sum(row[j] for j in coalition if j != agent)
        fr = self.out_neighbors[agent]
        f = sum(1 for j in coalition if j in fr)
        e = len(coalition) - 1 - f
        return (f, -e) if self.model == FA else (-e, f)

    def code(self, agent: int, coalition) -> int:
        """Integer version of :meth:`value` used by the enumeration kernels."""
        if self.model == ADDITIVE:
            return self.value(agent, coalition)
        f, e = self._fe(agent, coalition)
        n = self.n
        return f * n + (n - 1 - e) if self.model == FA else (n - 1 - e) * n + f

    def _fe(self, agent, coalition):
        fr = self.out_neighbors[agent]
        f = sum(1 for j in coalition if j in fr)
        return f, len(coalition) - 1 - f


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty coalitions covering ``range(n)``.

    Coalitions are stored as frozensets ordered by their smallest member.
    """

    coalitions: tuple[frozenset, ...]

    @classmethod
    def from_lists(cls, coalitions: Iterable[Iterable[int]], n: Optional[int] = None) -> "Partition":
        coals = [frozenset(int(a) for a in c) for c in coalitions]
        seen: set[int] = set()
        for c in coals:
            if not c:
                raise DomainError("empty coalition")
            if seen & c:
                raise DomainError(f"agents {sorted(seen & c)} appear in two coalitions")
            seen |= c
        if n is None:
            n = max(seen) + 1 if seen else 0
        if seen != set(range(n)):
            missing = sorted(set(range(n)) - seen)
            extra = sorted(seen - set(range(n)))
            raise DomainError(f"partition does not cover range({n}): missing {missing}, extra {extra}")
        return cls(tuple(sorted(coals, key=min)))

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple(frozenset({i}) for i in range(n)))

    @classmethod
    def grand(cls, n: int) -> "Partition":
        return cls((frozenset(range(n)),))

    @cached_property
    def n(self) -> int:
        return sum(len(c) for c in self.coalitions)

    @cached_property
    def _owner(self) -> dict[int, frozenset]:
        return {a: c for c in self.coalitions for a in c}

    def of(self, agent: int) -> frozenset:
        """The coalition containing ``agent``."""
        try:
            return self._owner[agent]
        except KeyError:
            raise DomainError(f"agent {agent} is not covered") from None

    @property
    def kappa(self) -> int:
        return max(len(c) for c in self.coalitions)

    @property
    def size(self) -> int:
        return len(self.coalitions)

    def as_lists(self) -> list[list[int]]:
        return [sorted(c) for c in self.coalitions]


BLOCKING = "blocking_coalition"
WEAKLY_BLOCKING = "weakly_blocking_coalition"
TUPLE = "blocking_tuple"
ENVY = "envy"


@dataclass(frozen=True)
class Witness:
    """Certificate of instability.

    For coalition witnesses ``agents`` is the deviating coalition. For envy
    and blocking tuples ``agents`` is the single deviator and ``target`` the
    coalition of the partition (possibly empty) that it would join.
    """

    kind: str
    agents: frozenset
    target: Optional[frozenset] = None

    @property
    def agent(self) -> int:
        (a,) = self.agents
        return a


def check_partition(instance: HedonicInstance, partition: Partition) -> None:
    if partition.n != instance.n or set(partition._owner) != set(range(instance.n)):
        raise DomainError(f"partition does not cover the {instance.n} agents of the instance")


def compare(instance: HedonicInstance, agent: int, S, T) -> str:
    """How ``agent`` ranks coalition ``S`` against coalition ``T``."""
    S, T = frozenset(S), frozenset(T)
    if not (0 <= agent < instance.n):
        raise DomainError(f"agent {agent} out of range")
    if agent not in S or agent not in T:
        raise DomainError(f"agent {agent} must belong to both coalitions")
    for c in (S, T):
        if any(not (0 <= a < instance.n) for a in c):
            raise DomainError("coalition member out of range")
    vs, vt = instance.value(agent, S), instance.value(agent, T)
    if vs > vt:
        return PREFERS
    if vs < vt:
        return DISPREFERRED
    return INDIFFERENT
