"""Preference profiles, single-peaked / single-crossing recognition and deletion distances.

All indices are 0-based. A linear profile stores, per voter, a permutation of
``range(m)`` listed from most to least preferred; an approval profile stores,
per voter, a frozenset of approved alternatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

from .errors import DomainError, UnsupportedKindError

LINEAR = "linear"
APPROVAL = "approval"


@dataclass(frozen=True)
class PreferenceProfile:
    """Rankings or approval sets of ``n`` voters over ``m`` alternatives.

    Build instances with :meth:`from_rankings` or :meth:`from_approvals`,
    which validate the invariants.
    """

    kind: str
    m: int
    n: int
    linear_orders: Optional[tuple[tuple[int, ...], ...]] = None
    approval_sets: Optional[tuple[frozenset, ...]] = None

    def __post_init__(self):
        if self.kind == LINEAR:
            if self.linear_orders is None or self.approval_sets is not None:
                raise DomainError("linear profile needs rankings and no approval sets")
            if len(self.linear_orders) != self.n:
                raise DomainError("number of rankings differs from n")
            full = set(range(self.m))
            for i, order in enumerate(self.linear_orders):
                if len(order) != self.m or set(order) != full:
                    raise DomainError(f"ranking of voter {i} is not a permutation of range({self.m})")
        elif self.kind == APPROVAL:
            if self.approval_sets is None or self.linear_orders is not None:
                raise DomainError("approval profile needs approval sets and no rankings")
            if len(self.approval_sets) != self.n:
                raise DomainError("number of approval sets differs from n")
            for i, s in enumerate(self.approval_sets):
                if any(not (0 <= a < self.m) for a in s):
                    raise DomainError(f"approval set of voter {i} leaves range({self.m})")
        else:
            raise DomainError(f"unknown profile kind {self.kind!r}")
        if self.m < 0 or self.n < 0:
            raise DomainError("negative size")

    @classmethod
    def from_rankings(cls, orders: Iterable[Sequence[int]], m: Optional[int] = None) -> "PreferenceProfile":
        orders = tuple(tuple(int(a) for a in o) for o in orders)
        if m is None:
            m = len(orders[0]) if orders else 0
        return cls(LINEAR, m, len(orders), linear_orders=orders)

    @classmethod
    def from_approvals(cls, sets: Iterable[Iterable[int]], m: int) -> "PreferenceProfile":
        sets = tuple(frozenset(int(a) for a in s) for s in sets)
        return cls(APPROVAL, m, len(sets), approval_sets=sets)

    @property
    def is_linear(self) -> bool:
        return self.kind == LINEAR

    @cached_property
    def ranks(self) -> tuple[tuple[int, ...], ...]:
        """``ranks[i][a]`` = number of alternatives voter ``i`` prefers to ``a``."""
        if not self.is_linear:
            raise UnsupportedKindError("ranks are defined for linear profiles only")
        out = []
        for order in self.linear_orders:
            row = [0] * self.m
            for pos, a in enumerate(order):
                row[a] = pos
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def approval_masks(self) -> tuple[int, ...]:
        if self.is_linear:
            raise UnsupportedKindError("approval masks need an approval profile")
        return tuple(sum(1 << a for a in s) for s in self.approval_sets)

    def restrict(self, voters: Optional[Iterable[int]] = None,
                 alternatives: Optional[Iterable[int]] = None) -> "PreferenceProfile":
        """Sub-profile on the given voters and alternatives.

        Kept indices are renumbered consecutively in ascending order, so new
        alternative ``j`` is the ``j``-th smallest kept original index.
        """
        vs = sorted(set(range(self.n) if voters is None else voters))
        alts = sorted(set(range(self.m) if alternatives is None else alternatives))
        if any(not (0 <= v < self.n) for v in vs) or any(not (0 <= a < self.m) for a in alts):
            raise DomainError("restriction index out of range")
        new = {a: j for j, a in enumerate(alts)}
        if self.is_linear:
            orders = [tuple(new[a] for a in self.linear_orders[v] if a in new) for v in vs]
            return PreferenceProfile(LINEAR, len(alts), len(vs), linear_orders=tuple(orders))
        sets = [frozenset(new[a] for a in self.approval_sets[v] if a in new) for v in vs]
        return PreferenceProfile(APPROVAL, len(alts), len(vs), approval_sets=tuple(sets))


@dataclass(frozen=True)
class Axis:
    """An order of alternatives (single-peaked) or of voters (single-crossing)."""

    order: tuple[int, ...]
    target: str  # "alternatives" or "voters"


@dataclass(frozen=True)
class DeletionCertificate:
    """Deleted voters or alternatives and an axis for the residual profile.

    Both ``removed`` and ``axis.order`` use the original profile's indices.
    """

    removed: tuple[int, ...]
    mode: str
    axis: Axis = field(compare=False)


def rank(profile: PreferenceProfile, voter: int, alt: int) -> int:
    """Number of alternatives that ``voter`` strictly prefers to ``alt``."""
    if not profile.is_linear:
        raise UnsupportedKindError("rank needs a linear profile")
    if not (0 <= voter < profile.n) or not (0 <= alt < profile.m):
        raise DomainError(f"index out of range: voter {voter}, alternative {alt}")
    return profile.ranks[voter][alt]


# ---------------------------------------------------------------- predicates

def is_single_peaked(profile: PreferenceProfile, order: Sequence[int]) -> bool:
    """Check the single-peaked condition along an alternative order."""
    order = tuple(order)
    if sorted(order) != list(range(profile.m)):
        return False
    if profile.is_linear:
        for r in profile.ranks:
            seq = [r[a] for a in order]
            i = 0
            while i + 1 < len(seq) and seq[i + 1] < seq[i]:
                i += 1
            while i + 1 < len(seq) and seq[i + 1] > seq[i]:
                i += 1
            if i + 1 < len(seq):
                return False
        return True
    pos = {a: p for p, a in enumerate(order)}
    for s in profile.approval_sets:
        if s:
            ps = [pos[a] for a in s]
            if max(ps) - min(ps) + 1 != len(ps):
                return False
    return True


def is_single_crossing(profile: PreferenceProfile, order: Sequence[int]) -> bool:
    """Check the single-crossing condition along a voter order."""
    order = tuple(order)
    if sorted(order) != list(range(profile.n)):
        return False
    if profile.is_linear:
        ranks = [profile.ranks[v] for v in order]
        m = profile.m
        for a in range(m):
            for b in range(a + 1, m):
                changes = 0
                prev = None
                for r in ranks:
                    cur = r[a] < r[b]
                    if prev is not None and cur != prev:
                        changes += 1
                    prev = cur
                if changes > 1:
                    return False
        return True
    pos = {v: p for p, v in enumerate(order)}
    for a in range(profile.m):
        ps = [pos[v] for v in range(profile.n) if a in profile.approval_sets[v]]
        if ps and max(ps) - min(ps) + 1 != len(ps):
            return False
    return True


# ---------------------------------------------------------------- recognition

def _linear_sp_axis(orders: tuple[tuple[int, ...], ...], m: int) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest single-peaked axis, built from the outside in.

    Every voter's worst remaining alternative must sit at an inner end of the
    partially built axis, so the sequence of remaining sets is forced and the
    memo over (remaining, inner-left, inner-right) stays polynomial.
    """
    if not orders:
        return tuple(range(m))
    ranks = []
    for o in orders:
        r = [0] * m
        for p, a in enumerate(o):
            r[a] = p
        ranks.append(r)

    def allowed(x, inner, other, rest):
        # x goes next to ``inner``; ``other`` is the opposite inner end.
        if inner is None:
            return True
        for r in ranks:
            if r[x] < r[inner]:
                continue
            if other is not None and r[other] < r[x]:
                return False
            if any(r[y] < r[x] for y in rest):
                return False
        return True

    @lru_cache(maxsize=None)
    def best(rest: frozenset, left, right):
        if not rest:
            return ()
        worst = {max(rest, key=lambda a: r[a]) for r in ranks}
        if len(worst) > 2:
            return None
        options = []
        if len(worst) == 1:
            (x,) = worst
            after = rest - {x}
            if allowed(x, left, right, after):
                sub = best(after, x, right)
                if sub is not None:
                    options.append((x,) + sub)
            if allowed(x, right, left, after):
                sub = best(after, left, x)
                if sub is not None:
                    options.append(sub + (x,))
        else:
            for x, y in (tuple(sorted(worst)), tuple(sorted(worst, reverse=True))):
                mid = rest - {x}
                after = mid - {y}
                if allowed(x, left, right, mid) and allowed(y, right, x, after):
                    sub = best(after, x, y)
                    if sub is not None:
                        options.append((x,) + sub + (y,))
        return min(options) if options else None

    return best(frozenset(range(m)), None, None)


def _consecutive_ones_order(size: int, families: Sequence[frozenset]) -> Optional[tuple[int, ...]]:
    """Lexicographically smallest order of ``range(size)`` in which every set is contiguous.

    Left-to-right search: a set that has been entered and not completed is
    open, and the next element must belong to every open set and may not
    reopen a set that was already left. Failures are memoised on
    (placed, last), which determines the open sets.
    """
    fams = [f for f in {frozenset(f) for f in families} if 1 < len(f)]
    member = [[j for j, f in enumerate(fams) if e in f] for e in range(size)]
    failed = set()

    def extend(placed: frozenset, last, prefix: list):
        if len(prefix) == size:
            return tuple(prefix)
        key = (placed, last)
        if key in failed:
            return None
        open_sets = [j for j in (member[last] if last is not None else ())
                     if not fams[j] <= placed]
        for y in range(size):
            if y in placed:
                continue
            if any(y not in fams[j] for j in open_sets):
                continue
            # y may not belong to a set that was entered earlier and already left
            bad = False
            for j in member[y]:
                f = fams[j]
                if (f & placed) and last not in f:
                    bad = True
                    break
            if bad:
                continue
            prefix.append(y)
            res = extend(placed | {y}, y, prefix)
            if res is not None:
                return res
            prefix.pop()
        failed.add(key)
        return None

    return extend(frozenset(), None, [])


def _linear_sc_order(profile: PreferenceProfile) -> Optional[tuple[int, ...]]:
    """Smallest single-crossing voter order for a linear profile.

    Identical voters are adjacent in every single-crossing order and distinct
    ones are strictly ordered by disagreement with an extreme voter, so the
    order is unique up to reversal and the grouping of duplicates.
    """
    n = profile.n
    if n == 0:
        return ()
    groups: dict[tuple, list[int]] = {}
    for v, o in enumerate(profile.linear_orders):
        groups.setdefault(o, []).append(v)
    types = list(groups)
    ranks = {t: profile.ranks[groups[t][0]] for t in types}
    m = profile.m

    def disagreement(s, t):
        rs, rt = ranks[s], ranks[t]
        return sum(1 for a in range(m) for b in range(a + 1, m) if (rs[a] < rs[b]) != (rt[a] < rt[b]))

    start = types[0]
    extreme = max(types, key=lambda t: disagreement(start, t))
    seq = sorted(types, key=lambda t: disagreement(extreme, t))
    candidates = []
    for cand in (seq, seq[::-1]):
        order = tuple(v for t in cand for v in groups[t])
        if is_single_crossing(profile, order):
            candidates.append(order)
    return min(candidates) if candidates else None


def recognize_sp(profile: PreferenceProfile) -> Optional[Axis]:
    """Lexicographically smallest single-peaked alternative axis, or ``None``."""
    if profile.is_linear:
        order = _linear_sp_axis(profile.linear_orders, profile.m)
    else:
        order = _consecutive_ones_order(profile.m, profile.approval_sets)
    return None if order is None else Axis(order, "alternatives")


def recognize_sc(profile: PreferenceProfile) -> Optional[Axis]:
    """Lexicographically smallest single-crossing voter axis, or ``None``."""
    if profile.is_linear:
        order = _linear_sc_order(profile)
    else:
        supporters = [frozenset(v for v in range(profile.n) if a in profile.approval_sets[v])
                      for a in range(profile.m)]
        order = _consecutive_ones_order(profile.n, supporters)
    return None if order is None else Axis(order, "voters")


# ---------------------------------------------------------------- deletion

_STRUCTURES = {"sp": recognize_sp, "sc": recognize_sc}


def _structure(name: str):
    try:
        return _STRUCTURES[name.lower()]
    except KeyError:
        raise DomainError(f"unknown structure {name!r}; expected 'sp' or 'sc'") from None


def deletion_distance(profile: PreferenceProfile, structure: str, mode: str,
                      budget: int) -> Optional[DeletionCertificate]:
    """Minimum set of voters or alternatives whose deletion makes the profile SP/SC.

    The search is exact: iterative deepening that branches only on members of
    an inclusion-minimal obstruction (all four properties are hereditary, so
    every solution hits every obstruction). Among minimum solutions the
    lexicographically smallest sorted set is returned. ``None`` means no
    solution of size at most ``budget`` exists.
    """
    recognize = _structure(structure)
    if mode not in ("voters", "alternatives"):
        raise DomainError(f"unknown deletion mode {mode!r}")
    universe = profile.n if mode == "voters" else profile.m
    if not (0 <= budget <= universe):
        raise DomainError(f"budget {budget} outside [0, {universe}]")

    def residual(removed: frozenset) -> tuple[PreferenceProfile, list[int]]:
        keep = [e for e in range(universe) if e not in removed]
        if mode == "voters":
            return profile.restrict(voters=keep), keep
        return profile.restrict(alternatives=keep), keep

    @lru_cache(maxsize=None)
    def axis_of(removed: frozenset):
        sub, _ = residual(removed)
        return recognize(sub)

    def obstruction(removed: frozenset) -> list[int]:
        # shrink the residual to an inclusion-minimal failing subset
        core = [e for e in range(universe) if e not in removed]
        i = 0
        while i < len(core):
            trial = frozenset(range(universe)) - frozenset(core[:i] + core[i + 1:])
            if axis_of(trial) is None:
                core.pop(i)
            else:
                i += 1
        return core

    def search(removed: frozenset, forbidden: frozenset, t: int) -> Optional[frozenset]:
        if axis_of(removed) is not None:
            return removed
        if t == 0:
            return None
        for e in obstruction(removed):
            if e in forbidden:
                continue
            found = search(removed | {e}, forbidden, t - 1)
            if found is not None:
                return found
        return None

    size = None
    for t in range(budget + 1):
        if search(frozenset(), frozenset(), t) is not None:
            size = t
            break
    if size is None:
        return None

    chosen: list[int] = []
    skipped: set[int] = set()
    low = 0
    while len(chosen) < size:
        for e in range(low, universe):
            if search(frozenset(chosen) | {e}, frozenset(skipped), size - len(chosen) - 1) is not None:
                chosen.append(e)
                low = e + 1
                break
            skipped.add(e)
    removed = frozenset(chosen)
    sub_axis = axis_of(removed)
    _, keep = residual(removed)
    if structure.lower() == "sp":
        order = tuple(keep[a] for a in sub_axis.order) if mode == "alternatives" else sub_axis.order
    else:
        order = tuple(keep[v] for v in sub_axis.order) if mode == "voters" else sub_axis.order
    return DeletionCertificate(tuple(chosen), mode, Axis(order, sub_axis.target))
