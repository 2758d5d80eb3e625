"""Pure-Python kernels.

Reference semantics for :mod:`paramsoc._kernels`; both modules expose the same
functions and must return identical results. Bitmasks are plain Python ints
here, so these versions also serve inputs too wide for the compiled core.
"""

from itertools import combinations

BACKEND = "python"


def cc_best(cost, m, k):
    """Lexicographically first size-``k`` committee minimising sum-of-min cost.

    ``cost[v][a]`` is voter ``v``'s penalty for being represented by ``a``.
    Returns ``(value, committee)``.
    """
    best = None
    best_comm = None
    for comm in combinations(range(m), k):
        total = 0
        for row in cost:
            total += min(row[a] for a in comm)
            if best is not None and total >= best:
                break
        else:
            if best is None or total < best:
                best, best_comm = total, comm
    return best, best_comm


def mav_best(masks, offsets, m, k):
    """Committee minimising ``max_v offsets[v] + |V_v xor W|`` (first in lex order)."""
    best = None
    best_comm = None
    for comm in combinations(range(m), k):
        w = 0
        for a in comm:
            w |= 1 << a
        worst = 0
        for mask, off in zip(masks, offsets):
            d = off + bin(mask ^ w).count("1")
            if d > worst:
                worst = d
                if best is not None and worst >= best:
                    break
        if best is None or worst < best:
            best, best_comm = worst, comm
    return best, best_comm


def pav_best(masks, weights, m, k):
    """Committee maximising ``sum_v weights[|V_v & W|]`` (first in lex order)."""
    best = None
    best_comm = None
    for comm in combinations(range(m), k):
        w = 0
        for a in comm:
            w |= 1 << a
        total = 0
        for mask in masks:
            total += weights[bin(mask & w).count("1")]
        if best is None or total > best:
            best, best_comm = total, comm
    return best, best_comm


def coalition_value(kind, n, util, friends, agent, mask):
    if kind == 0:
        row = util[agent]
        total = 0
        rest = mask & ~(1 << agent)
        while rest:
            low = rest & -rest
            total += row[low.bit_length() - 1]
            rest ^= low
        return total
    f = bin(mask & friends[agent]).count("1")
    e = bin(mask).count("1") - 1 - f
    if kind == 1:
        return f * n + (n - 1 - e)
    return (n - 1 - e) * n + f


def first_blocking(kind, n, util, friends, current, candidates, weak, min_size, max_size):
    """First (size, then lex) coalition over ``candidates`` that blocks.

    ``kind`` is 0 (additive), 1 (friend appreciation) or 2 (enemy aversion);
    ``current[i]`` is agent ``i``'s value for its present coalition in the
    same integer encoding as :func:`coalition_value`. With ``weak`` the
    coalition must be weakly blocking, otherwise strictly. Returns the
    coalition bitmask or ``-1``.
    """
    for size in range(max(min_size, 1), max_size + 1):
        for comb in combinations(candidates, size):
            mask = 0
            for a in comb:
                mask |= 1 << a
            strict_seen = False
            ok = True
            for a in comb:
                val = coalition_value(kind, n, util, friends, a, mask)
                cur = current[a]
                if val > cur:
                    strict_seen = True
                elif val < cur or not weak:
                    ok = False
                    break
            if ok and strict_seen:
                return mask
    return -1
