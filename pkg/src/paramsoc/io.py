"""Line-oriented text formats for profiles, hedonic games, partitions and graphs.

Files use 1-based indices; parsed objects are 0-based. Lines starting with
``#`` are comments. Every parser reports problems as :class:`ParseError`
with a stable code and the 1-based line number.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

from .errors import DomainError, ParseError
from .hedonic.model import ADDITIVE, EA, FA, HedonicInstance, Partition
from .oracles import CliqueInput
from .profiles import PreferenceProfile

MALFORMED = "malformed-header"
OUT_OF_RANGE = "index-out-of-range"
DUPLICATE = "duplicate-entry"
OVERLAP = "overlapping-coalitions"
WRONG_COUNT = "wrong-count"
MISSING = "missing-agent"
BAD_TOKEN = "bad-token"
SELF_ARC = "self-arc"
INCOMPLETE = "incomplete-ranking"


def _lines(text: str) -> list[tuple[int, str]]:
    """Numbered lines with comments dropped (blank lines kept)."""
    return [(no, line.strip()) for no, line in enumerate(text.splitlines(), 1)
            if not line.lstrip().startswith("#")]


def _header(lines, expected: str):
    for pos, (no, line) in enumerate(lines):
        if line:
            return pos, no, line.split()
    raise ParseError(MALFORMED, 0, f"empty file, expected a {expected} header")


def _ints(no: int, tokens) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(BAD_TOKEN, no, f"expected integers, got {' '.join(tokens)!r}") from None


def _size(no: int, token: str, what: str) -> int:
    try:
        v = int(token)
    except ValueError:
        raise ParseError(MALFORMED, no, f"{what} must be an integer, got {token!r}") from None
    if v < 0:
        raise ParseError(MALFORMED, no, f"{what} must be non-negative")
    return v


def _body(lines, pos: int, n: int, keep_blank: bool, no_header: int):
    rest = lines[pos + 1:]
    if not keep_blank:
        rest = [x for x in rest if x[1]]
    else:
        while rest and not rest[-1][1] and len(rest) > n:
            rest.pop()
    if len(rest) != n:
        where = rest[n][0] if len(rest) > n else (rest[-1][0] if rest else no_header)
        raise ParseError(WRONG_COUNT, where, f"expected {n} entry lines, found {len(rest)}")
    return rest


def parse_profile(text: str) -> PreferenceProfile:
    """``linear m n`` or ``approval m n`` followed by one line per voter."""
    lines = _lines(text)
    pos, no, head = _header(lines, "profile")
    if len(head) != 3 or head[0] not in ("linear", "approval"):
        raise ParseError(MALFORMED, no, "expected 'linear m n' or 'approval m n'")
    m, n = _size(no, head[1], "m"), _size(no, head[2], "n")
    linear = head[0] == "linear"
    rows = []
    for lno, line in _body(lines, pos, n, not linear, no):
        vals = _ints(lno, line.split())
        seen = set()
        for a in vals:
            if not 1 <= a <= m:
                raise ParseError(OUT_OF_RANGE, lno, f"alternative {a} outside 1..{m}")
            if a in seen:
                raise ParseError(DUPLICATE, lno, f"alternative {a} listed twice")
            seen.add(a)
        if linear and len(vals) != m:
            raise ParseError(INCOMPLETE, lno, f"ranking lists {len(vals)} of {m} alternatives")
        rows.append([a - 1 for a in vals])
    if linear:
        return PreferenceProfile.from_rankings(rows, m)
    return PreferenceProfile.from_approvals(rows, m)


def parse_hedonic(text: str) -> HedonicInstance:
    """``hedonic additive n`` with ``i j u`` lines or ``hedonic fe {fa|ea} n`` with ``i j`` lines."""
    lines = _lines(text)
    pos, no, head = _header(lines, "hedonic")
    if len(head) == 3 and head[:2] == ["hedonic", ADDITIVE]:
        model, width = ADDITIVE, 3
    elif len(head) == 4 and head[:2] == ["hedonic", "fe"] and head[2] in (FA, EA):
        model, width = head[2], 2
    else:
        raise ParseError(MALFORMED, no, "expected 'hedonic additive n' or 'hedonic fe {fa|ea} n'")
    n = _size(no, head[-1], "n")
    if n < 1:
        raise ParseError(MALFORMED, no, "a hedonic game needs at least one agent")
    entries: dict[tuple[int, int], int] = {}
    for lno, line in lines[pos + 1:]:
        if not line:
            continue
        vals = _ints(lno, line.split())
        if len(vals) != width:
            raise ParseError(BAD_TOKEN, lno, f"expected {width} integers per line")
        i, j = vals[0], vals[1]
        for x in (i, j):
            if not 1 <= x <= n:
                raise ParseError(OUT_OF_RANGE, lno, f"agent {x} outside 1..{n}")
        if i == j:
            raise ParseError(SELF_ARC, lno, f"agent {i} cannot rate itself")
        if (i - 1, j - 1) in entries:
            raise ParseError(DUPLICATE, lno, f"arc ({i}, {j}) given twice")
        entries[(i - 1, j - 1)] = vals[2] if model == ADDITIVE else 1
    try:
        if model == ADDITIVE:
            return HedonicInstance.additive(n, entries)
        return HedonicInstance.friends(n, entries, model)
    except DomainError as exc:
        raise ParseError(OUT_OF_RANGE, 0, str(exc)) from None


def parse_partition(text: str, n: Optional[int] = None) -> Partition:
    """One coalition per line; with ``n`` given every agent must be covered."""
    owner: dict[int, int] = {}
    coalitions = []
    for lno, line in _lines(text):
        if not line:
            continue
        vals = _ints(lno, line.split())
        block = []
        for a in vals:
            if a < 1 or (n is not None and a > n):
                raise ParseError(OUT_OF_RANGE, lno, f"agent {a} outside 1..{n if n is not None else 'n'}")
            if a in owner:
                code = DUPLICATE if owner[a] == lno else OVERLAP
                raise ParseError(code, lno, f"agent {a} already placed on line {owner[a]}")
            owner[a] = lno
            block.append(a - 1)
        coalitions.append(block)
    total = n if n is not None else max(owner, default=0)
    missing = sorted(set(range(1, total + 1)) - set(owner))
    if missing:
        raise ParseError(MISSING, 0, f"agents {missing} are not in any coalition")
    if not coalitions:
        raise ParseError(WRONG_COUNT, 0, "no coalitions")
    return Partition.from_lists(coalitions, total)


def parse_graph(text: str, h: int = 2) -> CliqueInput:
    """``graph n m`` followed by ``m`` edge lines ``i j``."""
    lines = _lines(text)
    pos, no, head = _header(lines, "graph")
    if len(head) != 3 or head[0] != "graph":
        raise ParseError(MALFORMED, no, "expected 'graph n m'")
    n, m = _size(no, head[1], "n"), _size(no, head[2], "m")
    edges, seen = [], {}
    for lno, line in _body(lines, pos, m, False, no):
        vals = _ints(lno, line.split())
        if len(vals) != 2:
            raise ParseError(BAD_TOKEN, lno, "expected two vertices per edge")
        for x in vals:
            if not 1 <= x <= n:
                raise ParseError(OUT_OF_RANGE, lno, f"vertex {x} outside 1..{n}")
        if vals[0] == vals[1]:
            raise ParseError(SELF_ARC, lno, f"loop at vertex {vals[0]}")
        key = (min(vals), max(vals))
        if key in seen:
            raise ParseError(DUPLICATE, lno, f"edge {key} repeats line {seen[key]}")
        seen[key] = lno
        edges.append((key[0] - 1, key[1] - 1))
    try:
        return CliqueInput(n, tuple(edges), h)
    except DomainError as exc:
        raise ParseError(MALFORMED, no, str(exc)) from None


Parsed = Union[PreferenceProfile, HedonicInstance, Partition, CliqueInput]


def parse_text(text: str, n: Optional[int] = None) -> Parsed:
    """Dispatch on the header keyword; headerless files are partitions."""
    for _, line in _lines(text):
        if line:
            word = line.split()[0]
            break
    else:
        raise ParseError(MALFORMED, 0, "empty file")
    if word in ("linear", "approval"):
        return parse_profile(text)
    if word == "hedonic":
        return parse_hedonic(text)
    if word == "graph":
        return parse_graph(text)
    if word.lstrip("-").isdigit():
        return parse_partition(text, n)
    raise ParseError(MALFORMED, 1, f"unknown header {word!r}")


def parse_instance(path: Union[str, Path], n: Optional[int] = None) -> Parsed:
    """Read and parse a file in any of the supported formats."""
    return parse_text(Path(path).read_text(encoding="utf-8"), n)


# ---------------------------------------------------------------- writers

def _comment(header: Optional[str]) -> str:
    return f"# {header}\n" if header else ""


def format_profile(profile: PreferenceProfile, header: Optional[str] = None) -> str:
    out = [_comment(header) + f"{profile.kind} {profile.m} {profile.n}"]
    if profile.is_linear:
        out += [" ".join(str(a + 1) for a in o) for o in profile.linear_orders]
    else:
        out += [" ".join(str(a + 1) for a in sorted(s)) for s in profile.approval_sets]
    return "\n".join(out) + "\n"


def format_hedonic(instance: HedonicInstance, header: Optional[str] = None) -> str:
    if instance.model == ADDITIVE:
        out = [f"hedonic additive {instance.n}"]
        out += [f"{i + 1} {j + 1} {u}" for (i, j), u in instance.utilities]
    else:
        out = [f"hedonic fe {instance.model} {instance.n}"]
        out += [f"{i + 1} {j + 1}" for i, j in sorted(instance.friendship)]
    return _comment(header) + "\n".join(out) + "\n"


def format_partition(partition: Partition) -> str:
    return "\n".join(" ".join(str(a + 1) for a in c) for c in partition.as_lists()) + "\n"


def format_graph(graph: CliqueInput) -> str:
    out = [f"graph {graph.n} {len(graph.edges)}"] + [f"{u + 1} {v + 1}" for u, v in graph.edges]
    return "\n".join(out) + "\n"
