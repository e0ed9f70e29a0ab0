"""Exact brute-force minima for small instances.

``min_separating`` computes the definitional optimum by iterative deepening
over the family size with branch-and-bound pruning; the returned family is
provably minimum and is re-checked through the verifier before being
returned.  ``enumerate_trees`` yields one representative per unlabeled
isomorphism class (level-sequence successor algorithm).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .errors import Infeasible, InternalClassificationError, Timeout, TooLarge
from .trees import PathInTree, Tree, unique_path
from .verify import PathSystem, TargetSet, covers, separates

DEFAULT_MAX_N = 12
GRAPH_PATH_CAP = 20000


def enumerate_paths(t: Tree, include_trivial: bool, max_n: int = DEFAULT_MAX_N) -> tuple[PathInTree, ...]:
    """Every candidate path of a tree: optional length-0 paths (by vertex id),
    then the unique u-v path for each pair u < v (by (u, v))."""
    if t.n > max_n:
        raise TooLarge(f"n={t.n} exceeds cap {max_n}")
    out: list[PathInTree] = []
    if include_trivial:
        out.extend(PathInTree((v,)) for v in t.vertices)
    vs = t.vertices
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            out.append(unique_path(t, vs[i], vs[j]))
    return tuple(out)


def enumerate_simple_paths(g, include_trivial: bool, cap: int = GRAPH_PATH_CAP) -> tuple[PathInTree, ...]:
    """All simple paths of a general graph, one orientation each.

    Supports exact minima on tiny (possibly disconnected) graphs; refuses
    instances with more than ``cap`` paths.
    """
    out: list[PathInTree] = []
    if include_trivial:
        out.extend(PathInTree((v,)) for v in g.vertices)
    for start in g.vertices:
        stack = [(start, [start])]
        while stack:
            v, seq = stack.pop()
            for w in g.neighbors(v):
                if w in seq:
                    continue
                ext = seq + [w]
                if ext[0] < ext[-1]:  # emit each path in one orientation only
                    out.append(PathInTree(tuple(ext)))
                    if len(out) > cap:
                        raise TooLarge(f"more than {cap} simple paths")
                stack.append((w, ext))
    return tuple(out)


@dataclass(frozen=True)
class OracleResult:
    size: int
    system: PathSystem
    nodes_expanded: int
    elapsed: float


class _Search:
    """Branch-and-bound over subfamilies of the candidate paths.

    Element signatures are tracked as a partition into same-signature groups
    (bitmasks); a family works when every group is a singleton and, in cover
    mode, no element is left unhit.
    """

    def __init__(
        self,
        host,
        ts: TargetSet,
        require_cover: bool,
        budget_ms: float | None,
        include_trivial: bool | None = None,
    ):
        if include_trivial is None:
            include_trivial = any(isinstance(s, int) for s in ts.elements) or not ts.elements
        if isinstance(host, Tree):
            cands = enumerate_paths(host, include_trivial, max_n=host.n)
        else:
            cands = enumerate_simple_paths(host, include_trivial)
        elements = ts.elements
        self.m = len(elements)
        eidx = {s: i for i, s in enumerate(elements)}
        masks = []
        for p in cands:
            vs, es = p.vertex_set(), p.edge_set()
            mask = 0
            for s in elements:
                if (s in vs) if isinstance(s, int) else (s in es):
                    mask |= 1 << eidx[s]
            masks.append(mask)
        # Candidates splitting the most element pairs come first.
        m = self.m
        order = sorted(
            range(len(cands)),
            key=lambda i: (-(bin(masks[i]).count("1") * (m - bin(masks[i]).count("1"))), i),
        )
        self.cands = tuple(cands[i] for i in order)
        self.masks = [masks[i] for i in order]
        suffix = [0] * (len(self.masks) + 1)
        for i in range(len(self.masks) - 1, -1, -1):
            suffix[i] = suffix[i + 1] | self.masks[i]
        self.suffix_union = suffix
        self.require_cover = require_cover
        self.nodes = 0
        self.deadline = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
        self.budget_ms = budget_ms

    def floor(self) -> int:
        if self.m == 0:
            return 0
        return max(_ceil_log2(self.m + (1 if self.require_cover else 0)), 0)

    def at_most(self, k: int) -> list[int] | None:
        """Indices of a family of size <= k, or None if none exists."""
        full = (1 << self.m) - 1
        chosen: list[int] = []
        masks = self.masks
        suffix = self.suffix_union
        cover = self.require_cover

        def rec(start: int, groups: tuple[int, ...], uncovered: int, left: int) -> bool:
            self.nodes += 1
            if self.deadline is not None and self.nodes % 1024 == 0:
                if time.monotonic() > self.deadline:
                    raise Timeout(f"budget {self.budget_ms} ms exhausted")
            if not groups and not uncovered:
                return True
            need = max((_ceil_log2(_popcount(g)) for g in groups), default=0)
            if need > left or left == 0:
                return False
            if uncovered & ~suffix[start]:
                return False
            for i in range(start, len(masks)):
                mask = masks[i]
                new_groups = []
                changed = False
                for g in groups:
                    a = g & mask
                    b = g & ~mask
                    if a and b:
                        changed = True
                        if a & (a - 1):
                            new_groups.append(a)
                        if b & (b - 1):
                            new_groups.append(b)
                    elif g & (g - 1):
                        new_groups.append(g)
                new_uncovered = uncovered & ~mask
                if not changed and new_uncovered == uncovered:
                    continue  # resolves nothing new; a smaller family exists without it
                chosen.append(i)
                if rec(i + 1, tuple(new_groups), new_uncovered, left - 1):
                    return True
                chosen.pop()
            return False

        init_groups = (full,) if self.m > 1 else ()
        init_uncovered = full if cover else 0
        if not init_groups and not init_uncovered:
            return []
        return chosen if rec(0, init_groups, init_uncovered, k) else None


def min_separating(
    host,
    ts: TargetSet,
    require_cover: bool = True,
    *,
    max_n: int = DEFAULT_MAX_N,
    budget_ms: float | None = None,
    include_trivial: bool | None = None,
) -> OracleResult:
    """Minimum-size family separating (and, by default, covering) ts.

    Iterative deepening over the family size, so the first family found is a
    certified minimum.  Length-0 candidate paths are included whenever the
    target contains a vertex and skipped for pure edge targets; pass
    ``include_trivial`` to override.  Exceeding the size cap or the
    wall-clock budget raises; there is no approximation.
    """
    if host.n > max_n:
        raise TooLarge(f"n={host.n} exceeds cap {max_n}")
    started = time.monotonic()
    search = _Search(host, ts, require_cover, budget_ms, include_trivial)
    for k in range(search.floor(), len(search.cands) + 1):
        picked = search.at_most(k)
        if picked is not None:
            system = PathSystem(host, tuple(search.cands[i] for i in picked))
            if not separates(system, ts):
                raise InternalClassificationError("oracle family fails separation")
            if require_cover and not covers(system, ts):
                raise InternalClassificationError("oracle family fails covering")
            return OracleResult(len(picked), system, search.nodes, time.monotonic() - started)
    raise Infeasible("no family over the candidate paths separates the target")


def exists_family(
    host,
    ts: TargetSet,
    k: int,
    require_cover: bool = True,
    *,
    max_n: int = DEFAULT_MAX_N,
) -> bool:
    """Exhaustively decide whether some family of size <= k works."""
    if host.n > max_n:
        raise TooLarge(f"n={host.n} exceeds cap {max_n}")
    if k < 0:
        return False
    return _Search(host, ts, require_cover, None).at_most(k) is not None


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _ceil_log2(x: int) -> int:
    return 0 if x <= 1 else (x - 1).bit_length()


# ---- unlabeled tree enumeration (level-sequence successor algorithm) ----

def enumerate_trees(n: int) -> tuple[Tree, ...]:
    """One tree per unlabeled isomorphism class, deterministic order.

    Counts for n = 2..10 are 1, 1, 2, 3, 6, 11, 23, 47, 106.
    """
    if not 2 <= n <= 10:
        raise TooLarge(f"n={n} outside supported range 2..10")
    return _enumerate_trees_cached(n)


@lru_cache(maxsize=None)
def _enumerate_trees_cached(n: int) -> tuple[Tree, ...]:
    if n == 2:
        return (Tree.from_edges([(0, 1)]),)
    out = []
    # Start from the path graph rooted at its center.
    layout = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while layout is not None:
        layout = _next_free_tree(layout)
        if layout is not None:
            out.append(_layout_to_tree(layout))
            layout = _next_rooted(layout)
    return tuple(out)


def _split_layout(layout: list[int]) -> tuple[list[int], list[int]]:
    """The root's first subtree, and the tree with that subtree removed."""
    second_one = None
    ones = 0
    for i, d in enumerate(layout):
        if d == 1:
            ones += 1
            if ones == 2:
                second_one = i
                break
    m = second_one if second_one is not None else len(layout)
    left = [layout[i] - 1 for i in range(1, m)]
    rest = [0] + layout[m:]
    return left, rest


def _next_rooted(layout: list[int], p: int | None = None) -> list[int] | None:
    """Successor in the canonical rooted-tree ordering."""
    if p is None:
        p = len(layout) - 1
        while layout[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while layout[q] != layout[p] - 1:
        q -= 1
    result = list(layout)
    for i in range(p, len(result)):
        result[i] = result[i - p + q]
    return result


def _next_free_tree(candidate: list[int]) -> list[int] | None:
    """Advance to the next level sequence that encodes a free tree."""
    left, rest = _split_layout(candidate)
    left_height = max(left)
    rest_height = max(rest)
    valid = rest_height >= left_height
    if valid and rest_height == left_height:
        if len(left) > len(rest):
            valid = False
        elif len(left) == len(rest) and left > rest:
            valid = False
    if valid:
        return candidate
    p = len(left)
    new_candidate = _next_rooted(candidate, p)
    if candidate[p] > 2:
        new_left, _ = _split_layout(new_candidate)
        suffix = list(range(1, max(new_left) + 2))
        new_candidate[-len(suffix):] = suffix
    return new_candidate


def _layout_to_tree(layout: list[int]) -> Tree:
    edges = []
    stack: list[int] = []
    for i, level in enumerate(layout):
        while stack and layout[stack[-1]] >= level:
            stack.pop()
        if stack:
            edges.append((stack[-1], i))
        stack.append(i)
    return Tree.from_edges(edges)
