"""Monochromatic-subset search and exact small Ramsey numbers.

Two kinds of search live here.  ``find_mono`` hunts for a monochromatic
h-subset inside one given graph; for pair graphs the per-vertex color
neighborhoods are bit vectors intersected word-parallel, higher arities use
a generic sorted-prefix walk.  The adversary sweep behind ``ramsey_number``
and ``asymmetric_number`` enumerates partition colorings (one color per
edge) in lexicographic edge order by depth-first search, pruning a branch
as soon as a forced monochromatic target is complete, and fixing the color
of the first edge whenever the targets are color-symmetric.

Every complete answer ships with a certificate: the extremal coloring one
vertex below the computed value, checkable by ``verify_avoidance``, which
is a plain exhaustive scan sharing no code with the searches.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .budget import Budget, BudgetExhausted, default_budget
from .core import (
    ColorId,
    ColoredGraph,
    Edge,
    TableSource,
    TooSmall,
    colors_of,
    make_graph,
)

__all__ = [
    "MonoWitness",
    "RamseyResult",
    "find_mono",
    "ramsey_number",
    "asymmetric_number",
    "pigeonhole_number",
    "verify_avoidance",
    "avoidance_search",
]

Group = tuple[tuple[int, ...], int | None]


@dataclass(frozen=True)
class MonoWitness:
    """A vertex set all of whose edges carry ``color``."""

    vertices: tuple[int, ...]
    color: ColorId


@dataclass(frozen=True)
class RamseyResult:
    """Outcome of a Ramsey-number sweep.

    ``value`` is the exact number when the sweep completed; otherwise it is
    None and ``lower_bound`` is the best certified bound (an avoidance
    coloring of size lower_bound - 1 was found).  ``witness_coloring`` is
    the extremal coloring one vertex below the bound and always passes
    verify_avoidance.
    """

    value: int | None
    lower_bound: int
    witness_coloring: ColoredGraph
    exhausted: bool

    @property
    def exact(self) -> bool:
        return self.value is not None


# -- monochromatic subset search ----------------------------------------------


def find_mono(
    graph: ColoredGraph, h: int, budget: Budget | None = None
) -> MonoWitness | None:
    """Lexicographically least monochromatic h-subset, least color on ties.

    Exhaustive within the graph: a None return means no such subset exists.
    Raises BudgetExhausted when stopped early, which is a distinct outcome.
    """
    if h < graph.arity:
        raise TooSmall("target size must be at least the arity")
    budget = budget if budget is not None else default_budget()
    budget.require_depth(h)
    if graph.size < h:
        return None
    if graph.arity == 2:
        return _find_mono_pairs(graph, h, budget)
    return _find_mono_general(graph, h, budget)


def _find_mono_pairs(graph: ColoredGraph, h: int, budget: Budget) -> MonoWitness | None:
    verts = graph.vertices
    m = len(verts)
    adj: dict[int, list[int]] = {c: [0] * m for c in range(1, graph.color_count + 1)}
    for i, j in itertools.combinations(range(m), 2):
        budget.charge_subsets()
        for c in colors_of(graph, (verts[i], verts[j])):
            adj[c][i] |= 1 << j
            adj[c][j] |= 1 << i
    full = (1 << m) - 1
    prefix: list[int] = []

    def walk(masks: dict[int, int], start: int) -> MonoWitness | None:
        if len(prefix) == h:
            return MonoWitness(tuple(verts[i] for i in prefix), min(masks))
        union = 0
        for mask in masks.values():
            union |= mask
        for v in range(start, m):
            if not union & (1 << v):
                continue
            budget.charge_subsets()
            bit = 1 << v
            nxt = {c: mask & adj[c][v] for c, mask in masks.items() if mask & bit}
            prefix.append(v)
            found = walk(nxt, v + 1)
            prefix.pop()
            if found is not None:
                return found
        return None

    return walk({c: full for c in range(1, graph.color_count + 1)}, 0)


def _find_mono_general(graph: ColoredGraph, h: int, budget: Budget) -> MonoWitness | None:
    verts = graph.vertices
    n = graph.arity
    m = len(verts)
    full = frozenset(range(1, graph.color_count + 1))
    cache: dict[Edge, frozenset[int]] = {}
    prefix: list[int] = []

    def walk(common: frozenset[int], start: int) -> MonoWitness | None:
        if len(prefix) == h:
            return MonoWitness(tuple(prefix), min(common))
        stubs = (
            list(itertools.combinations(prefix, n - 1))
            if len(prefix) + 1 >= n
            else None
        )
        for idx in range(start, m):
            v = verts[idx]
            budget.charge_subsets()
            narrowed = common
            if stubs is not None:
                for stub in stubs:
                    edge = stub + (v,)
                    cs = cache.get(edge)
                    if cs is None:
                        budget.charge_subsets()
                        cs = colors_of(graph, edge)
                        cache[edge] = cs
                    narrowed = narrowed & cs
                    if not narrowed:
                        break
                if not narrowed:
                    continue
            prefix.append(v)
            found = walk(narrowed, idx + 1)
            prefix.pop()
            if found is not None:
                return found
        return None

    return walk(full, 0)


# -- adversary enumeration ----------------------------------------------------


def _fires(colors: list[int], c: int, groups: tuple[Group, ...], budget: Budget) -> bool:
    """True if assigning color c to the current edge completed a forced group."""
    for edge_ids, required in groups:
        if required is not None and required != c:
            continue
        budget.charge_subsets()
        for j in edge_ids:
            if colors[j] != c:
                break
        else:
            return True
    return False


def _dfs_suffix(
    colors: list[int],
    depth: int,
    edge_total: int,
    caps: tuple[int, ...],
    by_last: tuple[tuple[Group, ...], ...],
    budget: Budget,
) -> list[int] | None:
    """Backtrack over colors[depth:]; colors[:depth] is assigned and unforced."""
    if depth == edge_total:
        return list(colors)
    i = depth
    colors[i] = 0
    while i >= depth:
        c = colors[i] + 1
        if c > caps[i]:
            colors[i] = 0
            i -= 1
            continue
        colors[i] = c
        budget.charge_colorings()
        if _fires(colors, c, by_last[i], budget):
            continue
        if i + 1 == edge_total:
            return list(colors)
        i += 1
        colors[i] = 0
    return None


def _group_index(edge_total: int, groups: list[Group]) -> tuple[tuple[Group, ...], ...]:
    by_last: list[list[Group]] = [[] for _ in range(edge_total)]
    for edge_ids, required in groups:
        ids = tuple(sorted(edge_ids))
        by_last[ids[-1]].append((ids, required))
    return tuple(tuple(gs) for gs in by_last)


def _subtree_task(args):
    (edge_total, caps, by_last, prefix, budget_caps) = args
    budget = Budget(*budget_caps)
    colors = [0] * edge_total
    colors[: len(prefix)] = prefix
    try:
        found = _dfs_suffix(colors, len(prefix), edge_total, caps, by_last, budget)
    except BudgetExhausted:
        return ("exhausted", None, budget.used_colorings, budget.used_subsets)
    status = "found" if found is not None else "none"
    return (status, found, budget.used_colorings, budget.used_subsets)


def avoidance_search(
    edge_total: int,
    r: int,
    groups: list[Group],
    budget: Budget,
    fix_first: bool,
    jobs: int = 1,
) -> list[int] | None:
    """First (lex-least) partition coloring avoiding every group, or None
    when all colorings are forced.

    A group is a tuple of edge indices plus an optional required color;
    it fires when all its edges share one assigned color (equal to the
    required color when given).  ``fix_first`` pins edge 0 to color 1 and is
    only sound when the groups are invariant under color permutation.

    With jobs > 1 the forest is split at a fixed depth into independent
    subtrees run in worker processes, each under a fresh budget with the
    caller's remaining caps; the merged verdict is the one the sequential
    scan order reaches first, so results do not depend on the job count.
    """
    budget.require_depth(edge_total)
    caps = tuple(1 if (i == 0 and fix_first) else r for i in range(edge_total))
    by_last = _group_index(edge_total, groups)
    if jobs <= 1 or edge_total < 2:
        colors = [0] * edge_total
        return _dfs_suffix(colors, 0, edge_total, caps, by_last, budget)
    return _parallel_search(edge_total, r, caps, by_last, budget, jobs)


def _parallel_search(edge_total, r, caps, by_last, budget, jobs):
    depth = 1
    width = caps[0]
    while width < 2 * jobs and depth < min(edge_total, 8):
        width *= r
        depth += 1
    prefixes = []
    for combo in itertools.product(*(range(1, caps[i] + 1) for i in range(depth))):
        colors = [0] * edge_total
        ok = True
        for i, c in enumerate(combo):
            colors[i] = c
            if _fires(colors, c, by_last[i], budget):
                ok = False
                break
        if ok:
            prefixes.append(list(combo))
    remaining = (
        max(budget.max_colorings - budget.used_colorings, 1),
        max(budget.max_subsets - budget.used_subsets, 1),
        budget.max_depth,
    )
    tasks = [(edge_total, caps, by_last, p, remaining) for p in prefixes]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_subtree_task, tasks))
    peak_colorings = max((u for _, _, u, _ in results), default=0)
    peak_subsets = max((u for _, _, _, u in results), default=0)
    budget.used_colorings += peak_colorings
    budget.used_subsets += peak_subsets
    for status, found, _, _ in results:
        if status == "found":
            return found
        if status == "exhausted":
            raise BudgetExhausted("subtree budget exhausted in parallel sweep")
    return None


# -- Ramsey numbers -----------------------------------------------------------


def _edge_list(k: int, n: int) -> tuple[list[Edge], dict[Edge, int]]:
    edges = list(itertools.combinations(range(k), n))
    return edges, {e: i for i, e in enumerate(edges)}


def _target_groups(
    k: int, n: int, targets: list[tuple[int, int | None]], index: dict[Edge, int]
) -> list[Group]:
    groups: list[Group] = []
    for size, required in targets:
        for subset in itertools.combinations(range(k), size):
            ids = tuple(index[e] for e in itertools.combinations(subset, n))
            groups.append((ids, required))
    return groups


def _assignment_graph(k: int, n: int, r: int, edges: list[Edge], colors: list[int]) -> ColoredGraph:
    table = {e: frozenset((c,)) for e, c in zip(edges, colors)}
    return make_graph(range(k), n, r, TableSource(table))


def _all_one_graph(k: int, n: int, r: int) -> ColoredGraph:
    edges = itertools.combinations(range(k), n)
    return make_graph(range(k), n, r, TableSource({e: frozenset((1,)) for e in edges}))


def _sweep(
    n: int,
    r: int,
    start: int,
    targets: list[tuple[int, int | None]],
    budget: Budget,
    fix_first: bool,
    jobs: int,
) -> RamseyResult:
    """Ascend k from ``start``: exact value is the first k with no avoidance
    coloring; the witness is the avoidance coloring found at k - 1."""
    witness = _all_one_graph(start - 1, n, r)
    k = start
    while True:
        edges, index = _edge_list(k, n)
        groups = _target_groups(k, n, targets, index)
        try:
            assignment = avoidance_search(len(edges), r, groups, budget, fix_first, jobs)
        except BudgetExhausted:
            return RamseyResult(None, k, witness, exhausted=True)
        if assignment is None:
            return RamseyResult(k, k, witness, exhausted=False)
        witness = _assignment_graph(k, n, r, edges, assignment)
        k += 1


def ramsey_number(
    r: int, n: int, h: int, budget: Budget | None = None, jobs: int = 1
) -> RamseyResult:
    """Least k such that every r-coloring of the n-subsets of k vertices
    contains a monochromatic h-subset; exact when the sweep finishes in
    budget, otherwise a certified lower bound."""
    if r < 1 or n < 1 or h < n:
        raise ValueError("need r >= 1 and h >= n >= 1")
    budget = budget if budget is not None else default_budget()
    return _sweep(n, r, h, [(h, None)], budget, fix_first=True, jobs=jobs)


def asymmetric_number(
    n: int, sizes, budget: Budget | None = None, jobs: int = 1
) -> RamseyResult:
    """Least k forcing, for some i, a color-i monochromatic subset of size
    sizes[i-1].  First-edge color fixing only applies when all targets are
    equal, since unequal targets are not color-symmetric."""
    targets = tuple(int(q) for q in sizes)
    if not targets or n < 1 or any(q < n for q in targets):
        raise ValueError("need n >= 1 and every target >= n")
    budget = budget if budget is not None else default_budget()
    r = len(targets)
    per_color = [(q, i + 1) for i, q in enumerate(targets)]
    symmetric = len(set(targets)) == 1
    return _sweep(n, r, min(targets), per_color, budget, fix_first=symmetric, jobs=jobs)


def pigeonhole_number(r: int, h: int) -> int:
    """Arity-1 Ramsey number, by formula: r(h-1) + 1."""
    if r < 1 or h < 1:
        raise ValueError("need r >= 1 and h >= 1")
    return r * (h - 1) + 1


# -- certificate checking -----------------------------------------------------


def verify_avoidance(k: int, graph: ColoredGraph, sizes) -> bool:
    """True iff the coloring contains no forbidden monochromatic subset.

    ``sizes`` is either one integer h (any color, size h) or a sequence of
    per-color targets q_1..q_r.  Plain exhaustive scan over subsets, kept
    independent of the search code paths on purpose.
    """
    if graph.size != k:
        raise ValueError("graph size differs from k")
    if isinstance(sizes, int):
        targets = [(sizes, None)]
    else:
        targets = [(int(q), i + 1) for i, q in enumerate(sizes)]
    n = graph.arity
    for size, required in targets:
        if size < n:
            raise ValueError("forbidden size below the arity")
        for subset in itertools.combinations(graph.vertices, size):
            common: frozenset[int] | None = None
            for edge in itertools.combinations(subset, n):
                cs = colors_of(graph, edge)
                common = cs if common is None else common & cs
                if not common:
                    break
            if not common:
                continue
            if required is None or required in common:
                return False
    return True
