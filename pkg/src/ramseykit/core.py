"""r-colored n-graphs.

A graph here is a complete n-uniform hypergraph: a finite ordered set of
vertex labels, the set of all n-subsets as edges, and an assignment of at
least one color out of 1..r to every edge.  Color classes form a covering,
not necessarily a partition, so an edge may carry several colors at once.
A coloring may also mention tuples outside the edge set; such entries are
retained but never consulted by any query.

Colorings come from three kinds of source: an explicit table, a seeded
deterministic oracle (one color per edge, bit-exact across runs and
platforms), or a pure derivation rule.  Sources are immutable and safe to
share between graphs and across concurrent workers; restriction reuses the
source of the parent graph, so colors are inherited edge by edge.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

ColorId = int
Edge = tuple[int, ...]

__all__ = [
    "ColorId",
    "Edge",
    "GraphError",
    "CoveringViolation",
    "ArityMismatch",
    "NotASubset",
    "UnknownEdge",
    "TooSmall",
    "mix64",
    "edge_hash",
    "oracle_color",
    "ColoringSource",
    "TableSource",
    "OracleSource",
    "RuleSource",
    "ColoredGraph",
    "make_graph",
    "edges_of",
    "restrict",
    "colors_of",
    "is_monochromatic",
]


class GraphError(ValueError):
    """Malformed graph, coloring, or query."""


class CoveringViolation(GraphError):
    """Some edge of the graph carries no color."""


class ArityMismatch(GraphError):
    """A table row is not a set of n distinct labels."""


class NotASubset(GraphError):
    """A vertex-set argument is not contained in the graph's vertices."""


class UnknownEdge(GraphError):
    """A queried tuple is not an edge of the graph."""


class TooSmall(GraphError):
    """A vertex set is too small for the requested operation."""


# -- deterministic mixing ----------------------------------------------------
#
# Normative for the oracle coloring format: any reimplementation must
# reproduce these functions bit for bit.

_MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_MULT_1 = 0xBF58476D1CE4E5B9
_MIX_MULT_2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """Finalizing 64-bit mixer (the splitmix64 constants)."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * _MIX_MULT_1) & _MASK64
    x = ((x ^ (x >> 27)) * _MIX_MULT_2) & _MASK64
    return x ^ (x >> 31)


def edge_hash(members: Iterable[int]) -> int:
    """Fold member labels (ascending) into a 64-bit digest.

    acc starts at 0 and steps acc <- mix64(acc + label + GOLDEN_GAMMA),
    everything mod 2**64.
    """
    acc = 0
    for v in members:
        acc = mix64((acc + v + GOLDEN_GAMMA) & _MASK64)
    return acc


def oracle_color(seed: int, members: Iterable[int], color_count: int) -> ColorId:
    """Color of an edge under the seeded oracle: 1 + mix64(seed ^ h) mod r."""
    return 1 + mix64((seed ^ edge_hash(members)) & _MASK64) % color_count


# -- coloring sources --------------------------------------------------------


class ColoringSource:
    """Assigns a non-empty set of colors to edges it is asked about.

    Implementations must be referentially transparent: the same edge always
    yields the same color set, across calls, runs, and platforms.
    """

    def colors(self, edge: Edge) -> frozenset[ColorId]:
        raise NotImplementedError


def _normalize_color_value(value) -> frozenset[int]:
    if isinstance(value, int):
        value = (value,)
    colors = frozenset(int(c) for c in value)
    if not colors:
        raise CoveringViolation("empty color set in table row")
    if any(c < 1 for c in colors):
        raise GraphError("color ids must be >= 1")
    return colors


@dataclass(frozen=True)
class TableSource(ColoringSource):
    """Explicit edge -> color-set map.

    Rows whose members fall outside a graph's vertex set are kept here
    untouched; make_graph only validates the rows it will actually query.
    """

    assignments: Mapping[Edge, frozenset[ColorId]]

    @staticmethod
    def from_rows(rows: Mapping[Iterable[int], int | Iterable[int]]) -> "TableSource":
        """Normalize keys to sorted tuples; duplicate keys merge their colors."""
        table: dict[Edge, frozenset[int]] = {}
        for members, value in rows.items():
            key = tuple(sorted(members))
            colors = _normalize_color_value(value)
            if key in table:
                colors |= table[key]
            table[key] = colors
        return TableSource(table)

    def colors(self, edge: Edge) -> frozenset[ColorId]:
        try:
            return self.assignments[edge]
        except KeyError:
            raise CoveringViolation(f"edge {edge} has no color") from None


@dataclass(frozen=True)
class OracleSource(ColoringSource):
    """Seeded deterministic source; exactly one color per edge."""

    seed: int
    color_count: int

    def __post_init__(self):
        if not (0 <= self.seed < 1 << 64):
            raise GraphError("oracle seed must fit in 64 bits")
        if self.color_count < 1:
            raise GraphError("color_count must be >= 1")

    def color(self, edge: Edge) -> ColorId:
        return oracle_color(self.seed, edge, self.color_count)

    def colors(self, edge: Edge) -> frozenset[ColorId]:
        return frozenset((self.color(edge),))


@dataclass(frozen=True)
class RuleSource(ColoringSource):
    """Pure derivation rule, for graphs whose colors are computed from some
    other structure.  Not serializable; the rule must be deterministic."""

    rule: Callable[[Edge], int | Iterable[int]]

    def colors(self, edge: Edge) -> frozenset[ColorId]:
        return _normalize_color_value(self.rule(edge))


# -- the graph ---------------------------------------------------------------


@dataclass(frozen=True)
class ColoredGraph:
    """Immutable r-colored n-graph.  Build through make_graph."""

    vertices: tuple[int, ...]
    arity: int
    color_count: int
    coloring: ColoringSource

    @property
    def size(self) -> int:
        return len(self.vertices)


def _vertex_tuple(vertices: Iterable[int]) -> tuple[int, ...]:
    vs = tuple(sorted(vertices))
    if len(set(vs)) != len(vs):
        raise GraphError("duplicate vertex labels")
    if vs and vs[0] < 0:
        raise GraphError("vertex labels must be natural numbers")
    return vs


def make_graph(
    vertices: Iterable[int], n: int, r: int, coloring: ColoringSource
) -> ColoredGraph:
    """Validated graph on the given vertices.

    Table sources are checked for the covering invariant over the actual
    edge set; rows outside it (wrong labels) are allowed and ignored, but a
    row that is not a set of n distinct labels is rejected outright.
    """
    if n < 1:
        raise GraphError("arity must be >= 1")
    if r < 1:
        raise GraphError("color count must be >= 1")
    vs = _vertex_tuple(vertices)
    if isinstance(coloring, TableSource):
        for key, colors in coloring.assignments.items():
            if len(key) != n or len(set(key)) != n:
                raise ArityMismatch(f"table row {key} is not a {n}-subset")
            if any(c > r for c in colors):
                raise GraphError(f"table row {key} uses a color above {r}")
        for edge in itertools.combinations(vs, n):
            if not coloring.assignments.get(edge):
                raise CoveringViolation(f"edge {edge} has no color")
    elif isinstance(coloring, OracleSource):
        if coloring.color_count != r:
            raise GraphError("oracle color_count differs from graph color count")
    return ColoredGraph(vs, n, r, coloring)


def edges_of(graph: ColoredGraph) -> Iterator[Edge]:
    """All n-subsets of the vertices, exactly once, in lexicographic order."""
    return itertools.combinations(graph.vertices, graph.arity)


def restrict(graph: ColoredGraph, vertices: Iterable[int]) -> ColoredGraph:
    """Subgraph spanned by the given vertices; colors come from the same
    source, so they agree edge by edge with the parent graph."""
    ws = _vertex_tuple(vertices)
    if not set(ws) <= set(graph.vertices):
        raise NotASubset("restriction set is not a subset of the vertices")
    return ColoredGraph(ws, graph.arity, graph.color_count, graph.coloring)


def colors_of(graph: ColoredGraph, edge: Iterable[int]) -> frozenset[ColorId]:
    """Exact color set of an edge of the graph."""
    e = tuple(sorted(edge))
    if len(e) != graph.arity or len(set(e)) != graph.arity:
        raise UnknownEdge(f"{e} is not a {graph.arity}-subset")
    if not set(e) <= set(graph.vertices):
        raise UnknownEdge(f"{e} is not within the vertex set")
    return graph.coloring.colors(e)


def is_monochromatic(graph: ColoredGraph, vertices: Iterable[int]) -> ColorId | None:
    """Least color carried by every edge within the given set, if any."""
    ws = _vertex_tuple(vertices)
    if not set(ws) <= set(graph.vertices):
        raise NotASubset("queried set is not a subset of the vertices")
    if len(ws) < graph.arity:
        raise TooSmall(f"need at least {graph.arity} vertices")
    common: frozenset[ColorId] | None = None
    for edge in itertools.combinations(ws, graph.arity):
        cs = graph.coloring.colors(edge)
        common = cs if common is None else common & cs
        if not common:
            return None
    if common is None:  # unreachable: len(ws) >= arity guarantees an edge
        return None
    return min(common)
