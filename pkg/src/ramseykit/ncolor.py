"""Text format for colorings (extension ``.ncolor``).

One graph per document::

    ncolor n=<n> r=<r> v=<count>
    table
    <v1> <v2> ... <vn> <c1>[,<c2>...]
    ...

or::

    ncolor n=<n> r=<r> v=<count>
    oracle seed=<u64>

The vertex set is always 0..count-1.  Table rows may repeat an edge (color
sets merge) and may mention labels outside the vertex set; such rows parse
fine and are never queried.  The oracle variant is bit-exact across
implementations: color = 1 + mix64(seed XOR edge_hash(edge)) mod r, with
mix64 and edge_hash as defined in :mod:`ramseykit.core`.

Serialization of a graph whose vertices are not already 0..count-1
materializes a table with labels replaced by vertex positions, preserving
colors edge by edge.
"""

from __future__ import annotations

import re

from .core import (
    ColoredGraph,
    OracleSource,
    TableSource,
    colors_of,
    edges_of,
    make_graph,
)

__all__ = ["FormatError", "parse_coloring", "serialize_coloring", "read_coloring", "write_coloring"]

_HEADER = re.compile(r"^ncolor n=(\d+) r=(\d+) v=(\d+)$")
_ORACLE = re.compile(r"^oracle seed=(\d+)$")


class FormatError(ValueError):
    """Document does not follow the coloring-spec grammar."""


def parse_coloring(text: str) -> ColoredGraph:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormatError("empty document")
    header = _HEADER.match(lines[0])
    if header is None:
        raise FormatError(f"bad header line: {lines[0]!r}")
    n, r, count = (int(g) for g in header.groups())
    if len(lines) < 2:
        raise FormatError("missing source line")
    kind = lines[1]
    if kind == "table":
        rows: dict[tuple[int, ...], set[int]] = {}
        for ln in lines[2:]:
            fields = ln.split()
            if len(fields) != n + 1:
                raise FormatError(f"expected {n} labels and a color list: {ln!r}")
            try:
                members = tuple(int(f) for f in fields[:n])
                colors = {int(c) for c in fields[n].split(",")}
            except ValueError:
                raise FormatError(f"non-numeric field in row: {ln!r}") from None
            key = tuple(sorted(members))
            rows.setdefault(key, set()).update(colors)
        source = TableSource.from_rows(rows)
        return make_graph(range(count), n, r, source)
    oracle = _ORACLE.match(kind)
    if oracle is not None:
        if len(lines) > 2:
            raise FormatError("unexpected lines after oracle declaration")
        seed = int(oracle.group(1))
        if seed >= 1 << 64:
            raise FormatError("oracle seed must fit in 64 bits")
        return make_graph(range(count), n, r, OracleSource(seed, r))
    raise FormatError(f"unknown source kind: {kind!r}")


def serialize_coloring(graph: ColoredGraph) -> str:
    count = graph.size
    header = f"ncolor n={graph.arity} r={graph.color_count} v={count}"
    zero_based = graph.vertices == tuple(range(count))
    if zero_based and isinstance(graph.coloring, OracleSource):
        return f"{header}\noracle seed={graph.coloring.seed}\n"
    position = {v: i for i, v in enumerate(graph.vertices)}
    lines = [header, "table"]
    for edge in edges_of(graph):
        labels = " ".join(str(position[v]) for v in edge)
        colors = ",".join(str(c) for c in sorted(colors_of(graph, edge)))
        lines.append(f"{labels} {colors}")
    return "\n".join(lines) + "\n"


def read_coloring(path) -> ColoredGraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_coloring(fh.read())


def write_coloring(path, graph: ColoredGraph) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize_coloring(graph))
