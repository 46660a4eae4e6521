"""Text formats for graphs and labelings, plus DOT export.

Both formats are canonical: serialize sorts labels by index and edges
lexicographically, so parse/serialize round-trips are byte-identical.
"""

from __future__ import annotations

from typing import Optional, Union

from .decomposition import D_LABEL, Labeling
from .digraph import DiGraph, GraphError, graph_from_edges


class FormatError(ValueError):
    """Malformed graph or labeling text; the message carries the line number."""


def _lines(data: Union[bytes, str]) -> list[str]:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    return text.split("\n")


def _significant(data) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(_lines(data), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        out.append((lineno, line))
    return out


def parse_graph(data: Union[bytes, str]) -> DiGraph:
    """Parse the ``digraph`` text format; raises FormatError with a line number."""
    rows = _significant(data)
    if not rows:
        raise FormatError("line 1: missing 'digraph <n>' header")
    lineno, header = rows[0]
    fields = header.split()
    if len(fields) != 2 or fields[0] != "digraph":
        raise FormatError(f"line {lineno}: expected 'digraph <n>', got {header!r}")
    try:
        n = int(fields[1])
    except ValueError:
        raise FormatError(f"line {lineno}: vertex count {fields[1]!r} is not an integer")
    if n < 0:
        raise FormatError(f"line {lineno}: vertex count must be non-negative")
    edges = []
    labels = {}
    for lineno, line in rows[1:]:
        fields = line.split()
        if fields[0] == "edge":
            if len(fields) != 3:
                raise FormatError(f"line {lineno}: expected 'edge <u> <v>'")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise FormatError(f"line {lineno}: edge endpoints must be integers")
            if u == v:
                raise FormatError(f"line {lineno}: self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"line {lineno}: edge ({u}, {v}) out of range")
            edges.append((u, v))
        elif fields[0] == "label":
            rest = line.split(maxsplit=2)
            if len(rest) != 3:
                raise FormatError(f"line {lineno}: expected 'label <idx> <name>'")
            try:
                idx = int(rest[1])
            except ValueError:
                raise FormatError(f"line {lineno}: label index must be an integer")
            if not 0 <= idx < n:
                raise FormatError(f"line {lineno}: label index {idx} out of range")
            if idx in labels:
                raise FormatError(f"line {lineno}: duplicate label for vertex {idx}")
            labels[idx] = rest[2]
        else:
            raise FormatError(f"line {lineno}: unknown directive {fields[0]!r}")
    return graph_from_edges(n, edges, labels)


def serialize_graph(g: DiGraph) -> bytes:
    """Canonical text for a graph: header, sorted labels, sorted edges."""
    out = [f"digraph {g.vertex_count}"]
    for idx, name in g.labels:
        out.append(f"label {idx} {name}")
    for u, v in sorted(g.edges):
        out.append(f"edge {u} {v}")
    return ("\n".join(out) + "\n").encode("utf-8")


def parse_labeling(data: Union[bytes, str], graph: DiGraph) -> Labeling:
    """Parse the ``labeling`` text format against its graph."""
    rows = _significant(data)
    if not rows:
        raise FormatError("line 1: missing 'labeling n=<n>' header")
    lineno, header = rows[0]
    fields = header.split()
    if len(fields) != 2 or fields[0] != "labeling" or not fields[1].startswith("n="):
        raise FormatError(f"line {lineno}: expected 'labeling n=<n>', got {header!r}")
    try:
        n = int(fields[1][2:])
    except ValueError:
        raise FormatError(f"line {lineno}: part count {fields[1][2:]!r} is not an integer")
    assignment: dict[int, int] = {}

    def put(lineno, vertex_field, value):
        try:
            v = int(vertex_field)
        except ValueError:
            raise FormatError(f"line {lineno}: vertex {vertex_field!r} is not an integer")
        if not 0 <= v < graph.vertex_count:
            raise FormatError(f"line {lineno}: vertex {v} out of range")
        if v in assignment:
            raise FormatError(f"line {lineno}: vertex {v} assigned twice")
        assignment[v] = value

    saw_d = False
    for lineno, line in rows[1:]:
        fields = line.split()
        if fields[0] == "D":
            if saw_d:
                raise FormatError(f"line {lineno}: duplicate D line")
            saw_d = True
            for f in fields[1:]:
                put(lineno, f, D_LABEL)
        elif fields[0] == "part":
            if len(fields) < 3:
                raise FormatError(f"line {lineno}: expected 'part <i> <idx> ...'")
            try:
                i = int(fields[1])
            except ValueError:
                raise FormatError(f"line {lineno}: part index must be an integer")
            if not 0 <= i < n:
                raise FormatError(f"line {lineno}: part index {i} out of range")
            for f in fields[2:]:
                put(lineno, f, i)
        else:
            raise FormatError(f"line {lineno}: unknown directive {fields[0]!r}")
    if not saw_d:
        raise FormatError("line 1: missing D line")
    if len(assignment) != graph.vertex_count:
        missing = sorted(set(range(graph.vertex_count)) - set(assignment))
        raise FormatError(f"labeling is not total; unassigned vertices {missing}")
    return Labeling(graph, n, tuple(assignment[v] for v in range(graph.vertex_count)))


def serialize_labeling(l: Labeling) -> bytes:
    """Canonical text for a labeling: header, D line, nonempty parts ascending."""
    out = [f"labeling n={l.n}"]
    out.append(" ".join(["D", *map(str, l.d_vertices)]).rstrip())
    for i, part in enumerate(l.parts):
        if part:
            out.append(" ".join(["part", str(i), *map(str, part)]))
    return ("\n".join(out) + "\n").encode("utf-8")


_PART_COLORS = (
    "#e6550d", "#3182bd", "#31a354", "#756bb1", "#de9ed6",
    "#fdae6b", "#9ecae1", "#a1d99b", "#bcbddc", "#d6616b",
)


def to_dot(g: DiGraph, labeling: Optional[Labeling] = None) -> str:
    """Graphviz text with one fill color per part and a diamond shape for D."""
    lines = ["digraph helix {", "  node [style=filled, fillcolor=white];"]
    for v in range(g.vertex_count):
        name = g.label_of(v) or str(v)
        attrs = [f'label="{name}"']
        if labeling is not None:
            part = labeling.assignment[v]
            if part == D_LABEL:
                attrs.append("shape=diamond")
                attrs.append('fillcolor="#cccccc"')
            else:
                attrs.append(f'fillcolor="{_PART_COLORS[part % len(_PART_COLORS)]}"')
        lines.append(f"  v{v} [{', '.join(attrs)}];")
    for u, v in sorted(g.edges):
        lines.append(f"  v{u} -> v{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
