"""Plain-text graph files.

Grammar, one directive per line:

    dims P Q          exactly once, before any edge
    edge I J S T      joins (I, J) to (S, T); equal endpoints make a loop

'#' starts a comment, blank lines are skipped, leading and trailing
whitespace is tolerated, fields are separated by single spaces, and the
file must be US-ASCII.
"""

from __future__ import annotations

from .errors import GraphFileError, OutOfRangeError
from .graphs import Dims, Graph, build_graph, linear_index


def parse_graph_text(text: str) -> Graph:
    dims: Dims | None = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.isascii():
            raise GraphFileError("non-ASCII character", line=lineno)
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        fields = stripped.split(" ")
        if "" in fields:
            raise GraphFileError(
                "fields must be separated by single spaces", line=lineno
            )
        keyword = fields[0]
        if keyword == "dims":
            if dims is not None:
                raise GraphFileError("duplicate dims header", line=lineno)
            if len(fields) != 3:
                raise GraphFileError("dims needs exactly two fields", line=lineno)
            p, q = (_parse_int(f, lineno) for f in fields[1:])
            if p < 1 or q < 1:
                raise GraphFileError("dims must be positive", line=lineno)
            dims = Dims(p, q)
        elif keyword == "edge":
            if dims is None:
                raise GraphFileError("edge line before dims header", line=lineno)
            if len(fields) != 5:
                raise GraphFileError("edge needs exactly four fields", line=lineno)
            i, j, s, t = (_parse_int(f, lineno) for f in fields[1:])
            for (a, b) in ((i, j), (s, t)):
                if not (1 <= a <= dims.p and 1 <= b <= dims.q):
                    raise OutOfRangeError(
                        f"vertex ({a},{b}) outside {dims.p}x{dims.q} grid",
                        line=lineno,
                    )
            edges.append(frozenset({(i, j), (s, t)}))
        else:
            raise GraphFileError(f"unknown keyword {keyword!r}", line=lineno)
    if dims is None:
        raise GraphFileError("missing dims header")
    return build_graph(dims, edges)


def _parse_int(field: str, lineno: int) -> int:
    try:
        return int(field)
    except ValueError:
        raise GraphFileError(f"bad integer {field!r}", line=lineno) from None


def parse_graph_file(path) -> Graph:
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise GraphFileError(f"cannot read {path}: {exc}") from None
    except UnicodeDecodeError:
        raise GraphFileError("non-ASCII character") from None
    return parse_graph_text(text)


def format_graph(g: Graph) -> str:
    """Canonical text form: dims line, then edges sorted by linear indices."""
    lines = [f"dims {g.dims.p} {g.dims.q}"]
    rendered = []
    for e in g.edges:
        verts = sorted(e, key=lambda v: linear_index(v, g.dims))
        u = verts[0]
        w = verts[-1]
        rendered.append(
            (linear_index(u, g.dims), linear_index(w, g.dims), u, w)
        )
    for _, _, u, w in sorted(rendered):
        lines.append(f"edge {u[0]} {u[1]} {w[0]} {w[1]}")
    return "\n".join(lines) + "\n"


def write_graph_file(path, g: Graph) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_graph(g))
