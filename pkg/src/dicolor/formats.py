"""Plain-text digraph and colouring formats, plus DOT export.

Digraph files: a "n <count>" header, then one "a <u> <v>" line per arc.
'#' starts a comment, indices are 0-based, tokens are whitespace
separated.  Serialisation is byte-stable: sorted arcs, LF endings.
"""
from __future__ import annotations

from .digraph import Coloring, Digraph, make_digraph


class ParseError(ValueError):
    """Malformed input text; carries the 1-based line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _significant_lines(text: str):
    for idx, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield idx, line


def _int_field(word: str, what: str, idx: int) -> int:
    try:
        return int(word)
    except ValueError:
        raise ParseError(f"{what} is not an integer: {word!r}", idx) from None


def parse_digraph(text: str) -> Digraph:
    n: int | None = None
    arcs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    last = 0
    for idx, line in _significant_lines(text):
        last = idx
        fields = line.split()
        if fields[0] == "n":
            if n is not None:
                raise ParseError("duplicate vertex-count header", idx)
            if len(fields) != 2:
                raise ParseError("header must be 'n <count>'", idx)
            n = _int_field(fields[1], "vertex count", idx)
            if n < 0:
                raise ParseError(f"negative vertex count {n}", idx)
        elif fields[0] == "a":
            if n is None:
                raise ParseError("arc line before the 'n <count>' header", idx)
            if len(fields) != 3:
                raise ParseError("arc line must be 'a <u> <v>'", idx)
            u = _int_field(fields[1], "arc tail", idx)
            v = _int_field(fields[2], "arc head", idx)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"arc ({u}, {v}) out of range for {n} vertices", idx)
            if u == v:
                raise ParseError(f"loop at vertex {u}", idx)
            if (u, v) in seen:
                raise ParseError(f"duplicate arc ({u}, {v})", idx)
            seen.add((u, v))
            arcs.append((u, v))
        else:
            raise ParseError(f"unknown directive {fields[0]!r}", idx)
    if n is None:
        raise ParseError("missing 'n <count>' header", last + 1)
    return make_digraph(n, arcs)


def serialize_digraph(d: Digraph) -> str:
    lines = [f"n {d.n}"]
    lines.extend(f"a {u} {v}" for u, v in sorted(d.arcs))
    return "\n".join(lines) + "\n"


def parse_coloring(text: str) -> Coloring:
    assignment: dict[int, int] = {}
    last = 0
    for idx, line in _significant_lines(text):
        last = idx
        fields = line.split()
        if fields[0] != "c" or len(fields) != 3:
            raise ParseError("colouring line must be 'c <vertex> <colour>'", idx)
        v = _int_field(fields[1], "vertex", idx)
        c = _int_field(fields[2], "colour", idx)
        if v < 0:
            raise ParseError(f"negative vertex {v}", idx)
        if c < 0:
            raise ParseError(f"negative colour {c}", idx)
        if v in assignment:
            raise ParseError(f"vertex {v} coloured twice", idx)
        assignment[v] = c
    if not assignment:
        raise ParseError("no colour assignments", last + 1)
    missing = [v for v in range(max(assignment) + 1) if v not in assignment]
    if missing:
        raise ParseError(f"vertex {missing[0]} has no colour", last + 1)
    return Coloring(tuple(assignment[v] for v in range(len(assignment))))


def serialize_coloring(coloring: Coloring) -> str:
    return "".join(f"c {v} {c}\n" for v, c in enumerate(coloring.colors))


def export_dot(d: Digraph) -> str:
    """DOT text; digons appear as two directed edges, isolated vertices
    as bare node statements so the vertex count survives the trip."""
    lines = ["digraph D {"]
    lines.extend(f"  {v};" for v in range(d.n))
    lines.extend(f"  {u} -> {v};" for u, v in sorted(d.arcs))
    lines.append("}")
    return "\n".join(lines) + "\n"
