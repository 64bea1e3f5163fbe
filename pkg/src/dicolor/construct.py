"""Composition operators and the hard families built from them."""
from __future__ import annotations

from .digraph import Digraph, DigraphError, make_digraph


def arrow_join(a: Digraph, b: Digraph) -> Digraph:
    """Disjoint union of a and b plus every arc from a to b.

    Vertices of a keep their indices, vertices of b are shifted up by a.n.
    """
    if a.n == 0 or b.n == 0:
        raise DigraphError("arrow join wants nonempty operands")
    shift_mask = ((1 << b.n) - 1) << a.n
    rows = [a.out_masks[v] | shift_mask for v in range(a.n)]
    rows += [b.out_masks[v] << a.n for v in range(b.n)]
    return Digraph.from_out_masks(a.n + b.n, rows)


def cyclic_join(parts: list[Digraph]) -> Digraph:
    """Disjoint union of k >= 3 parts plus all arcs from each part to the next, cyclically.

    Parts are laid out consecutively in list order.
    """
    k = len(parts)
    if k < 3:
        raise DigraphError(f"cyclic join wants at least 3 parts, got {k}")
    if any(p.n == 0 for p in parts):
        raise DigraphError("cyclic join wants nonempty parts")
    offsets = [0]
    for p in parts:
        offsets.append(offsets[-1] + p.n)
    n = offsets[-1]
    rows = [0] * n
    for i, p in enumerate(parts):
        base = offsets[i]
        nxt = (i + 1) % k
        to_next = ((1 << parts[nxt].n) - 1) << offsets[nxt]
        for v in range(p.n):
            rows[base + v] = (p.out_masks[v] << base) | to_next
    return Digraph.from_out_masks(n, rows)


def dk_family(k: int) -> Digraph:
    """The k-th member of the doubling family: one vertex for k=1, then
    a cyclic join of two previous members and a single vertex.

    Has 2**k - 1 vertices, is a tournament, and needs exactly k colours.
    The two recursive copies precede the single extra vertex.
    """
    if k < 1:
        raise DigraphError(f"family index must be >= 1, got {k}")
    d = make_digraph(1, [])
    for _ in range(k - 1):
        d = cyclic_join([d, d, make_digraph(1, [])])
    return d


def c4_iterates(i: int) -> Digraph:
    """The i-th iterated 4-cycle blow-up: one vertex for i=1, then a
    cyclic join of four previous members.

    Has 4**(i-1) vertices and needs exactly i colours while avoiding
    digons, directed triangles and every orientation of the 4-vertex path.
    """
    if i < 1:
        raise DigraphError(f"iterate index must be >= 1, got {i}")
    d = make_digraph(1, [])
    for _ in range(i - 1):
        d = cyclic_join([d, d, d, d])
    return d


def semicomplete_from_graph(
    n: int, edges: list[tuple[int, int]], order: list[int] | None = None
) -> Digraph:
    """Semicomplete digraph from a graph: edges become digons, non-edges
    become single arcs pointing forward along the given vertex order.

    ``order`` is a permutation of 0..n-1; identity when omitted.  Vertex
    names are preserved, only arc directions read the order.
    """
    if order is None:
        order = list(range(n))
    if sorted(order) != list(range(n)):
        raise DigraphError("order must be a permutation of the vertices")
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    edge_set = set()
    for u, v in edges:
        if u == v:
            raise DigraphError(f"loop edge at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise DigraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
        edge_set.add((min(u, v), max(u, v)))
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) in edge_set:
                arcs.append((u, v))
                arcs.append((v, u))
            elif pos[u] < pos[v]:
                arcs.append((u, v))
            else:
                arcs.append((v, u))
    return make_digraph(n, arcs)


def named_graph(token: str) -> tuple[int, list[tuple[int, int]]]:
    """Small named graphs for the semicomplete construction and tests.

    Tokens: "cycle:N", "path:N", "complete:N", "petersen".
    """
    tok = token.strip().lower()
    head, _, tail = tok.partition(":")
    if head == "petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        spokes = [(i, 5 + i) for i in range(5)]
        return 10, outer + inner + spokes
    try:
        m = int(tail)
    except ValueError:
        raise DigraphError(f"graph token {token!r} wants an integer parameter") from None
    if head == "cycle":
        if m < 3:
            raise DigraphError("cycle wants n >= 3")
        return m, [(i, (i + 1) % m) for i in range(m)]
    if head == "path":
        if m < 1:
            raise DigraphError("path wants n >= 1")
        return m, [(i, i + 1) for i in range(m - 1)]
    if head == "complete":
        if m < 1:
            raise DigraphError("complete wants n >= 1")
        return m, [(i, j) for i in range(m) for j in range(i + 1, m)]
    raise DigraphError(f"unknown graph token {token!r}")
