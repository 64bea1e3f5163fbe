"""Immutable digraphs with bit-row adjacency, and vertex colourings.

Vertices are always 0..n-1.  Digons (arcs in both directions between a
pair) are allowed, loops are not.  Adjacency lives in per-vertex integer
bitmasks so arc tests and whole-row set operations are single integer
operations, which is what every search in this package leans on.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator


class DigraphError(ValueError):
    """A digraph construction or query violated its contract."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Digraph:
    """An immutable digraph on vertices 0..n-1.

    ``out_masks[v]`` has bit u set iff the arc (v, u) is present,
    ``in_masks`` is the transpose.  Instances compare structurally.
    Use :func:`make_digraph` rather than the raw constructor; it
    validates endpoints and rejects loops and duplicate arcs.
    """

    n: int
    out_masks: tuple[int, ...]
    in_masks: tuple[int, ...]

    # -- construction -------------------------------------------------

    @staticmethod
    def from_out_masks(n: int, out_masks: Iterable[int]) -> Digraph:
        out = tuple(out_masks)
        if len(out) != n:
            raise DigraphError(f"expected {n} adjacency rows, got {len(out)}")
        full = (1 << n) - 1
        ins = [0] * n
        for v, row in enumerate(out):
            if row & ~full:
                raise DigraphError(f"row of vertex {v} mentions vertices outside 0..{n - 1}")
            if (row >> v) & 1:
                raise DigraphError(f"loop at vertex {v}")
            for u in iter_bits(row):
                ins[u] |= 1 << v
        return Digraph(n, out, tuple(ins))

    # -- basic queries ------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        """All arcs as (tail, head), sorted lexicographically."""
        return tuple((v, u) for v in range(self.n) for u in iter_bits(self.out_masks[v]))

    @property
    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.out_masks)

    def has_arc(self, u: int, v: int) -> bool:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise DigraphError(f"arc query ({u}, {v}) outside 0..{self.n - 1}")
        return bool((self.out_masks[u] >> v) & 1)

    def out_degree(self, v: int) -> int:
        return self.out_masks[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_masks[v].bit_count()

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(iter_bits(self.out_masks[v]))

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(iter_bits(self.in_masks[v]))

    def adj_mask(self, v: int) -> int:
        """Neighbours of v in the underlying graph, as a bitmask."""
        return self.out_masks[v] | self.in_masks[v]

    def digon_mask(self, v: int) -> int:
        """Vertices joined to v by a digon, as a bitmask."""
        return self.out_masks[v] & self.in_masks[v]

    # -- acyclicity ---------------------------------------------------

    def is_acyclic_within(self, mask: int) -> bool:
        """True iff the subdigraph induced on the masked vertices has no directed cycle.

        Repeatedly strips vertices with no in-neighbour inside the mask;
        the mask is acyclic iff everything gets stripped.
        """
        ins = self.in_masks
        live = mask
        stripped = True
        while live and stripped:
            stripped = False
            m = live
            while m:
                low = m & -m
                m ^= low
                if not (ins[low.bit_length() - 1] & live):
                    live ^= low
                    stripped = True
        return live == 0

    def is_acyclic(self) -> bool:
        return self.is_acyclic_within((1 << self.n) - 1)

    # -- derived digraphs ----------------------------------------------

    def reverse(self) -> Digraph:
        """The converse digraph: every arc flipped."""
        return Digraph(self.n, self.in_masks, self.out_masks)

    def induced(self, vertices: Iterable[int]) -> Digraph:
        """Subdigraph induced on the given vertices.

        The result relabels vertices to 0..k-1 following ascending
        original index, so ``sorted(vertices)[i]`` is the original name
        of result vertex i.
        """
        vs = sorted(set(vertices))
        if not vs:
            raise DigraphError("induced subdigraph on empty vertex set")
        if vs[0] < 0 or vs[-1] >= self.n:
            raise DigraphError(f"induced vertices outside 0..{self.n - 1}")
        index = {v: i for i, v in enumerate(vs)}
        rows = []
        for v in vs:
            row = 0
            for u in iter_bits(self.out_masks[v]):
                j = index.get(u)
                if j is not None:
                    row |= 1 << j
            rows.append(row)
        return Digraph.from_out_masks(len(vs), rows)

    def induced_mask(self, mask: int) -> Digraph:
        return self.induced(iter_bits(mask))

    def symmetric_closure(self) -> Digraph:
        """Every adjacency turned into a digon."""
        rows = tuple(self.out_masks[v] | self.in_masks[v] for v in range(self.n))
        return Digraph(self.n, rows, rows)

    # -- shape predicates ----------------------------------------------

    def is_oriented(self) -> bool:
        """True iff the digraph has no digon."""
        return all(self.out_masks[v] & self.in_masks[v] == 0 for v in range(self.n))

    def is_semicomplete(self) -> bool:
        """True iff every vertex pair carries at least one arc."""
        full = (1 << self.n) - 1
        return all(
            (self.out_masks[v] | self.in_masks[v] | (1 << v)) == full for v in range(self.n)
        )

    def is_tournament(self) -> bool:
        return self.is_semicomplete() and self.is_oriented()

    def underlying_edges(self) -> tuple[tuple[int, int], ...]:
        """Edges of the underlying graph as (u, v) with u < v, sorted."""
        out: list[tuple[int, int]] = []
        for v in range(self.n):
            for u in iter_bits((self.out_masks[v] | self.in_masks[v]) >> (v + 1)):
                out.append((v, v + 1 + u))
        return tuple(out)


def make_digraph(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    """Build a digraph on 0..n-1 from an arc list.

    Rejects loops, duplicate arcs and endpoints outside range.  Digons
    are given as the two arcs separately.
    """
    if n < 0:
        raise DigraphError(f"negative vertex count {n}")
    rows = [0] * n
    for u, v in arcs:
        if not (0 <= u < n and 0 <= v < n):
            raise DigraphError(f"arc ({u}, {v}) outside 0..{n - 1}")
        if u == v:
            raise DigraphError(f"loop at vertex {u}")
        if (rows[u] >> v) & 1:
            raise DigraphError(f"duplicate arc ({u}, {v})")
        rows[u] |= 1 << v
    return Digraph.from_out_masks(n, rows)


def find_cycle_within(d: Digraph, mask: int) -> tuple[int, ...] | None:
    """Some directed cycle inside the masked vertices, or None.

    The cycle is returned as its vertex sequence (without repeating the
    first vertex).  Search is a deterministic DFS from the lowest vertex.
    """
    # Strip vertices that cannot lie on a cycle first; whatever is left
    # has min in- and out-degree >= 1 inside the mask.
    live = mask
    changed = True
    while changed:
        changed = False
        for v in iter_bits(live):
            if not (d.in_masks[v] & live) or not (d.out_masks[v] & live):
                live ^= 1 << v
                changed = True
    if not live:
        return None
    # Every walk inside `live` eventually revisits a vertex.
    start = (live & -live).bit_length() - 1
    path = [start]
    seen = {start: 0}
    while True:
        v = path[-1]
        u = ((d.out_masks[v] & live) & -(d.out_masks[v] & live)).bit_length() - 1
        if u in seen:
            return tuple(path[seen[u]:])
        seen[u] = len(path)
        path.append(u)


def strong_components(d: Digraph) -> tuple[tuple[int, ...], ...]:
    """Strongly connected components in topological order of the condensation.

    Each component is a sorted vertex tuple; all arcs between distinct
    components go from an earlier tuple to a later one.
    """
    n = d.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[tuple[int, ...]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        # Iterative Tarjan; work items are (vertex, iterator position mask).
        work: list[tuple[int, int]] = [(root, d.out_masks[root])]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, remaining = work[-1]
            if remaining:
                lowbit = remaining & -remaining
                work[-1] = (v, remaining ^ lowbit)
                u = lowbit.bit_length() - 1
                if index[u] == -1:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack[u] = True
                    work.append((u, d.out_masks[u]))
                elif on_stack[u]:
                    low[v] = min(low[v], index[u])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(tuple(sorted(comp)))
    # Tarjan finishes a component only after everything it reaches, so the
    # emission order is reverse topological.
    comps.reverse()
    return tuple(comps)


def is_strongly_connected(d: Digraph) -> bool:
    return len(strong_components(d)) == 1


def multipartite_parts(
    d: Digraph,
) -> tuple[list[tuple[int, ...]] | None, tuple[int, int, int] | None]:
    """Colour classes of the underlying complete multipartite graph.

    Returns ``(parts, None)`` when the underlying graph is complete
    multipartite, with parts sorted by least vertex.  Otherwise returns
    ``(None, (u, v, w))`` where u,v and v,w are non-adjacent but u,w are
    adjacent, the witness that non-adjacency is not transitive.
    """
    n = d.n
    full = (1 << n) - 1
    nonadj = [full & ~(d.adj_mask(v) | (1 << v)) for v in range(n)]
    seen = 0
    parts: list[tuple[int, ...]] = []
    for v in range(n):
        if (seen >> v) & 1:
            continue
        group = nonadj[v] | (1 << v)
        for u in iter_bits(nonadj[v]):
            if nonadj[u] | (1 << u) != group:
                diff = (group ^ (nonadj[u] | (1 << u))) & ~(1 << v) & ~(1 << u)
                w = (diff & -diff).bit_length() - 1
                # Orient the witness so u',v' and v',w' are the non-adjacent pairs.
                if (nonadj[v] >> w) & 1:
                    return None, (u, v, w)
                return None, (v, u, w)
        seen |= group
        parts.append(tuple(iter_bits(group)))
    return parts, None


@dataclass(frozen=True)
class Coloring:
    """A total colour assignment, vertex i -> colors[i] (colours from 0)."""

    colors: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.colors):
            raise DigraphError("negative colour")

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def num_colors(self) -> int:
        """Size of the colour range in use, max colour + 1."""
        return max(self.colors) + 1 if self.colors else 0

    def classes(self) -> dict[int, int]:
        """Colour -> bitmask of the vertices wearing it."""
        out: dict[int, int] = {}
        for v, c in enumerate(self.colors):
            out[c] = out.get(c, 0) | (1 << v)
        return out

    @staticmethod
    def from_dict(n: int, assignment: dict[int, int]) -> Coloring:
        if sorted(assignment) != list(range(n)):
            raise DigraphError("colouring must assign every vertex exactly once")
        return Coloring(tuple(assignment[v] for v in range(n)))


def monochromatic_cycle(d: Digraph, coloring: Coloring) -> tuple[int, ...] | None:
    """A directed cycle inside one colour class, or None if the colouring is valid."""
    if coloring.n != d.n:
        raise DigraphError(f"colouring covers {coloring.n} vertices, digraph has {d.n}")
    for _, mask in sorted(coloring.classes().items()):
        if not d.is_acyclic_within(mask):
            return find_cycle_within(d, mask)
    return None


def is_valid_coloring(d: Digraph, coloring: Coloring) -> bool:
    """True iff every colour class induces an acyclic subdigraph."""
    return monochromatic_cycle(d, coloring) is None
