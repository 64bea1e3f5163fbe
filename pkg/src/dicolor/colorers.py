"""Constructive colouring algorithms, one per forbidden-pattern class.

Each colorer checks its class precondition up front (skippable with
``check=False`` on large inputs), runs the construction that proves the
class bound, and validates the result before returning it.  A failing
pattern check raises ClassViolationError carrying the witness.  When a
structural fact guaranteed for true class members fails at run time --
possible only for inputs that slipped past a skipped check -- the
colorers raise InconsistencyError instead of returning garbage.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .digraph import (
    Coloring,
    Digraph,
    DigraphError,
    find_cycle_within,
    is_strongly_connected,
    iter_bits,
    mask_of,
    monochromatic_cycle,
    multipartite_parts,
    strong_components,
)
from .patterns import Match, Pattern, catalog, find_forbidden, parse_pattern_token


class ClassViolationError(ValueError):
    """The input lies outside the colorer's forbidden-pattern class."""

    def __init__(self, message: str, witness: Match | None = None):
        super().__init__(message)
        self.witness = witness


class InconsistencyError(RuntimeError):
    """A structural fact guaranteed by the class failed at run time.

    Cannot fire on inputs that passed the pattern check; it is the
    safety net for inputs whose check was skipped.
    """

    subdigraph: Digraph | None = None


class NoTriangleError(ValueError):
    """The triangle-based nice-set builder found no directed triangle."""

    subdigraph: Digraph | None = None


_K2SYM = Pattern.concrete("Ksym:2", catalog("Ksym", 2))
_C3 = Pattern.concrete("Cvec:3", catalog("Cvec", 3))
_K2ARROW_K1 = Pattern.concrete("K2arrowK1", catalog("K2arrowK1"))
_R = Pattern.concrete("R", catalog("R"))
_P2 = parse_pattern_token("path:+2")
_P3 = parse_pattern_token("path:+3")
_K3 = parse_pattern_token("graph:K3")
_K4 = parse_pattern_token("graph:K4")

_TT_UNION_CLASS = [_K2SYM, _C3, _P2]
_MULTIPARTITE_CLASS = [_K2SYM, _C3, _K2ARROW_K1]
_LAYERED_CLASS = [_K2SYM, _K3, _P3]
_P3C3_CLASS = [_K2SYM, _K4, _P3, _C3]
_P3R_CLASS = [_K2SYM, _K4, _P3, _R]
_K4P3_CLASS = [_K2SYM, _K4, _P3]


def _require(d: Digraph, patterns: list[Pattern]) -> None:
    m = find_forbidden(d, patterns)
    if m is not None:
        raise ClassViolationError(
            f"class precondition failed: induced {m.name} at vertices {m.embedding}", m
        )


def _checked(
    d: Digraph, colors: Sequence[int] | Coloring, bound: int, algo: str
) -> Coloring:
    coloring = colors if isinstance(colors, Coloring) else Coloring(tuple(colors))
    if coloring.num_colors > bound:
        raise InconsistencyError(
            f"{algo} used {coloring.num_colors} colours, bound is {bound}"
        )
    cyc = monochromatic_cycle(d, coloring)
    if cyc is not None:
        raise InconsistencyError(f"{algo} left a monochromatic cycle {cyc}")
    return coloring


# -- one colour: acyclic class ---------------------------------------------


def color_tt_union(d: Digraph, *, check: bool = True) -> Coloring:
    """One colour for members of Forb(Ksym:2, Cvec:3, path:+2).

    Members are acyclic: a shortest directed cycle is always induced,
    and an induced directed cycle is a digon, a directed triangle, or
    long enough to contain an induced two-arc path.  (Members need not
    be disjoint unions of transitive tournaments -- S2minus is a
    counterexample -- but acyclicity is what the single colour needs.)
    """
    if check:
        _require(d, _TT_UNION_CLASS)
    cyc = find_cycle_within(d, (1 << d.n) - 1)
    if cyc is not None:
        raise InconsistencyError(f"class member should be acyclic, found cycle {cyc}")
    return Coloring((0,) * d.n)


# -- two colours: complete multipartite orientations ------------------------


def _c4s_through(d: Digraph, a: int) -> list[tuple[int, int, int, int]]:
    """Directed 4-cycles a->b->c->e->a, in ascending (b, c, e) order."""
    found: list[tuple[int, int, int, int]] = []
    for b in iter_bits(d.out_masks[a]):
        for c in iter_bits(d.out_masks[b] & ~mask_of((a, b))):
            for e in iter_bits(d.out_masks[c] & d.in_masks[a] & ~mask_of((a, b, c))):
                found.append((a, b, c, e))
    return found


def color_multipartite(d: Digraph, *, check: bool = True) -> Coloring:
    """Two colours for triangle-free orientations of complete multipartite graphs.

    Every directed cycle in a member wraps a directed 4-cycle whose
    vertices alternate between two parts, so it suffices to split each
    part by the partner part of its 4-cycles and 2-colour the resulting
    pairs of subparts against each other.
    """
    if check:
        _require(d, _MULTIPARTITE_CLASS)
    parts, witness = multipartite_parts(d)
    if parts is None:
        raise InconsistencyError(
            f"underlying graph is not complete multipartite, witness {witness}"
        )
    part_of = [0] * d.n
    for i, part in enumerate(parts):
        for v in part:
            part_of[v] = i

    # partner[a] = the single part housing every 4-cycle through a.
    partner: list[int | None] = [None] * d.n
    for a in range(d.n):
        cycles = _c4s_through(d, a)
        if not cycles:
            continue
        first = cycles[0]
        j = part_of[first[1]]
        for cyc in cycles:
            if (
                part_of[cyc[1]] != j
                or part_of[cyc[3]] != j
                or part_of[cyc[2]] != part_of[a]
            ):
                raise InconsistencyError(
                    f"vertex {a} lies on directed 4-cycles through two different"
                    f" parts: {first} and {cyc}"
                )
        partner[a] = j

    # Subpart (i, j) meets only subpart (j, i) in a 4-cycle; colouring the
    # lexicographically smaller side 0 and the other 1 splits them all.
    colors = [0] * d.n
    for v in range(d.n):
        j = partner[v]
        if j is not None and j < part_of[v]:
            colors[v] = 1
    return _checked(d, colors, 2, "multipartite colorer")


# -- two colours: out-distance layers ---------------------------------------


def _out_distances(d: Digraph, root: int) -> list[int]:
    """BFS distance from root along arcs; -1 where unreachable."""
    dist = [-1] * d.n
    frontier = 1 << root
    seen = frontier
    step = 0
    while frontier:
        for v in iter_bits(frontier):
            dist[v] = step
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= d.out_masks[v]
        frontier = nxt & ~seen
        seen |= frontier
        step += 1
    return dist


def color_layered(d: Digraph, *, check: bool = True) -> Coloring:
    """Two colours for members of Forb(Ksym:2, graph:K3, path:+3).

    Per strongly connected component: layer the vertices by out-distance
    from the least vertex and colour the layers by parity.  Each layer
    must be stable for class members; a non-stable layer raises.
    Singleton components and even layers share colour 0.
    """
    if check:
        _require(d, _LAYERED_CLASS)
    colors = [0] * d.n
    for comp in strong_components(d):
        if len(comp) == 1:
            continue
        names = sorted(comp)
        sub = d.induced(names)
        dist = _out_distances(sub, 0)
        if min(dist) < 0:
            raise InconsistencyError(f"strong component {names} is not out-connected")
        layers: dict[int, int] = {}
        for v, k in enumerate(dist):
            layers[k] = layers.get(k, 0) | (1 << v)
        for k in sorted(layers):
            layer = layers[k]
            for v in iter_bits(layer):
                bad = sub.out_masks[v] & layer
                if bad:
                    u = next(iter_bits(bad))
                    raise InconsistencyError(
                        f"layer {k} is not stable: arc {names[v]}->{names[u]}"
                    )
        for v, k in enumerate(dist):
            colors[names[v]] = k & 1
    return _checked(d, colors, 2, "layered colorer")


# -- nice sets ---------------------------------------------------------------


@dataclass(frozen=True)
class NiceSet:
    """A vertex set whose members each keep one arc direction inside it.

    in_part members have no out-neighbour outside the set, out_part
    members no in-neighbour outside it; the two parts partition members.
    """

    members: frozenset[int]
    in_part: frozenset[int]
    out_part: frozenset[int]

    def __post_init__(self):
        if not self.members:
            raise DigraphError("nice set must be nonempty")
        if self.in_part | self.out_part != self.members:
            raise DigraphError("in_part and out_part must cover members")
        if self.in_part & self.out_part:
            raise DigraphError("in_part and out_part must be disjoint")


def assert_nice(d: Digraph, ns: NiceSet) -> None:
    """Raise InconsistencyError unless ns has the defining nice property in d."""
    outside = ((1 << d.n) - 1) & ~mask_of(ns.members)
    for v in sorted(ns.in_part):
        leak = d.out_masks[v] & outside
        if leak:
            raise InconsistencyError(
                f"in-part vertex {v} has out-neighbour {next(iter_bits(leak))}"
                " outside the nice set"
            )
    for v in sorted(ns.out_part):
        leak = d.in_masks[v] & outside
        if leak:
            raise InconsistencyError(
                f"out-part vertex {v} has in-neighbour {next(iter_bits(leak))}"
                " outside the nice set"
            )


NiceFinder = Callable[[Digraph], tuple[NiceSet, dict[int, int], dict[int, int]]]


def _check_parts(
    sub: Digraph,
    ns: NiceSet,
    in_colors: dict[int, int],
    out_colors: dict[int, int],
    c1: int,
    c2: int,
) -> None:
    if any(v < 0 or v >= sub.n for v in ns.members):
        raise InconsistencyError("nice set names vertices outside the subdigraph")
    assert_nice(sub, ns)
    for label, part, cols, width in (
        ("in", ns.in_part, in_colors, c1),
        ("out", ns.out_part, out_colors, c2),
    ):
        if set(cols) != part:
            raise InconsistencyError(f"{label}-part colouring does not cover the part")
        if any(c < 0 or c >= width for c in cols.values()):
            raise InconsistencyError(f"{label}-part colouring exceeds {width} colours")
        by_color: dict[int, int] = {}
        for v, c in cols.items():
            by_color[c] = by_color.get(c, 0) | (1 << v)
        for c, mask in sorted(by_color.items()):
            if not sub.is_acyclic_within(mask):
                raise InconsistencyError(
                    f"{label}-part colour {c} holds a directed cycle"
                    f" {find_cycle_within(sub, mask)}"
                )


def nice_color(d: Digraph, finder: NiceFinder, c1: int, c2: int) -> Coloring:
    """Peel nice sets off the digraph until it is exhausted.

    finder maps an induced subdigraph to (NiceSet, in-part colouring
    with < c1 colours, out-part colouring with < c2 colours), every
    colour class acyclic.  in-parts reuse colours 0..c1-1 across rounds
    and out-parts c1..c1+c2-1; the niceness of each peeled set makes the
    shared palettes safe.  Finder failures propagate with the offending
    subdigraph attached.
    """
    colors: dict[int, int] = {}
    remaining = list(range(d.n))
    while remaining:
        sub = d.induced(remaining)
        try:
            ns, in_colors, out_colors = finder(sub)
            _check_parts(sub, ns, in_colors, out_colors, c1, c2)
        except (InconsistencyError, NoTriangleError) as err:
            err.subdigraph = sub
            raise
        for v, c in in_colors.items():
            colors[remaining[v]] = c
        for v, c in out_colors.items():
            colors[remaining[v]] = c1 + c
        remaining = [g for i, g in enumerate(remaining) if i not in ns.members]
    return Coloring(tuple(colors[v] for v in range(d.n)))


# -- eight colours: no directed triangle, K4-free, no forward 3-path --------


def _layered_piece(sub: Digraph, piece: int) -> dict[int, int]:
    """2-colour an induced piece with the layered rule, keyed by sub vertex."""
    names = list(iter_bits(piece))
    if not names:
        return {}
    col = color_layered(sub.induced(names), check=False)
    return {names[i]: col.colors[i] for i in range(len(names))}


def _p3c3_finder(sub: Digraph) -> tuple[NiceSet, dict[int, int], dict[int, int]]:
    """Nice set around the least vertex x: both neighbourhoods of x plus
    the second-neighbourhood vertices they reach (out side) or that reach
    them (in side)."""
    x = 0
    xbit = 1
    near_out, near_in = sub.out_masks[x], sub.in_masks[x]
    ring1 = sub.adj_mask(x)
    ring2 = 0
    for u in iter_bits(ring1):
        ring2 |= sub.adj_mask(u)
    ring2 &= ~ring1 & ~xbit

    fed = 0
    for u in iter_bits(near_out):
        fed |= sub.out_masks[u]
    feeding = 0
    for u in iter_bits(near_in):
        feeding |= sub.in_masks[u]
    far_out = ring2 & fed
    far_in = ring2 & feeding

    in_mask = xbit | near_out | far_out
    out_mask = (near_in | far_in) & ~in_mask
    members = in_mask | out_mask
    ns = NiceSet(
        frozenset(iter_bits(members)),
        frozenset(iter_bits(in_mask)),
        frozenset(iter_bits(out_mask)),
    )
    # x joins colour 0: it has no in-neighbour inside the in-part, so it
    # can never sit on a cycle there; the caller verifies this anyway.
    in_colors = {x: 0}
    in_colors.update(_layered_piece(sub, near_out))
    in_colors.update({v: 2 + c for v, c in _layered_piece(sub, far_out).items()})
    out_colors = _layered_piece(sub, near_in & out_mask)
    out_colors.update(
        {v: 2 + c for v, c in _layered_piece(sub, far_in & out_mask).items()}
    )
    return ns, in_colors, out_colors


def color_p3c3(d: Digraph, *, check: bool = True) -> Coloring:
    """At most 8 colours for members of Forb(Ksym:2, graph:K4, path:+3, Cvec:3).

    nice_color with the least-vertex finder; each of the four pieces is
    triangle-free (K4-freeness around x) and 2-coloured by layers.
    """
    if check:
        _require(d, _P3C3_CLASS)
    return _checked(d, nice_color(d, _p3c3_finder, 4, 4), 8, "p3c3 colorer")


# -- nice sets around a directed triangle ------------------------------------


@dataclass(frozen=True)
class TrianglePieces:
    """The labelled pieces of a nice set grown around a directed triangle.

    triangle is (u, v, w) with u->v->w->u.  completers_uv holds the
    neighbours completing a directed triangle with the arc u->v (so
    v->x->u), and cyclically for the other two arcs.  other_neighbors
    are the remaining triangle neighbours.  fringe_uv holds the
    non-neighbours of the triangle adjacent to completers_uv; a fringe
    vertex adjacent to several completer groups is assigned to the
    first in uv, vw, wu order.
    """

    triangle: tuple[int, int, int]
    completers_uv: frozenset[int]
    completers_vw: frozenset[int]
    completers_wu: frozenset[int]
    other_neighbors: frozenset[int]
    fringe_uv: frozenset[int]
    fringe_vw: frozenset[int]
    fringe_wu: frozenset[int]


def _least_directed_triangle(d: Digraph) -> tuple[int, int, int] | None:
    """The directed triangle on the lexicographically least vertex triple."""
    for a in range(d.n):
        for b in iter_bits(d.adj_mask(a) >> (a + 1)):
            b += a + 1
            common = (d.adj_mask(a) & d.adj_mask(b)) >> (b + 1)
            for c in iter_bits(common):
                c += b + 1
                if d.has_arc(a, b) and d.has_arc(b, c) and d.has_arc(c, a):
                    return (a, b, c)
                if d.has_arc(a, c) and d.has_arc(c, b) and d.has_arc(b, a):
                    return (a, c, b)
    return None


def find_nice_set_around_triangle(d: Digraph) -> tuple[NiceSet, TrianglePieces]:
    """Build the nice set around the least directed triangle.

    Assumes the caller established K4-freeness and forward-3-path
    freeness; raises NoTriangleError when no directed triangle exists so
    callers can take their triangle-free route.
    """
    tri = _least_directed_triangle(d)
    if tri is None:
        raise NoTriangleError("no directed triangle; take the triangle-free route")
    u, v, w = tri
    tri_mask = mask_of(tri)
    full = (1 << d.n) - 1
    nbhd = (d.adj_mask(u) | d.adj_mask(v) | d.adj_mask(w)) & ~tri_mask
    comp = {
        "uv": d.out_masks[v] & d.in_masks[u] & nbhd,
        "vw": d.out_masks[w] & d.in_masks[v] & nbhd,
        "wu": d.out_masks[u] & d.in_masks[w] & nbhd,
    }
    comp_all = comp["uv"] | comp["vw"] | comp["wu"]
    rest1 = nbhd & ~comp_all
    outside = full & ~tri_mask & ~nbhd

    fringe: dict[str, int] = {}
    assigned = 0
    for key in ("uv", "vw", "wu"):
        adj = 0
        for z in iter_bits(comp[key]):
            adj |= d.adj_mask(z)
        fringe[key] = adj & outside & ~assigned
        assigned |= fringe[key]

    # Triangle corners and completers have all neighbours inside the set;
    # both-eligible vertices go to the in-part.
    in_mask = tri_mask | comp_all
    for z in iter_bits(rest1):
        if d.in_masks[z] & tri_mask:
            in_mask |= 1 << z
    for key in ("uv", "vw", "wu"):
        for z in iter_bits(fringe[key]):
            if d.in_masks[z] & comp[key]:
                in_mask |= 1 << z

    members = tri_mask | nbhd | assigned
    out_mask = members & ~in_mask
    ns = NiceSet(
        frozenset(iter_bits(members)),
        frozenset(iter_bits(in_mask)),
        frozenset(iter_bits(out_mask)),
    )
    pieces = TrianglePieces(
        triangle=tri,
        completers_uv=frozenset(iter_bits(comp["uv"])),
        completers_vw=frozenset(iter_bits(comp["vw"])),
        completers_wu=frozenset(iter_bits(comp["wu"])),
        other_neighbors=frozenset(iter_bits(rest1)),
        fringe_uv=frozenset(iter_bits(fringe["uv"])),
        fringe_vw=frozenset(iter_bits(fringe["vw"])),
        fringe_wu=frozenset(iter_bits(fringe["wu"])),
    )
    return ns, pieces


def _triangle_core_colors(sub: Digraph, pieces: TrianglePieces) -> dict[int, int]:
    """9-colour the triangle and its neighbourhood: three singleton corner
    colours plus two layered colours per corner neighbourhood."""
    u, v, w = pieces.triangle
    core = (
        pieces.completers_uv
        | pieces.completers_vw
        | pieces.completers_wu
        | pieces.other_neighbors
    )
    core_mask = mask_of(core)
    smap = {u: 6, v: 7, w: 8}
    taken = 0
    base = 0
    for corner in (u, v, w):
        ring = sub.adj_mask(corner) & core_mask & ~taken
        taken |= ring
        smap.update({z: base + c for z, c in _layered_piece(sub, ring).items()})
        base += 2
    return smap


def _triangle_finder(
    sub: Digraph,
    piece_colorer: Callable[..., Coloring],
    piece_width: int,
    forbid_triangles_in_fringe: bool,
) -> tuple[NiceSet, dict[int, int], dict[int, int]]:
    try:
        ns, pieces = find_nice_set_around_triangle(sub)
    except NoTriangleError:
        col = color_p3c3(sub, check=False)
        everything = frozenset(range(sub.n))
        ns = NiceSet(everything, everything, frozenset())
        return ns, {v: col.colors[v] for v in range(sub.n)}, {}

    smap = _triangle_core_colors(sub, pieces)
    base = 9
    for fr in (pieces.fringe_uv, pieces.fringe_vw, pieces.fringe_wu):
        names = sorted(fr)
        if names:
            piece = sub.induced(names)
            if forbid_triangles_in_fringe:
                bad = _least_directed_triangle(piece)
                if bad is not None:
                    raise InconsistencyError(
                        "fringe piece holds a directed triangle"
                        f" {tuple(names[i] for i in bad)}"
                    )
            pcol = piece_colorer(piece, check=False)
            smap.update({names[i]: base + pcol.colors[i] for i in range(len(names))})
        base += piece_width
    in_colors = {z: smap[z] for z in ns.in_part}
    out_colors = {z: smap[z] for z in ns.out_part}
    return ns, in_colors, out_colors


def _p3r_finder(sub: Digraph) -> tuple[NiceSet, dict[int, int], dict[int, int]]:
    return _triangle_finder(sub, color_p3c3, 8, forbid_triangles_in_fringe=True)


def color_p3r(d: Digraph, *, check: bool = True) -> Coloring:
    """At most 66 colours for digon-free members of Forb(graph:K4, path:+3, R).

    Triangle-free inputs go straight to color_p3c3; otherwise each
    peeled nice set takes 33 colours: 9 on the triangle plus its
    neighbourhood, 8 per fringe piece (fringe pieces cannot hold a
    directed triangle without forcing an induced R).
    """
    if check:
        _require(d, _P3R_CLASS)
    return _checked(d, nice_color(d, _p3r_finder, 33, 33), 66, "p3r colorer")


def _k4p3_finder(sub: Digraph) -> tuple[NiceSet, dict[int, int], dict[int, int]]:
    return _triangle_finder(sub, color_p3r, 66, forbid_triangles_in_fringe=False)


def color_k4p3(d: Digraph, *, check: bool = True) -> Coloring:
    """At most 414 colours for digon-free members of Forb(graph:K4, path:+3).

    As color_p3r, but fringe pieces may hold directed triangles and get
    66 colours each through color_p3r; every fringe piece extends to a
    member of the dominated-layer family, which keeps it R-free.
    """
    if check:
        _require(d, _K4P3_CLASS)
    return _checked(d, nice_color(d, _k4p3_finder, 207, 207), 414, "k4p3 colorer")


# -- two colours: round digraphs --------------------------------------------


def verify_round(d: Digraph, order: Sequence[int]) -> bool:
    """True iff the cyclic order is round: for every arc, each vertex
    strictly between tail and head receives an arc from the tail and
    sends one to the head."""
    n = d.n
    if sorted(order) != list(range(n)):
        raise DigraphError("order must be a permutation of the vertices")
    pos = [0] * n
    for i, name in enumerate(order):
        pos[name] = i
    for a, b in d.arcs:
        span = (pos[b] - pos[a]) % n
        for step in range(1, span):
            k = order[(pos[a] + step) % n]
            if not (d.has_arc(a, k) and d.has_arc(k, b)):
                return False
    return True


def color_round(d: Digraph, order: Sequence[int]) -> Coloring:
    """Split a strong round digraph in two along an arc of maximum span.

    The segment from the chosen arc's tail to its head (ties broken by
    the smallest tail position) gets colour 0, the rest colour 1; both
    halves are acyclic because no arc can out-span the chosen one.
    Digons break the rule, so the input must be digon-free.
    """
    _require(d, [_K2SYM])
    if not verify_round(d, order):
        raise ClassViolationError("the given order is not round for this digraph")
    if not is_strongly_connected(d):
        raise ClassViolationError("round split needs a strongly connected digraph")
    n = d.n
    if not d.arcs:
        return Coloring((0,) * n)
    pos = [0] * n
    for i, name in enumerate(order):
        pos[name] = i
    best: tuple[int, int] | None = None
    for a, b in d.arcs:
        key = (-((pos[b] - pos[a]) % n), pos[a])
        if best is None or key < best:
            best = key
    span, tail = -best[0], best[1]
    colors = [1] * n
    for step in range(span + 1):
        colors[order[(tail + step) % n]] = 0
    return _checked(d, colors, 2, "round split")
