"""Named small digraphs, path codes, and exact induced-pattern matching.

A pattern is either a concrete digraph or the family of all orientations
of an undirected graph; matching is always *induced* and *exact*: digons
must map to digons, single arcs to single arcs with the same direction,
and non-adjacent pairs to non-adjacent pairs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .construct import cyclic_join
from .digraph import Digraph, DigraphError, iter_bits, make_digraph


class PatternError(ValueError):
    """Unknown pattern name or malformed pattern token."""


# -- fixed arc lists ----------------------------------------------------

# The five minimal tournaments that break the recursive shape every
# 2-colourable tournament decomposes into.  H1 is the rotational
# tournament on five vertices, H2 flips exactly one of its arcs.
_H1_ARCS = [(i, (i + 1) % 5) for i in range(5)] + [(i, (i + 2) % 5) for i in range(5)]
_H2_ARCS = [a for a in _H1_ARCS if a != (4, 0)] + [(0, 4)]
# H3 is the unique third 5-vertex minimal obstruction (out-degrees
# 1,1,2,3,3): a transitive tournament on the first four vertices plus a
# fifth beating positions 0 and 2 while losing to 1 and 3.
_H3_ARCS = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 0), (4, 2), (1, 4), (3, 4)]

# Self-converse oriented graph on seven vertices whose absence makes the
# triangle-neighbourhood colourer's outer layer triangle-free.
_R_ARCS = [
    (0, 1), (1, 2), (2, 0),
    (1, 3), (3, 0),
    (2, 4), (4, 1),
    (5, 3), (3, 6), (6, 5),
    (5, 4), (4, 6),
]


def transitive_tournament(k: int) -> Digraph:
    if k < 1:
        raise PatternError(f"TT wants k >= 1, got {k}")
    return make_digraph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def directed_cycle(k: int) -> Digraph:
    if k < 2:
        raise PatternError(f"Cvec wants k >= 2, got {k}")
    return make_digraph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_digons(n: int) -> Digraph:
    if n < 1:
        raise PatternError(f"Ksym wants n >= 1, got {n}")
    arcs = [(i, j) for i in range(n) for j in range(n) if i != j]
    return make_digraph(n, arcs)


def empty_digraph(n: int) -> Digraph:
    if n < 1:
        raise PatternError(f"Kbar wants n >= 1, got {n}")
    return make_digraph(n, [])


_CATALOG_ARITY = {
    "TT": 1, "Cvec": 1, "Ksym": 1, "Kbar": 1,
    "K2arrow": 0, "K2arrowK1": 0, "S2plus": 0, "S2minus": 0,
    "H1": 0, "H2": 0, "H3": 0, "H4": 0, "H5": 0, "R": 0,
}
_CATALOG_CANON = {name.lower(): name for name in _CATALOG_ARITY}


def catalog(name: str, *params: int) -> Digraph:
    """A named digraph from the fixed catalogue.

    Parameterised names: TT k, Cvec k, Ksym n, Kbar n.  Fixed names:
    K2arrow, K2arrowK1, S2plus, S2minus, H1..H5, R.
    """
    canon = _CATALOG_CANON.get(name.lower())
    if canon is None:
        raise PatternError(f"unknown catalogue name {name!r}")
    if len(params) != _CATALOG_ARITY[canon]:
        raise PatternError(
            f"{canon} takes {_CATALOG_ARITY[canon]} parameter(s), got {len(params)}"
        )
    if canon == "TT":
        return transitive_tournament(params[0])
    if canon == "Cvec":
        return directed_cycle(params[0])
    if canon == "Ksym":
        return complete_digons(params[0])
    if canon == "Kbar":
        return empty_digraph(params[0])
    if canon == "K2arrow":
        return make_digraph(2, [(0, 1)])
    if canon == "K2arrowK1":
        # Single arc plus an isolated vertex; forbidding it forces the
        # underlying graph to be complete multipartite.
        return make_digraph(3, [(0, 1)])
    if canon == "S2plus":
        return make_digraph(3, [(0, 1), (0, 2)])
    if canon == "S2minus":
        return make_digraph(3, [(1, 0), (2, 0)])
    if canon == "H1":
        return make_digraph(5, _H1_ARCS)
    if canon == "H2":
        return make_digraph(5, _H2_ARCS)
    if canon == "H3":
        return make_digraph(5, _H3_ARCS)
    if canon == "H4":
        k2 = make_digraph(2, [(0, 1)])
        return cyclic_join([k2, k2, k2])
    if canon == "H5":
        c3 = directed_cycle(3)
        return cyclic_join([c3, c3, empty_digraph(1)])
    return make_digraph(7, _R_ARCS)


# -- oriented path codes -------------------------------------------------


@dataclass(frozen=True)
class PathCode:
    """Orientation of a path: first block direction and block lengths.

    ``sign`` is +1 when the first block follows the path, -1 when it
    opposes it; successive blocks alternate.  ``runs`` are the block
    lengths in arcs, all positive.
    """

    sign: int
    runs: tuple[int, ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise PatternError(f"path code sign must be +1 or -1, got {self.sign}")
        if not self.runs or any(r < 1 for r in self.runs):
            raise PatternError(f"path code runs must be positive, got {self.runs}")


def path_from_code(code: PathCode) -> Digraph:
    """The oriented path described by a code, on 1 + sum(runs) vertices."""
    arcs = []
    pos = 0
    direction = code.sign
    for run in code.runs:
        for _ in range(run):
            if direction == 1:
                arcs.append((pos, pos + 1))
            else:
                arcs.append((pos + 1, pos))
            pos += 1
        direction = -direction
    return make_digraph(pos + 1, arcs)


def parse_path_code(text: str) -> PathCode:
    """Parse "+2,1" or "-1,1,1" into a PathCode."""
    s = text.strip()
    if not s or s[0] not in "+-":
        raise PatternError(f"path code must start with + or -: {text!r}")
    sign = 1 if s[0] == "+" else -1
    try:
        runs = tuple(int(part) for part in s[1:].split(","))
    except ValueError:
        raise PatternError(f"bad path code runs in {text!r}") from None
    return PathCode(sign, runs)


# -- canonical forms and isomorphism --------------------------------------


def _refine_classes(d: Digraph) -> list[list[int]]:
    """Ordered partition of vertices stable under neighbour-colour counts."""
    color = {v: (d.out_degree(v), d.in_degree(v), d.digon_mask(v).bit_count())
             for v in d.vertices}
    while True:
        ranks = {c: i for i, c in enumerate(sorted(set(color.values())))}
        new = {}
        for v in d.vertices:
            outs = sorted(ranks[color[u]] for u in iter_bits(d.out_masks[v]))
            ins = sorted(ranks[color[u]] for u in iter_bits(d.in_masks[v]))
            new[v] = (ranks[color[v]], tuple(outs), tuple(ins))
        if len(set(new.values())) == len(set(color.values())):
            break
        color = new
    groups: dict = {}
    for v in d.vertices:
        groups.setdefault(color[v], []).append(v)
    return [groups[c] for c in sorted(groups)]


def canonical_key(d: Digraph) -> tuple[int, ...]:
    """Isomorphism-invariant key: the least adjacency encoding over relabelings.

    Vertices are placed one by one, each placement contributing the arc
    bits between the new vertex and the ones already placed; a branch is
    cut as soon as its contribution exceeds the best known encoding.
    Candidate orders respect the refined vertex classes, which keeps the
    search small for everything but highly regular digraphs.  Meant for
    small n only.
    """
    if d.n > 10:
        raise DigraphError(f"canonical key is meant for small digraphs, got n={d.n}")
    classes = _refine_classes(d)
    class_of_position: list[int] = []
    for i, cls in enumerate(classes):
        class_of_position.extend([i] * len(cls))

    best: list[int] | None = None
    placed: list[int] = []
    words: list[int] = []
    remaining = [set(cls) for cls in classes]

    def step_word(v: int) -> int:
        word = 0
        for j, u in enumerate(placed):
            word |= (d.out_masks[v] >> u & 1) << (2 * j)
            word |= (d.in_masks[v] >> u & 1) << (2 * j + 1)
        return word

    def rec(pos: int, tight: bool):
        # tight: words so far equal the best prefix, so best[pos] bounds us.
        nonlocal best
        if pos == d.n:
            if best is None or words < best:
                best = list(words)
            return
        cls = class_of_position[pos]
        for v in sorted(remaining[cls]):
            w = step_word(v)
            now_tight = tight
            if best is not None and tight:
                if w > best[pos]:
                    continue
                now_tight = w == best[pos]
            remaining[cls].discard(v)
            placed.append(v)
            words.append(w)
            rec(pos + 1, now_tight)
            words.pop()
            placed.pop()
            remaining[cls].add(v)

    rec(0, True)
    assert best is not None
    sizes = tuple(len(cls) for cls in classes)
    return (d.n,) + sizes + tuple(best)


def is_isomorphic(a: Digraph, b: Digraph) -> bool:
    if a.n != b.n or a.arc_count != b.arc_count:
        return False
    inv_a = sorted((a.out_degree(v), a.in_degree(v), a.digon_mask(v).bit_count()) for v in a.vertices)
    inv_b = sorted((b.out_degree(v), b.in_degree(v), b.digon_mask(v).bit_count()) for v in b.vertices)
    if inv_a != inv_b:
        return False
    return _embed(b, a) is not None


# -- patterns and matching -------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    """A named family of concrete digraphs matched as induced subdigraphs."""

    name: str
    variants: tuple[Digraph, ...]

    @staticmethod
    def concrete(name: str, d: Digraph) -> Pattern:
        return Pattern(name, (d,))

    @staticmethod
    def all_orientations(name: str, n: int, edges: list[tuple[int, int]]) -> Pattern:
        return Pattern(name, orientations_of(n, edges))


def orientations_of(n: int, edges: list[tuple[int, int]]) -> tuple[Digraph, ...]:
    """All orientations of an undirected graph, deduplicated up to isomorphism."""
    for u, v in edges:
        if u == v:
            raise DigraphError(f"loop edge at {u}")
    seen: dict[tuple, Digraph] = {}
    for bits in range(1 << len(edges)):
        arcs = []
        for i, (u, v) in enumerate(edges):
            arcs.append((u, v) if not (bits >> i) & 1 else (v, u))
        d = make_digraph(n, arcs)
        key = canonical_key(d)
        if key not in seen:
            seen[key] = d
    return tuple(seen[k] for k in sorted(seen))


@dataclass(frozen=True)
class Match:
    """Where a pattern occurs: the variant matched and the embedding.

    ``embedding[i]`` is the host vertex playing pattern vertex i.
    """

    name: str
    variant: Digraph
    embedding: tuple[int, ...]


def _embed(host: Digraph, pat: Digraph) -> tuple[int, ...] | None:
    """First exact induced embedding of pat into host, or None.

    Pattern vertices are matched in natural order and host candidates
    tried in ascending index, so the result is deterministic.
    """
    k = pat.n
    if k > host.n:
        return None
    full = (1 << host.n) - 1
    base = []
    for q in range(k):
        need_out, need_in = pat.out_degree(q), pat.in_degree(q)
        need_digon = pat.digon_mask(q).bit_count()
        m = 0
        for w in range(host.n):
            if (
                host.out_degree(w) >= need_out
                and host.in_degree(w) >= need_in
                and host.digon_mask(w).bit_count() >= need_digon
            ):
                m |= 1 << w
        if not m:
            return None
        base.append(m)

    phi: list[int] = []
    used = 0

    def rec(q: int) -> bool:
        nonlocal used
        if q == k:
            return True
        cand = base[q] & ~used
        for p in range(q):
            w = phi[p]
            cand &= host.out_masks[w] if pat.has_arc(p, q) else full & ~host.out_masks[w]
            cand &= host.in_masks[w] if pat.has_arc(q, p) else full & ~host.in_masks[w]
            if not cand:
                return False
        for t in iter_bits(cand):
            phi.append(t)
            used |= 1 << t
            if rec(q + 1):
                return True
            used ^= 1 << t
            phi.pop()
        return False

    return tuple(phi) if rec(0) else None


def contains_induced(host: Digraph, pattern: Pattern | Digraph) -> Match | None:
    """First induced occurrence of the pattern in the host, or None."""
    if isinstance(pattern, Digraph):
        pattern = Pattern.concrete("pattern", pattern)
    for variant in pattern.variants:
        phi = _embed(host, variant)
        if phi is not None:
            return Match(pattern.name, variant, phi)
    return None


def find_forbidden(host: Digraph, patterns: list[Pattern | Digraph]) -> Match | None:
    """First pattern of the list occurring in the host, or None."""
    for pattern in patterns:
        m = contains_induced(host, pattern)
        if m is not None:
            return m
    return None


def forbids(host: Digraph, patterns: list[Pattern | Digraph]) -> bool:
    """True iff none of the patterns occurs in the host as an induced subdigraph."""
    return find_forbidden(host, patterns) is None


# -- pattern tokens --------------------------------------------------------

_GRAPH_TOKENS = {
    "k3": (3, [(0, 1), (0, 2), (1, 2)]),
    "k4": (4, [(i, j) for i in range(4) for j in range(i + 1, 4)]),
    "p4": (4, [(0, 1), (1, 2), (2, 3)]),
}


def parse_pattern_token(token: str) -> Pattern:
    """Turn a token into a pattern.

    Tokens are catalogue names with colon-separated parameters
    ("TT:3", "Ksym:2"), all-orientation families ("graph:K3",
    "graph:K4", "graph:P4"), or path codes ("path:+2,1").
    """
    tok = token.strip()
    if not tok:
        raise PatternError("empty pattern token")
    head, _, tail = tok.partition(":")
    head_l = head.lower()
    if head_l == "graph":
        entry = _GRAPH_TOKENS.get(tail.lower())
        if entry is None:
            raise PatternError(f"unknown graph token {tail!r} (want K3, K4 or P4)")
        return Pattern.all_orientations(tok, entry[0], entry[1])
    if head_l == "path":
        return Pattern.concrete(tok, path_from_code(parse_path_code(tail)))
    params = []
    if tail:
        try:
            params = [int(p) for p in tail.split(",")]
        except ValueError:
            raise PatternError(f"bad parameters in token {token!r}") from None
    return Pattern.concrete(tok, catalog(head, *params))


def all_tournaments(n: int) -> list[Digraph]:
    """All tournaments on n vertices, one per isomorphism class.

    Built by extending each (n-1)-vertex class by every possible
    arc pattern to a new vertex, then deduplicating canonically; this
    touches far fewer digraphs than enumerating all orientations of K_n.
    """
    if n < 1:
        raise PatternError(f"want n >= 1, got {n}")
    current = [make_digraph(1, [])]
    for m in range(2, n + 1):
        seen: dict[tuple, Digraph] = {}
        for t in current:
            for in_bits in range(1 << (m - 1)):
                arcs = list(t.arcs)
                for v in range(m - 1):
                    if (in_bits >> v) & 1:
                        arcs.append((v, m - 1))
                    else:
                        arcs.append((m - 1, v))
                cand = make_digraph(m, arcs)
                key = canonical_key(cand)
                if key not in seen:
                    seen[key] = cand
        current = [seen[k] for k in sorted(seen)]
    return current
