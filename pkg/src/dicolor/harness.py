"""Seeded generators and rejection samplers for class members.

All randomness flows through SplitMix64 so fixtures are portable:
identical parameters and seed give identical digraphs on any platform,
independent of the host language's random module.
"""
from __future__ import annotations

from typing import Sequence

from .digraph import Digraph, DigraphError, make_digraph
from .patterns import Pattern, catalog, forbids, parse_pattern_token

_MASK64 = (1 << 64) - 1
_C3 = Pattern.concrete("Cvec:3", catalog("Cvec", 3))
_K2SYM = Pattern.concrete("Ksym:2", catalog("Ksym", 2))
_GRAPH_K4 = parse_pattern_token("graph:K4")
_PATH3 = parse_pattern_token("path:+3")


class SplitMix64:
    """Steele, Lea and Flood's 64-bit mixer; tiny state, good diffusion."""

    GAMMA = 0x9E3779B97F4A7C15
    MIX1 = 0xBF58476D1CE4E5B9
    MIX2 = 0x94D049BB133111EB

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * self.MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * self.MIX2) & _MASK64
        return z ^ (z >> 31)

    def float53(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53

    def coin(self, p: float) -> bool:
        return self.float53() < p

    def below(self, k: int) -> int:
        # Modulo bias is negligible at desk-scale k; determinism is what counts.
        return self.next_u64() % k


def random_oriented(n: int, p: float, seed: int) -> Digraph:
    """Each unordered pair gets an arc with probability p, direction by a
    fair coin; digon-free by construction."""
    if not 0.0 <= p <= 1.0:
        raise DigraphError(f"arc probability must be in [0, 1], got {p}")
    rng = SplitMix64(seed)
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.coin(p):
                arcs.append((i, j) if rng.coin(0.5) else (j, i))
    return make_digraph(n, arcs)


def random_tournament(n: int, seed: int) -> Digraph:
    if n < 1:
        raise DigraphError("tournament wants n >= 1")
    return random_oriented(n, 1.0, seed)


def random_digraph(n: int, p: float, digon_p: float, seed: int) -> Digraph:
    """Like random_oriented, but a present pair becomes a digon with
    probability digon_p instead of a single arc."""
    if not 0.0 <= p <= 1.0 or not 0.0 <= digon_p <= 1.0:
        raise DigraphError("probabilities must be in [0, 1]")
    rng = SplitMix64(seed)
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.coin(p):
                if rng.coin(digon_p):
                    arcs.append((i, j))
                    arcs.append((j, i))
                else:
                    arcs.append((i, j) if rng.coin(0.5) else (j, i))
    return make_digraph(n, arcs)


def sample_class_tries(
    n: int,
    p: float,
    forbidden: Sequence[Pattern | Digraph],
    seed: int,
    max_tries: int = 200,
) -> tuple[Digraph | None, int]:
    """Rejection-sample a member of Forb(forbidden); also report how many
    draws were spent, so callers can tune p."""
    if max_tries < 1:
        raise DigraphError("max_tries must be at least 1")
    for i in range(max_tries):
        d = random_oriented(n, p, seed + i)
        if forbids(d, list(forbidden)):
            return d, i + 1
    return None, max_tries


def sample_class(
    n: int,
    p: float,
    forbidden: Sequence[Pattern | Digraph],
    seed: int,
    max_tries: int = 200,
) -> Digraph | None:
    return sample_class_tries(n, p, forbidden, seed, max_tries)[0]


def random_round(n: int, seed: int) -> Digraph:
    """A strong, digon-free digraph that is round in its natural order.

    Every vertex gets an arc to its successor plus a random run of
    further clockwise arcs, and the arc set is closed under the round
    condition.  Closure only shrinks spans, and initial spans stay below
    n/2, so no digon can appear; the successor arcs keep it strong.
    """
    if n < 3:
        raise DigraphError("round generator wants n >= 3")
    rng = SplitMix64(seed)
    limit = max(1, (n - 1) // 2)
    arcs: set[tuple[int, int]] = set()
    for i in range(n):
        for s in range(1, 2 + rng.below(limit)):
            arcs.add((i, (i + s) % n))
    changed = True
    while changed:
        changed = False
        for a, b in sorted(arcs):
            span = (b - a) % n
            for step in range(1, span):
                k = (a + step) % n
                for arc in ((a, k), (k, b)):
                    if arc not in arcs:
                        arcs.add(arc)
                        changed = True
    return make_digraph(n, sorted(arcs))


def random_multipartite_orientation(
    sizes: Sequence[int], seed: int, max_tries: int = 300
) -> Digraph | None:
    """A directed-triangle-free orientation of the complete multipartite
    graph with the given part sizes, by rejection; None when the budget
    runs out (bipartite inputs always succeed on the first draw)."""
    if not sizes or any(s < 1 for s in sizes):
        raise DigraphError("part sizes must be positive")
    n = sum(sizes)
    part_of = []
    for t, s in enumerate(sizes):
        part_of.extend([t] * s)
    pairs = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if part_of[i] != part_of[j]
    ]
    for t in range(max_tries):
        rng = SplitMix64(seed + t)
        arcs = [(i, j) if rng.coin(0.5) else (j, i) for i, j in pairs]
        d = make_digraph(n, arcs)
        if forbids(d, [_C3]):
            return d
    return None


def blowup_c4(sizes: Sequence[int]) -> Digraph:
    """Four stable classes joined completely along a directed 4-cycle;
    triangle-free with every 3-arc directed path wrapped by a return arc."""
    if len(sizes) != 4 or any(s < 1 for s in sizes):
        raise DigraphError("blowup_c4 wants four positive class sizes")
    bounds = [0]
    for s in sizes:
        bounds.append(bounds[-1] + s)
    arcs = []
    for t in range(4):
        nt = (t + 1) % 4
        for i in range(bounds[t], bounds[t + 1]):
            for j in range(bounds[nt], bounds[nt + 1]):
                arcs.append((i, j))
    return make_digraph(bounds[-1], arcs)


def build_f_member(
    core_n: int,
    layer_n: int,
    p: float,
    seed: int,
    max_tries: int = 400,
) -> tuple[Digraph, Digraph] | None:
    """Assemble a member of the dominated-layer family, by rejection.

    The host digraph is: a random oriented core, a stable layer in which
    every core vertex has a neighbour, and a two-vertex apparatus u->v
    with v->x->u for every layer vertex x and no arcs to the core.  A
    host surviving the digon/K4/forward-3-path check certifies its core
    as a family member.  Returns (core, host), or None when the try
    budget runs out.  Half the time (seeded) a directed triangle is
    planted in the core, with layer attachments that complete triangles
    with two of its arcs -- the only attachment shape the class allows.
    """
    if core_n < 1 or layer_n < 1:
        raise DigraphError("core and layer must be nonempty")
    guards = [_K2SYM, _GRAPH_K4, _PATH3]
    n = core_n + layer_n + 2
    u, v = core_n + layer_n, core_n + layer_n + 1
    for t in range(max_tries):
        rng = SplitMix64(seed + t)
        arcs: set[tuple[int, int]] = {(u, v)}
        for x in range(core_n, core_n + layer_n):
            arcs.add((v, x))
            arcs.add((x, u))
        covered = [False] * core_n
        plant = core_n >= 3 and layer_n >= 2 and rng.coin(0.5)
        if plant:
            arcs.update([(0, 1), (1, 2), (2, 0)])
            xa, xb = core_n, core_n + 1
            # xa completes the arc 1->2 (so 2->xa->1), xb the arc 0->1.
            arcs.update([(2, xa), (xa, 1), (1, xb), (xb, 0)])
            covered[0] = covered[1] = covered[2] = True
        for i in range(core_n):
            for j in range(i + 1, core_n):
                if plant and i < 3 and j < 3:
                    continue
                if rng.coin(p):
                    arcs.add((i, j) if rng.coin(0.5) else (j, i))
        for i in range(core_n):
            if not covered[i]:
                x = core_n + rng.below(layer_n)
                arcs.add((i, x) if rng.coin(0.5) else (x, i))
        host = make_digraph(n, sorted(arcs))
        if forbids(host, guards):
            return host.induced(range(core_n)), host
    return None
