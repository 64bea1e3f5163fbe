"""Exact dichromatic number.

Two engines share the work.  Up to 16 vertices a memoised subset
recursion runs: the colour class of the lowest vertex may be assumed
maximal acyclic, so the recursion branches over exactly those sets.
Above 16 vertices full memo tables stop paying for themselves and a
counting argument takes over: the number of ordered t-tuples of acyclic
sets covering V is an alternating sum over subsets of (acyclic subset
count)**t, evaluated exactly with vectorised modular arithmetic and CRT
reconstruction.  Both engines are deterministic.
"""
from __future__ import annotations

import itertools

import numpy as np

from .digraph import Coloring, Digraph, iter_bits

DEFAULT_SIZE_GUARD = 20
_SUBSET_DP_LIMIT = 16

# Primes just under 2**31: products of residues stay inside int64 and a
# handful of them is enough to reconstruct the cover count exactly.
_CRT_PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
    2147483549, 2147483543, 2147483497, 2147483489, 2147483477,
)


class SizeGuardError(RuntimeError):
    """Instance exceeds the configured exact-search size guard."""


def greedy_coloring(d: Digraph) -> Coloring:
    """First-fit colouring by descending degree; upper bound for the search."""
    order = sorted(d.vertices, key=lambda v: (-(d.out_degree(v) + d.in_degree(v)), v))
    classes: list[int] = []
    colors = [0] * d.n
    for v in order:
        bit = 1 << v
        for c, mask in enumerate(classes):
            if d.is_acyclic_within(mask | bit):
                classes[c] = mask | bit
                colors[v] = c
                break
        else:
            colors[v] = len(classes)
            classes.append(bit)
    return Coloring(tuple(colors))


def digon_clique_bound(d: Digraph) -> int:
    """Size of a greedily grown set of vertices pairwise joined by digons.

    Such vertices need pairwise distinct colours, so this bounds the
    dichromatic number from below.
    """
    best = 0
    for v in d.vertices:
        clique = 1 << v
        cand = d.digon_mask(v)
        while cand:
            u = max(iter_bits(cand), key=lambda w: (d.digon_mask(w) & cand).bit_count())
            clique |= 1 << u
            cand &= d.digon_mask(u)
        best = max(best, clique.bit_count())
    return best


class _SubsetSolver:
    """Memoised subset recursion for the dichromatic number."""

    def __init__(self, d: Digraph):
        self.d = d
        self.outs = d.out_masks
        self.ins = d.in_masks
        self._acyc: dict[int, bool] = {0: True}
        self.memo: dict[int, int] = {}
        self.choice: dict[int, int] = {}

    def acyclic(self, mask: int) -> bool:
        hit = self._acyc.get(mask)
        if hit is None:
            hit = self.d.is_acyclic_within(mask)
            self._acyc[mask] = hit
        return hit

    def _on_cycle_within(self, v: int, mask: int) -> bool:
        """True iff some directed cycle through v lies inside mask."""
        target = self.ins[v] & mask
        if not target or not (self.outs[v] & mask):
            return False
        reached = self.outs[v] & mask
        frontier = reached
        while frontier:
            if reached & target:
                return True
            grow = 0
            for u in iter_bits(frontier):
                grow |= self.outs[u] & mask
            frontier = grow & ~reached
            reached |= frontier
        return bool(reached & target)

    def maximal_acyclic_with(self, mask: int, v0: int):
        """Yield the maximal acyclic subsets of mask that contain v0.

        Candidates are added in ascending order.  Skipping a vertex is
        only explored when some future cycle could justify its absence:
        if no directed cycle through the vertex exists inside the current
        set plus everything still to come, every completion could take it
        and no maximal set lies down that branch.
        """
        acyclic = self.acyclic
        cands = [v for v in iter_bits(mask) if v != v0]
        base = 1 << v0

        def rec(a: int, i: int, rest: int):
            if i == len(cands):
                m = mask & ~a
                while m:
                    low = m & -m
                    m ^= low
                    if acyclic(a | low):
                        return
                yield a
                return
            v = cands[i]
            bit = 1 << v
            rest2 = rest ^ bit
            if acyclic(a | bit):
                yield from rec(a | bit, i + 1, rest2)
                if self._on_cycle_within(v, a | rest2 | bit):
                    yield from rec(a, i + 1, rest2)
            else:
                yield from rec(a, i + 1, rest2)

        yield from rec(base, 0, mask & ~base)

    def chi(self, mask: int, ub: int) -> int:
        """Exact value when the result is < ub; any return >= ub only
        promises the true value is >= ub."""
        if mask == 0:
            return 0
        if self.acyclic(mask):
            return 1
        if ub <= 2:
            return ub
        known = self.memo.get(mask)
        if known is not None:
            return known
        v0 = (mask & -mask).bit_length() - 1
        best = ub
        for a in self.maximal_acyclic_with(mask, v0):
            sub = self.chi(mask & ~a, best - 1)
            if sub + 1 < best:
                best = sub + 1
                self.choice[mask] = a
                if best == 2:
                    break
        if best < ub:
            self.memo[mask] = best
        return best

    def extract(self, mask: int, k: int) -> dict[int, int]:
        """A valid k-colouring of mask, given chi(mask) <= k."""
        colors: dict[int, int] = {}
        c = 0
        while mask:
            if self.acyclic(mask):
                for v in iter_bits(mask):
                    colors[v] = c
                break
            v0 = (mask & -mask).bit_length() - 1
            hint = self.choice.get(mask)
            candidates = itertools.chain(
                [hint] if hint is not None else [], self.maximal_acyclic_with(mask, v0)
            )
            for a in candidates:
                if self.chi(mask & ~a, k) <= k - 1:
                    for v in iter_bits(a):
                        colors[v] = c
                    mask &= ~a
                    k -= 1
                    c += 1
                    break
            else:
                raise AssertionError("extraction failed below a proven bound")
        return colors


# -- counting engine for larger instances ----------------------------------


class _CoverCounter:
    """Decides t-coverability by acyclic sets via subset convolution counts."""

    def __init__(self, d: Digraph):
        self.d = d
        self.n = d.n
        n = d.n
        size = 1 << n
        masks = np.arange(size, dtype=np.int64)
        pc = np.zeros(size, dtype=np.int8)
        for i in range(n):
            pc += ((masks >> i) & 1).astype(np.int8)
        self._parity_even = ((n - pc) & 1) == 0
        acy = np.zeros(size, dtype=bool)
        acy[0] = True
        ins = d.in_masks
        by_count = [np.flatnonzero(pc == p).astype(np.int64) for p in range(n + 1)]
        for p in range(1, n + 1):
            group = by_count[p]
            for v in range(n):
                bit = np.int64(1 << v)
                sel = group[((group >> v) & 1 == 1) & ((group & np.int64(ins[v])) == 0)]
                if len(sel):
                    np.logical_or.at(acy, sel, acy[sel ^ bit])
        counts = acy.astype(np.int64)
        for i in range(n):
            step = 1 << i
            view = counts.reshape(-1, 2 * step)
            view[:, step:] += view[:, :step]
        self._counts = counts

    def coverable(self, t: int) -> bool:
        """True iff the vertex set is the union of t acyclic sets."""
        # The alternating sum counts ordered t-tuples covering V; it is
        # nonnegative and below 2**(n*(t+1)), so enough 31-bit primes
        # reconstruct it exactly.
        bits_needed = self.n * (t + 1) + 1
        use = []
        acc = 1
        for p in _CRT_PRIMES:
            use.append(p)
            acc *= p
            if acc.bit_length() > bits_needed:
                break
        else:
            raise SizeGuardError("cover count outgrew the prime pool")
        residues = []
        for p in use:
            base = self._counts % p
            power = np.ones_like(base)
            e = t
            while e:
                if e & 1:
                    power = (power * base) % p
                base = (base * base) % p
                e >>= 1
            signed = np.where(self._parity_even, power, (p - power) % p)
            # Chunked summation keeps partial sums far from int64 overflow.
            total = 0
            for i in range(0, len(signed), 1 << 16):
                total = (total + int(signed[i : i + (1 << 16)].sum())) % p
            residues.append(total)
        # CRT: combine residues into the count modulo the prime product.
        count = 0
        modulus = 1
        for p, r in zip(use, residues):
            # Solve count' == count (mod modulus), count' == r (mod p).
            inv = pow(modulus % p, -1, p)
            count = count + modulus * ((r - count) % p * inv % p)
            modulus *= p
        return count % modulus != 0


def _chi_at_most(d: Digraph, t: int, counters: dict[Digraph, _CoverCounter]) -> bool:
    if t >= d.n:
        return True
    if d.n <= _SUBSET_DP_LIMIT:
        solver = _SubsetSolver(d)
        return solver.chi((1 << d.n) - 1, t + 1) <= t
    counter = counters.get(d)
    if counter is None:
        counter = counters[d] = _CoverCounter(d)
    return counter.coverable(t)


def _exact_large(d: Digraph) -> tuple[int, Coloring]:
    greedy = greedy_coloring(d)
    ub = greedy.num_colors
    lb = max(2, digon_clique_bound(d))
    if ub == lb:
        return ub, greedy
    counters: dict[Digraph, _CoverCounter] = {}
    k = ub
    for t in range(lb, ub):
        if _chi_at_most(d, t, counters):
            k = t
            break
    if k == ub:
        return k, greedy
    # Peel one colour class at a time, validating the remainder each time.
    remaining = list(d.vertices)
    colors = [0] * d.n
    kk = k
    c = 0
    while remaining:
        sub = d.induced(remaining)
        solver = _SubsetSolver(sub)
        full = (1 << sub.n) - 1
        if solver.acyclic(full):
            for v in remaining:
                colors[v] = c
            break
        chosen = None
        for a in solver.maximal_acyclic_with(full, 0):
            rest = [remaining[i] for i in range(sub.n) if not (a >> i) & 1]
            if not rest:
                chosen = a
                break
            rest_d = d.induced(rest)
            if _chi_at_most(rest_d, kk - 1, counters):
                chosen = a
                break
        if chosen is None:
            raise AssertionError("peeling failed below a proven bound")
        for i in iter_bits(chosen):
            colors[remaining[i]] = c
        remaining = [remaining[i] for i in range(sub.n) if not (chosen >> i) & 1]
        kk -= 1
        c += 1
    return k, Coloring(tuple(colors))


def dichromatic_number(
    d: Digraph, *, limit: int = DEFAULT_SIZE_GUARD
) -> tuple[int, Coloring]:
    """Exact dichromatic number and an optimal colouring.

    Refuses instances above ``limit`` vertices; the default guard marks
    where exact search stops being a desk-scale computation.
    """
    if d.n > limit:
        raise SizeGuardError(
            f"exact search refused: {d.n} vertices exceeds the guard ({limit})"
        )
    if d.n == 0:
        return 0, Coloring(())
    full = (1 << d.n) - 1
    if d.is_acyclic_within(full):
        return 1, Coloring((0,) * d.n)
    if d.n > _SUBSET_DP_LIMIT:
        return _exact_large(d)
    greedy = greedy_coloring(d)
    ub = greedy.num_colors
    lb = max(2, digon_clique_bound(d))
    if ub == lb:
        return ub, greedy
    solver = _SubsetSolver(d)
    k = solver.chi(full, ub)
    if k >= ub:
        return ub, greedy
    assignment = solver.extract(full, k)
    return k, Coloring(tuple(assignment[v] for v in range(d.n)))


def chromatic_number_underlying(d: Digraph, *, limit: int = DEFAULT_SIZE_GUARD) -> int:
    """Chromatic number of the underlying graph.

    Computed as the dichromatic number of the symmetric closure: once
    every adjacency is a digon, acyclic colour classes are exactly
    independent sets.
    """
    k, _ = dichromatic_number(d.symmetric_closure(), limit=limit)
    return k
