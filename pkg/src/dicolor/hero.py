"""Recognition of the tournaments that stay 2-colourable inside any host.

A tournament is recognised structurally: a single vertex qualifies; a
non-strong tournament qualifies iff its strong components do (it is the
chain-join of them); a strong tournament qualifies iff some vertex c
sees all arcs between its out- and in-neighbourhood pointing out-to-in,
with one side transitive and the other recursively recognised.  The
same family is exactly characterised by the absence of five minimal
tournaments, which gives an independent recogniser to test against.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .construct import arrow_join, cyclic_join
from .digraph import Digraph, iter_bits, make_digraph, strong_components
from .patterns import Pattern, canonical_key, catalog, find_forbidden, transitive_tournament


class NotATournamentError(ValueError):
    """Hero recognition applies to tournaments only."""


@dataclass(frozen=True)
class Leaf:
    """A single vertex."""


@dataclass(frozen=True)
class Join:
    """All arcs go from the left part to the right part."""

    left: "HeroCertificate"
    right: "HeroCertificate"


@dataclass(frozen=True)
class CycleForm:
    """Strong case: a cyclic join of a recognised part, a transitive
    tournament and the apex vertex.

    kind "H-TT-1" means the recognised part feeds the transitive one,
    kind "TT-H-1" the reverse; ``apex`` is the single extra vertex, as
    an index of the tournament this certificate describes.
    """

    kind: str
    apex: int
    hero: "HeroCertificate"
    tt_size: int


HeroCertificate = Union[Leaf, Join, CycleForm]

_MEMO_LIMIT = 8
_verdict_memo: dict[tuple, bool] = {}


def _require_tournament(d: Digraph) -> None:
    if not d.is_tournament():
        raise NotATournamentError(f"digraph on {d.n} vertices is not a tournament")


def _strong_split(d: Digraph, c: int) -> tuple[int, int] | None:
    """Out- and in-neighbourhood masks of c if no arc crosses in-to-out."""
    plus = d.out_masks[c]
    minus = d.in_masks[c]
    for b in iter_bits(minus):
        if d.out_masks[b] & plus:
            return None
    return plus, minus


def _verdict(d: Digraph) -> bool:
    if d.n == 1:
        return True
    key = canonical_key(d) if d.n <= _MEMO_LIMIT else None
    if key is not None:
        hit = _verdict_memo.get(key)
        if hit is not None:
            return hit
    comps = strong_components(d)
    if len(comps) > 1:
        result = all(_verdict(d.induced(comp)) for comp in comps)
    else:
        result = False
        for c in d.vertices:
            split = _strong_split(d, c)
            if split is None:
                continue
            plus, minus = split
            dplus = d.induced(iter_bits(plus))
            dminus = d.induced(iter_bits(minus))
            if dplus.is_acyclic() and _verdict(dminus):
                result = True
                break
            if dminus.is_acyclic() and _verdict(dplus):
                result = True
                break
    if key is not None:
        _verdict_memo[key] = result
    return result


def _certificate(d: Digraph) -> HeroCertificate:
    """Certificate for a tournament already known to qualify."""
    if d.n == 1:
        return Leaf()
    comps = strong_components(d)
    if len(comps) > 1:
        cert = _certificate(d.induced(comps[-1]))
        for comp in reversed(comps[:-1]):
            cert = Join(_certificate(d.induced(comp)), cert)
        return cert
    for c in d.vertices:
        split = _strong_split(d, c)
        if split is None:
            continue
        plus, minus = split
        dplus = d.induced(iter_bits(plus))
        dminus = d.induced(iter_bits(minus))
        if dplus.is_acyclic() and _verdict(dminus):
            return CycleForm("TT-H-1", c, _certificate(dminus), dplus.n)
        if dminus.is_acyclic() and _verdict(dplus):
            return CycleForm("H-TT-1", c, _certificate(dplus), dminus.n)
    raise AssertionError("no decomposition found for a recognised tournament")


def is_hero(d: Digraph) -> HeroCertificate | None:
    """Certificate of the recursive shape, or None when there is none.

    Candidate apex vertices are scanned in ascending order, so the
    certificate is deterministic.
    """
    _require_tournament(d)
    if not _verdict(d):
        return None
    return _certificate(d)


_OBSTRUCTIONS = [Pattern.concrete(name, catalog(name)) for name in ("H1", "H2", "H3", "H4", "H5")]


def is_hero_by_obstruction(d: Digraph) -> bool:
    """Independent recogniser: none of the five minimal counterexamples occurs."""
    _require_tournament(d)
    return find_forbidden(d, _OBSTRUCTIONS) is None


def hero_obstruction(d: Digraph):
    """The first of the five minimal counterexamples found, or None."""
    _require_tournament(d)
    return find_forbidden(d, _OBSTRUCTIONS)


def replay_certificate(cert: HeroCertificate) -> Digraph:
    """Rebuild a tournament with the certificate's stated shape.

    The result is isomorphic to the certified tournament (vertex order
    may differ, since joins lay parts out consecutively).
    """
    if isinstance(cert, Leaf):
        return make_digraph(1, [])
    if isinstance(cert, Join):
        return arrow_join(replay_certificate(cert.left), replay_certificate(cert.right))
    if isinstance(cert, CycleForm):
        hero_part = replay_certificate(cert.hero)
        tt = transitive_tournament(cert.tt_size)
        k1 = make_digraph(1, [])
        if cert.kind == "H-TT-1":
            return cyclic_join([hero_part, tt, k1])
        if cert.kind == "TT-H-1":
            return cyclic_join([tt, hero_part, k1])
        raise ValueError(f"unknown cycle-form kind {cert.kind!r}")
    raise TypeError(f"not a certificate: {cert!r}")
