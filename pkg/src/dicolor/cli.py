"""Command-line surface: generate, analyse, colour, render.

Exit codes: 0 success or the checked property holds; 1 the property
fails (pattern found, non-hero, invalid colouring, sampler came up
empty); 2 usage or parse errors; 3 class or precondition violations.
All results go to standard out, diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import os
import sys

from .colorers import (
    ClassViolationError,
    InconsistencyError,
    color_k4p3,
    color_layered,
    color_multipartite,
    color_p3c3,
    color_p3r,
    color_round,
    color_tt_union,
)
from .construct import c4_iterates, dk_family, named_graph, semicomplete_from_graph
from .digraph import (
    Coloring,
    Digraph,
    DigraphError,
    monochromatic_cycle,
    strong_components,
)
from .draw import draw_digraph
from .exact import (
    DEFAULT_SIZE_GUARD,
    SizeGuardError,
    dichromatic_number,
    digon_clique_bound,
    greedy_coloring,
)
from .formats import (
    ParseError,
    export_dot,
    parse_coloring,
    parse_digraph,
    serialize_coloring,
    serialize_digraph,
)
from .harness import random_oriented, random_round, random_tournament, sample_class_tries
from .hero import CycleForm, Join, Leaf, NotATournamentError, hero_obstruction, is_hero
from .patterns import (
    Pattern,
    PatternError,
    contains_induced,
    directed_cycle,
    find_forbidden,
    parse_pattern_token,
    transitive_tournament,
)


class UsageError(ValueError):
    pass


def _err(message: str) -> None:
    print(message, file=sys.stderr)


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_digraph(path: str) -> Digraph:
    return parse_digraph(_read_text(path))


def _split_tokens(raw: list[str]) -> list[str]:
    out = []
    for chunk in raw:
        out.extend(t.strip() for t in chunk.split(",") if t.strip())
    return out


def _pattern_arg(token: str) -> Pattern:
    try:
        return parse_pattern_token(token)
    except PatternError:
        if os.path.exists(token):
            name = os.path.basename(token)
            return Pattern.concrete(name, parse_digraph(_read_text(token)))
        raise UsageError(f"{token!r} is neither a pattern token nor a digraph file") from None


# -- gen ---------------------------------------------------------------------

_GEN_FAMILIES = (
    "dk K | c4 I | tt N | cycle N | oriented N P SEED | tournament N SEED |"
    " round N SEED | semicomplete GRAPH"
)


def _want(params: list[str], kinds: list[type], family: str):
    if len(params) != len(kinds):
        raise UsageError(
            f"family {family} wants {len(kinds)} parameter(s), got {len(params)};"
            f" families: {_GEN_FAMILIES}"
        )
    vals = []
    for word, kind in zip(params, kinds):
        try:
            vals.append(kind(word))
        except ValueError:
            raise UsageError(f"bad {kind.__name__} parameter {word!r}") from None
    return vals


def _cmd_gen(args: argparse.Namespace) -> int:
    fam, params = args.family, args.params
    if fam == "dk":
        (k,) = _want(params, [int], fam)
        d = dk_family(k)
    elif fam == "c4":
        (i,) = _want(params, [int], fam)
        d = c4_iterates(i)
    elif fam == "tt":
        (n,) = _want(params, [int], fam)
        d = transitive_tournament(n)
    elif fam == "cycle":
        (n,) = _want(params, [int], fam)
        d = directed_cycle(n)
    elif fam == "oriented":
        n, p, seed = _want(params, [int, float, int], fam)
        d = random_oriented(n, p, seed)
    elif fam == "tournament":
        n, seed = _want(params, [int, int], fam)
        d = random_tournament(n, seed)
    elif fam == "round":
        n, seed = _want(params, [int, int], fam)
        d = random_round(n, seed)
    elif fam == "semicomplete":
        (token,) = _want(params, [str], fam)
        size, edges = named_graph(token)
        d = semicomplete_from_graph(size, edges)
    else:
        raise UsageError(f"unknown family {fam!r}; families: {_GEN_FAMILIES}")
    sys.stdout.write(serialize_digraph(d))
    return 0


# -- analysis ----------------------------------------------------------------


def _cmd_exact(args: argparse.Namespace) -> int:
    d = _load_digraph(args.file)
    k, coloring = dichromatic_number(d, limit=args.limit)
    print(f"chi {k}")
    sys.stdout.write(serialize_coloring(coloring))
    return 0


_COLORERS = {
    "tt-union": color_tt_union,
    "multipartite": color_multipartite,
    "layered": color_layered,
    "p3c3": color_p3c3,
    "p3r": color_p3r,
    "k4p3": color_k4p3,
}


def _cmd_color(args: argparse.Namespace) -> int:
    d = _load_digraph(args.file)
    if args.algo == "round":
        if args.order is None:
            order = list(range(d.n))
        else:
            order = [int(t) for t in args.order.split(",")]
        coloring = color_round(d, order)
    else:
        colorer = _COLORERS.get(args.algo)
        if colorer is None:
            raise UsageError(
                f"unknown algorithm {args.algo!r}; choose from"
                f" {', '.join([*_COLORERS, 'round'])}"
            )
        coloring = colorer(d, check=not args.no_check)
    sys.stdout.write(serialize_coloring(coloring))
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    d = _load_digraph(args.file)
    patterns = [_pattern_arg(t) for t in _split_tokens(args.forbid)]
    if not patterns:
        raise UsageError("check wants at least one --forbid token")
    m = find_forbidden(d, patterns)
    if m is None:
        print("ok")
        return 0
    print(f"found {m.name} at vertices {' '.join(map(str, m.embedding))}")
    return 1


def _format_certificate(cert) -> str:
    if isinstance(cert, Leaf):
        return "K1"
    if isinstance(cert, Join):
        return f"({_format_certificate(cert.left)} => {_format_certificate(cert.right)})"
    assert isinstance(cert, CycleForm)
    hero = _format_certificate(cert.hero)
    tt = f"TT{cert.tt_size}"
    inner = f"{hero}, {tt}" if cert.kind == "H-TT-1" else f"{tt}, {hero}"
    return f"C3({inner}, K1)"


def _cmd_hero(args: argparse.Namespace) -> int:
    d = _load_digraph(args.file)
    cert = is_hero(d)
    if cert is not None:
        print(f"hero {_format_certificate(cert)}")
        return 0
    m = hero_obstruction(d)
    if m is None:
        print("non-hero")
    else:
        print(f"non-hero contains {m.name} at vertices {' '.join(map(str, m.embedding))}")
    return 1


def _cmd_match(args: argparse.Namespace) -> int:
    d = _load_digraph(args.file)
    m = contains_induced(d, _pattern_arg(args.pattern))
    if m is None:
        print("no match")
        return 0
    print(f"match {m.name} at vertices {' '.join(map(str, m.embedding))}")
    return 1


def _cmd_verify(args: argparse.Namespace) -> int:
    d = _load_digraph(args.file)
    coloring = parse_coloring(_read_text(args.coloring))
    cyc = monochromatic_cycle(d, coloring)
    if cyc is None:
        print("valid")
        return 0
    print(f"monochromatic cycle {' '.join(map(str, cyc))}")
    return 1


def _cmd_sample(args: argparse.Namespace) -> int:
    patterns = [_pattern_arg(t) for t in _split_tokens(args.forbid)]
    d, tries = sample_class_tries(args.n, args.p, patterns, args.seed, args.tries)
    if d is None:
        _err(f"no member found after {tries} draws")
        return 1
    _err(f"accepted after {tries} draw(s)")
    sys.stdout.write(serialize_digraph(d))
    return 0


def _cmd_dot(args: argparse.Namespace) -> int:
    sys.stdout.write(export_dot(_load_digraph(args.file)))
    return 0


def _cmd_draw(args: argparse.Namespace) -> int:
    d = _load_digraph(args.file)
    coloring = None
    if args.coloring is not None:
        coloring = parse_coloring(_read_text(args.coloring))
        if coloring.n != d.n:
            raise UsageError(
                f"colouring covers {coloring.n} vertices, digraph has {d.n}"
            )
    print(draw_digraph(d, args.out, coloring=coloring))
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    d = _load_digraph(args.file)
    os.makedirs(args.out, exist_ok=True)
    digons = sum(d.digon_mask(v).bit_count() for v in range(d.n)) // 2
    rows: list[tuple[str, object]] = [
        ("vertices", d.n),
        ("arcs", d.arc_count),
        ("digon_pairs", digons),
        ("oriented", d.is_oriented()),
        ("semicomplete", d.is_semicomplete()),
        ("tournament", d.is_tournament()),
        ("strong_components", len(strong_components(d))),
        ("digon_clique_lower_bound", digon_clique_bound(d)),
        ("greedy_upper_bound", greedy_coloring(d).num_colors),
    ]
    coloring: Coloring | None = None
    source = None
    if d.n <= args.limit:
        k, coloring = dichromatic_number(d, limit=args.limit)
        rows.append(("dichromatic_number", k))
        source = "exact"
    if args.algo is not None:
        colorer = _COLORERS.get(args.algo)
        if colorer is None:
            raise UsageError(f"unknown algorithm {args.algo!r}")
        algo_coloring = colorer(d)
        rows.append((f"colors_{args.algo}", algo_coloring.num_colors))
        if coloring is None:
            coloring, source = algo_coloring, args.algo
    if d.is_tournament():
        rows.append(("hero", is_hero(d) is not None))

    written = []
    summary = os.path.join(args.out, "summary.tsv")
    with open(summary, "w", encoding="utf-8") as fh:
        fh.write("metric\tvalue\n")
        for key, value in rows:
            fh.write(f"{key}\t{value}\n")
    written.append(summary)
    written.append(draw_digraph(d, os.path.join(args.out, "digraph.png")))
    if coloring is not None:
        txt = os.path.join(args.out, "coloring.txt")
        with open(txt, "w", encoding="utf-8") as fh:
            fh.write(serialize_coloring(coloring))
        written.append(txt)
        written.append(
            draw_digraph(
                d,
                os.path.join(args.out, "coloring.png"),
                coloring=coloring,
                title=f"{coloring.num_colors} colours ({source})",
            )
        )
    for path in written:
        print(path)
    return 0


# -- wiring -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dicolor",
        description="Dichromatic-number toolkit: exact solver, class colorers,"
        " pattern matching, hero recognition, generators.",
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("gen", help="generate a digraph from a named family")
    p.add_argument("family", help=_GEN_FAMILIES)
    p.add_argument("params", nargs="*")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("exact", help="exact dichromatic number and a witness colouring")
    p.add_argument("file")
    p.add_argument("--limit", type=int, default=DEFAULT_SIZE_GUARD,
                   help="size guard (default %(default)s vertices)")
    p.set_defaults(func=_cmd_exact)

    p = sub.add_parser("color", help="run a class colorer")
    p.add_argument("--algo", required=True,
                   help="tt-union, multipartite, layered, p3c3, p3r, k4p3 or round")
    p.add_argument("--no-check", action="store_true",
                   help="skip the up-front class pattern check")
    p.add_argument("--order", help="cyclic order for --algo round, comma separated"
                   " (default natural order)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("check", help="exit 0 iff no forbidden pattern occurs")
    p.add_argument("--forbid", action="append", default=[], metavar="TOKENS",
                   help="pattern tokens, repeatable or comma separated")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("hero", help="recognise heroes among tournaments")
    p.add_argument("file")
    p.set_defaults(func=_cmd_hero)

    p = sub.add_parser("match", help="find one induced occurrence (exit 1 if found)")
    p.add_argument("--pattern", required=True, help="pattern token or digraph file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("verify", help="validate a colouring file against a digraph")
    p.add_argument("file")
    p.add_argument("coloring")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sample", help="rejection-sample a forbidden-pattern class member")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--forbid", action="append", default=[], metavar="TOKENS")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tries", type=int, default=200)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("dot", help="export DOT text")
    p.add_argument("file")
    p.set_defaults(func=_cmd_dot)

    p = sub.add_parser("draw", help="render the digraph to an image")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--coloring", help="colouring file to paint classes")
    p.set_defaults(func=_cmd_draw)

    p = sub.add_parser("report", help="write summary.tsv plus figures to a directory")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--algo", help="also run this colorer and include its colour count")
    p.add_argument("--limit", type=int, default=DEFAULT_SIZE_GUARD,
                   help="exact-solver size guard (default %(default)s)")
    p.set_defaults(func=_cmd_report)

    return parser


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except ParseError as exc:
        _err(f"parse error: {exc}")
        return 2
    except (UsageError, PatternError) as exc:
        _err(str(exc))
        return 2
    except (ClassViolationError, InconsistencyError, NotATournamentError, SizeGuardError) as exc:
        _err(str(exc))
        return 3
    except DigraphError as exc:
        _err(str(exc))
        return 2
    except ValueError as exc:
        _err(str(exc))
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
