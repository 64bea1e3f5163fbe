"""Acyclic colourings of digraphs.

Exact dichromatic numbers, recognition of the tournaments whose absence
keeps colourings small, and constructive colourers for the hereditary
classes where two, eight, or a few hundred colours provably suffice.
"""
from .colorers import (
    ClassViolationError,
    InconsistencyError,
    NiceSet,
    assert_nice,
    color_k4p3,
    color_layered,
    color_multipartite,
    color_p3c3,
    color_p3r,
    color_round,
    color_tt_union,
    find_nice_set_around_triangle,
    nice_color,
    verify_round,
)
from .construct import (
    arrow_join,
    c4_iterates,
    cyclic_join,
    dk_family,
    named_graph,
    semicomplete_from_graph,
)
from .digraph import (
    Coloring,
    Digraph,
    DigraphError,
    is_valid_coloring,
    make_digraph,
    monochromatic_cycle,
    multipartite_parts,
    strong_components,
)
from .exact import (
    DEFAULT_SIZE_GUARD,
    SizeGuardError,
    chromatic_number_underlying,
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
from .harness import (
    SplitMix64,
    blowup_c4,
    build_f_member,
    random_digraph,
    random_multipartite_orientation,
    random_oriented,
    random_round,
    random_tournament,
    sample_class,
)
from .hero import (
    CycleForm,
    HeroCertificate,
    Join,
    Leaf,
    NotATournamentError,
    hero_obstruction,
    is_hero,
    is_hero_by_obstruction,
    replay_certificate,
)
from .patterns import (
    Match,
    Pattern,
    PatternError,
    all_tournaments,
    catalog,
    contains_induced,
    directed_cycle,
    find_forbidden,
    forbids,
    is_isomorphic,
    orientations_of,
    parse_path_code,
    parse_pattern_token,
    path_from_code,
    transitive_tournament,
)

__all__ = [
    "ClassViolationError",
    "Coloring",
    "CycleForm",
    "DEFAULT_SIZE_GUARD",
    "Digraph",
    "DigraphError",
    "HeroCertificate",
    "InconsistencyError",
    "Join",
    "Leaf",
    "Match",
    "NiceSet",
    "NotATournamentError",
    "ParseError",
    "Pattern",
    "PatternError",
    "SizeGuardError",
    "SplitMix64",
    "all_tournaments",
    "arrow_join",
    "assert_nice",
    "blowup_c4",
    "build_f_member",
    "c4_iterates",
    "catalog",
    "chromatic_number_underlying",
    "color_k4p3",
    "color_layered",
    "color_multipartite",
    "color_p3c3",
    "color_p3r",
    "color_round",
    "color_tt_union",
    "contains_induced",
    "cyclic_join",
    "dichromatic_number",
    "digon_clique_bound",
    "directed_cycle",
    "dk_family",
    "export_dot",
    "find_forbidden",
    "find_nice_set_around_triangle",
    "forbids",
    "greedy_coloring",
    "hero_obstruction",
    "is_hero",
    "is_hero_by_obstruction",
    "is_isomorphic",
    "is_valid_coloring",
    "make_digraph",
    "monochromatic_cycle",
    "multipartite_parts",
    "named_graph",
    "nice_color",
    "orientations_of",
    "parse_coloring",
    "parse_digraph",
    "parse_path_code",
    "parse_pattern_token",
    "path_from_code",
    "random_digraph",
    "random_multipartite_orientation",
    "random_oriented",
    "random_round",
    "random_tournament",
    "replay_certificate",
    "sample_class",
    "semicomplete_from_graph",
    "serialize_coloring",
    "serialize_digraph",
    "strong_components",
    "transitive_tournament",
    "verify_round",
]
