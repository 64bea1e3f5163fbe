import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dicolor.colorers import (
    ClassViolationError,
    InconsistencyError,
    NiceSet,
    NoTriangleError,
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
from dicolor.construct import arrow_join
from dicolor.digraph import DigraphError, is_valid_coloring, make_digraph
from dicolor.exact import dichromatic_number
from dicolor.harness import (
    blowup_c4,
    build_f_member,
    random_oriented,
    random_round,
    sample_class,
)
from dicolor.patterns import (
    catalog,
    directed_cycle,
    parse_pattern_token,
    transitive_tournament,
)
from oracles import simple_cycles

C3 = directed_cycle(3)
C4 = directed_cycle(4)
TT3 = transitive_tournament(3)

LAYERED_CLASS = [parse_pattern_token(t) for t in ("Ksym:2", "graph:K3", "path:+3")]
P3C3_CLASS = [parse_pattern_token(t) for t in ("Ksym:2", "graph:K4", "path:+3", "Cvec:3")]
P3R_CLASS = [parse_pattern_token(t) for t in ("Ksym:2", "graph:K4", "path:+3", "R")]
K4P3_CLASS = [parse_pattern_token(t) for t in ("Ksym:2", "graph:K4", "path:+3")]


def assert_colored(d, coloring, bound):
    assert is_valid_coloring(d, coloring)
    assert coloring.num_colors <= bound


class TestTTUnion:
    def test_transitive_tournament(self):
        c = color_tt_union(transitive_tournament(5))
        assert set(c.colors) == {0}

    def test_disjoint_union(self):
        d = make_digraph(5, [(0, 1), (0, 2), (1, 2), (3, 4)])
        assert set(color_tt_union(d).colors) == {0}

    def test_in_star_is_acyclic_but_no_union_of_tournaments(self):
        c = color_tt_union(catalog("S2minus"))
        assert set(c.colors) == {0}

    def test_triangle_rejected_with_witness(self):
        with pytest.raises(ClassViolationError) as exc:
            color_tt_union(C3)
        assert exc.value.witness.name == "Cvec:3"

    def test_digon_rejected(self):
        with pytest.raises(ClassViolationError):
            color_tt_union(make_digraph(2, [(0, 1), (1, 0)]))

    def test_forward_path_rejected(self):
        with pytest.raises(ClassViolationError) as exc:
            color_tt_union(make_digraph(3, [(0, 1), (1, 2)]))
        assert exc.value.witness.name == "path:+2"


class TestMultipartite:
    def test_four_cycle_split(self):
        c = color_multipartite(C4)
        assert_colored(C4, c, 2)
        assert len(set(c.colors)) == 2

    def test_single_arc(self):
        d = make_digraph(2, [(0, 1)])
        assert_colored(d, color_multipartite(d), 2)

    def test_blowup_members(self):
        for sizes in ((1, 1, 1, 1), (2, 1, 2, 1), (3, 2, 3, 1)):
            d = blowup_c4(sizes)
            c = color_multipartite(d)
            assert_colored(d, c, 2)
            assert dichromatic_number(d)[0] <= 2

    def test_triangle_rejected(self):
        with pytest.raises(ClassViolationError) as exc:
            color_multipartite(C3)
        assert exc.value.witness.name == "Cvec:3"

    def test_arc_plus_isolated_vertex_rejected(self):
        with pytest.raises(ClassViolationError) as exc:
            color_multipartite(make_digraph(3, [(0, 1)]))
        assert exc.value.witness.name == "K2arrowK1"

    def test_conflicting_cycles_caught_without_check(self):
        # Parts {0}, {1,3}, {2,4}; the 4-cycle 0->1->2->3->0 strays
        # into a third part, which honest members never do.
        d = make_digraph(
            5,
            [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 4), (1, 4), (3, 4)],
        )
        with pytest.raises(ClassViolationError):
            color_multipartite(d)
        with pytest.raises(InconsistencyError):
            color_multipartite(d, check=False)

    def test_sampled_members(self):
        pats = [parse_pattern_token(t) for t in ("Ksym:2", "Cvec:3", "K2arrowK1")]
        found = 0
        for seed in range(60):
            d = sample_class(5, 0.8, pats, seed)
            if d is None:
                continue
            found += 1
            c = color_multipartite(d)
            assert_colored(d, c, 2)
            assert dichromatic_number(d)[0] <= 2
        assert found >= 20


class TestLayered:
    def test_four_cycle_parity(self):
        assert color_layered(C4).colors == (0, 1, 0, 1)

    def test_no_arcs(self):
        d = make_digraph(5, [])
        c = color_layered(d)
        assert set(c.colors) == {0}

    def test_class_violations(self):
        with pytest.raises(ClassViolationError):
            color_layered(make_digraph(2, [(0, 1), (1, 0)]))
        with pytest.raises(ClassViolationError) as exc:
            color_layered(TT3)
        assert exc.value.witness.name == "graph:K3"
        with pytest.raises(ClassViolationError):
            color_layered(make_digraph(4, [(0, 1), (1, 2), (2, 3)]))

    def test_unstable_layer_caught_without_check(self):
        # Chorded 4-cycle: both 1 and 2 sit at out-distance 1 from 0,
        # and 1->2 makes that layer unstable.
        d = make_digraph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        with pytest.raises(ClassViolationError):
            color_layered(d)
        with pytest.raises(InconsistencyError) as exc:
            color_layered(d, check=False)
        assert "not stable" in str(exc.value)

    def test_components_colored_independently(self):
        arcs = list(C4.arcs) + [(u + 4, v + 4) for u, v in C4.arcs]
        d = make_digraph(8, arcs)
        c = color_layered(d)
        assert_colored(d, c, 2)

    def test_sampled_members(self):
        found = 0
        for seed in range(30):
            d = sample_class(10, 0.2, LAYERED_CLASS, seed)
            if d is None:
                continue
            found += 1
            assert_colored(d, color_layered(d), 2)
        assert found >= 15


class TestNiceSetType:
    def test_partition_enforced(self):
        with pytest.raises(DigraphError):
            NiceSet(frozenset({0, 1}), frozenset({0}), frozenset())
        with pytest.raises(DigraphError):
            NiceSet(frozenset({0}), frozenset({0}), frozenset({0}))
        with pytest.raises(DigraphError):
            NiceSet(frozenset(), frozenset(), frozenset())

    def test_assert_nice_accepts_valid_split(self):
        assert_nice(C4, NiceSet(frozenset({0, 1}), frozenset({0}), frozenset({1})))

    def test_assert_nice_catches_out_leak(self):
        with pytest.raises(InconsistencyError):
            assert_nice(C4, NiceSet(frozenset({0, 1}), frozenset({0, 1}), frozenset()))

    def test_assert_nice_catches_in_leak(self):
        with pytest.raises(InconsistencyError):
            assert_nice(C4, NiceSet(frozenset({1, 2}), frozenset(), frozenset({1, 2})))


class TestNiceColorFramework:
    def test_whole_set_finder_merges_parts(self):
        def finder(sub):
            ns = NiceSet(frozenset(sub.vertices), frozenset(sub.vertices), frozenset())
            return ns, {v: v % 2 for v in sub.vertices}, {}

        assert nice_color(C4, finder, 2, 2).colors == (0, 1, 0, 1)

    def test_singleton_sinks_reuse_one_color(self):
        def finder(sub):
            sink = next(v for v in sub.vertices if sub.out_degree(v) == 0)
            return NiceSet(frozenset({sink}), frozenset({sink}), frozenset()), {sink: 0}, {}

        c = nice_color(transitive_tournament(6), finder, 1, 1)
        assert set(c.colors) == {0}

    def test_out_part_palette_is_offset(self):
        def finder(sub):
            ns = NiceSet(frozenset(sub.vertices), frozenset(), frozenset(sub.vertices))
            return ns, {}, {v: 0 for v in sub.vertices}

        d = make_digraph(3, [])
        assert nice_color(d, finder, 2, 1).colors == (2, 2, 2)

    def test_finder_failure_carries_subdigraph(self):
        def finder(sub):
            raise NoTriangleError("nothing to grow around")

        with pytest.raises(NoTriangleError) as exc:
            nice_color(C4, finder, 1, 1)
        assert exc.value.subdigraph == C4

    def test_liar_finders_are_rejected(self):
        whole = frozenset(range(3))

        def not_covering(sub):
            return NiceSet(whole, whole, frozenset()), {0: 0}, {}

        def too_wide(sub):
            return NiceSet(whole, whole, frozenset()), {0: 0, 1: 5, 2: 0}, {}

        def cyclic_class(sub):
            return NiceSet(whole, whole, frozenset()), {0: 0, 1: 0, 2: 0}, {}

        for finder in (not_covering, too_wide, cyclic_class):
            with pytest.raises(InconsistencyError):
                nice_color(C3, finder, 2, 2)


class TestP3C3:
    def test_four_cycle(self):
        assert_colored(C4, color_p3c3(C4), 8)

    def test_no_arcs(self):
        d = make_digraph(3, [])
        assert_colored(d, color_p3c3(d), 8)

    def test_triangle_rejected(self):
        with pytest.raises(ClassViolationError):
            color_p3c3(C3)

    def test_sampled_members(self):
        found = 0
        for seed in range(30):
            d = sample_class(12, 0.25, P3C3_CLASS, seed)
            if d is None:
                continue
            found += 1
            c = color_p3c3(d)
            assert_colored(d, c, 8)
            assert dichromatic_number(d)[0] <= c.num_colors
        assert found >= 15


class TestTriangleNiceSet:
    def test_bare_triangle(self):
        ns, pieces = find_nice_set_around_triangle(C3)
        assert ns.members == frozenset({0, 1, 2})
        assert pieces.triangle == (0, 1, 2)
        assert not pieces.completers_uv and not pieces.fringe_uv
        assert not pieces.other_neighbors

    def test_seven_vertex_obstruction_is_swallowed_whole(self):
        h5 = catalog("H5")
        ns, _ = find_nice_set_around_triangle(h5)
        assert ns.members == frozenset(range(7))
        assert_nice(h5, ns)

    def test_no_triangle_raises(self):
        with pytest.raises(NoTriangleError):
            find_nice_set_around_triangle(TT3)

    def test_completers_complete_their_arc(self):
        hosts = 0
        for seed in range(12):
            built = build_f_member(4, 2, 0.4, seed)
            if built is None:
                continue
            hosts += 1
            _, host = built
            ns, pieces = find_nice_set_around_triangle(host)
            assert_nice(host, ns)
            u, v, w = pieces.triangle
            for x in pieces.completers_uv:
                assert host.has_arc(v, x) and host.has_arc(x, u)
            for x in pieces.completers_vw:
                assert host.has_arc(w, x) and host.has_arc(x, v)
            for x in pieces.completers_wu:
                assert host.has_arc(u, x) and host.has_arc(x, w)
        assert hosts >= 6

    def test_boundary_cycles_visit_both_parts(self):
        checked = 0
        for seed in range(12):
            built = build_f_member(4, 2, 0.4, seed)
            if built is None:
                continue
            _, host = built
            ns, _ = find_nice_set_around_triangle(host)
            inside = ns.members
            for cyc in simple_cycles(host):
                hits = set(cyc)
                if hits & inside and hits - inside:
                    checked += 1
                    assert hits & ns.in_part
                    assert hits & ns.out_part
        # the sampled hosts must actually exercise the boundary case
        assert checked > 0


class TestP3R:
    def test_triangle_free_members_take_the_small_path(self):
        found = 0
        for seed in range(20):
            d = sample_class(10, 0.25, P3C3_CLASS, seed)
            if d is None:
                continue
            found += 1
            assert_colored(d, color_p3r(d), 8)
        assert found >= 10

    def test_bare_triangle(self):
        c = color_p3r(C3)
        assert_colored(C3, c, 9)

    def test_forbidden_pattern_rejected(self):
        with pytest.raises(ClassViolationError) as exc:
            color_p3r(catalog("R"))
        assert exc.value.witness.name == "R"
        with pytest.raises(ClassViolationError):
            color_p3r(make_digraph(2, [(0, 1), (1, 0)]))

    def test_f_member_cores(self):
        seen = 0
        for seed in range(12):
            built = build_f_member(5, 3, 0.35, seed)
            if built is None:
                continue
            seen += 1
            core, _ = built
            assert_colored(core, color_p3r(core), 66)
        assert seen >= 6

    @given(st.integers(0, 2**32))
    @settings(max_examples=25, deadline=None)
    def test_unchecked_runs_end_valid_or_flagged(self, seed):
        d = random_oriented(9, 0.3, seed)
        try:
            c = color_p3r(d, check=False)
        except InconsistencyError:
            return
        assert is_valid_coloring(d, c)


class TestK4P3:
    def test_delegates_on_triangle_free_members(self):
        found = 0
        for seed in range(20):
            d = sample_class(10, 0.25, P3C3_CLASS, seed)
            if d is None:
                continue
            found += 1
            assert_colored(d, color_k4p3(d), 8)
        assert found >= 10

    def test_bare_triangle(self):
        assert_colored(C3, color_k4p3(C3), 9)

    def test_f_member_hosts_contain_triangles(self):
        seen = 0
        for seed in range(10):
            built = build_f_member(4, 2, 0.4, seed)
            if built is None:
                continue
            seen += 1
            _, host = built
            assert not host.is_acyclic()
            assert_colored(host, color_k4p3(host), 414)
        assert seen >= 5

    def test_sampled_members(self):
        found = 0
        for seed in range(30):
            d = sample_class(12, 0.12, K4P3_CLASS, seed)
            if d is None:
                continue
            found += 1
            c = color_k4p3(d)
            assert_colored(d, c, 414)
        assert found >= 15


class TestDelegationConsistency:
    def test_stronger_colorers_on_weaker_class_members(self):
        for seed in range(20):
            d = sample_class(9, 0.3, P3C3_CLASS, seed)
            if d is None:
                continue
            for colorer, bound in ((color_p3c3, 8), (color_p3r, 66), (color_k4p3, 414)):
                assert_colored(d, colorer(d), bound)


class TestVerifyRound:
    def test_directed_cycles(self):
        for n in range(3, 9):
            assert verify_round(directed_cycle(n), list(range(n)))

    def test_shuffled_cycle_fails(self):
        assert not verify_round(C4, [0, 2, 1, 3])

    def test_transitive_triangle_in_arc_order(self):
        assert verify_round(TT3, [0, 1, 2])

    def test_order_must_be_a_permutation(self):
        with pytest.raises(DigraphError):
            verify_round(C3, [0, 0, 1])
        with pytest.raises(DigraphError):
            verify_round(C3, [0, 1])

    def test_generated_round_digraphs(self):
        for n, seed in ((4, 0), (6, 1), (8, 2), (10, 3)):
            d = random_round(n, seed)
            assert verify_round(d, list(range(n)))


class TestColorRound:
    def test_six_cycle_segments(self):
        c = color_round(directed_cycle(6), list(range(6)))
        assert c.colors == (0, 0, 1, 1, 1, 1)

    def test_triangle_class_sizes(self):
        c = color_round(C3, [0, 1, 2])
        sizes = sorted(c.colors.count(x) for x in set(c.colors))
        assert sizes == [1, 2]

    def test_single_vertex(self):
        d = make_digraph(1, [])
        assert color_round(d, [0]).colors == (0,)

    def test_generated_round_digraphs(self):
        for seed in range(15):
            n = 4 + seed % 7
            d = random_round(n, seed)
            assert_colored(d, color_round(d, list(range(n))), 2)

    def test_non_round_order_rejected(self):
        with pytest.raises(ClassViolationError):
            color_round(C4, [0, 2, 1, 3])

    def test_non_strong_rejected(self):
        with pytest.raises(ClassViolationError):
            color_round(TT3, [0, 1, 2])

    def test_digon_rejected(self):
        with pytest.raises(ClassViolationError):
            color_round(make_digraph(2, [(0, 1), (1, 0)]), [0, 1])
