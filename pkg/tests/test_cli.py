import pytest

from dicolor.cli import run
from dicolor.digraph import is_valid_coloring, make_digraph
from dicolor.formats import parse_coloring, parse_digraph, serialize_digraph
from dicolor.patterns import catalog, directed_cycle, transitive_tournament


@pytest.fixture
def save(tmp_path):
    def _save(d, name="input.dg"):
        path = tmp_path / name
        path.write_text(serialize_digraph(d))
        return str(path)

    return _save


def out_of(capsys):
    return capsys.readouterr().out


class TestGen:
    def test_cycle(self, capsys):
        assert run(["gen", "cycle", "4"]) == 0
        assert parse_digraph(out_of(capsys)) == directed_cycle(4)

    def test_dk(self, capsys):
        assert run(["gen", "dk", "2"]) == 0
        assert parse_digraph(out_of(capsys)) == directed_cycle(3)

    def test_tt(self, capsys):
        assert run(["gen", "tt", "4"]) == 0
        assert parse_digraph(out_of(capsys)) == transitive_tournament(4)

    def test_seeded_families_are_stable(self, capsys):
        assert run(["gen", "oriented", "8", "0.4", "7"]) == 0
        first = out_of(capsys)
        assert run(["gen", "oriented", "8", "0.4", "7"]) == 0
        assert out_of(capsys) == first
        assert run(["gen", "tournament", "6", "1"]) == 0
        assert parse_digraph(out_of(capsys)).is_tournament()
        assert run(["gen", "round", "7", "2"]) == 0
        parse_digraph(out_of(capsys))

    def test_semicomplete(self, capsys):
        assert run(["gen", "semicomplete", "cycle:5"]) == 0
        d = parse_digraph(out_of(capsys))
        assert d.n == 5 and d.is_semicomplete()

    def test_usage_errors(self, capsys):
        assert run(["gen", "nosuch", "3"]) == 2
        assert run(["gen", "cycle"]) == 2
        assert run(["gen", "cycle", "x"]) == 2
        assert run(["gen", "dk", "0"]) == 2
        capsys.readouterr()


class TestExact:
    def test_reports_chi_and_witness(self, save, capsys):
        path = save(directed_cycle(5))
        assert run(["exact", path]) == 0
        lines = out_of(capsys).splitlines()
        assert lines[0] == "chi 2"
        coloring = parse_coloring("\n".join(lines[1:]) + "\n")
        assert is_valid_coloring(directed_cycle(5), coloring)

    def test_size_guard(self, save, capsys):
        path = save(directed_cycle(5))
        assert run(["exact", "--limit", "3", path]) == 3
        capsys.readouterr()

    def test_missing_file(self, capsys):
        assert run(["exact", "/nonexistent.dg"]) == 2
        capsys.readouterr()


class TestColor:
    def test_layered(self, save, capsys):
        path = save(directed_cycle(4))
        assert run(["color", "--algo", "layered", path]) == 0
        assert parse_coloring(out_of(capsys)).colors == (0, 1, 0, 1)

    def test_round_natural_and_explicit_order(self, save, capsys):
        path = save(directed_cycle(6))
        assert run(["color", "--algo", "round", path]) == 0
        assert parse_coloring(out_of(capsys)).colors == (0, 0, 1, 1, 1, 1)
        assert run(["color", "--algo", "round", "--order", "0,1,2,3,4,5", path]) == 0
        capsys.readouterr()

    def test_class_violation_exits_3(self, save, capsys):
        path = save(directed_cycle(3))
        assert run(["color", "--algo", "multipartite", path]) == 3
        capsys.readouterr()

    def test_no_check_skips_the_class_gate(self, save, capsys):
        # C5 has an induced forward 3-path, so the layered class check
        # refuses it, yet the layering itself happens to be valid.
        path = save(directed_cycle(5))
        assert run(["color", "--algo", "layered", path]) == 3
        capsys.readouterr()
        assert run(["color", "--algo", "layered", "--no-check", path]) == 0
        c = parse_coloring(out_of(capsys))
        assert is_valid_coloring(directed_cycle(5), c)

    def test_unknown_algo(self, save, capsys):
        assert run(["color", "--algo", "nosuch", save(directed_cycle(3))]) == 2
        capsys.readouterr()

    def test_bad_round_order(self, save, capsys):
        path = save(directed_cycle(4))
        assert run(["color", "--algo", "round", "--order", "0,2,1,3", path]) == 3
        assert run(["color", "--algo", "round", "--order", "0,0,1,2", path]) == 2
        capsys.readouterr()


class TestCheck:
    def test_found_exits_1(self, save, capsys):
        path = save(directed_cycle(3))
        assert run(["check", "--forbid", "Cvec:3", path]) == 1
        assert "found Cvec:3 at vertices 0 1 2" in out_of(capsys)

    def test_clean_exits_0(self, save, capsys):
        path = save(directed_cycle(3))
        assert run(["check", "--forbid", "Ksym:2,path:+2", path]) == 0
        assert "ok" in out_of(capsys)

    def test_pattern_file_fallback(self, save, capsys):
        tt3 = save(transitive_tournament(3), "tt3.dg")
        host = save(transitive_tournament(4), "host.dg")
        assert run(["check", "--forbid", tt3, host]) == 1
        assert "tt3.dg" in out_of(capsys)

    def test_wants_tokens(self, save, capsys):
        assert run(["check", save(directed_cycle(3))]) == 2
        assert run(["check", "--forbid", "bogus~token", save(directed_cycle(3))]) == 2
        capsys.readouterr()


class TestHero:
    def test_hero_certificate(self, save, capsys):
        path = save(transitive_tournament(3))
        assert run(["hero", path]) == 0
        line = out_of(capsys).strip()
        assert line.startswith("hero ") and "=>" in line

    def test_non_hero_names_its_obstruction(self, save, capsys):
        path = save(catalog("H1"))
        assert run(["hero", path]) == 1
        assert "non-hero contains H1" in out_of(capsys)

    def test_non_tournament_exits_3(self, save, capsys):
        assert run(["hero", save(directed_cycle(4))]) == 3
        capsys.readouterr()


class TestMatch:
    def test_no_match(self, save, capsys):
        path = save(directed_cycle(5))
        assert run(["match", "--pattern", "Cvec:3", path]) == 0
        assert "no match" in out_of(capsys)

    def test_match_exits_1(self, save, capsys):
        path = save(directed_cycle(5))
        assert run(["match", "--pattern", "path:+2", path]) == 1
        assert "match path:+2 at vertices" in out_of(capsys)

    def test_bad_pattern(self, save, capsys):
        assert run(["match", "--pattern", "no such thing", save(directed_cycle(3))]) == 2
        capsys.readouterr()


class TestVerify:
    def test_valid(self, save, tmp_path, capsys):
        d = save(directed_cycle(3))
        col = tmp_path / "good.col"
        col.write_text("c 0 0\nc 1 0\nc 2 1\n")
        assert run(["verify", d, str(col)]) == 0
        assert "valid" in out_of(capsys)

    def test_monochromatic_cycle_exits_1(self, save, tmp_path, capsys):
        d = save(directed_cycle(3))
        col = tmp_path / "bad.col"
        col.write_text("c 0 0\nc 1 0\nc 2 0\n")
        assert run(["verify", d, str(col)]) == 1
        assert "monochromatic cycle" in out_of(capsys)

    def test_malformed_coloring(self, save, tmp_path, capsys):
        d = save(directed_cycle(3))
        col = tmp_path / "ugly.col"
        col.write_text("c 0\n")
        assert run(["verify", d, str(col)]) == 2
        capsys.readouterr()


class TestSample:
    def test_member_to_stdout_rate_to_stderr(self, capsys):
        code = run(["sample", "--n", "6", "--p", "0.3", "--forbid", "Cvec:3", "--seed", "1"])
        assert code == 0
        captured = capsys.readouterr()
        d = parse_digraph(captured.out)
        assert d.n == 6
        assert "accepted after" in captured.err

    def test_exhausted_budget_exits_1(self, capsys):
        code = run(
            ["sample", "--n", "4", "--p", "1.0", "--forbid", "path:+1", "--tries", "5"]
        )
        assert code == 1
        assert "no member found" in capsys.readouterr().err


class TestDot:
    def test_dot_text(self, save, capsys):
        assert run(["dot", save(directed_cycle(3))]) == 0
        text = out_of(capsys)
        assert text.startswith("digraph D {")
        assert text.count("->") == 3


class TestDraw:
    def test_renders_png(self, save, tmp_path, capsys):
        out = tmp_path / "pic.png"
        assert run(["draw", save(directed_cycle(4)), "--out", str(out)]) == 0
        assert out.stat().st_size > 0
        assert str(out) in out_of(capsys)

    def test_colored_render(self, save, tmp_path, capsys):
        col = tmp_path / "c.col"
        col.write_text("c 0 0\nc 1 1\nc 2 0\nc 3 1\n")
        out = tmp_path / "pic.png"
        code = run(
            ["draw", save(directed_cycle(4)), "--out", str(out), "--coloring", str(col)]
        )
        assert code == 0 and out.stat().st_size > 0
        capsys.readouterr()

    def test_coloring_size_mismatch(self, save, tmp_path, capsys):
        col = tmp_path / "c.col"
        col.write_text("c 0 0\n")
        out = tmp_path / "pic.png"
        code = run(
            ["draw", save(directed_cycle(4)), "--out", str(out), "--coloring", str(col)]
        )
        assert code == 2
        capsys.readouterr()


def read_summary(path):
    rows = {}
    lines = path.read_text().splitlines()
    assert lines[0] == "metric\tvalue"
    for line in lines[1:]:
        key, value = line.split("\t")
        rows[key] = value
    return rows


class TestReport:
    def test_full_report(self, save, tmp_path, capsys):
        out = tmp_path / "rep"
        assert run(["report", save(directed_cycle(4)), "--out", str(out)]) == 0
        rows = read_summary(out / "summary.tsv")
        assert rows["vertices"] == "4"
        assert rows["arcs"] == "4"
        assert rows["digon_pairs"] == "0"
        assert rows["oriented"] == "True"
        assert rows["strong_components"] == "1"
        assert rows["dichromatic_number"] == "2"
        for name in ("digraph.png", "coloring.txt", "coloring.png"):
            assert (out / name).stat().st_size > 0
        printed = out_of(capsys).splitlines()
        assert len(printed) == 4

    def test_algo_row_and_figures_without_exact(self, save, tmp_path, capsys):
        out = tmp_path / "rep"
        code = run(
            ["report", save(directed_cycle(4)), "--out", str(out),
             "--limit", "3", "--algo", "layered"]
        )
        assert code == 0
        rows = read_summary(out / "summary.tsv")
        assert "dichromatic_number" not in rows
        assert rows["colors_layered"] == "2"
        coloring = parse_coloring((out / "coloring.txt").read_text())
        assert coloring.colors == (0, 1, 0, 1)
        capsys.readouterr()

    def test_tournament_gets_hero_row(self, save, tmp_path, capsys):
        out = tmp_path / "rep"
        assert run(["report", save(transitive_tournament(4)), "--out", str(out)]) == 0
        rows = read_summary(out / "summary.tsv")
        assert rows["tournament"] == "True"
        assert rows["hero"] == "True"
        capsys.readouterr()

    def test_algo_class_violation_exits_3(self, save, tmp_path, capsys):
        out = tmp_path / "rep"
        code = run(
            ["report", save(directed_cycle(3)), "--out", str(out), "--algo", "layered"]
        )
        assert code == 3
        capsys.readouterr()


class TestWiring:
    def test_no_subcommand(self, capsys):
        assert run([]) == 2
        capsys.readouterr()

    def test_unknown_subcommand(self, capsys):
        assert run(["frobnicate"]) == 2
        capsys.readouterr()

    def test_missing_required_argument(self, capsys):
        assert run(["color", "x.dg"]) == 2
        capsys.readouterr()

    def test_parse_error_in_input(self, tmp_path, capsys):
        bad = tmp_path / "bad.dg"
        bad.write_text("n 2\na 0 9\n")
        assert run(["exact", str(bad)]) == 2
        capsys.readouterr()

    def test_digons_roundtrip_through_files(self, save, capsys):
        d = make_digraph(2, [(0, 1), (1, 0)])
        assert run(["dot", save(d)]) == 0
        assert out_of(capsys).count("->") == 2
