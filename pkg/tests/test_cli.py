import pytest

from linarb.cli import main

C4 = "p 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n"
TRIANGLE = "p 3 3\ne 1 2\ne 1 3\ne 2 3\n"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def put(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_gen_color_verify_round_trip(tmp_path, capsys):
    gpath = str(tmp_path / "g.txt")
    cpath = str(tmp_path / "g.col")
    code, _, _ = run(capsys, "gen", "--class", "2deg-dense", "-n", "30", "--seed", "4", "-o", gpath)
    assert code == 0
    code, _, _ = run(capsys, "color", "-i", gpath, "--class", "2deg-dense", "-o", cpath)
    assert code == 0
    code, out, _ = run(capsys, "verify", "-i", gpath, "-c", cpath, "--max-mono", "1")
    assert code == 0
    assert out.startswith("valid k=2 mono=")


def test_color_writes_to_stdout_by_default(tmp_path, capsys):
    gpath = put(tmp_path, "g.txt", C4)
    code, out, _ = run(capsys, "color", "-i", gpath, "--class", "2deg-dense")
    assert code == 0
    assert out.splitlines()[0] == "k 2"
    assert "1 2 1" in out


def test_verify_rejects_a_tampered_coloring(tmp_path, capsys):
    gpath = put(tmp_path, "g.txt", C4)
    cpath = put(tmp_path, "g.col", "k 2\n1 2 1\n2 3 1\n3 4 1\n1 4 1\n")
    code, out, _ = run(capsys, "verify", "-i", gpath, "-c", cpath)
    assert code == 1
    assert out.startswith("invalid:")


def test_verify_enforces_the_mono_cap(tmp_path, capsys):
    gpath = put(tmp_path, "g.txt", "p 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5\n")
    cpath = str(tmp_path / "g.col")
    run(capsys, "color", "-i", gpath, "--class", "2deg-dense", "-o", cpath)
    code, out, _ = run(capsys, "verify", "-i", gpath, "-c", cpath, "--max-mono", "0")
    assert code == 1
    assert "exceed --max-mono 0" in out
    code, _, _ = run(capsys, "verify", "-i", gpath, "-c", cpath, "--max-mono", "1")
    assert code == 0


def test_verify_flags_a_doubled_pair(tmp_path, capsys):
    gpath = put(tmp_path, "g.txt", C4)
    cpath = put(tmp_path, "g.col", "k 2\n1 2 1\n2 3 1\n3 4 2\n1 4 2\n")
    ppath = put(tmp_path, "g.pairs", "2 4\n")
    code, out, _ = run(capsys, "verify", "-i", gpath, "-c", cpath, "--pairs", ppath)
    assert code == 1
    assert "both vertices monochromatic" in out


def test_verify_rejects_colorings_that_miss_the_graph(tmp_path, capsys):
    gpath = put(tmp_path, "g.txt", C4)
    cpath = put(tmp_path, "g.col", "k 2\n1 3 1\n")
    code, _, err = run(capsys, "verify", "-i", gpath, "-c", cpath)
    assert code == 2
    assert "absent edge 1 3" in err
    cpath = put(tmp_path, "g2.col", "k 2\n1 2 1\n2 1 2\n")
    code, _, err = run(capsys, "verify", "-i", gpath, "-c", cpath)
    assert code == 2
    assert "colored twice" in err


def test_pairs_file_problems_exit_2(tmp_path, capsys):
    gpath = put(tmp_path, "g.txt", TRIANGLE + "")
    cpath = str(tmp_path / "g.col")
    run(capsys, "color", "-i", gpath, "--class", "2deg-dense", "-o", cpath)
    ppath = put(tmp_path, "bad.pairs", "1 1\n")
    code, _, err = run(capsys, "verify", "-i", gpath, "-c", cpath, "--pairs", ppath)
    assert code == 2
    assert "pairs file:" in err
    ppath = put(tmp_path, "short.pairs", "1\n")
    code, _, err = run(capsys, "verify", "-i", gpath, "-c", cpath, "--pairs", ppath)
    assert code == 2
    assert "expected two vertex ids" in err


def test_oracle_prints_the_exact_minimum(tmp_path, capsys):
    gpath = put(tmp_path, "g.txt", "p 3 2\ne 1 2\ne 2 3\n")
    code, out, _ = run(capsys, "oracle", "-i", gpath)
    assert code == 0 and out.strip() == "1"
    gpath = put(tmp_path, "t.txt", TRIANGLE)
    code, out, _ = run(capsys, "oracle", "-i", gpath)
    assert code == 0 and out.strip() == "2"


def test_oracle_reports_an_unreachable_ceiling(tmp_path, capsys):
    gpath = put(tmp_path, "t.txt", TRIANGLE)
    code, out, _ = run(capsys, "oracle", "-i", gpath, "--max-colors", "1")
    assert code == 1
    assert out.strip() == "none within 1 colors"


def test_oracle_refuses_oversized_instances(tmp_path, capsys):
    gpath = str(tmp_path / "big.txt")
    run(capsys, "gen", "--class", "2deg-dense", "-n", "12", "-o", gpath)
    code, _, err = run(capsys, "oracle", "-i", gpath)
    assert code == 2
    assert "exact-search cap" in err


def test_gen_subdivision_needs_a_base_graph(tmp_path, capsys):
    code, _, err = run(capsys, "gen", "--class", "subdivision")
    assert code == 2
    assert "needs -i" in err
    k4 = put(tmp_path, "k4.txt", "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n")
    code, out, _ = run(capsys, "gen", "--class", "subdivision", "-i", k4)
    assert code == 0
    assert out.splitlines()[0] == "p 10 12"


def test_gen_requires_a_size_for_random_classes(capsys):
    code, _, err = run(capsys, "gen", "--class", "3deg")
    assert code == 2
    assert "needs -n" in err


def test_gen_is_deterministic_for_a_fixed_seed(capsys):
    _, first, _ = run(capsys, "gen", "--class", "p2tree", "-n", "18", "--seed", "3")
    _, second, _ = run(capsys, "gen", "--class", "p2tree", "-n", "18", "--seed", "3")
    assert first == second
    _, third, _ = run(capsys, "gen", "--class", "p2tree", "-n", "18", "--seed", "4")
    assert third != first


def test_color_rejects_flags_outside_their_class(tmp_path, capsys):
    gpath = put(tmp_path, "g.txt", C4)
    ppath = put(tmp_path, "g.pairs", "1 3\n")
    code, _, err = run(capsys, "color", "-i", gpath, "--class", "bipartite", "--pairs", ppath)
    assert code == 2
    assert "--pairs only applies" in err
    code, _, err = run(capsys, "color", "-i", gpath, "--class", "2deg-dense", "-k", "3")
    assert code == 2
    assert "-k is not accepted" in err


def test_color_passes_driver_errors_through_as_usage_errors(tmp_path, capsys):
    gpath = put(tmp_path, "k4.txt", "p 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n")
    code, _, err = run(capsys, "color", "-i", gpath, "--class", "3deg", "-k", "1")
    assert code == 2
    assert "error:" in err


def test_color_p2tree_accepts_a_pairs_file(tmp_path, capsys):
    gpath = put(tmp_path, "g.txt", C4)
    ppath = put(tmp_path, "g.pairs", "c opposite corners\n1 3\n")
    cpath = str(tmp_path / "g.col")
    code, _, _ = run(capsys, "color", "-i", gpath, "--class", "p2tree", "--pairs", ppath, "-o", cpath)
    assert code == 0
    code, out, _ = run(capsys, "verify", "-i", gpath, "-c", cpath, "--pairs", ppath)
    assert code == 0
    assert out.strip() == "valid k=2 mono=0"


def test_explore_prints_none_up_to_the_bound(capsys):
    code, out, _ = run(capsys, "explore", "--max-n", "4")
    assert code == 0
    assert out.strip() == "none 4"


def test_bench_prints_one_tab_row_per_size(capsys):
    code, out, _ = run(capsys, "bench", "--sizes", "200,400", "--seed", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    first = lines[0].split("\t")
    assert first[0] == "200" and len(first) == 4


def test_unreadable_input_exits_2(tmp_path, capsys):
    code, _, err = run(capsys, "verify", "-i", str(tmp_path / "absent.txt"), "-c", "x")
    assert code == 2
    assert "error:" in err


def test_malformed_graph_file_exits_2(tmp_path, capsys):
    gpath = put(tmp_path, "g.txt", "p 2 1\ne 1 5\n")
    code, _, err = run(capsys, "color", "-i", gpath, "--class", "2deg")
    assert code == 2
    assert "error:" in err


def test_unknown_subcommand_is_an_argparse_error(capsys):
    with pytest.raises(SystemExit):
        main(["polish"])
