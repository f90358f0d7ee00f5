import json

import pytest

from buchitop.automata import clopen_nba, parse_nba, pinf_nba, save_automaton
from buchitop.cli import main
from buchitop.trees import BINARY, constant_tree, save_bta, serialize_tree, tree_prefix, universal_bta, clopen_bta
from buchitop.words import FiniteWord


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    save_automaton(pinf_nba(), "pinf.nba")
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None), out


def test_member(workdir, capsys):
    code, report, _ = run(capsys, "aut", "member", "pinf.nba", "(01)w")
    assert code == 0 and report["outcome"] is True
    code, report, _ = run(capsys, "aut", "member", "pinf.nba", "1(0)w")
    assert code == 0 and report["outcome"] is False


def test_complement_then_member(workdir, capsys):
    code, _, _ = run(capsys, "aut", "complement", "pinf.nba", "-o", "c.nba")
    assert code == 0
    assert parse_nba((workdir / "c.nba").read_text()).state_count >= 1
    code, report, _ = run(capsys, "aut", "member", "c.nba", "(0)w")
    assert report["outcome"] is True


def test_decompose_lists_one_pair(workdir, capsys):
    code, report, _ = run(capsys, "aut", "decompose", "pinf.nba")
    assert code == 0 and len(report["pairs"]) == 1


def test_other_aut_ops(workdir, capsys):
    save_automaton(clopen_nba(FiniteWord.parse(BINARY, "01")), "c01.nba")
    for op in ["union", "intersect", "contains", "equivalent"]:
        code, report, _ = run(capsys, "aut", op, "pinf.nba", "c01.nba")
        assert code == 0, op
    for op in ["empty", "is-closed", "find-word", "reduce", "lift"]:
        code, report, _ = run(capsys, "aut", op, "pinf.nba")
        assert code == 0, op


def test_metric_commands(capsys):
    code, report, _ = run(capsys, "metric", "delta", "(0)w", "(1)w", "--kmax", "1")
    assert code == 0 and report["outcome"] == "1/2"
    code, report, _ = run(capsys, "metric", "cauchy", "--k", "2", "--pairs", "3,4")
    assert code == 0 and report["outcome"] == "verified"
    code, report, _ = run(capsys, "metric", "ball", "(0)w", "--n", "1")
    assert code == 0 and report["equivalent_to_singleton"] is True


def test_exit_codes(workdir, capsys):
    (workdir / "bad.nba").write_text("garbage\n")
    assert main(["aut", "empty", "bad.nba"]) == 2
    assert main(["aut", "member", "pinf.nba", "(01)"]) == 2
    assert main(["aut", "complement", "pinf.nba", "--budget", "1"]) == 3
    capsys.readouterr()


@pytest.mark.parametrize("name", ["isolated-points", "non-complete", "ball-singleton",
                                  "lifting", "exists-path"])
def test_demos_exit_zero(name, capsys):
    code, report, _ = run(capsys, "demo", name)
    assert code == 0 and report["command"].endswith(name)


def test_game_play_and_determinism(workdir, capsys):
    for i in range(3):
        save_automaton(clopen_nba(FiniteWord(BINARY, (0,) * (i + 1))), f"c{i}.nba")
    (workdir / "shrink.txt").write_text(
        "".join(f"round {i}: sigma=(0)w L=c{i}.nba\n" for i in range(3)))
    code, report, first = run(capsys, "game", "play", "--script", "shrink.txt", "--rounds", "3")
    assert code == 0 and report["certificate"] == "(0)w"
    _, _, second = run(capsys, "game", "play", "--script", "shrink.txt", "--rounds", "3")
    assert first == second


def test_illegal_script_move(workdir, capsys):
    save_automaton(clopen_nba(FiniteWord.parse(BINARY, "0")), "c0.nba")
    (workdir / "bad.txt").write_text("round 0: sigma=(1)w L=c0.nba\n")
    code, report, _ = run(capsys, "game", "play", "--script", "bad.txt", "--rounds", "1")
    assert code != 0


def test_tree_game_play(workdir, capsys):
    one = constant_tree(BINARY, "1")
    (workdir / "one.tree").write_text(serialize_tree(one))
    save_bta(universal_bta(BINARY), "all.bta")
    save_bta(clopen_bta(tree_prefix(one, 1)), "c1.bta")
    (workdir / "t.txt").write_text("round 0: tree=one.tree L=all.bta\nround 1: tree=one.tree L=c1.bta\n")
    code, report, first = run(capsys, "tree-game", "play", "--script", "t.txt", "--rounds", "2")
    assert code == 0 and report["outcome"] == "player 2 wins"
    _, _, second = run(capsys, "tree-game", "play", "--script", "t.txt", "--rounds", "2")
    assert first == second
