from __future__ import annotations

import json
import subprocess
import sys

import pytest

PATH3 = '{"vertices":3,"edges":[[0,1],[1,2]],"token":%d}'
SINGLE_ARC = '{"vertices":2,"arcs":[[0,1]],"token":0}'


def run_cli(args, stdin: bytes = b""):
    return subprocess.run(
        [sys.executable, "-m", "geogrundy.cli", *args],
        input=stdin,
        capture_output=True,
        timeout=600,
    )


def test_solve_path3_middle(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(PATH3 % 1)
    out = run_cli(["solve", str(f)])
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    assert payload["winnable"] is True
    assert payload["winning_move"] in (0, 2)


def test_grundy_degree3_on_path_end(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(PATH3 % 0)
    out = run_cli(["grundy", str(f), "--method", "degree3"])
    assert out.returncode == 0
    assert json.loads(out.stdout)["nimber"] == 0


def test_grundy_methods_agree(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(PATH3 % 1)
    values = set()
    for method in ("auto", "exact", "degree3", "bab"):
        out = run_cli(["grundy", str(f), "--method", method])
        assert out.returncode == 0
        values.add(json.loads(out.stdout)["nimber"])
    assert values == {1}


def test_construct_pipes_into_grundy():
    built = run_cli(["construct", "--nimber", "4"])
    assert built.returncode == 0
    solved = run_cli(["grundy", "-", "--method", "exact"], stdin=built.stdout)
    assert solved.returncode == 0
    assert json.loads(solved.stdout)["nimber"] == 4


def test_construct_labels_sidecar(tmp_path):
    sidecar = tmp_path / "labels.json"
    out = run_cli(["construct", "--nimber", "4", "--labels", str(sidecar)])
    assert out.returncode == 0
    labels = json.loads(sidecar.read_text())["labels"]
    assert "N4" in labels.values()
    assert "R4" in labels.values()


def test_reduce_gg2ug_and_prelude(tmp_path):
    f = tmp_path / "d.json"
    f.write_text(SINGLE_ARC)
    reduced = run_cli(["reduce", "gg2ug", str(f)])
    assert reduced.returncode == 0
    solved = run_cli(["grundy", "-", "--method", "bab"], stdin=reduced.stdout)
    assert json.loads(solved.stdout)["nimber"] >= 2
    with_prelude = run_cli(["reduce", "gg2ug", str(f), "--prelude"])
    solved2 = run_cli(["grundy", "-", "--method", "bab"], stdin=with_prelude.stdout)
    assert json.loads(solved2.stdout)["nimber"] == 2


def test_reduce_chain(tmp_path):
    f = tmp_path / "star2.json"
    f.write_text('{"vertices":4,"edges":[[0,1],[0,2],[2,3]],"token":0}')  # value *2
    out = run_cli(["reduce", "chain", str(f), "--from", "2", "--to", "3"])
    assert out.returncode == 0
    solved = run_cli(["grundy", "-", "--method", "exact"], stdin=out.stdout)
    assert json.loads(solved.stdout)["nimber"] == 3


def test_reduce_uno(tmp_path):
    f = tmp_path / "d.json"
    f.write_text(SINGLE_ARC)
    out = run_cli(["reduce", "uno", str(f)])
    assert out.returncode == 0
    hands = json.loads(out.stdout)["hands"]
    assert len(hands) == 2
    assert all("color" in c and "rank" in c for hand in hands for c in hand)


def test_edgelist_input(tmp_path):
    f = tmp_path / "p.ug"
    f.write_text("ug 3 1\n0 1\n1 2\n")
    out = run_cli(["solve", str(f)])
    assert json.loads(out.stdout)["winnable"] is True


def test_sum_command(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text('{"vertices":2,"edges":[[0,1]],"token":0}')
    b.write_text('{"vertices":2,"edges":[[0,1]],"token":0}')
    out = run_cli(["sum", str(a), str(b)])
    payload = json.loads(out.stdout)
    assert payload["winnable"] is False
    assert payload["value"] == 0


def test_verify_algebra_suite():
    out = run_cli(["verify", "--suite", "algebra"])
    assert out.returncode == 0
    assert b"[PASS]" in out.stdout


def test_domain_error_exit_code(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"vertices":2,"edges":[[0,0]],"token":0}')
    out = run_cli(["solve", str(f)])
    assert out.returncode == 1
    assert b"self-loop" in out.stderr


def test_usage_error_exit_code():
    out = run_cli(["grundy"])
    assert out.returncode == 2


def test_wrong_board_kind_is_domain_error(tmp_path):
    f = tmp_path / "d.json"
    f.write_text(SINGLE_ARC)
    out = run_cli(["solve", str(f)])
    assert out.returncode == 1
    assert b"expected an undirected board" in out.stderr
