#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""命令行测试: 子命令、JSON 报告与退出码"""

import json

import pytest

from app.components.cli import main, run


def run_json(*argv):
    code, output = run(["--json", *argv])
    return code, json.loads(output)


@pytest.fixture
def kronecker_files(tmp_path):
    quiver = tmp_path / "kronecker.txt"
    quiver.write_text("vertices 2\narrow 1 2\narrow 1 2\n", encoding="utf-8")
    store = tmp_path / "objects.json"
    store.write_text(json.dumps({"objects": {
        "R": {"summands": [{"module": {"dims": [1, 1], "maps": [[[1]], [[1]]]}, "shift": 0}]},
    }}), encoding="utf-8")
    return str(quiver), str(store)


def test_hom_and_ext():
    code, output = run(["hom", "S1", "P2", "--degree", "1"])
    assert code == 0
    assert output == "dim Hom(S1, (P2)[1]) = 1"
    code, report = run_json("ext", "S2", "S1")
    assert code == 0
    assert report["result"] == {"dim": 0}


def test_report_layout():
    code, report = run_json("--field", "103", "decompose", "P1+P1+S1[1]")
    assert code == 0
    assert set(report) == {"command", "status", "result", "objects", "quiver", "field"}
    assert report["command"] == "decompose"
    assert report["status"] == "ok"
    assert report["field"] == "103"
    assert report["quiver"] == {"vertices": 2, "arrows": [[1, 2]]}
    assert {"summand": "P1", "multiplicity": 2} in report["result"]["summands"]


def test_json_report_is_deterministic():
    assert run(["--json", "check-silting", "P1+S1"]) == run(["--json", "check-silting", "P1+S1"])


def test_check_presilting_lists_violations():
    code, report = run_json("check-presilting", "S1+S2")
    assert code == 0
    assert report["result"]["presilting"] is False
    assert report["result"]["violations"] == [{"source": "S1", "target": "P2", "degree": 1, "dim": 1}]


def test_check_silting_includes_oracle_answer():
    code, report = run_json("check-silting", "P1[1]+P2")
    assert code == 0
    assert report["result"]["silting"] is True
    assert report["result"]["oracle_generates"] is True


def test_mutate():
    code, report = run_json("--verbose-triangles", "mutate", "P1+P2", "--at", "P2", "--left")
    assert code == 0
    assert report["result"]["mutation"]["triangle"] == ["P2", "P1", "S1"]
    assert report["result"]["mutation"]["new_summand"] == "S1"
    assert any(t["kind"] == "mutate_left" for t in report["triangles"])


def test_mutate_requires_silting():
    code, report = run_json("mutate", "S1+S2", "--at", "S1", "--right")
    assert code == 1
    assert report["status"] == "error"
    assert report["error"]["error"] == "NotSilting"


def test_complete_presmc_in_a2():
    code, report = run_json("complete-presmc", "S1")
    assert code == 0
    assert sorted(report["result"]["members"]) == ["P2", "S1"]
    assert abs(report["result"]["determinant"]) == 1


def test_kronecker_loop_is_a_negative_answer(kronecker_files):
    quiver, store = kronecker_files
    code, report = run_json("--quiver", quiver, "--objects", store, "complete-presmc", "R")
    assert code == 0
    assert report["status"] == "not_completable"
    assert report["error"]["cycle"] == ["(1,1)"]


def test_ext_quiver_of_kronecker_regular(kronecker_files):
    quiver, store = kronecker_files
    code, report = run_json("--quiver", quiver, "--objects", store, "ext-quiver", "R")
    assert code == 0
    assert report["result"]["acyclic"] is False


def test_reduce():
    code, report = run_json("reduce", "--exceptional", "S2", "--object", "P1")
    assert code == 0
    assert report["objects"]["projection"]["summands"][0]["label"] == "S1"


def test_bongartz_and_silting_to_tilting():
    code, report = run_json("bongartz", "S1")
    assert code == 0
    assert report["objects"]["complement"]["summands"][0]["label"] == "P1"
    code, report = run_json("silting-to-tilting", "P1[2]+S1[2]")
    assert code == 0
    assert report["result"]["summands"] == 2


def test_oracle_window():
    code, report = run_json("oracle", "enumerate-silting", "--window", "0", "1")
    assert code == 0
    assert report["result"]["count"] == 5
    assert report["result"]["window"] == {"min_shift": 0, "max_shift": 1}
    assert len(report["objects"]) == 5


@pytest.mark.parametrize("argv", [
    ["hom", "P9", "P1"],
    ["frobnicate"],
    ["--field", "4", "hom", "P1", "P1"],
    ["mutate", "P1+P2", "--at", "P2"],
])
def test_parse_errors_exit_with_two(argv):
    code, output = run(argv)
    assert code == 2
    assert output


def test_settings_show_and_set(isolated_settings):
    code, report = run_json("settings", "set", "window", "[0, 2]")
    assert code == 0
    assert report["result"]["settings"]["window"] == [0, 2]
    assert isolated_settings.get_window() == (0, 2)
    code, _ = run(["settings", "set", "colour", "red"])
    assert code == 2


def test_field_from_settings_file(isolated_settings):
    isolated_settings.set_setting("field", "Q")
    _, report = run_json("hom", "P1", "P1")
    assert report["field"] == "Q"


def test_main_prints_and_returns_exit_code(capsys):
    assert main(["ext", "S1", "P2"]) == 0
    assert capsys.readouterr().out.strip() == "dim Ext¹(S1, P2) = 1"
