#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""会话、对象引用语法、域解析与用户设置测试"""

import json

import pytest

from app.config import DEFAULT_USER_SETTINGS, FIELD_ENV_VAR
from app.controllers.session import Session, parse_field, resolve_field
from app.controllers.settings_manager import SettingsManager
from app.models.decomposition import is_isomorphic
from app.models.derived import DObject, iso_test
from app.models.exact_linalg import PrimeField, RationalField
from app.models.quiver import Quiver
from app.models.representation import direct_sum
from app.utils.errors import NotTypeAError, ParseError, PreconditionFailedError
from tests.helpers import module, obj, stalk


@pytest.mark.parametrize("spec, expected", [
    ("101", PrimeField(101)), (" 7 ", PrimeField(7)), ("Q", RationalField()), ("QQ", RationalField()),
])
def test_parse_field(spec, expected):
    assert parse_field(spec) == expected


@pytest.mark.parametrize("spec", ["2", "100", "F101", "", "-3"])
def test_parse_field_errors(spec):
    with pytest.raises(ParseError) as info:
        parse_field(spec)
    assert info.value.exit_code == 2


def test_resolve_field_precedence(monkeypatch, isolated_settings):
    assert resolve_field() == PrimeField(101)
    isolated_settings.set_setting("field", "7")
    assert resolve_field() == PrimeField(7)
    monkeypatch.setenv(FIELD_ENV_VAR, "Q")
    assert resolve_field() == RationalField()
    assert resolve_field("103") == PrimeField(103)


def test_settings_defaults_and_persistence(isolated_settings, tmp_path):
    assert isolated_settings.get_field_spec() == DEFAULT_USER_SETTINGS["field"]
    assert isolated_settings.get_window() == tuple(DEFAULT_USER_SETTINGS["window"])
    assert isolated_settings.get_seed() == DEFAULT_USER_SETTINGS["seed"]
    assert isolated_settings.set_setting("window", [0, 3])
    with open(tmp_path / "settings.json", encoding="utf-8") as f:
        assert json.load(f)["window"] == [0, 3]

    SettingsManager.reset()
    reloaded = SettingsManager(str(tmp_path / "settings.json"))
    assert reloaded.get_window() == (0, 3)
    assert reloaded.get_random_trials() == DEFAULT_USER_SETTINGS["random_trials"]
    assert SettingsManager() is reloaded


def test_corrupt_settings_file_falls_back_to_defaults(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    SettingsManager.reset()
    assert SettingsManager(str(path)).settings == DEFAULT_USER_SETTINGS


@pytest.fixture
def session(a2, f101):
    return Session(a2, f101)


def test_parse_standard_objects(session, a2, f101):
    assert iso_test(session.parse_object("P2"), stalk(a2, f101, "P", 2))
    assert iso_test(session.parse_object("S1[1]"), stalk(a2, f101, "S", 1, 1))
    assert iso_test(session.parse_object("I1[-1]"), stalk(a2, f101, "I", 1, -1))
    assert iso_test(session.parse_object("M1..2"), stalk(a2, f101, "P", 1))
    assert iso_test(session.parse_object(" P1 + S1[2] "), obj(a2, f101, ("P", 1, 0), ("S", 1, 2)))
    assert session.parse_object("0").is_zero
    assert session.parse_object("").is_zero


def test_named_objects(session, a2, f101):
    session.store("T", obj(a2, f101, ("P", 1, 0), ("S", 1, 0)))
    session.store("E", module(a2, f101, "S", 2))
    assert iso_test(session.parse_object("T[1]+E"), obj(a2, f101, ("P", 1, 1), ("S", 1, 1), ("S", 2, 0)))


@pytest.mark.parametrize("text", ["P3", "S0", "M2..1", "M1..5", "X1", "P1[", "P1[x]", "P1++S1"])
def test_parse_object_errors(session, text):
    with pytest.raises(ParseError):
        session.parse_object(text)


def test_interval_on_non_type_a(kronecker, f101):
    with pytest.raises(NotTypeAError):
        Session(kronecker, f101).parse_object("M1..2")


def test_store_checks_category(session, a3, f101):
    with pytest.raises(PreconditionFailedError):
        session.store("X", stalk(a3, f101, "P", 1))


def test_parse_module_and_collection(session, a2, f101):
    expected = direct_sum([module(a2, f101, "S", 1), module(a2, f101, "P", 2)]).representation
    assert is_isomorphic(session.parse_module("S1+P2"), expected)
    assert session.parse_module("0").dims == (0, 0)
    with pytest.raises(PreconditionFailedError):
        session.parse_module("S1[1]")
    members = session.parse_collection("S2+S1[1]")
    assert len(members) == 2
    assert all(isinstance(member, DObject) for member in members)


def test_from_files(tmp_path, monkeypatch):
    monkeypatch.setenv(FIELD_ENV_VAR, "103")
    default = Session.from_files()
    assert default.quiver == Quiver.linear_a(2)
    assert default.field == PrimeField(103)

    quiver_file = tmp_path / "a3.txt"
    quiver_file.write_text("vertices 3\narrow 1 2\narrow 2 3\n", encoding="utf-8")
    store_file = tmp_path / "store.json"
    store_file.write_text(json.dumps({"objects": {
        "T": {"summands": [{"module": "P1", "shift": 0}, {"module": "S2", "shift": 1}]},
    }}), encoding="utf-8")
    session = Session.from_files(str(quiver_file), PrimeField(101), str(store_file))
    assert session.quiver == Quiver.linear_a(3)
    expected = obj(session.quiver, session.field, ("P", 1, 0), ("S", 2, 1))
    assert iso_test(session.objects["T"], expected)


def test_dump_and_load_store(session, a2, f101, tmp_path):
    session.store("T", obj(a2, f101, ("P", 2, 0), ("S", 1, -1)))
    path = tmp_path / "store.json"
    path.write_text(session.dump_store(), encoding="utf-8")
    fresh = Session(a2, f101)
    fresh.load_store(str(path))
    assert iso_test(fresh.objects["T"], session.objects["T"])
