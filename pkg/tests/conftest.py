#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
测试公共夹具: 域、标准箭图、常用表示与隔离的设置文件
"""

import pytest

from app.config import FIELD_ENV_VAR
from app.controllers.settings_manager import SettingsManager
from app.models.exact_linalg import PrimeField, RationalField
from app.models.quiver import Quiver
from app.models.representation import Representation


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """每个测试使用独立的设置文件，并清除 SILTWB_FIELD"""
    monkeypatch.delenv(FIELD_ENV_VAR, raising=False)
    SettingsManager.reset()
    manager = SettingsManager(str(tmp_path / "settings.json"))
    yield manager
    SettingsManager.reset()


@pytest.fixture
def f101():
    return PrimeField(101)


@pytest.fixture
def qq():
    return RationalField()


@pytest.fixture
def a1():
    return Quiver.linear_a(1)


@pytest.fixture
def a2():
    return Quiver.linear_a(2)


@pytest.fixture
def a3():
    return Quiver.linear_a(3)


@pytest.fixture
def kronecker():
    return Quiver.kronecker()


@pytest.fixture
def regular_r(kronecker, f101):
    """Kronecker 箭图上维数向量 (1,1) 的正则表示 R (两条箭头都是 1)"""
    return Representation.from_lists(kronecker, f101, [1, 1], [[[1]], [[1]]])


@pytest.fixture
def f3():
    """特征小于常见维数的素域"""
    return PrimeField(3)
