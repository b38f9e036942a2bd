#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""A 型枚举器与厚闭包测试"""

import pytest

from app.controllers import typea_oracle as oracle
from app.controllers.typea_oracle import Window
from app.models.quiver import Quiver
from app.models.representation import Representation
from app.utils.errors import NotTypeAError, PreconditionFailedError
from tests.helpers import obj, stalk


def test_window():
    window = Window(0, 1)
    assert list(window.shifts) == [0, 1]
    assert window.padded() == Window(-1, 2)
    assert window.to_dict() == {"min_shift": 0, "max_shift": 1}
    with pytest.raises(PreconditionFailedError):
        Window(2, 1)


def test_window_contains(a2, f101):
    assert Window(0, 1).contains(obj(a2, f101, ("P", 1, 0), ("S", 1, 1)))
    assert not Window(0, 1).contains(stalk(a2, f101, "P", 1, 2))


def test_indecomposables_of_type_a(a3, f101):
    assert len(oracle.enumerate_indecomposables(a3, f101)) == 6
    assert len(oracle.enumerate_exceptionals(a3, f101)) == 6
    zigzag = Quiver(3, ((2, 1), (2, 3)))
    assert len(oracle.enumerate_indecomposables(zigzag, f101)) == 6


def test_non_type_a_is_rejected(kronecker, f101):
    with pytest.raises(NotTypeAError):
        oracle.enumerate_indecomposables(kronecker, f101)
    with pytest.raises(NotTypeAError):
        oracle.generates([stalk(kronecker, f101, "P", 1)], kronecker, f101)


def test_thick_closure(a3, f101):
    closure = oracle.thick_closure([stalk(a3, f101, "S", 1), stalk(a3, f101, "S", 2)], a3, f101)
    assert len(closure.members) == 3
    assert closure.contains(Representation.interval(a3, f101, 1, 2))
    assert not closure.contains(Representation.simple(a3, f101, 3))


def test_thick_closure_is_shift_invariant(a3, f101):
    generators = [stalk(a3, f101, "S", 1, 1), stalk(a3, f101, "S", 2)]
    assert oracle.thick_closure_contains(generators, stalk(a3, f101, "I", 2, -1))
    assert not oracle.thick_closure_contains(generators, stalk(a3, f101, "S", 3))
    with pytest.raises(PreconditionFailedError):
        oracle.thick_closure_contains(generators, stalk(a3, f101, "S", 1, 5))


def test_generates(a2, a3, f101):
    assert oracle.generates([obj(a2, f101, ("P", 1, 0), ("P", 2, 0))], a2, f101)
    assert oracle.generates([stalk(a2, f101, "S", 2), stalk(a2, f101, "S", 1, 1)], a2, f101)
    assert not oracle.generates([stalk(a2, f101, "S", 1)], a2, f101)
    assert not oracle.generates([stalk(a3, f101, "P", 1), stalk(a3, f101, "P", 3)], a3, f101)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), pytest.param(3, 5, marks=pytest.mark.slow)])
def test_tilting_module_counts(f101, n, count):
    assert len(oracle.enumerate_tilting_modules(Quiver.linear_a(n), f101)) == count


def test_two_term_counts_in_a2(a2, f101):
    window = Window(0, 1)
    assert len(oracle.enumerate_silting(a2, f101, window)) == 5
    assert len(oracle.enumerate_smc(a2, f101, window)) == 5


def test_presmc_count_in_degree_zero(a2, f101):
    # 次数 0 的 pre-SMC: 单个砖模 S1、S2、P1 以及 {S1, S2}
    assert len(oracle.enumerate_presmc(a2, f101, Window(0, 0))) == 4


def test_enumeration_is_sorted_and_deterministic(a2, f101):
    first = [t.describe() for t in oracle.enumerate_presilting(a2, f101, Window(0, 1))]
    second = [t.describe() for t in oracle.enumerate_presilting(a2, f101, Window(0, 1))]
    assert first == second
