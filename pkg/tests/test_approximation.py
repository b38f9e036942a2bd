#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""极小逼近测试"""

from app.controllers.approximation import (
    as_stalks, minimal_left_approximation, minimal_right_approximation, shifted_family, verify_left_approximation,
    verify_right_approximation,
)
from app.models.derived import iso_test
from app.models.representation import is_mono_or_epi
from tests.helpers import obj, stalk


def test_right_approximation_of_simple(a2, f101):
    p1, p2, s1 = stalk(a2, f101, "P", 1), stalk(a2, f101, "P", 2), stalk(a2, f101, "S", 1)
    approximation = minimal_right_approximation([p1, p2], s1)
    assert iso_test(approximation.obj, p1)
    assert approximation.multiplicities == (1, 0)
    assert verify_right_approximation(approximation, [p1, p2])


def test_right_approximation_is_minimal(a2, f101):
    p1, p2 = stalk(a2, f101, "P", 1), stalk(a2, f101, "P", 2)
    # P2 → P1 经过恒等映射分解，不应出现在逼近中
    approximation = minimal_right_approximation([p1, p2], p1)
    assert approximation.multiplicities == (1, 0)
    assert approximation.morphism.components[(0, 0)].is_isomorphism


def test_left_approximation_of_kronecker_projective(kronecker, f101):
    p1, p2 = stalk(kronecker, f101, "P", 1), stalk(kronecker, f101, "P", 2)
    approximation = minimal_left_approximation([p1], p2)
    assert approximation.multiplicities == (2,)
    assert iso_test(approximation.obj, obj(kronecker, f101, ("P", 1, 0), ("P", 1, 0)))
    assert verify_left_approximation(approximation, [p1])
    assert is_mono_or_epi(approximation.as_rep_morphism()) == "mono"


def test_zero_approximations(a2, f101):
    s1, s2 = stalk(a2, f101, "S", 1), stalk(a2, f101, "S", 2)
    assert minimal_left_approximation([s1], s2).is_zero
    assert minimal_right_approximation([s1], s2).is_zero


def test_approximation_with_shifted_sources(a2, f101):
    s1, s2 = stalk(a2, f101, "S", 1), stalk(a2, f101, "S", 2)
    # S1 → S2[1] 是 add{S2[i]} 的左逼近
    approximation = minimal_left_approximation(shifted_family(s2, [0, 1]), s1)
    assert iso_test(approximation.obj, s2.shift(1))
    assert approximation.multiplicities == (0, 1)


def test_kronecker_regular_is_approximated_by_both_projectives(kronecker, f101, regular_r):
    p1, p2 = stalk(kronecker, f101, "P", 1), stalk(kronecker, f101, "P", 2)
    approximation = minimal_right_approximation([p1, p2], regular_r)
    assert approximation.multiplicities == (1, 0)
    assert verify_right_approximation(approximation, [p1, p2])


def test_as_stalks_removes_duplicates(a2, f101):
    doubled = obj(a2, f101, ("P", 1, 0), ("P", 1, 0), ("S", 1, 1))
    assert len(as_stalks([doubled, stalk(a2, f101, "P", 1)])) == 2
