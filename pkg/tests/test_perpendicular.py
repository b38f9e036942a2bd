#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""例外对象与垂直子范畴测试"""

import pytest

from app.controllers.perpendicular import (
    PerpContext, check_exceptional, is_exceptional_object, is_perpendicular, regular_object, thick_perp_project,
)
from app.models.derived import DObject, iso_test
from app.utils.errors import NotExceptionalError, PreconditionFailedError
from tests.helpers import obj, stalk


def test_exceptional_objects(a2, f101, regular_r):
    assert is_exceptional_object(stalk(a2, f101, "S", 1, 3))
    assert not is_exceptional_object(obj(a2, f101, ("S", 1, 0), ("S", 2, 0)))
    r = DObject.stalk(regular_r)
    assert not is_exceptional_object(r)
    with pytest.raises(NotExceptionalError):
        check_exceptional(r)


def test_projection_already_perpendicular(a2, f101):
    s1, p1 = stalk(a2, f101, "S", 1), stalk(a2, f101, "P", 1)
    assert is_perpendicular(s1, p1)
    projection = thick_perp_project(s1, p1)
    assert projection.approximation.is_zero
    assert iso_test(projection.result, p1)


def test_projection_by_cone(a2, f101):
    s1, s2, p1 = stalk(a2, f101, "S", 1), stalk(a2, f101, "S", 2), stalk(a2, f101, "P", 1)
    assert iso_test(thick_perp_project(s2, p1).result, s1)
    assert iso_test(thick_perp_project(p1, s1).result, s2.shift(1))
    assert thick_perp_project(s2, s2.shift(4)).result.is_zero


def test_projection_requires_exceptional(kronecker, f101, regular_r):
    with pytest.raises(NotExceptionalError):
        thick_perp_project(DObject.stalk(regular_r), stalk(kronecker, f101, "P", 1))


def test_context_rank_and_canonical_silting(a2, f101):
    top = PerpContext.top(a2, f101)
    assert top.rank == 2
    assert iso_test(top.canonical_silting(), regular_object(a2, f101))
    inner = top.extend(stalk(a2, f101, "S", 2))
    assert inner.rank == 1
    assert inner.depth == 1
    assert iso_test(inner.canonical_silting(), stalk(a2, f101, "S", 1))
    assert inner.describe() == "thick(P2)^⊥"


def test_context_extend_checks_membership(a2, f101):
    inner = PerpContext.top(a2, f101).extend(stalk(a2, f101, "S", 2))
    assert inner.contains(stalk(a2, f101, "S", 1, -2))
    assert not inner.contains(stalk(a2, f101, "P", 1))
    with pytest.raises(PreconditionFailedError):
        inner.extend(stalk(a2, f101, "P", 1))


def test_kronecker_perpendicular_of_projective(kronecker, f101):
    inner = PerpContext.top(kronecker, f101).extend(stalk(kronecker, f101, "P", 2))
    canonical = inner.canonical_silting()
    assert iso_test(canonical, stalk(kronecker, f101, "S", 1))
    assert iso_test(inner.project(stalk(kronecker, f101, "P", 1)), canonical)
