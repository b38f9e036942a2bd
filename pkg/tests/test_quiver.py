#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""箭图、路径与 Grothendieck 群测试"""

import pytest

from app.models.quiver import ClassVector, Quiver, class_basis_determinant, class_rank, euler_form
from app.utils.errors import CyclicQuiverError, DimensionMismatchError, NotTypeAError, ParseError


def test_linear_a_and_paths(a3):
    assert a3.arrows == ((1, 2), (2, 3))
    assert a3.topological_order == [1, 2, 3]
    assert len(a3.paths_between(1, 3)) == 1
    assert a3.paths_between(3, 1) == ()
    assert [p.length for p in a3.paths_from(1)] == [0, 1, 2]


def test_kronecker_has_two_parallel_paths(kronecker):
    paths = kronecker.paths_between(1, 2)
    assert len(paths) == 2
    assert {p.arrows for p in paths} == {(0,), (1,)}


@pytest.mark.parametrize("arrows", [((1, 2), (2, 1)), ((1, 1),)])
def test_cyclic_quiver_rejected(arrows):
    with pytest.raises(CyclicQuiverError) as info:
        Quiver(2, arrows)
    assert info.value.exit_code == 1


def test_bad_vertices_rejected():
    with pytest.raises(ParseError):
        Quiver(0)
    with pytest.raises(ParseError):
        Quiver(2, ((1, 3),))


def test_type_a_recognition():
    zigzag = Quiver(3, ((2, 1), (2, 3)))
    assert zigzag.is_type_a
    assert zigzag.type_a_order == [1, 2, 3]
    assert Quiver.linear_a(1).type_a_order == [1]
    assert not Quiver.kronecker().is_type_a
    star = Quiver(4, ((1, 2), (1, 3), (1, 4)))
    assert not star.is_type_a
    with pytest.raises(NotTypeAError):
        star.type_a_order


def test_euler_form(a2, kronecker):
    s1, s2 = ClassVector.of([1, 0]), ClassVector.of([0, 1])
    assert euler_form(a2, s1, s2) == -1
    assert euler_form(a2, s2, s1) == 0
    assert euler_form(a2, s1, s1) == 1
    r = ClassVector.of([1, 1])
    assert euler_form(kronecker, r, r) == 0
    with pytest.raises(DimensionMismatchError):
        euler_form(a2, ClassVector.of([1]), s1)


def test_class_vector_arithmetic():
    v = ClassVector.of([1, 2])
    assert v.shifted(1) == -v
    assert v.shifted(2) == v
    assert v + v == v * 2
    assert v - v == ClassVector.zero(2)


def test_class_basis_determinant():
    p1, p2 = ClassVector.of([1, 1]), ClassVector.of([0, 1])
    assert abs(class_basis_determinant([p1, p2])) == 1
    assert class_basis_determinant([ClassVector.of([2, 0]), p2]) == 2
    assert class_rank([p1, p1]) == 1
    with pytest.raises(DimensionMismatchError):
        class_basis_determinant([p1])


def test_reversed_and_dict(a2):
    assert a2.reversed().arrows == ((2, 1),)
    assert a2.to_dict() == {"vertices": 2, "arrows": [[1, 2]]}
