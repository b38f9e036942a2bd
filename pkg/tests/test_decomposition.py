#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Krull-Schmidt 分解与自同态环测试"""

import pytest

from app.config import DECOMPOSE_RANDOM_TRIALS, DEFAULT_SEED
from app.models import decomposition
from app.models.decomposition import (
    decompose, end_ring, indecomposable_pieces, is_brick, is_exceptional, is_indecomposable, is_isomorphic,
)
from app.models.exact_linalg import PrimeField
from app.models.representation import Representation, direct_sum
from tests.helpers import module


def kronecker_pair(quiver, field, first, second):
    return Representation.from_lists(quiver, field, [2, 2], [first, second])


def test_sum_of_projective_and_simple(a2, f101):
    p1, s1 = module(a2, f101, "P", 1), module(a2, f101, "S", 1)
    pieces = decompose(direct_sum([p1, s1]).representation)
    assert len(pieces) == 2
    assert all(count == 1 for _, count in pieces)
    assert sorted(piece.dims for piece, _ in pieces) == [(1, 0), (1, 1)]


def test_multiplicity(regular_r):
    doubled = direct_sum([regular_r, regular_r]).representation
    pieces = decompose(doubled)
    assert len(pieces) == 1
    assert pieces[0][1] == 2
    assert is_isomorphic(pieces[0][0], regular_r)
    assert len(indecomposable_pieces(doubled)) == 2


def test_hidden_direct_sum_is_found(a2, f101):
    # 换基后的 P1 ⊕ S1
    hidden = Representation.from_lists(a2, f101, [2, 1], [[[1, 1]]])
    assert not is_indecomposable(hidden)
    assert is_isomorphic(hidden, direct_sum([module(a2, f101, "P", 1), module(a2, f101, "S", 1)]).representation)


def test_jordan_block_is_indecomposable(kronecker, f101):
    jordan = kronecker_pair(kronecker, f101, [[1, 0], [0, 1]], [[0, 1], [0, 0]])
    assert is_indecomposable(jordan)
    assert end_ring(jordan).dim == 2
    assert len(end_ring(jordan).radical_basis()) == 1
    assert not is_brick(jordan)
    assert not is_exceptional(jordan)


def test_distinct_eigenvalues_split(kronecker, f101):
    diagonal = kronecker_pair(kronecker, f101, [[1, 0], [0, 1]], [[0, 0], [0, 1]])
    pieces = decompose(diagonal)
    assert len(pieces) == 2
    assert not is_isomorphic(pieces[0][0], pieces[1][0])


def test_rotation_depends_on_field(kronecker, f101, qq):
    rotation = [[0, -1], [1, 0]]
    over_q = kronecker_pair(kronecker, qq, [[1, 0], [0, 1]], rotation)
    assert is_indecomposable(over_q)
    assert is_brick(over_q)
    over_f101 = kronecker_pair(kronecker, f101, [[1, 0], [0, 1]], rotation)
    assert len(indecomposable_pieces(over_f101)) == 2


def test_exceptional_and_brick(a3, f101, regular_r):
    for i in range(1, 4):
        for j in range(i, 4):
            interval = Representation.interval(a3, f101, i, j)
            assert is_exceptional(interval)
            assert is_brick(interval)
    assert is_brick(regular_r)
    assert not is_exceptional(regular_r)


def test_isomorphism_requires_same_dims(a2, f101):
    assert not is_isomorphic(module(a2, f101, "P", 1), module(a2, f101, "S", 1))
    assert not end_ring(Representation.zero(a2, f101)).is_local()


@pytest.mark.parametrize("seed", [0, 7])
def test_configure_changes_seed_without_changing_result(kronecker, f101, seed):
    decomposition.configure(seed=seed, trials=4)
    try:
        diagonal = kronecker_pair(kronecker, f101, [[1, 0], [0, 1]], [[2, 0], [0, 3]])
        assert len(indecomposable_pieces(diagonal)) == 2
    finally:
        decomposition.configure(seed=DEFAULT_SEED, trials=DECOMPOSE_RANDOM_TRIALS)


def kronecker_jordan3(quiver, field):
    """维数向量 (3,3)，第一条箭头为单位阵，第二条为 3 阶幂零 Jordan 块"""
    identity = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    jordan = [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    return Representation.from_lists(quiver, field, [3, 3], [identity, jordan])


@pytest.mark.parametrize("p", [3, 5, 7, 101])
def test_radical_for_small_characteristic(kronecker, p):
    m = kronecker_jordan3(kronecker, PrimeField(p))
    assert is_indecomposable(m)
    ring = end_ring(m)
    assert ring.dim == 3
    assert len(ring.radical_basis()) == 2
    assert not is_brick(m)


@pytest.mark.parametrize("p", [3, 5])
def test_small_field_decomposition(a3, p):
    field = PrimeField(p)
    p1 = module(a3, field, "P", 1)
    assert is_exceptional(p1)
    assert is_brick(p1)
    assert end_ring(p1).radical_basis() == []
    regular = direct_sum([module(a3, field, "P", x) for x in a3.vertices]).representation
    assert len(decompose(regular)) == 3
    assert len(end_ring(regular).radical_basis()) == end_ring(regular).dim - 3
