#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""Silting 引擎测试: 判定、变异、Bongartz 补全、约化、补全与 tilting 模"""

import pytest

from app.controllers import silting_engine as se
from app.controllers import typea_oracle as oracle
from app.controllers.perpendicular import regular_object
from app.controllers.typea_oracle import Window
from app.models.decomposition import decompose, is_isomorphic
from app.models.derived import DObject, iso_test
from app.models.exact_linalg import PrimeField
from app.models.quiver import Quiver
from app.models.representation import direct_sum
from app.utils.errors import (
    NotASummandError, NotPresiltingError, NotRigidError, NotSiltingError, PreconditionFailedError,
)
from tests.helpers import contains_iso, module, obj, stalk


def test_sum_of_simples_is_not_presilting(a2, f101):
    t = obj(a2, f101, ("S", 1, 0), ("S", 2, 0))
    assert not se.is_presilting(t)
    assert se.presilting_violations(t) == [{"source": "S1", "target": "P2", "degree": 1, "dim": 1}]
    assert not se.is_silting(t)


def test_silting_and_tilting_objects(a2, f101):
    kq = regular_object(a2, f101)
    assert se.is_silting(kq)
    assert se.is_tilting_object(kq)
    assert se.is_silting(obj(a2, f101, ("P", 1, 0), ("S", 1, 0)))
    two_term = obj(a2, f101, ("P", 1, 1), ("P", 2, 0))
    assert se.is_silting(two_term)
    assert not se.is_tilting_object(two_term)
    assert not se.is_silting(obj(a2, f101, ("P", 1, 0), ("P", 2, 1)))
    assert not se.is_silting(stalk(a2, f101, "P", 1))
    assert not se.is_silting(obj(a2, f101, ("P", 1, 0), ("P", 1, 0), ("P", 2, 0)))


def test_check_silting_raises(a2, f101):
    with pytest.raises(NotSiltingError):
        se.check_silting(obj(a2, f101, ("S", 1, 0), ("S", 2, 0)))


def test_certificate(a2, f101):
    cert = se.certificate(regular_object(a2, f101))
    assert cert["summands"] == 2
    assert abs(cert["determinant"]) == 1
    assert cert["presilting"] and cert["basic"]
    assert se.certificate(stalk(a2, f101, "S", 1))["determinant"] is None


def test_tilting_module_check(a2, f101, regular_r):
    p1, s1, s2 = module(a2, f101, "P", 1), module(a2, f101, "S", 1), module(a2, f101, "S", 2)
    assert se.is_tilting_module(direct_sum([p1, s1]).representation)
    assert not se.is_tilting_module(direct_sum([s1, s2]).representation)
    assert not se.is_tilting_module(p1)
    assert not se.is_tilting_module(regular_r)


def test_left_mutation_at_p2(a2, f101):
    kq = obj(a2, f101, ("P", 1, 0), ("P", 2, 0))
    mutation = se.mutate(kq, stalk(a2, f101, "P", 2), "left")
    assert iso_test(mutation.new_summand, stalk(a2, f101, "S", 1))
    assert mutation.new_summand.describe() == "S1"
    first, middle, third = mutation.triangle
    assert first.describe() == "P2"
    assert middle.describe() == "P1"
    assert third.describe() == "S1"
    assert iso_test(mutation.result, obj(a2, f101, ("P", 1, 0), ("S", 1, 0)))
    assert mutation.to_dict()["triangle"] == ["P2", "P1", "S1"]


def test_left_mutation_without_maps_shifts(a2, f101):
    kq = obj(a2, f101, ("P", 1, 0), ("P", 2, 0))
    result = se.mutate_left(kq, 0)
    assert iso_test(result, obj(a2, f101, ("P", 1, 1), ("P", 2, 0)))


def test_right_mutation_undoes_left(a2, f101):
    t = obj(a2, f101, ("P", 1, 0), ("S", 1, 0))
    result = se.mutate_right(t, stalk(a2, f101, "S", 1))
    assert iso_test(result, regular_object(a2, f101))


def test_mutation_preconditions(a2, f101):
    kq = regular_object(a2, f101)
    with pytest.raises(NotASummandError):
        se.mutate(kq, stalk(a2, f101, "S", 1))
    with pytest.raises(NotASummandError):
        se.mutate(kq, 5)
    with pytest.raises(NotSiltingError):
        se.mutate(obj(a2, f101, ("S", 1, 0), ("S", 2, 0)), 0)
    with pytest.raises(PreconditionFailedError):
        se.mutate(kq, 0, "sideways")


def test_mutation_stays_silting_in_a3(a3, f101):
    kq = regular_object(a3, f101)
    for index in range(3):
        for direction in ("left", "right"):
            result = se.mutate(kq, index, direction).result
            assert se.is_silting(result)
            assert abs(se.certificate(result)["determinant"]) == 1


def test_bongartz_complement_of_simple(a2, f101):
    s1 = module(a2, f101, "S", 1)
    complement = se.bongartz_complete(s1)
    assert is_isomorphic(complement, module(a2, f101, "P", 1))


def test_bongartz_of_projective_and_zero(a2, f101):
    assert is_isomorphic(se.bongartz_complete(module(a2, f101, "P", 1)), module(a2, f101, "P", 2))
    zero = direct_sum([], a2, f101).representation
    total = se.bongartz_complete(zero)
    assert se.is_tilting_module(total)


def test_bongartz_requires_rigid(regular_r):
    with pytest.raises(NotRigidError):
        se.bongartz_complete(regular_r)


def test_sort_presilting_summands(a2, f101):
    ordered = se.sort_presilting_summands(obj(a2, f101, ("P", 1, 0), ("P", 2, 0)))
    assert ordered.describe() == "P2 ⊕ P1"
    shifted = se.sort_presilting_summands(obj(a2, f101, ("P", 2, 0), ("P", 1, 1)))
    assert shifted.shifts == [-1, 0]
    assert se.sort_presilting_summands(obj(a2, f101, ("P", 2, 0), ("P", 1, 1)), normalize=False).shifts == [0, 1]


def test_reduce_and_lift(a2, f101):
    kq = regular_object(a2, f101)
    p2 = stalk(a2, f101, "P", 2)
    reduced, inner = se.reduce_silting(kq, p2)
    assert iso_test(reduced, stalk(a2, f101, "S", 1))
    assert inner.rank == 1
    lifted = se.lift_silting(p2, stalk(a2, f101, "S", 1))
    assert iso_test(lifted, kq)


def test_lift_requires_perpendicular(a2, f101):
    with pytest.raises(PreconditionFailedError):
        se.lift_silting(stalk(a2, f101, "P", 2), stalk(a2, f101, "P", 1))


def test_complete_presilting(a2, f101):
    s1 = stalk(a2, f101, "S", 1)
    completed = se.complete_presilting(s1)
    assert se.is_silting(completed)
    assert contains_iso(completed.summand_objects(), s1)
    assert iso_test(se.complete_presilting(DObject.zero(a2, f101)), regular_object(a2, f101))
    with pytest.raises(NotPresiltingError):
        se.complete_presilting(obj(a2, f101, ("S", 1, 0), ("S", 2, 0)))


def test_complete_presilting_with_shifts(a3, f101):
    t = obj(a3, f101, ("S", 2, 1), ("P", 1, 0))
    completed = se.complete_presilting(t)
    assert se.is_silting(completed)
    assert completed.contains(t)


def test_silting_to_tilting(a2, f101):
    tilting = [
        direct_sum([module(a2, f101, "P", 1), module(a2, f101, "P", 2)]).representation,
        direct_sum([module(a2, f101, "P", 1), module(a2, f101, "S", 1)]).representation,
    ]
    result = se.silting_to_tilting(obj(a2, f101, ("P", 1, 1), ("P", 2, 0)))
    assert se.is_tilting_module(result)
    assert any(is_isomorphic(result, m) for m in tilting)
    concentrated = se.silting_to_tilting(obj(a2, f101, ("P", 1, 2), ("S", 1, 2)))
    assert is_isomorphic(concentrated, tilting[1])
    with pytest.raises(NotSiltingError):
        se.silting_to_tilting(obj(a2, f101, ("S", 1, 0), ("S", 2, 0)))


def test_every_a3_silting_object_gives_a_tilting_module(a3, f101):
    siltings = oracle.enumerate_silting(a3, f101, Window(-1, 1))
    assert siltings
    for t in siltings:
        result = se.silting_to_tilting(t)
        assert se.is_tilting_module(result)
        assert len(decompose(result)) == 3


@pytest.mark.parametrize("p", [3, 5])
def test_small_field_presilting_completion(a3, p):
    field = PrimeField(p)
    p1 = stalk(a3, field, "P", 1)
    completed = se.complete_presilting(p1)
    assert se.is_silting(completed)
    assert completed.contains(p1)
    assert se.is_tilting_module(se.silting_to_tilting(completed))


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), pytest.param(3, 5, marks=pytest.mark.slow)])
def test_tilting_exchange_graph_counts(f101, n, count):
    graph = se.tilting_exchange_graph(Quiver.linear_a(n), f101)
    assert graph.number_of_nodes() == count
    for _, data in graph.nodes(data=True):
        assert se.is_tilting_module(data["object"].module())
