#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""测试中构造对象的简写"""

from app.models.derived import DObject, iso_test
from app.models.representation import Representation

FACTORIES = {"P": Representation.projective, "S": Representation.simple, "I": Representation.injective}


def module(quiver, field, kind, x):
    return FACTORIES[kind](quiver, field, x)


def stalk(quiver, field, kind, x, shift=0):
    """P / S / I 茎复形"""
    return DObject.stalk(module(quiver, field, kind, x), shift)


def obj(quiver, field, *parts):
    """由 (kind, x, shift) 组成的直和"""
    result = DObject.zero(quiver, field)
    for kind, x, shift in parts:
        result = result.direct_sum(stalk(quiver, field, kind, x, shift))
    return result


def contains_iso(collection, member):
    """collection 中是否有与 member 同构的对象"""
    return any(iso_test(x, member) for x in collection)
