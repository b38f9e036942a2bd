#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
例外对象的垂直子范畴

功能:
1. is_exceptional_object: 单个不可分茎复形，End 为除环且无自扩张
2. thick_perp_project: 由极小右 thick(E)-逼近的三角 E_X → X → Z → E_X[1] 把 X 投到 thick(E)^⊥
3. PerpContext: 逐次垂直子范畴 thick(E_1, ..., E_k)^⊥，提供投影、成员判定、秩与典范 silting 对象

投影 X ↦ Z 是包含函子 thick(E)^⊥ → D^b 的左伴随，保持 D^{≤0}，
因此 kQ 的投影是垂直子范畴的 silting 对象。
"""

import logging
from dataclasses import dataclass

from app.controllers.approximation import minimal_right_approximation
from app.models.complexes import cone
from app.models.decomposition import end_ring, is_indecomposable
from app.models.derived import DObject, Stalk, dhom_dim, possible_degrees
from app.models.representation import is_rigid
from app.models.resolution import projective
from app.utils.errors import ComputationError, NotExceptionalError, PreconditionFailedError
from app.utils.logger import log_triangle

logger = logging.getLogger("SiltWorkbench.Perp")


def regular_object(quiver, field):
    """kQ = ⊕_x P_x 作为对象"""
    return DObject(quiver, field, [Stalk(projective(quiver, field, x), 0) for x in quiver.vertices])


def is_exceptional_object(e):
    """E 为单个不可分茎复形 M[a]，End(M) 为除环且 Hom(E, E[1]) = 0"""
    if len(e) != 1:
        return False
    module = e.summands[0].module
    return is_indecomposable(module) and end_ring(module).is_division() and is_rigid(module)


def check_exceptional(e):
    """
    Raises:
        NotExceptionalError: E 不是例外对象
    """
    if not is_exceptional_object(e):
        raise NotExceptionalError(f"{e.describe()} 不是例外对象", condition="Exceptional")


def is_perpendicular(e, x):
    """Hom(E[i], X) = 0 对所有 i 成立"""
    return all(dhom_dim(e, x, d) == 0 for d in possible_degrees(e, x))


@dataclass(frozen=True, eq=False)
class Projection:
    """
    投影三角 E_X → X → Z → E_X[1]

    Attributes:
        result (DObject): Z ∈ thick(E)^⊥
        approximation (Approximation): 极小右 thick(E)-逼近 E_X → X
    """

    result: DObject
    approximation: object


def thick_perp_project(e, x):
    """
    X 在 thick(E)^⊥ 中的投影

    Args:
        e (DObject): 例外对象
        x (DObject): 任意对象

    Returns:
        Projection: Z 以及所用的逼近

    Raises:
        NotExceptionalError: E 不是例外对象
    """
    check_exceptional(e)
    # Hom(E[m], X) = Hom(E, X[−m])
    sources = [e.shift(-d) for d in possible_degrees(e, x) if dhom_dim(e, x, d)]
    approximation = minimal_right_approximation(sources, x)
    z = cone(approximation.morphism) if not approximation.is_zero else x
    if not is_perpendicular(e, z):
        raise ComputationError(f"投影结果 {z.describe()} 不在 thick({e.describe()})^⊥ 中",
                               condition="PerpendicularProjection")
    log_triangle("thick_perp_project", approximation.obj, x, z)
    return Projection(z, approximation)


class PerpContext:
    """
    逐次垂直子范畴 C_k = thick(E_1, ..., E_k)^⊥

    E_{j+1} 必须是 C_j 中的例外对象。空序列表示整个 D^b(mod kQ)。
    """

    def __init__(self, quiver, field, exceptionals=()):
        self.quiver = quiver
        self.field = field
        self.exceptionals = tuple(exceptionals)
        self._canonical = None

    @classmethod
    def top(cls, quiver, field):
        return cls(quiver, field, ())

    @property
    def depth(self):
        return len(self.exceptionals)

    @property
    def rank(self):
        """G_0(C_k) 的秩 n − k"""
        return self.quiver.vertex_count - len(self.exceptionals)

    def contains(self, x):
        return all(is_perpendicular(e, x) for e in self.exceptionals)

    def project(self, x):
        """依次对 E_1, ..., E_k 做 thick_perp_project"""
        for e in self.exceptionals:
            if not is_perpendicular(e, x):
                x = thick_perp_project(e, x).result
        return x

    def extend(self, e):
        """
        C_k ∩ thick(E)^⊥

        Raises:
            NotExceptionalError: E 不是例外对象
            PreconditionFailedError: E 不在 C_k 中
        """
        check_exceptional(e)
        if not self.contains(e):
            raise PreconditionFailedError(f"{e.describe()} 不在当前垂直子范畴中", condition="InPerpendicular")
        return PerpContext(self.quiver, self.field, self.exceptionals + (e,))

    def canonical_silting(self):
        """
        典范 silting 对象: ⊕P_i 的投影去重后的直和项

        Raises:
            ComputationError: 直和项个数与秩不符
        """
        if self._canonical is not None:
            return self._canonical
        kq = regular_object(self.quiver, self.field)
        result = self.project(kq).basic()
        if len(result) != self.rank:
            raise ComputationError(f"垂直子范畴的典范 silting 对象有 {len(result)} 个直和项，秩为 {self.rank}",
                                   condition="CanonicalSilting")
        self._canonical = result
        logger.debug(f"垂直子范畴 (深度 {self.depth}) 的典范 silting: {result.describe()}")
        return result

    def describe(self):
        if not self.exceptionals:
            return "D^b(kQ)"
        return "thick(" + ", ".join(e.describe() for e in self.exceptionals) + ")^⊥"
