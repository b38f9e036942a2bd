#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
极小逼近

功能:
1. minimal_right_approximation: add(源集合) 到目标的极小右逼近
2. minimal_left_approximation: 源到 add(目标集合) 的极小左逼近
3. 逼近性质的校验 (任意态射都经过逼近分解)

对每个不可分的 S_k，右逼近中 S_k 的重数等于
Hom(S_k, Y) 模去 {g∘h : h ∈ rad(S_k, S_l), g ∈ Hom(S_l, Y)} 的张成后的维数
(按 End(S_k) 的作用计)，取基元的贪心补空间作为逼近的分量，所得逼近自动右极小。
"""

import logging
from dataclasses import dataclass

from app.models import exact_linalg as la
from app.models.decomposition import end_ring
from app.models.derived import DMorphism, DObject, dhom_space
from app.models.representation import Representation, RepMorphism
from app.utils.errors import ComputationError

logger = logging.getLogger("SiltWorkbench.Approx")


@dataclass(frozen=True, eq=False)
class Approximation:
    """
    逼近态射及其 add 部分

    Attributes:
        morphism (DMorphism): 右逼近为 X′ → Y，左逼近为 Y → X′
        obj (DObject): X′
        multiplicities (tuple): 每个不可分源 (或目标) 在 X′ 中的重数
    """

    morphism: DMorphism
    obj: DObject
    multiplicities: tuple

    @property
    def is_zero(self):
        return self.obj.is_zero

    def as_rep_morphism(self):
        """
        两端都集中在次数 0 时转换为表示态射

        Returns:
            RepMorphism: 源、目标为 DObject.module() 的直和表示
        """
        f = self.morphism
        source, target = f.source.module(), f.target.module()
        field = source.field
        domain = field.domain
        vertex_maps = []
        for x in source.quiver.vertices:
            grid = {(j, i): c.at(x) for (i, j), c in f.components.items()}
            vertex_maps.append(la.block_matrix(
                grid, [s.module.dim(x) for s in f.target.summands],
                [s.module.dim(x) for s in f.source.summands], domain))
        return RepMorphism(source, target, vertex_maps)


def as_stalks(objects):
    """
    把表示 / 对象列表展开为互不同构的不可分茎复形

    Args:
        objects (list): Representation 或 DObject

    Returns:
        list: 单直和项 DObject 列表
    """
    result = []
    for obj in objects:
        if isinstance(obj, Representation):
            obj = DObject.stalk(obj)
        for stalk in obj.summands:
            if not any(existing.summands[0].is_isomorphic(stalk) for existing in result):
                result.append(DObject(obj.quiver, obj.field, [stalk]))
    return result


def _as_object(obj):
    return DObject.stalk(obj) if isinstance(obj, Representation) else obj


def _radical_morphisms(source, target, same):
    """
    rad(S, S′) 的张成元: S ≇ S′ 时为全部 Hom，S = S′ 时为 End(S) 的根基
    """
    if not same:
        return dhom_space(source, target).basis
    stalk = source.summands[0]
    return [DMorphism(source, source, {(0, 0): r}) for r in end_ring(stalk.module).radical_basis()]


def _endomorphisms(obj):
    stalk = obj.summands[0]
    return [DMorphism(obj, obj, {(0, 0): e}) for e in end_ring(stalk.module).basis]


def _greedy_complement(space, radical_span, candidates, orbit):
    """
    在 space 中从 candidates 贪心选出模 radical_span 线性无关的元

    Args:
        space (DHomSpace): 所在的 Hom 空间
        radical_span (list): 需要模去的态射
        candidates (list): 候选 (一般是基)
        orbit (callable): 选中 g 后需要并入张成的态射列表

    Returns:
        list: 选中的态射
    """
    domain = space.source.field.domain
    vectors = [space.coordinates(f) for f in radical_span]
    current = la.rank(la.hstack(vectors, space.dim, domain))
    chosen = []
    for g in candidates:
        trial = vectors + [space.coordinates(g)]
        rank = la.rank(la.hstack(trial, space.dim, domain))
        if rank > current:
            chosen.append(g)
            vectors = vectors + [space.coordinates(h) for h in orbit(g)]
            current = la.rank(la.hstack(vectors, space.dim, domain))
        if current == space.dim:
            break
    return chosen


def minimal_right_approximation(sources, target):
    """
    极小右 add(sources)-逼近 f: X′ → target

    Args:
        sources (list): Representation 或 DObject，展开为不可分直和项
        target (DObject | Representation): 被逼近的对象

    Returns:
        Approximation
    """
    target = _as_object(target)
    stalks = as_stalks(sources)
    chosen = []
    for k, s_k in enumerate(stalks):
        space = dhom_space(s_k, target)
        if space.dim == 0:
            chosen.append([])
            continue
        radical_span = []
        for l, s_l in enumerate(stalks):
            targets = dhom_space(s_l, target).basis
            if not targets:
                continue
            for h in _radical_morphisms(s_k, s_l, k == l):
                radical_span.extend(g.compose(h) for g in targets)
        ends = _endomorphisms(s_k)
        chosen.append(_greedy_complement(space, radical_span, space.basis,
                                         lambda g, ends=ends: [g.compose(e) for e in ends]))

    summands, components = [], {}
    for s_k, maps in zip(stalks, chosen):
        for g in maps:
            index = len(summands)
            summands.append(s_k.summands[0])
            for (_, j), component in g.components.items():
                components[(index, j)] = component
    obj = DObject(target.quiver, target.field, summands)
    approximation = Approximation(DMorphism(obj, target, components), obj, tuple(len(m) for m in chosen))
    logger.debug(f"右逼近 {obj.describe()} → {target.describe()}")
    return approximation


def minimal_left_approximation(targets, source):
    """
    极小左 add(targets)-逼近 g: source → X′

    Args:
        targets (list): Representation 或 DObject
        source (DObject | Representation): 被逼近的对象

    Returns:
        Approximation
    """
    source = _as_object(source)
    stalks = as_stalks(targets)
    chosen = []
    for k, t_k in enumerate(stalks):
        space = dhom_space(source, t_k)
        if space.dim == 0:
            chosen.append([])
            continue
        radical_span = []
        for l, t_l in enumerate(stalks):
            sources = dhom_space(source, t_l).basis
            if not sources:
                continue
            for h in _radical_morphisms(t_l, t_k, k == l):
                radical_span.extend(h.compose(g) for g in sources)
        ends = _endomorphisms(t_k)
        chosen.append(_greedy_complement(space, radical_span, space.basis,
                                         lambda g, ends=ends: [e.compose(g) for e in ends]))

    summands, components = [], {}
    for t_k, maps in zip(stalks, chosen):
        for g in maps:
            index = len(summands)
            summands.append(t_k.summands[0])
            for (i, _), component in g.components.items():
                components[(i, index)] = component
    obj = DObject(source.quiver, source.field, summands)
    approximation = Approximation(DMorphism(source, obj, components), obj, tuple(len(m) for m in chosen))
    logger.debug(f"左逼近 {source.describe()} → {obj.describe()}")
    return approximation


def verify_right_approximation(approximation, sources):
    """
    每个 Hom(S, Y) 的基元都经过 f 分解

    Raises:
        ComputationError: 某个态射不能分解
    """
    f = approximation.morphism
    for s in as_stalks(sources):
        space = dhom_space(s, f.target)
        if space.dim == 0:
            continue
        through = dhom_space(s, f.source).basis
        domain = s.field.domain
        images = la.hstack([space.coordinates(f.compose(u)) for u in through], space.dim, domain)
        for h in space.basis:
            if la.solve(images, space.coordinates(h)) is None:
                raise ComputationError(f"{s.describe()} → {f.target.describe()} 的态射不经过右逼近",
                                       condition="ApproximationFactors")
    return True


def verify_left_approximation(approximation, targets):
    """
    每个 Hom(Y, T) 的基元都经过 g 分解

    Raises:
        ComputationError: 某个态射不能分解
    """
    g = approximation.morphism
    for t in as_stalks(targets):
        space = dhom_space(g.source, t)
        if space.dim == 0:
            continue
        through = dhom_space(g.target, t).basis
        domain = t.field.domain
        images = la.hstack([space.coordinates(u.compose(g)) for u in through], space.dim, domain)
        for h in space.basis:
            if la.solve(images, space.coordinates(h)) is None:
                raise ComputationError(f"{g.source.describe()} → {t.describe()} 的态射不经过左逼近",
                                       condition="ApproximationFactors")
    return True


def shifted_family(obj, degrees):
    """add{obj[i] : i ∈ degrees} 的不可分生成元"""
    return as_stalks([obj.shift(i) for i in degrees])

