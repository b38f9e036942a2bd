#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Silting 引擎

功能:
1. presilting / silting / tilting 判定
2. 左右变异与变异三角
3. Bongartz 补全 (泛扩张 0 → kQ → E → M^d → 0)
4. presilting 直和项排序、silting 约化及其逆提升
5. presilting 对象的 silting 补全 (对最后一个直和项做约化的归纳)
6. silting 对象到 tilting 模 (约化 + M ⊕ E[1] 的一次右变异)
7. tilting 模的交换图
"""

import logging
from collections import deque
from dataclasses import dataclass

import networkx as nx

from app.controllers.approximation import minimal_left_approximation, minimal_right_approximation
from app.controllers.perpendicular import PerpContext, is_perpendicular, regular_object
from app.models import exact_linalg as la
from app.models.complexes import cocone, cone
from app.models.decomposition import decompose, is_isomorphic
from app.models.derived import DObject, dhom_dim, iso_test, positive_degree_homs, possible_degrees
from app.models.quiver import class_basis_determinant
from app.models.representation import (
    ExtClass, Representation, direct_sum, ext_space, extension_middle_term, is_rigid,
)
from app.utils.errors import (
    ComputationError, NotASummandError, NotPresiltingError, NotRigidError, NotSiltingError,
    PreconditionFailedError,
)
from app.utils.logger import log_triangle

logger = logging.getLogger("SiltWorkbench.Silting")


# ---------------------------------------------------------------------------
# 判定
# ---------------------------------------------------------------------------

def is_presilting(t):
    """
    Hom(T, T[i]) = 0 对所有 i > 0

    只需检查 possible_degrees 给出的有限个次数，其余次数在遗传范畴中自动为零。
    """
    return all(dhom_dim(t, t, d) == 0 for d in possible_degrees(t, t) if d > 0)


def presilting_violations(t):
    """
    违反 presilting 条件的 (i, j, d)：Hom(T_i, T_j[d]) ≠ 0 且 d > 0

    Returns:
        list: 字典列表，供报告使用
    """
    violations = []
    for i, a in enumerate(t.summand_objects()):
        for j, b in enumerate(t.summand_objects()):
            for d in possible_degrees(a, b):
                if d > 0 and dhom_dim(a, b, d):
                    violations.append({"source": a.describe(), "target": b.describe(), "degree": d,
                                       "dim": dhom_dim(a, b, d)})
    return violations


def is_silting(t, ctx=None):
    """
    基本、presilting 且直和项个数等于秩

    Args:
        ctx (PerpContext): 所在的垂直子范畴，缺省为整个 D^b
    """
    rank = ctx.rank if ctx is not None else t.quiver.vertex_count
    if ctx is not None and not ctx.contains(t):
        return False
    return t.is_basic and len(t) == rank and is_presilting(t)


def is_tilting_object(t):
    """silting 且 Hom(T, T[i]) = 0 对所有 i ≠ 0"""
    return is_silting(t) and all(dhom_dim(t, t, d) == 0 for d in possible_degrees(t, t) if d != 0)


def is_tilting_module(m):
    """Ext¹(M, M) = 0 且恰有 n 个互不同构的不可分直和项"""
    if m.is_zero:
        return False
    return is_rigid(m) and len(decompose(m)) == m.quiver.vertex_count


def check_silting(t, ctx=None):
    """
    Raises:
        NotSiltingError: T 不是 silting 对象
    """
    if not is_silting(t, ctx):
        raise NotSiltingError(f"{t.describe()} 不是 silting 对象", condition="Silting")


def certificate(t):
    """silting 对象的报告证书: 直和项个数与类行列式"""
    return {
        "summands": len(t),
        "determinant": class_basis_determinant(t.class_vectors()) if len(t) == t.quiver.vertex_count else None,
        "presilting": is_presilting(t),
        "basic": t.is_basic,
    }


# ---------------------------------------------------------------------------
# 变异
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Mutation:
    """
    变异结果

    Attributes:
        result (DObject): 新的 silting 对象
        replaced (DObject): 被换掉的直和项 M
        new_summand (DObject): 新直和项 N
        approximation (Approximation): 所用的极小逼近
        triangle (tuple): 三角的三项 (按 first → second → third → first[1])
    """

    result: DObject
    replaced: DObject
    new_summand: DObject
    approximation: object
    triangle: tuple

    def to_dict(self):
        return {
            "result": self.result.describe(),
            "replaced": self.replaced.describe(),
            "new_summand": self.new_summand.describe(),
            "triangle": [x.describe() for x in self.triangle],
        }


def _summand_index(t, m):
    if isinstance(m, int):
        if not 0 <= m < len(t):
            raise NotASummandError(f"直和项下标 {m} 超出范围", condition="Summand")
        return m
    if isinstance(m, Representation):
        m = DObject.stalk(m)
    if len(m) != 1:
        raise NotASummandError(f"{m.describe()} 不是不可分对象", condition="Summand")
    index = t.index_of(m.summands[0])
    if index is None:
        raise NotASummandError(f"{m.describe()} 不是 {t.describe()} 的直和项", condition="Summand")
    return index


def _replace(t, index, new):
    summands = list(t.summands)
    summands[index:index + 1] = list(new.summands)
    return DObject(t.quiver, t.field, summands)


def mutate(t, m, direction="left", ctx=None):
    """
    在直和项 M 处变异

    左变异: M → T_M → N → M[1]，T_M → 为极小左 add T̄-逼近；
    右变异: N → T_M → M → N[1]，T_M → M 为极小右 add T̄-逼近。

    Args:
        t (DObject): silting 对象
        m (DObject | Representation | int): 直和项或其下标
        direction (str): "left" 或 "right"

    Returns:
        Mutation

    Raises:
        NotSiltingError: T 不是 silting 对象
        NotASummandError: M 不是直和项
    """
    check_silting(t, ctx)
    index = _summand_index(t, m)
    replaced = t.summand(index)
    rest = t.without(index)
    if direction == "left":
        approximation = minimal_left_approximation([rest], replaced)
        new = cone(approximation.morphism)
        triangle = (replaced, approximation.obj, new)
    elif direction == "right":
        approximation = minimal_right_approximation([rest], replaced)
        new = cocone(approximation.morphism)
        triangle = (new, approximation.obj, replaced)
    else:
        raise PreconditionFailedError(f"未知的变异方向: {direction}", condition="MutationDirection")
    if len(new) != 1:
        raise ComputationError(f"变异得到的 {new.describe()} 不是不可分对象", condition="Mutation")
    result = _replace(t, index, new)
    log_triangle(f"mutate_{direction}", *triangle)
    logger.info(f"{direction} 变异: {replaced.describe()} ↦ {new.describe()}")
    return Mutation(result, replaced, new, approximation, triangle)


def mutate_left(t, m, ctx=None):
    return mutate(t, m, "left", ctx).result


def mutate_right(t, m, ctx=None):
    return mutate(t, m, "right", ctx).result


# ---------------------------------------------------------------------------
# Bongartz 补全
# ---------------------------------------------------------------------------

def bongartz_complete(m):
    """
    Bongartz 补全

    取 Ext¹(M, kQ) 的基 e_1, ..., e_d 组成的泛扩张 0 → kQ → E → M^d → 0，
    E 中不属于 add M 的不可分直和项 (去重) 即为补 N。

    Returns:
        Representation: N，使 M ⊕ N 为 tilting 模

    Raises:
        NotRigidError: Ext¹(M, M) ≠ 0
    """
    if not is_rigid(m):
        raise NotRigidError(f"Ext¹(M, M) ≠ 0 (dims={m.dims})", condition="Rigid")
    quiver, field = m.quiver, m.field
    kq = regular_object(quiver, field)
    regular = direct_sum([s.module for s in kq.summands], quiver, field).representation
    basis = ext_space(m, regular).basis
    if basis:
        copies = direct_sum([m] * len(basis), quiver, field).representation
        domain = field.domain
        cocycle = [la.hstack([e.cocycle[a] for e in basis], regular.dim(y), domain)
                   for a, (_, y) in enumerate(quiver.arrows)]
        universal = ExtClass(copies, regular, cocycle)
        middle, _, _ = extension_middle_term(universal)
    else:
        middle = regular
    own = [piece for piece, _ in decompose(m)] if not m.is_zero else []
    complement = []
    for piece, _ in decompose(middle):
        if any(is_isomorphic(piece, p) for p in own + complement):
            continue
        complement.append(piece)
    n = direct_sum(complement, quiver, field).representation
    total = direct_sum([m, n], quiver, field).representation
    if not is_tilting_module(total):
        raise ComputationError(f"Bongartz 补全结果不是 tilting 模: dims={total.dims}", condition="Bongartz")
    logger.info(f"Bongartz 补全: Ext¹(M, kQ) 维数 {len(basis)}，补的维数向量 {n.dims}")
    return n


# ---------------------------------------------------------------------------
# 排序、约化与提升
# ---------------------------------------------------------------------------

def sort_presilting_summands(t, normalize=True):
    """
    presilting 直和项排序

    先按平移升序，同一平移内按 0 次 Hom 图的拓扑序 (有非零态射 T_i → T_j 时 T_i 在前，
    同层取原下标最小者)。结果满足 i > j 时 Hom(T_i, T_j) = 0。

    Args:
        normalize (bool): 是否整体平移使最大平移为 0

    Raises:
        ComputationError: Hom 图有圈 (对刚性对象不应发生)
    """
    if t.is_zero:
        return t
    objects = t.summand_objects()
    order = []
    for shift in sorted(set(t.shifts)):
        layer = [i for i, s in enumerate(t.summands) if s.shift == shift]
        graph = nx.DiGraph()
        graph.add_nodes_from(layer)
        for i in layer:
            for j in layer:
                if i != j and dhom_dim(objects[i], objects[j], 0):
                    graph.add_edge(i, j)
        if not nx.is_directed_acyclic_graph(graph):
            cycle = nx.find_cycle(graph)
            raise ComputationError(f"0 次 Hom 图有圈: {cycle}", condition="HomGraphAcyclic")
        order.extend(nx.lexicographical_topological_sort(graph))
    ordered = DObject(t.quiver, t.field, [t.summands[i] for i in order])
    return ordered.shift(-t.max_shift) if normalize else ordered


def reduce_silting(t, e, ctx=None):
    """
    silting 约化: T̄ = T 去掉 E 后在 thick(E)^⊥ 中的投影

    Returns:
        tuple: (约化后的 silting 对象, 新的垂直子范畴)
    """
    ctx = ctx or PerpContext.top(t.quiver, t.field)
    index = _summand_index(t, e)
    e = t.summand(index)
    inner = ctx.extend(e)
    reduced = inner.project(t.without(index)).basic()
    return reduced, inner


def lift_silting(d, n):
    """
    silting 约化的逆: N ↦ T_N ⊕ D

    对 N 的每个直和项 X 取极小左 add{D[i] : i ≥ 1}-逼近 g: X → S_X，
    T_X = cone(g)[−1]，即三角 S_X[−1] → T_X → X → S_X 的第二项。

    Args:
        d (DObject): 例外对象的平移之和
        n (DObject): thick(D)^⊥ 中的 silting 对象

    Raises:
        PreconditionFailedError: N 不在 thick(D)^⊥ 中
    """
    violated = [x.describe() for x in n.summand_objects()
                if not all(is_perpendicular(e, x) for e in d.summand_objects())]
    if violated:
        raise PreconditionFailedError(f"以下直和项不在 thick({d.describe()})^⊥ 中: {', '.join(violated)}",
                                      condition="Perpendicular")
    lifted = []
    for x in n.summand_objects():
        targets = [e.shift(deg) for e in d.summand_objects() for deg, _ in positive_degree_homs(x, e)]
        approximation = minimal_left_approximation(targets, x)
        if approximation.is_zero:
            lifted.append(x)
            continue
        t_x = cocone(approximation.morphism)
        log_triangle("lift_silting", approximation.obj.shift(-1), t_x, x)
        lifted.append(t_x)
    result = DObject.zero(d.quiver, d.field).direct_sum(*lifted, d).basic()
    return result


def complete_presilting(t, ctx=None):
    """
    presilting 对象的 silting 补全

    T 为空时返回所在垂直子范畴的典范 silting 对象；否则排序，取最后一项 T_r，
    在 thick(T_r)^⊥ 中递归补全 T̄，再用 lift_silting 提升回来。

    Returns:
        DObject: 基本 silting 对象，包含 T 的每个直和项

    Raises:
        NotPresiltingError: T 不是 presilting 对象
    """
    ctx = ctx or PerpContext.top(t.quiver, t.field)
    if not is_presilting(t):
        raise NotPresiltingError(f"{t.describe()} 不是 presilting 对象", condition="Presilting")
    if not ctx.contains(t):
        raise PreconditionFailedError(f"{t.describe()} 不在 {ctx.describe()} 中", condition="InPerpendicular")
    t = t.basic()
    if t.is_zero:
        return ctx.canonical_silting()

    offset = t.max_shift
    ordered = sort_presilting_summands(t)
    last = ordered.summand(len(ordered) - 1)
    rest = ordered.without(len(ordered) - 1)
    inner = ctx.extend(last)
    completed_rest = complete_presilting(inner.project(rest), inner)
    result = lift_silting(last, completed_rest).shift(offset)

    if len(result) != ctx.rank or not result.contains(t):
        raise ComputationError(f"补全结果 {result.describe()} 不满足 silting 补全的要求", condition="Completion")
    logger.debug(f"在 {ctx.describe()} 中补全 {t.describe()} → {result.describe()}")
    return result


# ---------------------------------------------------------------------------
# silting → tilting
# ---------------------------------------------------------------------------

def _choose_reduction_summand(t):
    """最大平移的直和项，同平移取排序后下标最小者"""
    ordered = sort_presilting_summands(t, normalize=False)
    top = ordered.max_shift
    for index, stalk in enumerate(ordered.summands):
        if stalk.shift == top:
            return ordered, index
    raise ComputationError("空对象没有直和项", condition="NonEmpty")


def _silting_to_tilting(t, ctx):
    if t.is_zero:
        return t
    if t.is_concentrated:
        return t.shift(-t.summands[0].shift)
    ordered, index = _choose_reduction_summand(t)
    normalized = ordered.shift(-ordered.summands[index].shift)
    e = normalized.summand(index)
    inner = ctx.extend(e)
    reduced = inner.project(normalized.without(index)).basic()
    modules = _silting_to_tilting(reduced, inner)
    combined = modules.direct_sum(e.shift(1))
    mutation = mutate(combined, len(combined) - 1, "right", ctx)
    result = mutation.result
    if not result.is_concentrated or result.summands[0].shift != 0:
        raise ComputationError(f"右变异结果 {result.describe()} 不集中在次数 0", condition="TiltingModule")
    return result


def silting_to_tilting(t):
    """
    silting 对象对应的 tilting 模

    T 集中在单一次数时平移到次数 0 直接返回；否则取最大平移的直和项 E 平移到次数 0，
    把其余直和项约化到 thick(E)^⊥，递归得到 tilting 模 M，再对 M ⊕ E[1] 在 E[1] 处做一次右变异。

    Returns:
        Representation: tilting 模

    Raises:
        NotSiltingError: T 不是 silting 对象
    """
    check_silting(t)
    ctx = PerpContext.top(t.quiver, t.field)
    result = _silting_to_tilting(t, ctx)
    module = result.module()
    if not is_tilting_module(module):
        raise ComputationError(f"{result.describe()} 不是 tilting 模", condition="TiltingModule")
    return module


# ---------------------------------------------------------------------------
# tilting 交换图
# ---------------------------------------------------------------------------

def _canonical_key(obj):
    return tuple(sorted(stalk.describe() for stalk in obj.summands))


def tilting_exchange_graph(quiver, field, max_nodes=500):
    """
    tilting 模的交换图: 从 kQ 出发，沿结果仍集中在次数 0 的左右变异做广度优先搜索

    Returns:
        networkx.Graph: 结点为排序后的直和项标签元组，属性 "object" 为 DObject
    """
    start = regular_object(quiver, field)
    graph = nx.Graph()
    graph.add_node(_canonical_key(start), object=start)
    queue = deque([start])
    while queue and graph.number_of_nodes() < max_nodes:
        current = queue.popleft()
        key = _canonical_key(current)
        for index in range(len(current)):
            for direction in ("left", "right"):
                result = mutate(current, index, direction).result
                if not result.is_concentrated or result.summands[0].shift != 0:
                    continue
                new_key = _canonical_key(result)
                existing = [n for n, data in graph.nodes(data=True)
                            if n == new_key or iso_test(data["object"], result)]
                if existing:
                    graph.add_edge(key, existing[0])
                    continue
                graph.add_node(new_key, object=result)
                graph.add_edge(key, new_key)
                queue.append(result)
    logger.info(f"tilting 交换图: {graph.number_of_nodes()} 个结点, {graph.number_of_edges()} 条边")
    return graph
