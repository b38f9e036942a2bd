#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
单纯极小集 (SMC) 引擎

功能:
1. pre-SMC 判定与违例报告
2. Ext-箭图 (箭头重数 dim Hom(X_i, X_j[1]) / dim End(X_i)) 及其无圈性
3. 对例外对象集合 R 的约化: Z 的成员判定、Z 中的代表元、Z 上的平移 ⟨1⟩
4. smc_reduce / smc_lift
5. pre-SMC 的补全: Ext-箭图无圈时在垂直子范畴中归纳补全，有圈时给出圈

集合统一表示为单直和项 DObject 的列表；也接受一个 DObject，此时每个直和项是一个成员。
"""

import logging
from dataclasses import dataclass, field as dataclass_field

import networkx as nx

from app.config import Z_REPRESENTATIVE_MAX_ROUNDS
from app.controllers.approximation import minimal_left_approximation, minimal_right_approximation
from app.controllers.perpendicular import PerpContext, is_perpendicular, thick_perp_project
from app.controllers.typea_oracle import generates
from app.models.complexes import cocone, cone
from app.models.decomposition import end_ring
from app.models.derived import DObject, dhom_dim, iso_test, possible_degrees
from app.models.quiver import class_basis_determinant
from app.models.representation import Representation
from app.utils.errors import (
    ComputationError, NonIntegralMultiplicityError, NotCompletableError, NotContainedError,
    NotPreSMCError, PreconditionFailedError,
)
from app.utils.logger import log_triangle

logger = logging.getLogger("SiltWorkbench.SMC")


def members_of(collection):
    """
    把集合统一为单直和项对象列表

    Args:
        collection (DObject | list): DObject 或 DObject / Representation 列表
    """
    if isinstance(collection, DObject):
        return collection.summand_objects()
    members = []
    for item in collection:
        if isinstance(item, Representation):
            item = DObject.stalk(item)
        members.extend(item.summand_objects())
    return members


def collection_object(members, quiver, field):
    """成员列表的直和 (用于报告与同构判定)"""
    return DObject.zero(quiver, field).direct_sum(*members)


# ---------------------------------------------------------------------------
# pre-SMC
# ---------------------------------------------------------------------------

def pre_smc_violations(collection):
    """
    pre-SMC 条件的违例

    检查 Hom(X_i, X_j[m]) = 0 (m < 0)、End(X_i) 为除环、Hom(X_i, X_j) = 0 (i ≠ j)。

    Returns:
        list: 每个违例一个字典 (condition, source, target, degree)
    """
    members = members_of(collection)
    violations = []
    for i, a in enumerate(members):
        if not end_ring(a.summands[0].module).is_division():
            violations.append({"condition": "Schur", "source": a.describe(), "target": a.describe(), "degree": 0})
        for j, b in enumerate(members):
            for m in possible_degrees(a, b):
                if m > 0 or (m == 0 and i == j):
                    continue
                if dhom_dim(a, b, m):
                    violations.append({
                        "condition": "NegativeHom" if m < 0 else "Schur",
                        "source": a.describe(), "target": b.describe(), "degree": m,
                    })
    return violations


def is_pre_smc(collection):
    return not pre_smc_violations(collection)


def check_pre_smc(collection):
    """
    Raises:
        NotPreSMCError: 有违例时，消息中列出第一个
    """
    violations = pre_smc_violations(collection)
    if violations:
        first = violations[0]
        raise NotPreSMCError(
            f"不是 pre-SMC: Hom({first['source']}, {first['target']}[{first['degree']}]) ≠ 0",
            condition=first["condition"])


# ---------------------------------------------------------------------------
# Ext-箭图
# ---------------------------------------------------------------------------

@dataclass
class ExtQuiver:
    """
    pre-SMC 的 Ext-箭图

    Attributes:
        members (list): 成员对象
        graph (nx.DiGraph): 结点为成员下标，边属性 multiplicity 为箭头重数，允许自环
    """

    members: list
    graph: nx.DiGraph = dataclass_field(repr=False)

    def is_acyclic(self):
        """自环也算圈"""
        return nx.is_directed_acyclic_graph(self.graph)

    def find_cycle(self):
        """
        Returns:
            list: 圈上的边 [(i, j)]，无圈时为空
        """
        try:
            return [(u, v) for u, v in nx.find_cycle(self.graph)]
        except nx.NetworkXNoCycle:
            return []

    def describe_cycle(self, cycle):
        if len(cycle) == 1 and cycle[0][0] == cycle[0][1]:
            return f"loop at {self.members[cycle[0][0]].describe()}"
        return " → ".join([self.members[u].describe() for u, _ in cycle] + [self.members[cycle[0][0]].describe()])

    def adjacency(self):
        """报告用的邻接表"""
        return [
            {"source": self.members[u].describe(), "target": self.members[v].describe(),
             "multiplicity": data["multiplicity"]}
            for u, v, data in sorted(self.graph.edges(data=True))
        ]


def ext_quiver(collection):
    """
    构造 Ext-箭图

    Raises:
        NonIntegralMultiplicityError: dim Hom(X_i, X_j[1]) 不能被 dim End(X_i) 整除
    """
    members = members_of(collection)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(members)))
    for i, a in enumerate(members):
        end_dim = dhom_dim(a, a, 0)
        for j, b in enumerate(members):
            ext_dim = dhom_dim(a, b, 1)
            if not ext_dim:
                continue
            if ext_dim % end_dim:
                raise NonIntegralMultiplicityError(
                    f"dim Hom({a.describe()}, {b.describe()}[1]) = {ext_dim} 不能被 dim End = {end_dim} 整除",
                    condition="IntegralMultiplicity")
            graph.add_edge(i, j, multiplicity=ext_dim // end_dim)
    return ExtQuiver(members, graph)


def is_acyclic(quiver_of_exts):
    return quiver_of_exts.is_acyclic()


def canonical_smc(quiver, field):
    """单表示 {S_x}"""
    return [DObject.stalk(Representation.simple(quiver, field, x)) for x in quiver.vertices]


# ---------------------------------------------------------------------------
# 约化: Z = R[≥0]^⊥ ∩ ^⊥R[≤0]
# ---------------------------------------------------------------------------

def _incoming(r, y):
    """Hom(R[i], Y) ≠ 0 的 i ≥ 0，返回对应的 R[i]"""
    return [r.shift(-d) for d in possible_degrees(r, y) if d <= 0 and dhom_dim(r, y, d)]


def _outgoing(y, r):
    """Hom(Y, R[i]) ≠ 0 的 i ≤ 0，返回对应的 R[i]"""
    return [r.shift(d) for d in possible_degrees(y, r) if d <= 0 and dhom_dim(y, r, d)]


def z_membership(reducing, y):
    """Hom(R[i], Y) = 0 (i ≥ 0) 且 Hom(Y, R[i]) = 0 (i ≤ 0)"""
    return all(not _incoming(r, y) and not _outgoing(y, r) for r in members_of(reducing))


def _reduction_context(reducing, quiver, field):
    """
    thick(R)^⊥ 的逐次垂直子范畴

    按 Ext-箭图的拓扑序 (有圈时按给定顺序) 依次把 R 的成员投到已构造的垂直子范畴，
    得到生成同一 thick(R) 的例外序列。
    """
    quiver_of_exts = ext_quiver(reducing)
    ordered = _renumber(quiver_of_exts) if quiver_of_exts.is_acyclic() else reducing
    ctx = PerpContext.top(quiver, field)
    for r in ordered:
        projected = ctx.project(r)
        if not projected.is_zero:
            ctx = ctx.extend(projected)
    return ctx


def z_representative(reducing, y):
    """
    thick(R)^⊥ 中对象在 Z 里的代表元

    交替使用两类三角: 先对 add{R[i] : i ≤ 0} 取极小左逼近 g: Y → R_Y 并换成 cocone(g)，
    仍有入射态射时对 add{R[i] : i ≥ 0} 取极小右逼近 f: R_Y → Y 并换成 cone(f)。
    每一步都只改变 thick(R) 中的部分，因此商范畴中的像不变。
    结束时把代表元投回 thick(R)^⊥，与 Y 不同构则中止。

    Args:
        reducing (list): 例外对象组成的 pre-SMC
        y (DObject): Hom(R[i], Y) = 0 对所有 i 成立

    Returns:
        DObject: Z 中的对象

    Raises:
        PreconditionFailedError: Y 不在 thick(R)^⊥ 中
        ComputationError: 超过 Z_REPRESENTATIVE_MAX_ROUNDS 轮仍未落入 Z
    """
    reducing = members_of(reducing)
    bad = [r.describe() for r in reducing if not is_perpendicular(r, y)]
    if bad:
        raise PreconditionFailedError(f"{y.describe()} 不在 thick({', '.join(bad)})^⊥ 中", condition="Perpendicular")
    current = y
    for _ in range(Z_REPRESENTATIVE_MAX_ROUNDS):
        if z_membership(reducing, current):
            break
        targets = [t for r in reducing for t in _outgoing(current, r)]
        if targets:
            approximation = minimal_left_approximation(targets, current)
            new = cocone(approximation.morphism)
            log_triangle("z_representative_left", new, current, approximation.obj)
        else:
            sources = [s for r in reducing for s in _incoming(r, current)]
            approximation = minimal_right_approximation(sources, current)
            new = cone(approximation.morphism)
            log_triangle("z_representative_right", approximation.obj, current, new)
        current = new
    else:
        if not z_membership(reducing, current):
            raise ComputationError(f"{y.describe()} 的代表元在 {Z_REPRESENTATIVE_MAX_ROUNDS} 轮后仍不在 Z 中",
                                   condition="ZRepresentative")

    image = _reduction_context(reducing, y.quiver, y.field).project(current)
    if not iso_test(image, y):
        raise ComputationError(f"代表元 {current.describe()} 在商范畴中的像 {image.describe()} 与 {y.describe()} 不同构",
                               condition="ZRepresentative")
    logger.debug(f"Z 代表元: {y.describe()} ↦ {current.describe()}")
    return current


def z_suspend(reducing, z):
    """
    Z 上的平移 Z⟨1⟩

    三角 R_Z → Z[1] → Z⟨1⟩ → R_Z[1]，R_Z → Z[1] 为极小右 add R-逼近。

    Raises:
        PreconditionFailedError: Z 不满足成员条件
    """
    reducing = members_of(reducing)
    if not z_membership(reducing, z):
        raise PreconditionFailedError(f"{z.describe()} 不在 Z 中", condition="ZMembership")
    shifted = z.shift(1)
    approximation = minimal_right_approximation(reducing, shifted)
    result = cone(approximation.morphism)
    log_triangle("z_suspend", approximation.obj, shifted, result)
    if not z_membership(reducing, result):
        raise ComputationError(f"{z.describe()}⟨1⟩ = {result.describe()} 不在 Z 中", condition="ZSuspend")
    return result


def smc_reduce(collection, reducing):
    """
    X ↦ X \\ R，其余成员本身已在 Z 中

    Raises:
        NotContainedError: R ⊄ X
    """
    members = members_of(collection)
    reducing = members_of(reducing)
    rest = list(members)
    for r in reducing:
        match = next((k for k, x in enumerate(rest) if iso_test(x, r)), None)
        if match is None:
            raise NotContainedError(f"{r.describe()} 不在集合中", condition="Contained")
        rest.pop(match)
    for x in rest:
        if not z_membership(reducing, x):
            raise ComputationError(f"{x.describe()} 不在 Z 中", condition="ZMembership")
    return rest


def smc_lift(reducing, reduced):
    """
    X̂ ↦ X̂ ∪ R

    Raises:
        NotPreSMCError: 并集不是 pre-SMC
    """
    result = members_of(reducing) + members_of(reduced)
    check_pre_smc(result)
    return result


def is_smc(collection, quiver, field):
    """
    pre-SMC、成员数为 n、类行列式为 ±1；A 型箭图上再用枚举判定生成性
    """
    members = members_of(collection)
    if len(members) != quiver.vertex_count or not is_pre_smc(members):
        return False
    if abs(class_basis_determinant([m.class_vector for m in members])) != 1:
        return False
    if quiver.is_type_a:
        return generates(members, quiver, field)
    return True


# ---------------------------------------------------------------------------
# 补全
# ---------------------------------------------------------------------------

def _renumber(quiver_of_exts):
    """Ext-箭图的拓扑序，同层按 (平移, 下标)"""
    members = quiver_of_exts.members
    order = nx.lexicographical_topological_sort(
        quiver_of_exts.graph, key=lambda i: (members[i].summands[0].shift, i))
    return [members[i] for i in order]


def _complete(members, ctx, top):
    if not members:
        if ctx.rank == 0:
            return []
        members = [ctx.canonical_silting().summand(0)]
        logger.debug(f"在 {ctx.describe()} 中以 {members[0].describe()} 为种子")

    quiver_of_exts = ext_quiver(members)
    cycle = quiver_of_exts.find_cycle()
    if cycle:
        diagnosis = quiver_of_exts.describe_cycle(cycle)
        if top:
            labels = [members[u].describe() for u, _ in cycle]
            raise NotCompletableError(f"Ext-箭图有圈: {diagnosis}", cycle=labels)
        raise ComputationError(f"约化后的 Ext-箭图出现圈: {diagnosis}", condition="ReducedAcyclic")

    ordered = _renumber(quiver_of_exts)
    first = ordered[0]
    inner = ctx.extend(first)
    reduced = [thick_perp_project(first, y).result for y in ordered[1:]]
    completed = _complete(reduced, inner, False)
    lifted = [z_representative([first], y) for y in completed]
    return smc_lift([first], lifted)


def complete_presmc(collection, quiver, field, ctx=None):
    """
    pre-SMC 的补全

    Ext-箭图有圈时无法补全。否则按拓扑序取 X_1，把其余成员投到 thick(X_1)^⊥，
    在那里递归补全，再取 Z 中的代表元并加回 X_1。

    Returns:
        list: SMC，包含 X 的每个成员

    Raises:
        NotPreSMCError: X 不是 pre-SMC
        NotCompletableError: Ext-箭图有圈
    """
    members = members_of(collection)
    check_pre_smc(members)
    ctx = ctx or PerpContext.top(quiver, field)
    if not members and ctx.depth == 0:
        return canonical_smc(quiver, field)

    result = _complete(members, ctx, True)

    missing = [m.describe() for m in members if not any(iso_test(m, x) for x in result)]
    if missing or len(result) != ctx.rank:
        raise ComputationError(f"补全结果缺少 {missing} 或成员数不为 {ctx.rank}", condition="Completion")
    if ctx.depth == 0 and abs(class_basis_determinant([x.class_vector for x in result])) != 1:
        raise ComputationError("补全结果的类不构成 Z-基", condition="ClassBasis")
    logger.info(f"pre-SMC 补全: {len(members)} → {len(result)} 个成员")
    return result
