#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
A 型枚举器 - 线性 A_n 箭图 (任意定向) 上的穷举真值

功能:
1. 区间模即全部不可分表示，逐个用自同态环确认
2. 厚闭包: 模层面对核、余核与扩张中项封闭的不可分模集合 (平移不变)
3. 在平移窗口内枚举 presilting / silting / tilting 模 / pre-SMC / SMC

两两条件 (presilting、pre-SMC) 对直和可加，因此候选集合就是相容图中的团，
用 networkx.enumerate_all_cliques 枚举。结果按规范标签排序，输出确定。
"""

import logging
from dataclasses import dataclass

import networkx as nx

from app.config import DEFAULT_WINDOW, ORACLE_WINDOW_PADDING
from app.models import exact_linalg as la
from app.models.decomposition import decompose, end_ring, is_exceptional, is_isomorphic
from app.models.derived import DObject, Stalk, dhom_dim, possible_degrees
from app.models.representation import (
    RepMorphism, Representation, cokernel, direct_sum, ext1_basis, extension_middle_term, hom_basis, image,
    kernel,
)
from app.utils.errors import ComputationError, PreconditionFailedError

logger = logging.getLogger("SiltWorkbench.Oracle")


@dataclass(frozen=True)
class Window:
    """平移窗口 [min_shift, max_shift]"""

    min_shift: int = DEFAULT_WINDOW[0]
    max_shift: int = DEFAULT_WINDOW[1]

    def __post_init__(self):
        if self.min_shift > self.max_shift:
            raise PreconditionFailedError(f"窗口下界 {self.min_shift} 大于上界 {self.max_shift}", condition="Window")

    @property
    def shifts(self):
        return range(self.min_shift, self.max_shift + 1)

    def contains(self, obj):
        return all(self.min_shift <= s <= self.max_shift for s in obj.shifts)

    def padded(self, padding=ORACLE_WINDOW_PADDING):
        return Window(self.min_shift - padding, self.max_shift + padding)

    def to_dict(self):
        return {"min_shift": self.min_shift, "max_shift": self.max_shift}


def _check_type_a(quiver):
    # 非 A 型时抛出 NotTypeAError
    return quiver.type_a_order


def enumerate_indecomposables(quiver, field):
    """
    全部区间模 M[i..j]，共 n(n+1)/2 个

    Raises:
        NotTypeAError: 箭图不是 A 型
        ComputationError: 某个区间模的自同态环不是局部的
    """
    n = len(_check_type_a(quiver))
    modules = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            m = Representation.interval(quiver, field, i, j)
            if not end_ring(m).is_local():
                raise ComputationError(f"区间模 M{i}..{j} 不是不可分的", condition="IntervalIndecomposable")
            modules.append(m)
    return modules


def enumerate_exceptionals(quiver, field):
    """A 型上全部不可分模都是例外模，这里仍逐个检查"""
    return [m for m in enumerate_indecomposables(quiver, field) if is_exceptional(m)]


# ---------------------------------------------------------------------------
# 厚闭包
# ---------------------------------------------------------------------------

class ModuleClosure:
    """
    对核、余核、像与扩张中项封闭的不可分模集合

    对每对成员 (M, N)，取 Hom(M, N) 的基元、整体求值 M^d → N 与余求值 M → N^d 的核与余核，
    以及 Ext¹(M, N) 基元的扩张中项，分解后并入，直到不动。
    """

    def __init__(self, quiver, field):
        self.quiver = quiver
        self.field = field
        self.members = []
        self._by_dims = {}

    def find(self, module):
        for index in self._by_dims.get(module.dims, ()):
            if is_isomorphic(self.members[index], module):
                return index
        return None

    def add(self, module):
        """分解后并入，返回新增的个数"""
        added = 0
        if module.is_zero:
            return added
        for piece, _ in decompose(module):
            if self.find(piece) is None:
                self._by_dims.setdefault(piece.dims, []).append(len(self.members))
                self.members.append(piece)
                added += 1
        return added

    def contains(self, module):
        return all(self.find(piece) is not None for piece, _ in decompose(module))

    def _evaluation(self, m, n, basis):
        copies = direct_sum([m] * len(basis), self.quiver, self.field).representation
        domain = self.field.domain
        maps = [la.hstack([f.at(x) for f in basis], n.dim(x), domain) for x in self.quiver.vertices]
        return RepMorphism(copies, n, maps)

    def _coevaluation(self, m, n, basis):
        copies = direct_sum([n] * len(basis), self.quiver, self.field).representation
        domain = self.field.domain
        maps = [la.vstack([f.at(x) for f in basis], m.dim(x), domain) for x in self.quiver.vertices]
        return RepMorphism(m, copies, maps)

    def _derived_modules(self, m, n):
        basis = hom_basis(m, n)
        morphisms = list(basis)
        if len(basis) > 1:
            morphisms += [self._evaluation(m, n, basis), self._coevaluation(m, n, basis)]
        for f in morphisms:
            yield kernel(f)[0]
            yield cokernel(f)[0]
            yield image(f)[0]
        for e in ext1_basis(m, n):
            yield extension_middle_term(e)[0]

    def close(self):
        done = set()
        while True:
            pending = [(i, j) for i in range(len(self.members)) for j in range(len(self.members))
                       if (i, j) not in done]
            if not pending:
                break
            for i, j in pending:
                done.add((i, j))
                for module in self._derived_modules(self.members[i], self.members[j]):
                    self.add(module)
        logger.debug(f"厚闭包共 {len(self.members)} 个不可分模")
        return self


def thick_closure(generators, quiver, field):
    """
    生成元直和项的模所生成的厚闭包

    Args:
        generators (list): DObject 或 Representation

    Returns:
        ModuleClosure
    """
    _check_type_a(quiver)
    closure = ModuleClosure(quiver, field)
    for g in generators:
        if isinstance(g, Representation):
            closure.add(g)
        else:
            for stalk in g.summands:
                closure.add(stalk.module)
    return closure.close()


def thick_closure_contains(generators, target, window=None):
    """
    target 是否属于 thick(generators)

    闭包在模层面计算并对平移不变；窗口只约束 target 的平移。

    Raises:
        NotTypeAError: 箭图不是 A 型
        PreconditionFailedError: 生成元或目标的平移超出窗口
    """
    window = window or Window()
    for obj in list(generators) + [target]:
        if isinstance(obj, DObject) and not window.contains(obj):
            raise PreconditionFailedError(f"{obj.describe()} 的平移超出窗口 {window.to_dict()}", condition="Window")
    closure = thick_closure(generators, target.quiver, target.field)
    return all(closure.find(stalk.module) is not None for stalk in target.summands)


def generates(generators, quiver, field):
    """thick(generators) 为整个 D^b: 闭包包含每个单模"""
    closure = thick_closure(generators, quiver, field)
    return all(closure.find(Representation.simple(quiver, field, x)) is not None for x in quiver.vertices)


# ---------------------------------------------------------------------------
# 枚举
# ---------------------------------------------------------------------------

def enumerate_stalks(quiver, field, window):
    """窗口内全部不可分茎复形 M[a]"""
    modules = enumerate_indecomposables(quiver, field)
    return [DObject(quiver, field, [Stalk(m, a)]) for a in window.shifts for m in modules]


def _canonical(obj):
    return tuple(sorted((s.shift, s.describe()) for s in obj.summands))


def _cliques(nodes, compatible, max_size):
    graph = nx.Graph()
    graph.add_nodes_from(range(len(nodes)))
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if compatible(nodes[i], nodes[j]):
                graph.add_edge(i, j)
    for clique in nx.enumerate_all_cliques(graph):
        if len(clique) > max_size:
            break
        yield [nodes[k] for k in sorted(clique)]


def _presilting_pair(a, b):
    return all(dhom_dim(x, y, d) == 0 for x, y in ((a, b), (b, a)) for d in possible_degrees(x, y) if d > 0)


def _pre_smc_pair(a, b):
    return all(dhom_dim(x, y, d) == 0 for x, y in ((a, b), (b, a)) for d in possible_degrees(x, y) if d <= 0)


def _collect(quiver, field, stalks, compatible):
    n = quiver.vertex_count
    found = []
    for clique in _cliques(stalks, compatible, n):
        found.append(DObject.zero(quiver, field).direct_sum(*clique))
    return sorted(found, key=_canonical)


def enumerate_presilting(quiver, field, window=None):
    """窗口内全部非零基本 presilting 对象"""
    window = window or Window()
    stalks = [s for s in enumerate_stalks(quiver, field, window) if _presilting_pair(s, s)]
    result = _collect(quiver, field, stalks, _presilting_pair)
    logger.info(f"presilting 对象: {len(result)} 个 (窗口 {window.to_dict()})")
    return result


def enumerate_silting(quiver, field, window=None):
    """presilting、n 个直和项且生成整个范畴"""
    result = [t for t in enumerate_presilting(quiver, field, window)
              if len(t) == quiver.vertex_count and generates([t], quiver, field)]
    logger.info(f"silting 对象: {len(result)} 个")
    return result


def enumerate_tilting_modules(quiver, field):
    """集中在次数 0 的 silting 对象，即 tilting 模"""
    result = enumerate_silting(quiver, field, Window(0, 0))
    logger.info(f"tilting 模: {len(result)} 个")
    return result


def enumerate_presmc(quiver, field, window=None):
    """窗口内全部非空 pre-SMC (以直和对象表示，每个直和项一个成员)"""
    window = window or Window()
    stalks = [s for s in enumerate_stalks(quiver, field, window)
              if end_ring(s.summands[0].module).is_division()]
    result = _collect(quiver, field, stalks, _pre_smc_pair)
    logger.info(f"pre-SMC: {len(result)} 个 (窗口 {window.to_dict()})")
    return result


def enumerate_smc(quiver, field, window=None):
    """n 个成员且生成整个范畴的 pre-SMC"""
    result = [x for x in enumerate_presmc(quiver, field, window)
              if len(x) == quiver.vertex_count and generates([x], quiver, field)]
    logger.info(f"SMC: {len(result)} 个")
    return result
