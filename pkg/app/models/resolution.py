#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
投射分解

功能:
1. ProjectiveSum: 不可分投射的直和 ⊕_k P_{t_k}，由生成元的像构造态射
2. 标准分解 0 → ⊕_{a:x→y} P_y⊗M_x → ⊕_x P_x⊗M_x → M → 0
3. 极小分解 (投射盖 + 合冲)，M 投射时 P¹ = 0
4. 态射与扩张类到标准分解的典范提升
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

from app.config import HOM_CACHE_SIZE
from app.models import exact_linalg as la
from app.models.representation import Representation, RepMorphism, direct_sum, kernel, quiver_arrow_path
from app.utils.errors import ComputationError, DimensionMismatchError

logger = logging.getLogger("SiltWorkbench.Rep")


@lru_cache(maxsize=HOM_CACHE_SIZE)
def projective(quiver, field, x):
    """缓存的不可分投射 P_x"""
    return Representation.projective(quiver, field, x)


class ProjectiveSum:
    """
    投射表示 ⊕_k P_{t_k}

    顶点 y 处的基按被加项排列，被加项 k 内部为 t_k 到 y 的路径 (与 P_x 的基顺序一致)。
    """

    def __init__(self, quiver, field, tops):
        self.quiver = quiver
        self.field = field
        self.tops = tuple(tops)
        pieces = [projective(quiver, field, t) for t in self.tops]
        self.direct = direct_sum(pieces, quiver, field)

    @property
    def representation(self):
        return self.direct.representation

    def __len__(self):
        return len(self.tops)

    @cached_property
    def _offsets(self):
        offsets = {y: [] for y in self.quiver.vertices}
        for y in self.quiver.vertices:
            total = 0
            for t in self.tops:
                offsets[y].append(total)
                total += len(self.quiver.paths_between(t, y))
        return offsets

    def basis_index(self, k, path):
        """被加项 k 中路径 path 对应的基向量在顶点 path.end 处的下标"""
        if path.start != self.tops[k]:
            raise DimensionMismatchError(f"路径 {path} 不从被加项 {k} 的顶点 {self.tops[k]} 出发")
        local = self.quiver.paths_between(path.start, path.end).index(path)
        return self._offsets[path.end][k] + local

    def element(self, vertex, terms):
        """
        顶点 vertex 处的元素

        Args:
            terms (dict): {(被加项 k, 路径): 系数}，路径都以 vertex 结尾

        Returns:
            DomainMatrix: 列向量
        """
        entries = {}
        for (k, path), value in terms.items():
            index = self.basis_index(k, path)
            entries[(index, 0)] = entries.get((index, 0), self.field.zero) + self.field.element(value)
        return self.field.matrix_from_entries((self.representation.dim(vertex), 1), entries)

    def morphism_to(self, target, images):
        """
        由生成元的像确定的态射 ⊕_k P_{t_k} → target

        Args:
            target (Representation): 目标表示
            images (list): 第 k 个元为 target 在顶点 t_k 处的列向量

        Returns:
            RepMorphism: e_{t_k} ↦ images[k]
        """
        if len(images) != len(self.tops):
            raise DimensionMismatchError("生成元像的个数与被加项个数不符")
        domain = self.field.domain
        vertex_maps = []
        for y in self.quiver.vertices:
            blocks = []
            for t, vector in zip(self.tops, images):
                for path in self.quiver.paths_between(t, y):
                    blocks.append(la.matmul(target.path_map(path), vector))
            vertex_maps.append(la.hstack(blocks, target.dim(y), domain))
        return RepMorphism(self.representation, target, vertex_maps)


@dataclass(frozen=True, eq=False)
class Resolution:
    """
    两项投射分解 0 → P¹ → P⁰ → M → 0

    Attributes:
        module (Representation): 被分解的表示
        p0, p1 (ProjectiveSum): 投射项
        p0_labels (tuple): P⁰ 各被加项的标签
        p1_labels (tuple): P¹ 各被加项的标签
        boundary (RepMorphism): P¹ → P⁰
        augmentation (RepMorphism): P⁰ → M
    """

    module: Representation
    p0: ProjectiveSum
    p1: ProjectiveSum
    p0_labels: tuple
    p1_labels: tuple
    boundary: RepMorphism
    augmentation: RepMorphism

    def verify(self):
        """
        用秩检验正合性: ∂ 单、ε 满、ε∘∂ = 0 且各顶点维数相加为零

        Raises:
            ComputationError: 正合性不成立
        """
        m = self.module
        if not self.augmentation.compose(self.boundary).is_zero:
            raise ComputationError("分解不是复形: ε∘∂ ≠ 0", condition="ResolutionExact")
        for x in m.quiver.vertices:
            d1 = self.p1.representation.dim(x)
            d0 = self.p0.representation.dim(x)
            if la.rank(self.boundary.at(x)) != d1 or la.rank(self.augmentation.at(x)) != m.dim(x):
                raise ComputationError(f"分解在顶点 {x} 处不正合", condition="ResolutionExact")
            if d1 - d0 + m.dim(x) != 0:
                raise ComputationError(f"分解在顶点 {x} 处维数不符", condition="ResolutionExact")
        return True


@lru_cache(maxsize=HOM_CACHE_SIZE)
def standard_resolution(m):
    """
    标准投射分解

    P⁰ 的被加项为 (x, i)，i < dim M_x，生成元映到 M_x 的第 i 个基向量；
    P¹ 的被加项为 (a, i)，a: x→y，i < dim M_x，边缘映射
    ∂(a, i) = a·e_(x,i) − Σ_j (M_a)[j, i]·e_(y,j)。

    Returns:
        Resolution: 已验证正合的分解
    """
    quiver, field = m.quiver, m.field
    p0_labels = tuple((x, i) for x in quiver.vertices for i in range(m.dim(x)))
    p1_labels = tuple((a, i) for a, (x, _) in enumerate(quiver.arrows) for i in range(m.dim(x)))
    p0 = ProjectiveSum(quiver, field, [x for x, _ in p0_labels])
    p1 = ProjectiveSum(quiver, field, [quiver.arrows[a][1] for a, _ in p1_labels])
    position = {label: k for k, label in enumerate(p0_labels)}

    augmentation = p0.morphism_to(m, [field.unit_vector(m.dim(x), i) for x, i in p0_labels])

    images = []
    for a, i in p1_labels:
        x, y = quiver.arrows[a]
        terms = {(position[(x, i)], quiver_arrow_path(quiver, a)): 1}
        column = la.to_rows(m.maps[a])
        for j in range(m.dim(y)):
            value = column[j][i]
            if value:
                key = (position[(y, j)], quiver.paths_between(y, y)[0])
                terms[key] = terms.get(key, field.zero) - value
        images.append(p0.element(y, terms))
    boundary = p1.morphism_to(p0.representation, images)

    resolution = Resolution(m, p0, p1, p0_labels, p1_labels, boundary, augmentation)
    resolution.verify()
    return resolution


def top_generators(m):
    """
    顶部生成元: 每个顶点 x 处取 M_x 模去入射箭头像之和的补空间的基

    Returns:
        list: [(x, 列向量)]，按顶点顺序
    """
    field = m.field
    generators = []
    for x in m.quiver.vertices:
        incoming = [m.maps[a] for a in m.quiver.arrows_into(x)]
        radical = la.hstack(incoming, m.dim(x), field.domain)
        _, section = la.cokernel_data(radical)
        generators.extend((x, v) for v in la.columns(section))
    return generators


def is_projective(m):
    """M 是否投射 (顶部生成的投射盖为同构)"""
    tops = top_generators(m)
    cover = ProjectiveSum(m.quiver, m.field, [x for x, _ in tops])
    return cover.representation.dims == m.dims


@lru_cache(maxsize=HOM_CACHE_SIZE)
def minimal_resolution(m):
    """
    极小投射分解: P⁰ 为投射盖，P¹ 为合冲 (遗传代数上合冲投射)

    Returns:
        Resolution: M 投射时 P¹ = 0
    """
    quiver, field = m.quiver, m.field
    tops = top_generators(m)
    p0 = ProjectiveSum(quiver, field, [x for x, _ in tops])
    augmentation = p0.morphism_to(m, [v for _, v in tops])

    syzygy, inclusion = kernel(augmentation)
    syzygy_tops = top_generators(syzygy)
    p1 = ProjectiveSum(quiver, field, [x for x, _ in syzygy_tops])
    boundary = p1.morphism_to(p0.representation, [la.matmul(inclusion.at(x), v) for x, v in syzygy_tops])

    resolution = Resolution(m, p0, p1, tuple(x for x, _ in tops), tuple(x for x, _ in syzygy_tops),
                            boundary, augmentation)
    resolution.verify()
    logger.debug(f"极小分解: P⁰ 顶点 {p0.tops}, P¹ 顶点 {p1.tops}")
    return resolution


def lift_morphism(f):
    """
    态射 f: M → N 到标准分解的链映射

    Returns:
        tuple: (f0: P⁰_M → P⁰_N, f1: P¹_M → P¹_N)，满足 ∂_N∘f1 = f0∘∂_M
    """
    rm, rn = standard_resolution(f.source), standard_resolution(f.target)
    n_position = {label: k for k, label in enumerate(rn.p0_labels)}
    images0 = []
    for x, i in rm.p0_labels:
        rows = la.to_rows(f.at(x))
        trivial = f.source.quiver.paths_between(x, x)[0]
        terms = {(n_position[(x, j)], trivial): rows[j][i] for j in range(f.target.dim(x)) if rows[j][i]}
        images0.append(rn.p0.element(x, terms))
    f0 = rm.p0.morphism_to(rn.p0.representation, images0)

    n1_position = {label: k for k, label in enumerate(rn.p1_labels)}
    images1 = []
    for a, i in rm.p1_labels:
        x, y = f.source.quiver.arrows[a]
        rows = la.to_rows(f.at(x))
        trivial = f.source.quiver.paths_between(y, y)[0]
        terms = {(n1_position[(a, j)], trivial): rows[j][i] for j in range(f.target.dim(x)) if rows[j][i]}
        images1.append(rn.p1.element(y, terms))
    f1 = rm.p1.morphism_to(rn.p1.representation, images1)

    if not la.equal(rn.boundary.compose(f1).total_matrix, f0.compose(rm.boundary).total_matrix):
        raise ComputationError("态射提升不是链映射", condition="ChainMap")
    return f0, f1


def lift_ext(e):
    """
    扩张类 e ∈ Ext¹(M, N) 的链级代表 h: P¹_M → P⁰_N

    生成元 (a, i) 映到 Σ_j c_a[j, i]·e_(y,j)，其中 c_a 为 e 的余循环。
    """
    rm, rn = standard_resolution(e.source), standard_resolution(e.target)
    quiver = e.source.quiver
    n_position = {label: k for k, label in enumerate(rn.p0_labels)}
    images = []
    for a, i in rm.p1_labels:
        _, y = quiver.arrows[a]
        rows = la.to_rows(e.cocycle[a])
        trivial = quiver.paths_between(y, y)[0]
        terms = {(n_position[(y, j)], trivial): rows[j][i] for j in range(e.target.dim(y)) if rows[j][i]}
        images.append(rn.p0.element(y, terms))
    return rm.p1.morphism_to(rn.p0.representation, images)
