#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
箭图表示与同调代数

功能:
1. 表示 Representation、态射 RepMorphism、扩张类 ExtClass
2. 标准表示: 单模 S_x、投射模 P_x、内射模 I_x、A型区间模
3. Hom 与 Ext¹: 同一个复形 d: ⊕_x Hom(M_x,N_x) → ⊕_{a:x→y} Hom(M_x,N_y) 的核与余核
4. 核、余核、像、直和、扩张中项
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

from app.config import HOM_CACHE_SIZE
from app.models import exact_linalg as la
from app.models.quiver import ClassVector, Path
from app.utils.errors import DimensionMismatchError, FieldMismatchError, PreconditionFailedError

logger = logging.getLogger("SiltWorkbench.Rep")


class Representation:
    """
    有限维箭图表示

    Attributes:
        quiver (Quiver): 箭图
        field (Field): 基域
        dims (tuple): 各顶点维数 (下标 x-1)
        maps (tuple): 各箭头矩阵 (目标维 × 源维)
    """

    def __init__(self, quiver, field, dims, maps):
        self.quiver = quiver
        self.field = field
        self.dims = tuple(int(d) for d in dims)
        self.maps = tuple(maps)
        if len(self.dims) != quiver.vertex_count:
            raise DimensionMismatchError(f"维数向量长度 {len(self.dims)} 与顶点数 {quiver.vertex_count} 不符")
        if any(d < 0 for d in self.dims):
            raise DimensionMismatchError(f"维数必须非负: {self.dims}")
        if len(self.maps) != len(quiver.arrows):
            raise DimensionMismatchError(f"箭头矩阵个数 {len(self.maps)} 与箭头数 {len(quiver.arrows)} 不符")
        for a, (s, t) in enumerate(quiver.arrows):
            matrix = self.maps[a]
            if matrix.domain != field.domain:
                raise FieldMismatchError(f"箭头 {a} 的矩阵不在 {field.name} 上")
            if matrix.shape != (self.dims[t - 1], self.dims[s - 1]):
                raise DimensionMismatchError(
                    f"箭头 {a}: {s}→{t} 的矩阵形状 {matrix.shape} 应为 {(self.dims[t - 1], self.dims[s - 1])}")
        self._key = (quiver, field, self.dims, tuple(la.matrix_key(field, m) for m in self.maps))
        self._hash = hash(self._key)

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------

    @classmethod
    def from_lists(cls, quiver, field, dims, maps):
        """由整数/分数嵌套列表构造"""
        matrices = []
        for a, (s, t) in enumerate(quiver.arrows):
            shape = (dims[t - 1], dims[s - 1])
            matrices.append(field.matrix(maps[a], shape))
        return cls(quiver, field, dims, matrices)

    @classmethod
    def zero(cls, quiver, field):
        """零表示"""
        return cls(quiver, field, (0,) * quiver.vertex_count,
                   [field.zeros(0, 0) for _ in quiver.arrows])

    @classmethod
    def simple(cls, quiver, field, x):
        """顶点 x 处的单表示 S_x"""
        dims = [1 if v == x else 0 for v in quiver.vertices]
        maps = [field.zeros(dims[t - 1], dims[s - 1]) for s, t in quiver.arrows]
        return cls(quiver, field, dims, maps)

    @classmethod
    def projective(cls, quiver, field, x):
        """不可分投射 P_x: 顶点 y 处的基为 x 到 y 的路径"""
        bases = {y: quiver.paths_between(x, y) for y in quiver.vertices}
        index = {y: {p: i for i, p in enumerate(bases[y])} for y in quiver.vertices}
        maps = []
        for a, (s, t) in enumerate(quiver.arrows):
            step = quiver_arrow_path(quiver, a)
            entries = {(index[t][p.then(step)], j): 1 for j, p in enumerate(bases[s])}
            maps.append(field.matrix_from_entries((len(bases[t]), len(bases[s])), entries))
        return cls(quiver, field, [len(bases[y]) for y in quiver.vertices], maps)

    @classmethod
    def injective(cls, quiver, field, x):
        """不可分内射 I_x: 顶点 y 处的基为 y 到 x 的路径 (对偶基)"""
        bases = {y: quiver.paths_between(y, x) for y in quiver.vertices}
        index = {y: {p: i for i, p in enumerate(bases[y])} for y in quiver.vertices}
        maps = []
        for a, (s, t) in enumerate(quiver.arrows):
            entries = {}
            for j, q in enumerate(bases[s]):
                if q.arrows and q.arrows[0] == a:
                    rest = Path(t, x, q.arrows[1:])
                    entries[(index[t][rest], j)] = 1
            maps.append(field.matrix_from_entries((len(bases[t]), len(bases[s])), entries))
        return cls(quiver, field, [len(bases[y]) for y in quiver.vertices], maps)

    @classmethod
    def interval(cls, quiver, field, i, j):
        """
        A型区间模 M[i..j]: 线序第 i 到第 j 个顶点 (从 1 计) 上为 k，内部箭头为恒等

        Raises:
            NotTypeAError: 箭图不是A型
        """
        order = quiver.type_a_order
        support = set(order[i - 1:j])
        if not support or i < 1 or j > len(order) or i > j:
            raise PreconditionFailedError(f"区间 [{i}..{j}] 超出范围", condition="IntervalRange")
        dims = [1 if v in support else 0 for v in quiver.vertices]
        maps = []
        for s, t in quiver.arrows:
            value = 1 if s in support and t in support else 0
            maps.append(field.matrix_from_entries((dims[t - 1], dims[s - 1]),
                                                  {(0, 0): 1} if value else {}))
        return cls(quiver, field, dims, maps)

    # ------------------------------------------------------------------
    # 基本属性
    # ------------------------------------------------------------------

    def dim(self, x):
        """顶点 x 处的维数"""
        return self.dims[x - 1]

    def arrow_map(self, a):
        return self.maps[a]

    @property
    def total_dim(self):
        return sum(self.dims)

    @property
    def is_zero(self):
        return self.total_dim == 0

    @property
    def class_vector(self):
        return ClassVector.of(self.dims)

    def path_map(self, path):
        """沿路径的复合映射 M_p"""
        matrix = self.field.identity(self.dim(path.start))
        for a in path.arrows:
            matrix = la.matmul(self.maps[a], matrix)
        return matrix

    def same_category(self, other):
        """检查两个表示属于同一箭图与同一域"""
        if other.quiver != self.quiver:
            raise PreconditionFailedError("两个表示不在同一箭图上", condition="SameQuiver")
        self.field.check_same(other.field)

    def identity(self):
        return RepMorphism(self, self, [self.field.identity(d) for d in self.dims])

    def to_dict(self):
        """可 JSON 序列化的字典"""
        return {
            "dims": list(self.dims),
            "maps": [self.field.to_python_matrix(m) for m in self.maps],
        }

    def __eq__(self, other):
        return isinstance(other, Representation) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Rep(dims={self.dims})"


def quiver_arrow_path(quiver, a):
    """箭头 a 作为长度 1 的路径"""
    s, t = quiver.arrows[a]
    return Path(s, t, (a,))


class RepMorphism:
    """表示之间的态射，每个顶点一个矩阵"""

    def __init__(self, source, target, vertex_maps):
        source.same_category(target)
        self.source = source
        self.target = target
        self.vertex_maps = tuple(vertex_maps)
        if len(self.vertex_maps) != source.quiver.vertex_count:
            raise DimensionMismatchError("顶点矩阵个数与顶点数不符")
        for x in source.quiver.vertices:
            expected = (target.dim(x), source.dim(x))
            if self.vertex_maps[x - 1].shape != expected:
                raise DimensionMismatchError(f"顶点 {x} 的矩阵形状 {self.vertex_maps[x - 1].shape} 应为 {expected}")

    @classmethod
    def zero(cls, source, target):
        field = source.field
        return cls(source, target, [field.zeros(target.dim(x), source.dim(x)) for x in source.quiver.vertices])

    def at(self, x):
        return self.vertex_maps[x - 1]

    @property
    def field(self):
        return self.source.field

    def commutes(self):
        """交换条件: f_y∘M_a = N_a∘f_x 对每条箭头 a: x→y 成立"""
        for a, (x, y) in enumerate(self.source.quiver.arrows):
            left = la.matmul(self.at(y), self.source.maps[a])
            right = la.matmul(self.target.maps[a], self.at(x))
            if not la.equal(left, right):
                return False
        return True

    def compose(self, other):
        """self∘other (先 other 后 self)"""
        if other.target != self.source:
            raise DimensionMismatchError("态射无法复合: 中间对象不一致")
        return RepMorphism(other.source, self.target,
                           [la.matmul(f, g) for f, g in zip(self.vertex_maps, other.vertex_maps)])

    def __add__(self, other):
        return RepMorphism(self.source, self.target,
                           [la.add(f, g) for f, g in zip(self.vertex_maps, other.vertex_maps)])

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, value):
        element = self.field.element(value)
        return RepMorphism(self.source, self.target, [la.scale(f, element) for f in self.vertex_maps])

    @property
    def is_zero(self):
        return all(la.is_zero(f) for f in self.vertex_maps)

    @cached_property
    def total_matrix(self):
        """所有顶点矩阵的分块对角矩阵"""
        return la.block_diag(self.vertex_maps, self.field.domain)

    @property
    def is_isomorphism(self):
        return all(la.is_invertible(f) for f in self.vertex_maps)

    def flat(self):
        """按顶点、行优先展开为列向量 (与 Hom 复形的坐标一致)"""
        return la.vstack([la.flatten(f) for f in self.vertex_maps], 1, self.field.domain)

    def to_dict(self):
        return {"vertex_maps": [self.field.to_python_matrix(f) for f in self.vertex_maps]}

    def __repr__(self):
        return f"RepMorphism({self.source!r} → {self.target!r})"


class ExtClass:
    """
    Ext¹(M, N) 中的元素，以每条箭头 a: x→y 上的矩阵 c_a: M_x → N_y 作为余循环代表
    """

    def __init__(self, source, target, cocycle):
        source.same_category(target)
        self.source = source
        self.target = target
        self.cocycle = tuple(cocycle)
        for a, (x, y) in enumerate(source.quiver.arrows):
            expected = (target.dim(y), source.dim(x))
            if self.cocycle[a].shape != expected:
                raise DimensionMismatchError(f"箭头 {a} 的余循环形状 {self.cocycle[a].shape} 应为 {expected}")

    @classmethod
    def zero(cls, source, target):
        field = source.field
        return cls(source, target, [field.zeros(target.dim(y), source.dim(x)) for x, y in source.quiver.arrows])

    @property
    def field(self):
        return self.source.field

    def __add__(self, other):
        return ExtClass(self.source, self.target, [la.add(c, d) for c, d in zip(self.cocycle, other.cocycle)])

    def scaled(self, value):
        element = self.field.element(value)
        return ExtClass(self.source, self.target, [la.scale(c, element) for c in self.cocycle])

    def flat(self):
        return la.vstack([la.flatten(c) for c in self.cocycle], 1, self.field.domain)

    @property
    def coordinates(self):
        """在 ext1_basis 下的坐标"""
        return ext_space(self.source, self.target).coordinates(self)

    @property
    def is_zero(self):
        """零类 (对应的扩张可裂)"""
        return la.is_zero(self.coordinates)

    def pushforward(self, g):
        """g∘e，其中 g: N → N'"""
        return ExtClass(self.source, g.target,
                        [la.matmul(g.at(y), c) for (x, y), c in zip(self.source.quiver.arrows, self.cocycle)])

    def pullback(self, f):
        """e∘f，其中 f: M' → M"""
        return ExtClass(f.source, self.target,
                        [la.matmul(c, f.at(x)) for (x, y), c in zip(self.source.quiver.arrows, self.cocycle)])

    def to_dict(self):
        return {"cocycle": [self.field.to_python_matrix(c) for c in self.cocycle]}

    def __repr__(self):
        return f"ExtClass({self.source!r} → {self.target!r}[1])"


# ---------------------------------------------------------------------------
# Hom 与 Ext¹
# ---------------------------------------------------------------------------


def _vertex_offsets(m, n):
    offsets, total = {}, 0
    for x in m.quiver.vertices:
        offsets[x] = total
        total += n.dim(x) * m.dim(x)
    return offsets, total


def _arrow_offsets(m, n):
    offsets, total = [], 0
    for x, y in m.quiver.arrows:
        offsets.append(total)
        total += n.dim(y) * m.dim(x)
    return offsets, total


@lru_cache(maxsize=HOM_CACHE_SIZE)
def hom_complex(m, n):
    """
    Hom 复形的微分 d(φ)_a = φ_y∘M_a − N_a∘φ_x

    Returns:
        DomainMatrix: 行对应 ⊕_a Hom(M_x,N_y)，列对应 ⊕_x Hom(M_x,N_x)
    """
    m.same_category(n)
    field = m.field
    col_offsets, ncols = _vertex_offsets(m, n)
    row_offsets, nrows = _arrow_offsets(m, n)
    entries = {}
    for a, (x, y) in enumerate(m.quiver.arrows):
        mx, my, nx, ny = m.dim(x), m.dim(y), n.dim(x), n.dim(y)
        if mx == 0 or ny == 0:
            continue
        m_a = la.to_rows(m.maps[a])
        n_a = la.to_rows(n.maps[a])
        for r in range(ny):
            for c in range(mx):
                row = row_offsets[a] + r * mx + c
                for k in range(my):
                    value = m_a[k][c]
                    if value:
                        key = (row, col_offsets[y] + r * my + k)
                        entries[key] = entries.get(key, field.zero) + value
                for k in range(nx):
                    value = n_a[r][k]
                    if value:
                        key = (row, col_offsets[x] + k * mx + c)
                        entries[key] = entries.get(key, field.zero) - value
    return field.matrix_from_entries((nrows, ncols), entries)


class HomSpace:
    """Hom(M, N) 及其基与坐标"""

    def __init__(self, source, target):
        self.source = source
        self.target = target
        self.kernel = la.kernel_matrix(hom_complex(source, target))

    @property
    def dim(self):
        return self.kernel.shape[1]

    def morphism_from_vector(self, vector):
        """由 ⊕_x Hom(M_x,N_x) 中的列向量构造态射"""
        maps, offset = [], 0
        for x in self.source.quiver.vertices:
            rows, cols = self.target.dim(x), self.source.dim(x)
            maps.append(la.unflatten(vector, rows, cols, offset))
            offset += rows * cols
        return RepMorphism(self.source, self.target, maps)

    @cached_property
    def basis(self):
        return [self.morphism_from_vector(v) for v in la.columns(self.kernel)]

    def coordinates(self, f):
        """f 在基下的坐标 (列向量)"""
        solution = la.solve(self.kernel, f.flat())
        if solution is None:
            raise PreconditionFailedError("给定映射不是表示态射", condition="Commuting")
        return solution

    def from_coordinates(self, coords):
        if self.dim == 0:
            return RepMorphism.zero(self.source, self.target)
        return self.morphism_from_vector(la.matmul(self.kernel, coords))


class ExtSpace:
    """Ext¹(M, N) = Hom 复形的余核"""

    def __init__(self, source, target):
        self.source = source
        self.target = target
        self.projection, self.section = la.cokernel_data(hom_complex(source, target))

    @property
    def dim(self):
        return self.projection.shape[0]

    def class_from_vector(self, vector):
        cocycle, offset = [], 0
        for x, y in self.source.quiver.arrows:
            rows, cols = self.target.dim(y), self.source.dim(x)
            cocycle.append(la.unflatten(vector, rows, cols, offset))
            offset += rows * cols
        return ExtClass(self.source, self.target, cocycle)

    @cached_property
    def basis(self):
        return [self.class_from_vector(v) for v in la.columns(self.section)]

    def coordinates(self, e):
        return la.matmul(self.projection, e.flat())

    def from_coordinates(self, coords):
        if self.dim == 0:
            return ExtClass.zero(self.source, self.target)
        return self.class_from_vector(la.matmul(self.section, coords))


@lru_cache(maxsize=HOM_CACHE_SIZE)
def hom_space(m, n):
    return HomSpace(m, n)


@lru_cache(maxsize=HOM_CACHE_SIZE)
def ext_space(m, n):
    return ExtSpace(m, n)


def hom_basis(m, n):
    """Hom(M, N) 的一组基"""
    return hom_space(m, n).basis


def ext1_basis(m, n):
    """Ext¹(M, N) 的一组基"""
    return ext_space(m, n).basis


def hom_dim(m, n):
    return hom_space(m, n).dim


def ext1_dim(m, n):
    return ext_space(m, n).dim


def is_rigid(m):
    """Ext¹(M, M) = 0"""
    return ext1_dim(m, m) == 0


# ---------------------------------------------------------------------------
# 阿贝尔结构
# ---------------------------------------------------------------------------


def kernel(f):
    """
    态射的核

    Returns:
        tuple: (K, 包含映射 K → M)
    """
    m = f.source
    inclusions = [la.kernel_matrix(f.at(x)) for x in m.quiver.vertices]
    maps = []
    for a, (x, y) in enumerate(m.quiver.arrows):
        image = la.matmul(m.maps[a], inclusions[x - 1])
        maps.append(la.solve_matrix(inclusions[y - 1], image))
    k = Representation(m.quiver, m.field, [i.shape[1] for i in inclusions], maps)
    return k, RepMorphism(k, m, inclusions)


def cokernel(f):
    """
    态射的余核

    Returns:
        tuple: (C, 投影 N → C)
    """
    n = f.target
    data = [la.cokernel_data(f.at(x)) for x in n.quiver.vertices]
    maps = []
    for a, (x, y) in enumerate(n.quiver.arrows):
        projection_y = data[y - 1][0]
        section_x = data[x - 1][1]
        maps.append(la.matmul(projection_y, la.matmul(n.maps[a], section_x)))
    c = Representation(n.quiver, n.field, [p.shape[0] for p, _ in data], maps)
    return c, RepMorphism(n, c, [p for p, _ in data])


def image(f):
    """
    态射的像

    Returns:
        tuple: (I, 满射 M → I, 包含映射 I → N)
    """
    n = f.target
    inclusions = [la.image_matrix(f.at(x)) for x in n.quiver.vertices]
    maps = []
    for a, (x, y) in enumerate(n.quiver.arrows):
        maps.append(la.solve_matrix(inclusions[y - 1], la.matmul(n.maps[a], inclusions[x - 1])))
    im = Representation(n.quiver, n.field, [i.shape[1] for i in inclusions], maps)
    epi = [la.solve_matrix(inclusions[x - 1], f.at(x)) for x in n.quiver.vertices]
    return im, RepMorphism(f.source, im, epi), RepMorphism(im, n, inclusions)


def factor_through_mono(mono, f):
    """
    求 g 使 mono∘g = f (mono 逐点单射)

    Returns:
        RepMorphism | None
    """
    maps = []
    for x in f.source.quiver.vertices:
        solution = la.solve_matrix(mono.at(x), f.at(x))
        if solution is None:
            return None
        maps.append(solution)
    return RepMorphism(f.source, mono.source, maps)


def is_mono_or_epi(f):
    """
    逐点判断单/满

    Returns:
        str: "iso"、"mono"、"epi" 或 "neither"
    """
    mono = all(la.rank(f.at(x)) == f.source.dim(x) for x in f.source.quiver.vertices)
    epi = all(la.rank(f.at(x)) == f.target.dim(x) for x in f.source.quiver.vertices)
    if mono and epi:
        return "iso"
    if mono:
        return "mono"
    if epi:
        return "epi"
    return "neither"


@dataclass(frozen=True, eq=False)
class DirectSum:
    """直和及其典范包含与投影"""

    representation: Representation
    inclusions: tuple
    projections: tuple


def direct_sum(reps, quiver=None, field=None):
    """
    表示的直和

    Args:
        reps (list): 表示列表 (可以为空，此时需给出 quiver 与 field)
    """
    reps = list(reps)
    if not reps:
        zero = Representation.zero(quiver, field)
        return DirectSum(zero, (), ())
    quiver, field = reps[0].quiver, reps[0].field
    for r in reps[1:]:
        reps[0].same_category(r)
    domain = field.domain
    dims = [sum(r.dim(x) for r in reps) for x in quiver.vertices]
    maps = [la.block_diag([r.maps[a] for r in reps], domain) for a in range(len(quiver.arrows))]
    total = Representation(quiver, field, dims, maps)
    inclusions, projections = [], []
    offsets = {x: 0 for x in quiver.vertices}
    for r in reps:
        inc, proj = [], []
        for x in quiver.vertices:
            entries = {(offsets[x] + i, i): 1 for i in range(r.dim(x))}
            inc.append(field.matrix_from_entries((dims[x - 1], r.dim(x)), entries))
            proj.append(field.matrix_from_entries((r.dim(x), dims[x - 1]), {(i, j): 1 for (j, i) in entries}))
            offsets[x] += r.dim(x)
        inclusions.append(RepMorphism(r, total, inc))
        projections.append(RepMorphism(total, r, proj))
    return DirectSum(total, tuple(inclusions), tuple(projections))


def extension_middle_term(e):
    """
    扩张 0 → N → X → M → 0 的中项，X_x = N_x ⊕ M_x，X_a = [[N_a, c_a], [0, M_a]]

    Returns:
        tuple: (X, 包含 N → X, 投影 X → M)
    """
    m, n = e.source, e.target
    quiver, field = m.quiver, m.field
    domain = field.domain
    dims = [n.dim(x) + m.dim(x) for x in quiver.vertices]
    maps = []
    for a, (x, y) in enumerate(quiver.arrows):
        grid = {(0, 0): n.maps[a], (0, 1): e.cocycle[a], (1, 1): m.maps[a]}
        maps.append(la.block_matrix(grid, [n.dim(y), m.dim(y)], [n.dim(x), m.dim(x)], domain))
    middle = Representation(quiver, field, dims, maps)
    inclusion = RepMorphism(n, middle, [
        field.matrix_from_entries((dims[x - 1], n.dim(x)), {(i, i): 1 for i in range(n.dim(x))})
        for x in quiver.vertices])
    projection = RepMorphism(middle, m, [
        field.matrix_from_entries((m.dim(x), dims[x - 1]), {(i, n.dim(x) + i): 1 for i in range(m.dim(x))})
        for x in quiver.vertices])
    return middle, inclusion, projection
