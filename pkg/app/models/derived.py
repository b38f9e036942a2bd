#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
导出范畴 D^b(mod kQ) 的对象与态射

功能:
1. Stalk / DObject: 以不可分茎复形 M[i] 之和表示的对象
2. DMorphism: 0 次分量为 RepMorphism，1 次分量为 ExtClass 的态射
3. DHomSpace / dhom_basis: 分块计算的分次 Hom 空间
4. 复合、恒等、同构判定、可读描述

kQ 遗传，D^b 中的对象都同构于其上同调的直和，因此按直和项存储。
约定 M[a] 集中在上同调次数 −a。
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache

from app.config import HOM_CACHE_SIZE
from app.models import exact_linalg as la
from app.models.decomposition import decompose, is_isomorphic
from app.models.quiver import ClassVector
from app.models.representation import (
    ExtClass, RepMorphism, Representation, direct_sum, ext_space, hom_space,
)
from app.utils.errors import DimensionMismatchError, PreconditionFailedError

logger = logging.getLogger("SiltWorkbench.Derived")


@dataclass(frozen=True)
class Stalk:
    """不可分茎复形 module[shift]"""

    module: Representation
    shift: int = 0

    def shifted(self, l):
        return Stalk(self.module, self.shift + l)

    @property
    def class_vector(self):
        return self.module.class_vector.shifted(self.shift)

    def is_isomorphic(self, other):
        return self.shift == other.shift and is_isomorphic(self.module, other.module)

    def describe(self):
        name = module_label(self.module)
        return name if self.shift == 0 else f"{name}[{self.shift}]"


class DObject:
    """
    D^b 中的对象 ⊕ M_k[a_k]

    Attributes:
        quiver (Quiver): 箭图
        field (Field): 基域
        summands (tuple): Stalk 列表，模都是不可分的
    """

    def __init__(self, quiver, field, summands=()):
        self.quiver = quiver
        self.field = field
        self.summands = tuple(summands)
        for stalk in self.summands:
            if stalk.module.quiver != quiver:
                raise PreconditionFailedError("直和项不在同一箭图上", condition="SameQuiver")
            field.check_same(stalk.module.field)
            if stalk.module.is_zero:
                raise DimensionMismatchError("直和项不能为零表示")
        self._key = (quiver, field, self.summands)

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------

    @classmethod
    def build(cls, quiver, field, pairs):
        """
        由 (表示, 平移) 对构造，逐项分解为不可分直和项

        Args:
            pairs (list): [(Representation, int)]
        """
        summands = []
        for module, shift in pairs:
            for piece, count in decompose(module):
                summands.extend(Stalk(piece, int(shift)) for _ in range(count))
        return cls(quiver, field, summands)

    @classmethod
    def stalk(cls, module, shift=0):
        """单个表示 module[shift] (会被分解)"""
        return cls.build(module.quiver, module.field, [(module, shift)])

    @classmethod
    def zero(cls, quiver, field):
        return cls(quiver, field, ())

    @classmethod
    def from_stalks(cls, quiver, field, stalks):
        return cls(quiver, field, tuple(stalks))

    # ------------------------------------------------------------------
    # 结构
    # ------------------------------------------------------------------

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    @property
    def is_zero(self):
        return not self.summands

    @property
    def shifts(self):
        return [s.shift for s in self.summands]

    @property
    def min_shift(self):
        return min(self.shifts)

    @property
    def max_shift(self):
        return max(self.shifts)

    @property
    def is_concentrated(self):
        """所有直和项平移相同"""
        return len(set(self.shifts)) <= 1

    def shift(self, l):
        """整体平移 [l]"""
        return DObject(self.quiver, self.field, [s.shifted(l) for s in self.summands])

    def direct_sum(self, *others):
        summands = list(self.summands)
        for other in others:
            if other.quiver != self.quiver:
                raise PreconditionFailedError("直和项不在同一箭图上", condition="SameQuiver")
            self.field.check_same(other.field)
            summands.extend(other.summands)
        return DObject(self.quiver, self.field, summands)

    def __add__(self, other):
        return self.direct_sum(other)

    def summand(self, index):
        """第 index 个直和项作为对象"""
        return DObject(self.quiver, self.field, [self.summands[index]])

    def summand_objects(self):
        return [self.summand(i) for i in range(len(self.summands))]

    def without(self, index):
        """去掉第 index 个直和项"""
        return DObject(self.quiver, self.field, self.summands[:index] + self.summands[index + 1:])

    def index_of(self, stalk):
        """
        与 stalk 同构的第一个直和项下标

        Returns:
            int | None
        """
        for index, own in enumerate(self.summands):
            if own.is_isomorphic(stalk):
                return index
        return None

    def contains(self, other):
        """other 的每个直和项都同构于本对象的某个直和项"""
        return all(self.index_of(stalk) is not None for stalk in other.summands)

    def normalized(self):
        """
        按同构类合并

        Returns:
            list: [(Stalk, 重数)]，按首次出现的顺序
        """
        groups = []
        for stalk in self.summands:
            for index, (known, count) in enumerate(groups):
                if known.is_isomorphic(stalk):
                    groups[index] = (known, count + 1)
                    break
            else:
                groups.append((stalk, 1))
        return groups

    def basic(self):
        """每个同构类只保留一个直和项"""
        return DObject(self.quiver, self.field, [stalk for stalk, _ in self.normalized()])

    @property
    def is_basic(self):
        return all(count == 1 for _, count in self.normalized())

    def sorted_by_shift(self):
        """按平移排序 (稳定)"""
        return DObject(self.quiver, self.field, sorted(self.summands, key=lambda s: s.shift))

    def module(self):
        """
        集中在单一平移时对应的表示 (直和)

        Raises:
            PreconditionFailedError: 对象不集中在单一平移
        """
        if not self.is_concentrated:
            raise PreconditionFailedError(f"对象不集中在单一次数: 平移 {self.shifts}", condition="Concentrated")
        return direct_sum([s.module for s in self.summands], self.quiver, self.field).representation

    @property
    def class_vector(self):
        total = ClassVector.zero(self.quiver.vertex_count)
        for stalk in self.summands:
            total = total + stalk.class_vector
        return total

    def class_vectors(self):
        """各直和项的类"""
        return [stalk.class_vector for stalk in self.summands]

    def describe(self):
        """可读描述，例如 "P1 ⊕ S2[1]" """
        if self.is_zero:
            return "0"
        return " ⊕ ".join(stalk.describe() for stalk in self.summands)

    def reference(self):
        """命令行对象语法，例如 "P1+S2[1]" """
        if self.is_zero:
            return "0"
        return "+".join(stalk.describe() for stalk in self.summands)

    def to_dict(self):
        return {
            "summands": [
                {"module": s.module.to_dict(), "shift": s.shift, "label": s.describe()}
                for s in self.summands
            ],
        }

    def same_category(self, other):
        if other.quiver != self.quiver:
            raise PreconditionFailedError("两个对象不在同一箭图上", condition="SameQuiver")
        self.field.check_same(other.field)

    def __eq__(self, other):
        return isinstance(other, DObject) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"DObject({self.describe()})"


def iso_test(a, b):
    """按 (不可分同构类, 平移) 多重集合判定同构"""
    if a.quiver != b.quiver or len(a) != len(b):
        return False
    if a.class_vector != b.class_vector:
        return False
    remaining = b.normalized()
    for stalk, count in a.normalized():
        for index, (other, other_count) in enumerate(remaining):
            if other_count == count and stalk.is_isomorphic(other):
                remaining.pop(index)
                break
        else:
            return False
    return not remaining


# ---------------------------------------------------------------------------
# 可读标签
# ---------------------------------------------------------------------------

@lru_cache(maxsize=HOM_CACHE_SIZE)
def module_label(module):
    """
    不可分表示的标签: 依次尝试 P_x、S_x、I_x，再试 A型区间 M i..j，否则为维数向量

    标签与命令行对象语法一致 (维数向量标签除外)。
    """
    quiver, field = module.quiver, module.field
    for prefix, factory in (("P", Representation.projective), ("S", Representation.simple),
                            ("I", Representation.injective)):
        for x in quiver.vertices:
            candidate = _standard(factory, quiver, field, x)
            if candidate.dims == module.dims and is_isomorphic(candidate, module):
                return f"{prefix}{x}"
    if quiver.is_type_a:
        order = quiver.type_a_order
        support = [k for k, v in enumerate(order, start=1) if module.dim(v)]
        if support and all(module.dim(v) == 1 for v in order[support[0] - 1:support[-1]]):
            i, j = support[0], support[-1]
            candidate = Representation.interval(quiver, field, i, j)
            if is_isomorphic(candidate, module):
                return f"M{i}..{j}"
    return "(" + ",".join(str(d) for d in module.dims) + ")"


@lru_cache(maxsize=HOM_CACHE_SIZE)
def _standard(factory, quiver, field, x):
    return factory(quiver, field, x)


# ---------------------------------------------------------------------------
# 态射
# ---------------------------------------------------------------------------

class DMorphism:
    """
    D^b 中的 0 次态射 A → B

    components 的键为 (源直和项下标, 目标直和项下标)。平移相同的分量为 RepMorphism，
    目标平移比源大 1 的分量为 ExtClass，其余分量在遗传范畴中恒为零。
    """

    def __init__(self, source, target, components=None):
        source.same_category(target)
        self.source = source
        self.target = target
        self.components = {}
        for (i, j), component in (components or {}).items():
            s, t = source.summands[i], target.summands[j]
            if isinstance(component, RepMorphism):
                if t.shift != s.shift:
                    raise DimensionMismatchError(f"分量 ({i},{j}) 为 Hom 型，但平移差为 {t.shift - s.shift}")
            elif isinstance(component, ExtClass):
                if t.shift != s.shift + 1:
                    raise DimensionMismatchError(f"分量 ({i},{j}) 为 Ext 型，但平移差为 {t.shift - s.shift}")
            else:
                raise DimensionMismatchError(f"分量 ({i},{j}) 类型未知: {type(component).__name__}")
            if component.source != s.module or component.target != t.module:
                raise DimensionMismatchError(f"分量 ({i},{j}) 的源或目标与直和项不符")
            self.components[(i, j)] = component

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, {})

    @classmethod
    def identity(cls, obj):
        return cls(obj, obj, {(i, i): s.module.identity() for i, s in enumerate(obj.summands)})

    @property
    def field(self):
        return self.source.field

    @property
    def is_zero(self):
        return all(c.is_zero for c in self.components.values())

    def __add__(self, other):
        if other.source != self.source or other.target != self.target:
            raise DimensionMismatchError("态射相加需要相同的源与目标")
        components = dict(self.components)
        for key, value in other.components.items():
            components[key] = components[key] + value if key in components else value
        return DMorphism(self.source, self.target, components)

    def scaled(self, value):
        return DMorphism(self.source, self.target, {k: c.scaled(value) for k, c in self.components.items()})

    def compose(self, other):
        """
        self∘other (先 other 后 self)

        Hom∘Hom 为矩阵复合，Hom∘Ext 为前推，Ext∘Hom 为拉回，Ext∘Ext 落在 Ext² = 0 中舍去。
        """
        if other.target != self.source:
            raise DimensionMismatchError("态射无法复合: 中间对象不一致")
        components = {}
        for (i, j), f in other.components.items():
            for (j2, k), g in self.components.items():
                if j2 != j:
                    continue
                if isinstance(f, RepMorphism) and isinstance(g, RepMorphism):
                    product = g.compose(f)
                elif isinstance(f, ExtClass) and isinstance(g, RepMorphism):
                    product = f.pushforward(g)
                elif isinstance(f, RepMorphism) and isinstance(g, ExtClass):
                    product = g.pullback(f)
                else:
                    continue
                components[(i, k)] = components[(i, k)] + product if (i, k) in components else product
        return DMorphism(other.source, self.target, components)

    def restrict(self, source_indices, target_indices):
        """
        限制到部分直和项之间

        Args:
            source_indices (list): 源直和项下标
            target_indices (list): 目标直和项下标
        """
        source = DObject(self.source.quiver, self.field, [self.source.summands[i] for i in source_indices])
        target = DObject(self.target.quiver, self.field, [self.target.summands[j] for j in target_indices])
        components = {}
        for a, i in enumerate(source_indices):
            for b, j in enumerate(target_indices):
                if (i, j) in self.components:
                    components[(a, b)] = self.components[(i, j)]
        return DMorphism(source, target, components)

    def to_dict(self):
        items = []
        for (i, j), component in sorted(self.components.items()):
            kind = "hom" if isinstance(component, RepMorphism) else "ext"
            items.append({"source": i, "target": j, "kind": kind, **component.to_dict()})
        return {"source": self.source.describe(), "target": self.target.describe(), "components": items}

    def __repr__(self):
        return f"DMorphism({self.source.describe()} → {self.target.describe()})"


class DHomSpace:
    """Hom_{D^b}(A, B)，按直和项对分块"""

    def __init__(self, source, target):
        source.same_category(target)
        self.source = source
        self.target = target
        self.blocks = []
        for i, s in enumerate(source.summands):
            for j, t in enumerate(target.summands):
                if t.shift == s.shift:
                    space = hom_space(s.module, t.module)
                elif t.shift == s.shift + 1:
                    space = ext_space(s.module, t.module)
                else:
                    continue
                if space.dim:
                    self.blocks.append((i, j, space))

    @property
    def dim(self):
        return sum(space.dim for _, _, space in self.blocks)

    @cached_property
    def basis(self):
        elements = []
        for i, j, space in self.blocks:
            for component in space.basis:
                elements.append(DMorphism(self.source, self.target, {(i, j): component}))
        return elements

    def coordinates(self, f):
        """f 在基下的坐标 (列向量)"""
        parts = []
        for i, j, space in self.blocks:
            component = f.components.get((i, j))
            if component is None:
                parts.append(self.source.field.zeros(space.dim, 1))
            else:
                parts.append(space.coordinates(component))
        return la.vstack(parts, 1, self.source.field.domain)

    def from_coordinates(self, coords):
        components, offset = {}, 0
        for i, j, space in self.blocks:
            block = coords.extract(list(range(offset, offset + space.dim)), [0])
            components[(i, j)] = space.from_coordinates(block)
            offset += space.dim
        return DMorphism(self.source, self.target, components)


@lru_cache(maxsize=HOM_CACHE_SIZE)
def dhom_space(a, b):
    return DHomSpace(a, b)


def dhom_basis(a, b, degree=0):
    """Hom_{D^b}(A, B[degree]) 的一组基"""
    return dhom_space(a, b.shift(degree)).basis


def dhom_dim(a, b, degree=0):
    return dhom_space(a, b.shift(degree)).dim


def possible_degrees(a, b):
    """
    Hom(A, B[d]) 可能非零的次数 d

    Hom(M[s], N[t+d]) 只在 t + d − s ∈ {0, 1} 时可能非零。
    """
    degrees = set()
    for s in a.summands:
        for t in b.summands:
            degrees.add(s.shift - t.shift)
            degrees.add(s.shift - t.shift + 1)
    return sorted(degrees)


def positive_degree_homs(a, b):
    """
    Hom(A, B[d]) ≠ 0 的正次数 d

    Returns:
        list: [(d, 维数)]
    """
    return [(d, dhom_dim(a, b, d)) for d in possible_degrees(a, b) if d > 0 and dhom_dim(a, b, d)]


def identity(obj):
    return DMorphism.identity(obj)


def compose(g, f):
    """g∘f"""
    return g.compose(f)


def zero_morphism(a, b):
    return DMorphism.zero(a, b)
