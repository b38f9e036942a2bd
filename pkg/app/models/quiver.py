#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
箭图与 Grothendieck 群

功能:
1. 无圈箭图 Quiver (顶点从 1 开始编号，箭头编号稳定)
2. 拓扑序、路径枚举、A型识别
3. Euler 型、类向量 ClassVector 与类行列式
"""

import logging
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from app.utils.errors import CyclicQuiverError, NotTypeAError, DimensionMismatchError, ParseError

logger = logging.getLogger("SiltWorkbench.Quiver")


@dataclass(frozen=True)
class Path:
    """箭图中的路径；平凡路径的 arrows 为空"""

    start: int
    end: int
    arrows: tuple = ()

    @property
    def length(self):
        return len(self.arrows)

    def then(self, other):
        """先走 self 再走 other"""
        if self.end != other.start:
            raise DimensionMismatchError(f"路径无法连接: {self} 与 {other}")
        return Path(self.start, other.end, self.arrows + other.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e{self.start}"
        return "·".join(f"a{a}" for a in self.arrows)


@dataclass(frozen=True)
class ClassVector:
    """Grothendieck 群 G_0 中的类，坐标为整数向量"""

    coordinates: tuple

    @classmethod
    def of(cls, values):
        return cls(tuple(int(v) for v in values))

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    def __add__(self, other):
        return ClassVector(tuple(a + b for a, b in zip(self.coordinates, other.coordinates)))

    def __sub__(self, other):
        return ClassVector(tuple(a - b for a, b in zip(self.coordinates, other.coordinates)))

    def __neg__(self):
        return ClassVector(tuple(-a for a in self.coordinates))

    def __mul__(self, k):
        return ClassVector(tuple(int(k) * a for a in self.coordinates))

    __rmul__ = __mul__

    def shifted(self, shift):
        """M[i] 的类 = (-1)^i · M 的类"""
        return self if shift % 2 == 0 else -self

    def as_array(self):
        return np.array(self.coordinates, dtype=np.int64)

    def __len__(self):
        return len(self.coordinates)

    def __str__(self):
        return "(" + ",".join(str(a) for a in self.coordinates) + ")"


@dataclass(frozen=True)
class Quiver:
    """
    无圈箭图

    Attributes:
        vertex_count (int): 顶点数 n，顶点为 1..n
        arrows (tuple): (source, target) 对，下标即箭头编号
    """

    vertex_count: int
    arrows: tuple = ()

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ParseError(f"顶点数必须为正整数: {self.vertex_count}")
        arrows = tuple((int(s), int(t)) for s, t in self.arrows)
        object.__setattr__(self, 'arrows', arrows)
        for index, (s, t) in enumerate(arrows):
            if not (1 <= s <= self.vertex_count and 1 <= t <= self.vertex_count):
                raise ParseError(f"箭头 {index}: {s}→{t} 引用了不存在的顶点")
        # 构造时即验证无圈
        _ = self.topological_order

    # ------------------------------------------------------------------
    # 标准实例
    # ------------------------------------------------------------------

    @classmethod
    def linear_a(cls, n):
        """线性定向的 A_n: 1→2→…→n"""
        return cls(n, tuple((i, i + 1) for i in range(1, n)))

    @classmethod
    def kronecker(cls, m=2):
        """广义 Kronecker 箭图 1 ⇉ 2 (m 条箭头)"""
        return cls(2, tuple((1, 2) for _ in range(m)))

    def reversed(self):
        """反向箭图 (箭头编号不变)"""
        return Quiver(self.vertex_count, tuple((t, s) for s, t in self.arrows))

    @property
    def vertices(self):
        return range(1, self.vertex_count + 1)

    # ------------------------------------------------------------------
    # 图结构
    # ------------------------------------------------------------------

    @cached_property
    def graph(self):
        """networkx 多重有向图，边键为箭头编号"""
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for index, (s, t) in enumerate(self.arrows):
            g.add_edge(s, t, key=index)
        return g

    @cached_property
    def topological_order(self):
        return validate_acyclic(self)

    def arrows_from(self, x):
        """从顶点 x 出发的箭头编号"""
        return [a for a, (s, _) in enumerate(self.arrows) if s == x]

    def arrows_into(self, y):
        """进入顶点 y 的箭头编号"""
        return [a for a, (_, t) in enumerate(self.arrows) if t == y]

    @cached_property
    def _paths_from(self):
        table = {}
        for x in reversed(self.topological_order):
            paths = [Path(x, x)]
            for a in self.arrows_from(x):
                head = self.arrows[a][1]
                step = Path(x, head, (a,))
                paths.extend(step.then(p) for p in table[head])
            table[x] = tuple(paths)
        return table

    def paths_from(self, x):
        """从 x 出发的全部路径 (稳定顺序，平凡路径在前)"""
        return self._paths_from[x]

    def paths_between(self, x, y):
        """从 x 到 y 的全部路径"""
        return tuple(p for p in self._paths_from[x] if p.end == y)

    @cached_property
    def euler_matrix(self):
        """Euler 型的矩阵: ⟨a,b⟩ = aᵀ E b"""
        n = self.vertex_count
        matrix = np.eye(n, dtype=np.int64)
        for s, t in self.arrows:
            matrix[s - 1, t - 1] -= 1
        return matrix

    @cached_property
    def type_a_order(self):
        """
        A型顶点的线序

        Returns:
            list: 沿 A_n 直线排列的顶点 (从编号较小的端点出发)
        """
        n = self.vertex_count
        undirected = nx.Graph()
        undirected.add_nodes_from(self.vertices)
        undirected.add_edges_from(self.arrows)
        if len(self.arrows) != n - 1 or undirected.number_of_edges() != n - 1 or not nx.is_connected(undirected):
            raise NotTypeAError(f"箭图不是A型: {n} 个顶点, {len(self.arrows)} 条箭头")
        if any(degree > 2 for _, degree in undirected.degree()):
            raise NotTypeAError("箭图不是A型: 存在度数大于 2 的顶点")
        if n == 1:
            return [1]
        ends = sorted(v for v, degree in undirected.degree() if degree == 1)
        return list(nx.shortest_path(undirected, ends[0], ends[-1]))

    @property
    def is_type_a(self):
        try:
            self.type_a_order
        except NotTypeAError:
            return False
        return True

    def to_dict(self):
        return {"vertices": self.vertex_count, "arrows": [list(a) for a in self.arrows]}

    def __str__(self):
        arrows = ", ".join(f"{s}→{t}" for s, t in self.arrows)
        return f"Quiver(n={self.vertex_count}; {arrows})"


def validate_acyclic(quiver):
    """
    验证箭图无圈并返回拓扑序

    Returns:
        list: 每条箭头都向前的顶点序 (同层取编号最小者，结果确定)

    Raises:
        CyclicQuiverError: 存在有向圈 (包括自环)
    """
    graph = quiver.graph
    if not nx.is_directed_acyclic_graph(graph):
        cycle = [edge[:2] for edge in nx.find_cycle(graph)]
        raise CyclicQuiverError(f"箭图含有有向圈: {cycle}", cycle=cycle)
    return list(nx.lexicographical_topological_sort(graph))


def euler_form(quiver, a, b):
    """
    Euler 型 ⟨a,b⟩ = Σ aᵢbᵢ − Σ_{箭头 x→y} a_x b_y

    Args:
        a, b (ClassVector): 类向量
    """
    if len(a) != quiver.vertex_count or len(b) != quiver.vertex_count:
        raise DimensionMismatchError("类向量长度与顶点数不符")
    return int(a.as_array() @ quiver.euler_matrix @ b.as_array())


def class_matrix(classes):
    """类向量按行组成的整数矩阵 (sympy ZZ)"""
    rows = [[ZZ(int(v)) for v in c.coordinates] for c in classes]
    n = len(rows[0]) if rows else 0
    return DomainMatrix.from_list_flat([x for row in rows for x in row], (len(rows), n), ZZ)


def class_basis_determinant(classes):
    """
    类向量组成的 n×n 整数矩阵的行列式；±1 当且仅当构成 G_0 的 Z-基

    Raises:
        DimensionMismatchError: 类的个数与 n 不符
    """
    classes = list(classes)
    if not classes:
        return 1
    n = len(classes[0])
    if len(classes) != n:
        raise DimensionMismatchError(f"需要 {n} 个类向量，实际 {len(classes)} 个")
    return int(class_matrix(classes).det())


def class_rank(classes):
    """类向量组的秩"""
    classes = list(classes)
    if not classes:
        return 0
    return int(class_matrix(classes).convert_to(ZZ.get_field()).rank())
