#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
投射复形与映射锥

功能:
1. ProjComplex: 有界投射复形，每个次数是若干投射表示块的直和
2. 上同调 H^n 与对象 ⊕ H^n[−n]
3. DObject 的分解复形与 DMorphism 的链级映射锥 cone(f)

链映射取标准分解上的典范提升: Hom 分量用 lift_morphism，Ext 分量用 lift_ext。
"""

import logging
from collections import defaultdict

from app.models import exact_linalg as la
from app.models.derived import DObject
from app.models.representation import ExtClass, RepMorphism, cokernel, direct_sum, factor_through_mono, kernel
from app.models.resolution import lift_ext, lift_morphism, standard_resolution
from app.utils.errors import ChainComplexError

logger = logging.getLogger("SiltWorkbench.Derived")


class ProjComplex:
    """
    有界复形

    Attributes:
        pieces (dict): 次数 n → 该次数的块 (Representation) 列表
        blocks (dict): (n, 目标块下标, 源块下标) → RepMorphism，为 d^n: C^n → C^{n+1} 的分块
    """

    def __init__(self, quiver, field, pieces, blocks):
        self.quiver = quiver
        self.field = field
        self.pieces = {n: list(p) for n, p in pieces.items() if p}
        self.blocks = dict(blocks)
        self._terms = {}
        self._differentials = {}

    @property
    def degrees(self):
        return sorted(self.pieces)

    def term(self, n):
        """C^n 作为表示"""
        if n not in self._terms:
            self._terms[n] = direct_sum(self.pieces.get(n, []), self.quiver, self.field).representation
        return self._terms[n]

    def differential(self, n):
        """d^n: C^n → C^{n+1}，按顶点拼成分块矩阵"""
        if n in self._differentials:
            return self._differentials[n]
        source_pieces = self.pieces.get(n, [])
        target_pieces = self.pieces.get(n + 1, [])
        domain = self.field.domain
        vertex_maps = []
        for x in self.quiver.vertices:
            grid = {(i, j): block.at(x) for (m, i, j), block in self.blocks.items() if m == n}
            vertex_maps.append(la.block_matrix(
                grid, [p.dim(x) for p in target_pieces], [p.dim(x) for p in source_pieces], domain))
        d = RepMorphism(self.term(n), self.term(n + 1), vertex_maps)
        self._differentials[n] = d
        return d

    def verify(self):
        """
        检查 d∘d = 0

        Raises:
            ChainComplexError: 某个 d^{n+1}∘d^n ≠ 0
        """
        for n in self.degrees:
            if n + 1 in self.pieces and n + 2 in self.pieces:
                if not self.differential(n + 1).compose(self.differential(n)).is_zero:
                    raise ChainComplexError(f"d∘d ≠ 0 (次数 {n})", condition="ChainComplex")
        return True

    def cohomology(self, n):
        """H^n = ker d^n / im d^{n−1}"""
        k, inclusion = kernel(self.differential(n))
        if n - 1 not in self.pieces:
            return k
        incoming = factor_through_mono(inclusion, self.differential(n - 1))
        if incoming is None:
            raise ChainComplexError(f"im d^{n - 1} 不含于 ker d^{n}", condition="ChainComplex")
        h, _ = cokernel(incoming)
        return h

    def cohomology_object(self):
        """⊕_n H^n[−n] (遗传范畴中复形同构于其上同调之和)"""
        pairs = []
        for n in self.degrees:
            h = self.cohomology(n)
            if not h.is_zero:
                pairs.append((h, -n))
        return DObject.build(self.quiver, self.field, pairs)


def _resolution_pieces(obj):
    """
    对象各直和项的标准分解所占的位置

    Returns:
        list: 每个直和项一个 (P¹ 次数, P⁰ 次数, 分解)
    """
    placed = []
    for stalk in obj.summands:
        placed.append((-stalk.shift - 1, -stalk.shift, standard_resolution(stalk.module)))
    return placed


def resolution_complex(obj):
    """对象的投射复形: 每个 M[a] 换成 P¹ → P⁰ 放在次数 −a−1, −a，微分带符号 (−1)^a"""
    pieces = defaultdict(list)
    blocks = {}
    for (n1, n0, res), stalk in zip(_resolution_pieces(obj), obj.summands):
        i1 = len(pieces[n1])
        pieces[n1].append(res.p1.representation)
        i0 = len(pieces[n0])
        pieces[n0].append(res.p0.representation)
        sign = -1 if stalk.shift % 2 else 1
        blocks[(n1, i0, i1)] = res.boundary.scaled(sign)
    complex_ = ProjComplex(obj.quiver, obj.field, pieces, blocks)
    complex_.verify()
    return complex_


def mapping_cone_complex(f):
    """
    链级映射锥 Cone^n = A^{n+1} ⊕ B^n，d = [[−d_A, 0], [F, d_B]]

    Args:
        f (DMorphism): A → B
    """
    a, b = f.source, f.target
    pieces = defaultdict(list)
    blocks = {}
    a_index, b_index = {}, {}

    # A 的块放在次数 n−1，随后是 B 的块
    a_placed = _resolution_pieces(a)
    b_placed = _resolution_pieces(b)
    for s, (n1, n0, res) in enumerate(a_placed):
        a_index[(s, 1)] = (n1 - 1, len(pieces[n1 - 1]))
        pieces[n1 - 1].append(res.p1.representation)
        a_index[(s, 0)] = (n0 - 1, len(pieces[n0 - 1]))
        pieces[n0 - 1].append(res.p0.representation)
    for t, (n1, n0, res) in enumerate(b_placed):
        b_index[(t, 1)] = (n1, len(pieces[n1]))
        pieces[n1].append(res.p1.representation)
        b_index[(t, 0)] = (n0, len(pieces[n0]))
        pieces[n0].append(res.p0.representation)

    for s, (stalk, (_, _, res)) in enumerate(zip(a.summands, a_placed)):
        sign = -1 if stalk.shift % 2 else 1
        n, i1 = a_index[(s, 1)]
        _, i0 = a_index[(s, 0)]
        blocks[(n, i0, i1)] = res.boundary.scaled(-sign)
    for t, (stalk, (_, _, res)) in enumerate(zip(b.summands, b_placed)):
        sign = -1 if stalk.shift % 2 else 1
        n, i1 = b_index[(t, 1)]
        _, i0 = b_index[(t, 0)]
        blocks[(n, i0, i1)] = res.boundary.scaled(sign)

    def put(key, block):
        blocks[key] = blocks[key] + block if key in blocks else block

    for (s, t), component in f.components.items():
        if isinstance(component, ExtClass):
            h = lift_ext(component)
            n, source_piece = a_index[(s, 1)]
            target_degree, target_piece = b_index[(t, 0)]
            if target_degree != n + 1:
                raise ChainComplexError("Ext 分量的提升次数错位", condition="ChainMap")
            put((n, target_piece, source_piece), h)
        else:
            f0, f1 = lift_morphism(component)
            n, source_piece = a_index[(s, 0)]
            _, target_piece = b_index[(t, 0)]
            put((n, target_piece, source_piece), f0)
            n, source_piece = a_index[(s, 1)]
            _, target_piece = b_index[(t, 1)]
            put((n, target_piece, source_piece), f1)

    complex_ = ProjComplex(a.quiver, a.field, pieces, blocks)
    complex_.verify()
    return complex_


def cone(f):
    """
    映射锥: 三角 A → B → cone(f) → A[1] 的第三项

    Returns:
        DObject: 分解后的锥
    """
    if f.source.is_zero:
        return f.target
    result = mapping_cone_complex(f).cohomology_object()
    expected = f.target.class_vector - f.source.class_vector
    if result.class_vector != expected:
        raise ChainComplexError(f"锥的类 {result.class_vector} 与 {expected} 不符", condition="ConeClass")
    logger.debug(f"cone({f.source.describe()} → {f.target.describe()}) = {result.describe()}")
    return result


def cocone(f):
    """三角 cocone(f) → A → B → cocone(f)[1] 的第一项，即 cone(f)[−1]"""
    return cone(f).shift(-1)
