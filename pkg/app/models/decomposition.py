#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Krull-Schmidt 分解

功能:
1. EndRing: End(M) 的结构常数、根基、局部性与可除性
2. decompose: 以自同态驱动的 Fitting 分裂，把表示分解为不可分表示及其重数
3. is_isomorphic / is_exceptional / is_brick

候选自同态依次取 End(M) 的基、基的两两之和，再取种子固定的随机组合。
某个候选 φ 的特征多项式有两个以上不同的不可约因子时，
取 ψ = f(φ)^N (N 为总维数)，M = ker ψ ⊕ im ψ 是非平凡分裂。
候选都不分裂时先求 End(M) 的根基 (与特征无关的整数提升迹算法)，
再由剩余域次数证明 End(M) 局部，证明失败抛出 DecompositionError。
"""

import logging
from functools import lru_cache

import numpy as np

from app.config import DECOMPOSE_RANDOM_TRIALS, DEFAULT_SEED, HOM_CACHE_SIZE
from app.models import exact_linalg as la
from app.models.representation import RepMorphism, hom_space, image, is_rigid, kernel
from app.utils.errors import DecompositionError

logger = logging.getLogger("SiltWorkbench.Decompose")

_options = {"seed": DEFAULT_SEED, "trials": DECOMPOSE_RANDOM_TRIALS}


def configure(seed=None, trials=None):
    """
    设置随机候选的种子与次数，并清空分解缓存

    Args:
        seed (int): numpy 随机数种子
        trials (int): 随机候选个数
    """
    if seed is not None:
        _options["seed"] = int(seed)
    if trials is not None:
        _options["trials"] = int(trials)
    decompose.cache_clear()
    _split.cache_clear()
    end_ring.cache_clear()
    logger.debug(f"分解参数: seed={_options['seed']}, trials={_options['trials']}")


class EndRing:
    """End(M) 作为 hom_basis(M, M) 上的有限维代数"""

    def __init__(self, module):
        self.module = module
        self.space = hom_space(module, module)
        self.basis = self.space.basis
        self._radical = None

    @property
    def dim(self):
        return len(self.basis)

    def structure_constants(self):
        """
        乘法表

        Returns:
            list: table[i][j] 为 b_i∘b_j 在基下的坐标 (Python 值列表)
        """
        field = self.module.field
        return [[[field.to_python(v) for v in la.vector_values(self.space.coordinates(bi.compose(bj)))]
                 for bj in self.basis] for bi in self.basis]

    def element(self, coords):
        """坐标列向量对应的自同态"""
        return self.space.from_coordinates(coords)

    def trace(self, f):
        """自同态在 ⊕_x M_x 上的迹"""
        total = self.module.field.zero
        for x in self.module.quiver.vertices:
            matrix = f.at(x)
            for i in range(matrix.shape[0]):
                total += la.entry(matrix, i, i)
        return total

    def radical_basis(self):
        """
        Jacobson 根基

        特征 0 时取迹型 (a, b) ↦ tr(a∘b) 的根基。特征 p 时把自同态提升为整数矩阵，
        令 I_{-1} = End(M)，逐层取
        I_i = {a ∈ I_{i-1} : g_i(a∘b) = 0 对所有 b}，g_i(x) = tr(x̃^(p^i)) / p^i mod p，
        直到 p^i 超过总维数。g_i 在 I_{i-1} 上线性，每层都是一次解线性方程组。
        结果再做一次幂零性检验。

        Returns:
            list: 根基的一组基 (RepMorphism)

        Raises:
            DecompositionError: 求出的理想不幂零
        """
        if self._radical is not None:
            return self._radical
        field = self.module.field
        if self.dim == 0:
            self._radical = []
            return self._radical
        if field.characteristic == 0:
            radical = self._trace_layer(list(self.basis), self.trace)
        else:
            radical = list(self.basis)
            p = field.characteristic
            level = 0
            while radical and p ** level <= self.module.total_dim:
                radical = self._trace_layer(radical, self._lifted_functional(p, level))
                level += 1
        if not self._is_nilpotent_ideal(radical):
            raise DecompositionError(
                f"{field.name} 上求出的根基不幂零 (dims={self.module.dims})",
                condition="LocalEndomorphismRing")
        self._radical = radical
        return radical

    def _lifted_functional(self, p, level):
        """g_level: 整数提升后 p^level 次幂的迹除以 p^level，取模 p"""
        field = self.module.field
        scale = p ** level

        def functional(f):
            value = la.lifted_power_trace(field, f.total_matrix, scale, scale * p)
            return value // scale

        return functional

    def _trace_layer(self, ideal, functional):
        """{a ∈ span(ideal) : functional(a∘b) = 0 对 End(M) 的每个基元 b}"""
        field = self.module.field
        gram = field.matrix_from_entries((self.dim, len(ideal)), {
            (j, s): functional(a.compose(b))
            for s, a in enumerate(ideal) for j, b in enumerate(self.basis)})
        vectors = la.hstack([self.space.coordinates(a) for a in ideal], self.dim, field.domain)
        return [self.element(la.matmul(vectors, c)) for c in la.kernel_basis(gram)]

    def _is_nilpotent_ideal(self, ideal):
        """J^k 逐次相乘直到为零或不再缩小"""
        current = ideal
        previous_dim = None
        while current:
            vectors = la.hstack([self.space.coordinates(f) for f in current], self.dim, self.module.field.domain)
            span = la.image_matrix(vectors)
            if span.shape[1] == 0:
                return True
            if span.shape[1] == previous_dim:
                return False
            previous_dim = span.shape[1]
            spanning = [self.element(v) for v in la.columns(span)]
            current = [f.compose(g) for f in spanning for g in ideal if not f.compose(g).is_zero]
        return True

    def is_local(self):
        """End(M) 是否局部 (等价于 M 不可分)"""
        if self.module.is_zero:
            return False
        return is_indecomposable(self.module)

    def is_division(self):
        """End(M) 是否为除环: 局部且根基为零"""
        return self.is_local() and not self.radical_basis()


@lru_cache(maxsize=HOM_CACHE_SIZE)
def end_ring(m):
    return EndRing(m)


def _power(f, exponent):
    result = f.source.identity()
    for _ in range(exponent):
        result = f.compose(result)
    return result


def _fitting_split(m, phi):
    """
    用自同态 φ 做 Fitting 分裂

    Returns:
        tuple | None: (ker ψ, im ψ, 因子次数最大值)，φ 只有一个不可约因子时前两项为 None
    """
    factors = la.charpoly_factors(phi.total_matrix)
    degree = max(len(coeffs) - 1 for coeffs, _ in factors)
    if len(factors) < 2:
        return None, None, degree
    coeffs, _ = factors[0]
    psi = RepMorphism(m, m, [la.eval_polynomial(coeffs, phi.at(x)) for x in m.quiver.vertices])
    psi = _power(psi, m.total_dim)
    k, _ = kernel(psi)
    i, _, _ = image(psi)
    if k.is_zero or i.is_zero:
        return None, None, degree
    return k, i, degree


def _candidates(ring):
    """候选自同态: 基、两两之和、随机组合"""
    basis = ring.basis
    yield from basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            yield basis[i] + basis[j]
    rng = np.random.default_rng(_options["seed"])
    field = ring.module.field
    for _ in range(_options["trials"]):
        coords = field.matrix_from_entries((ring.dim, 1), {
            (i, 0): field.random_element(rng) for i in range(ring.dim)})
        yield ring.element(coords)


@lru_cache(maxsize=HOM_CACHE_SIZE)
def _split(m):
    """把 M 分裂为不可分表示的列表 (带具体基)"""
    if m.is_zero:
        return ()
    ring = end_ring(m)
    if ring.dim == 1:
        return (m,)
    largest = 1
    for phi in _candidates(ring):
        first, second, degree = _fitting_split(m, phi)
        largest = max(largest, degree)
        if first is not None:
            logger.debug(f"Fitting 分裂: {m.dims} = {first.dims} ⊕ {second.dims}")
            return _split(first) + _split(second)
    radical = ring.radical_basis()
    if ring.dim - len(radical) != largest:
        raise DecompositionError(
            f"无法证明 End(M) 局部: dim End = {ring.dim}, dim rad = {len(radical)}, 剩余域次数 {largest}",
            condition="LocalEndomorphismRing")
    return (m,)


def _indecomposables_isomorphic(m, n):
    """不可分表示的同构判定: Hom(M, N) 的某个基元可逆"""
    if m.dims != n.dims:
        return False
    if m == n:
        return True
    # 局部环中非同构的态射构成真子空间，基里必有同构
    return any(f.is_isomorphism for f in hom_space(m, n).basis)


@lru_cache(maxsize=HOM_CACHE_SIZE)
def decompose(m):
    """
    Krull-Schmidt 分解

    Returns:
        tuple: ((不可分表示, 重数), ...)，按首次出现的顺序
    """
    pieces = []
    for piece in _split(m):
        for index, (known, count) in enumerate(pieces):
            if _indecomposables_isomorphic(known, piece):
                pieces[index] = (known, count + 1)
                break
        else:
            pieces.append((piece, 1))
    return tuple(pieces)


def indecomposable_pieces(m):
    """按重数展开的不可分直和项列表"""
    return [piece for piece, count in decompose(m) for _ in range(count)]


def is_indecomposable(m):
    return not m.is_zero and len(_split(m)) == 1


def is_isomorphic(m, n):
    """
    同构判定

    维数向量相同，且不可分直和项的多重集合逐一同构。
    """
    if m.quiver != n.quiver or m.dims != n.dims:
        return False
    if m == n:
        return True
    remaining = list(decompose(n))
    for piece, count in decompose(m):
        for index, (other, other_count) in enumerate(remaining):
            if other_count == count and _indecomposables_isomorphic(piece, other):
                remaining.pop(index)
                break
        else:
            return False
    return not remaining


def is_exceptional(m):
    """不可分且 Ext¹(M, M) = 0"""
    return is_indecomposable(m) and is_rigid(m)


def is_brick(m):
    """End(M) 为除环"""
    return not m.is_zero and end_ring(m).is_division()
