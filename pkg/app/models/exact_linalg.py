#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
精确线性代数内核

功能:
1. 素域 F_p 与有理数域 Q 的统一接口 (基于 sympy 的 GF(p) / QQ 域)
2. 带域标记的精确标量 FieldScalar
3. 稠密矩阵上的核、余核、像、求解等运算 (sympy DomainMatrix)

所有矩阵都是 DomainMatrix，零维矩阵 (0×n、n×0) 在每个运算里单独处理。
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np
from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix

from app.utils.errors import FieldMismatchError, PreconditionFailedError, DimensionMismatchError

logger = logging.getLogger("SiltWorkbench.Linalg")


class Field(ABC):
    """精确域基类"""

    @property
    @abstractmethod
    def domain(self):
        """对应的 sympy 域"""

    @property
    @abstractmethod
    def name(self):
        """域的名称，例如 "F_101" 或 "Q" """

    @property
    @abstractmethod
    def characteristic(self):
        """域的特征，Q 为 0"""

    @abstractmethod
    def to_python(self, element):
        """将域元素转换为 Python 值 (int 或 Fraction)"""

    @abstractmethod
    def random_element(self, rng):
        """
        用 numpy 随机数生成器抽取一个元素

        Args:
            rng (numpy.random.Generator): 随机数生成器
        """

    @property
    def spec(self):
        """命令行与设置文件中使用的域描述"""
        return self.name

    def element(self, value):
        """将 int / Fraction / 字符串 / 域元素 转换为域元素"""
        K = self.domain
        if isinstance(value, FieldScalar):
            self.check_same(value.field)
            return value.value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            numerator = K(value.numerator)
            denominator = K(value.denominator)
            if not denominator:
                raise PreconditionFailedError(f"{value} 的分母在 {self.name} 中为零", condition="InvertibleDenominator")
            return numerator / denominator
        if isinstance(value, int):
            return K(value)
        if hasattr(value, 'numerator') and hasattr(value, 'denominator'):
            return self.element(Fraction(int(value.numerator), int(value.denominator)))
        return K.convert(value)

    def scalar(self, value):
        """构造 FieldScalar"""
        return FieldScalar(self, self.element(value))

    def parse_scalar(self, text):
        """解析 "3"、"-1"、"2/3" 形式的标量"""
        return self.scalar(Fraction(text))

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def matrix(self, rows, shape=None):
        """
        由嵌套列表构造矩阵

        Args:
            rows (list): 行列表，元素可以是 int / Fraction / 字符串
            shape (tuple): 形状；行数为 0 时必须给出以保留列数

        Returns:
            DomainMatrix: 稠密矩阵
        """
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        nrows, ncols = shape
        if len(rows) != nrows or any(len(row) != ncols for row in rows):
            raise DimensionMismatchError(f"矩阵数据与形状 {shape} 不一致")
        flat = [self.element(value) for row in rows for value in row]
        return DomainMatrix.from_list_flat(flat, (nrows, ncols), self.domain)

    def matrix_from_entries(self, shape, entries):
        """由 {(i, j): 值} 稀疏字典构造稠密矩阵"""
        nrows, ncols = shape
        flat = [self.zero] * (nrows * ncols)
        for (i, j), value in entries.items():
            flat[i * ncols + j] = self.element(value)
        return DomainMatrix.from_list_flat(flat, (nrows, ncols), self.domain)

    def zeros(self, nrows, ncols):
        """零矩阵"""
        return DomainMatrix.from_list_flat([self.zero] * (nrows * ncols), (nrows, ncols), self.domain)

    def identity(self, n):
        """单位矩阵"""
        return self.matrix_from_entries((n, n), {(i, i): 1 for i in range(n)})

    def unit_vector(self, n, index):
        """第 index 个标准单位列向量"""
        return self.matrix_from_entries((n, 1), {(index, 0): 1})

    def column(self, values):
        """由值列表构造列向量"""
        return self.matrix([[value] for value in values], (len(values), 1))

    def check_same(self, other):
        """不同域混用时抛出 FieldMismatchError"""
        if other != self:
            raise FieldMismatchError(f"域不一致: {self.name} 与 {other.name}")

    def to_python_matrix(self, matrix):
        """矩阵转换为 Python 值的嵌套列表"""
        nrows, ncols = matrix.shape
        if nrows == 0 or ncols == 0:
            return [[] for _ in range(nrows)]
        return [[self.to_python(x) for x in row] for row in matrix.to_list()]


@dataclass(frozen=True)
class PrimeField(Field):
    """素域 F_p"""

    p: int = 101

    def __post_init__(self):
        if self.p == 2 or not isprime(self.p):
            raise PreconditionFailedError(f"{self.p} 不是奇素数", condition="OddPrime")

    @cached_property
    def domain(self):
        return GF(self.p)

    @property
    def name(self):
        return f"F_{self.p}"

    @property
    def characteristic(self):
        return self.p

    @property
    def spec(self):
        return str(self.p)

    def to_python(self, element):
        return int(self.domain.to_int(element)) % self.p

    def random_element(self, rng):
        return self.domain(int(rng.integers(0, self.p)))


@dataclass(frozen=True)
class RationalField(Field):
    """有理数域 Q"""

    @property
    def domain(self):
        return QQ

    @property
    def characteristic(self):
        return 0

    @property
    def name(self):
        return "Q"

    def to_python(self, element):
        value = Fraction(int(element.numerator), int(element.denominator))
        return value.numerator if value.denominator == 1 else value

    def random_element(self, rng):
        return QQ(int(rng.integers(-3, 4)))


@dataclass(frozen=True)
class FieldScalar:
    """带域标记的精确标量"""

    field: Field
    value: object

    def _coerce(self, other):
        if isinstance(other, FieldScalar):
            self.field.check_same(other.field)
            return other.value
        return self.field.element(other)

    def __add__(self, other):
        return FieldScalar(self.field, self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldScalar(self.field, self.value - self._coerce(other))

    def __rsub__(self, other):
        return FieldScalar(self.field, self._coerce(other) - self.value)

    def __mul__(self, other):
        return FieldScalar(self.field, self.value * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        divisor = self._coerce(other)
        if not divisor:
            raise ZeroDivisionError(f"{self.field.name} 中除以零")
        return FieldScalar(self.field, self.value / divisor)

    def __neg__(self):
        return FieldScalar(self.field, -self.value)

    def inverse(self):
        """乘法逆元"""
        return FieldScalar(self.field, self.field.one) / self

    def is_zero(self):
        return not self.value

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            self.field.check_same(other.field)
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.element(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.field.to_python(self.value)))

    def to_python(self):
        return self.field.to_python(self.value)

    def __repr__(self):
        return f"{self.to_python()} ∈ {self.field.name}"


# ---------------------------------------------------------------------------
# 矩阵运算
# ---------------------------------------------------------------------------

def is_empty(matrix):
    """是否为零维矩阵"""
    nrows, ncols = matrix.shape
    return nrows == 0 or ncols == 0


def is_zero(matrix):
    """是否为零矩阵"""
    return is_empty(matrix) or matrix.to_dense().is_zero_matrix


def equal(a, b):
    """精确相等 (不区分稀疏/稠密存储)"""
    if a.shape != b.shape:
        return False
    return is_zero(a - b) if not is_empty(a) else True


def zeros_like_domain(domain, nrows, ncols):
    return DomainMatrix.from_list_flat([domain.zero] * (nrows * ncols), (nrows, ncols), domain)


def matmul(a, b):
    """矩阵乘法，内维为 0 时返回零矩阵"""
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"矩阵乘法维数不符: {a.shape} × {b.shape}")
    if is_empty(a) or is_empty(b):
        return zeros_like_domain(a.domain, a.shape[0], b.shape[1])
    return a * b


def add(a, b):
    if a.shape != b.shape:
        raise DimensionMismatchError(f"矩阵加法维数不符: {a.shape} + {b.shape}")
    if is_empty(a):
        return a
    return a + b


def scale(matrix, element):
    """数乘；element 为域元素"""
    if is_empty(matrix):
        return matrix
    return matrix * element


def rref(matrix):
    """
    约化行阶梯形

    Returns:
        tuple: (rref 矩阵, 主元列下标元组)
    """
    if is_empty(matrix):
        return matrix, ()
    reduced, pivots = matrix.to_dense().rref()
    return reduced, tuple(pivots)


def rank(matrix):
    """精确秩"""
    if is_empty(matrix):
        return 0
    return len(rref(matrix)[1])


def is_invertible(matrix):
    """是否为可逆方阵"""
    nrows, ncols = matrix.shape
    return nrows == ncols and rank(matrix) == nrows


def to_rows(matrix):
    """矩阵的行列表 (域元素)"""
    nrows, ncols = matrix.shape
    if nrows == 0 or ncols == 0:
        return [[] for _ in range(nrows)]
    return matrix.to_dense().to_list()


def entry(matrix, i, j):
    """读取单个元素 (域元素)"""
    return matrix[i, j].element


def kernel_matrix(matrix):
    """
    核空间基，按列排成矩阵

    Returns:
        DomainMatrix: cols × (cols - rank) 矩阵，列为 {v : Mv = 0} 的一组基
    """
    nrows, ncols = matrix.shape
    domain = matrix.domain
    if ncols == 0:
        return zeros_like_domain(domain, 0, 0)
    if nrows == 0:
        return DomainMatrix.from_list_flat(
            [domain.one if i == j else domain.zero for i in range(ncols) for j in range(ncols)],
            (ncols, ncols), domain)
    reduced, pivots = rref(matrix)
    rows = to_rows(reduced)
    free = [j for j in range(ncols) if j not in pivots]
    flat = [domain.zero] * (ncols * len(free))
    for k, f in enumerate(free):
        flat[f * len(free) + k] = domain.one
        for i, p in enumerate(pivots):
            flat[p * len(free) + k] = -rows[i][f]
    return DomainMatrix.from_list_flat(flat, (ncols, len(free)), domain)


def columns(matrix):
    """矩阵的列向量列表"""
    nrows, ncols = matrix.shape
    if ncols == 0:
        return []
    if nrows == 0:
        return [zeros_like_domain(matrix.domain, 0, 1) for _ in range(ncols)]
    return [matrix.extract(list(range(nrows)), [j]) for j in range(ncols)]


def kernel_basis(matrix):
    """核空间的基 (列向量列表)，个数 = cols - rank"""
    return columns(kernel_matrix(matrix))


def image_matrix(matrix):
    """像空间的基：M 的主元列组成的矩阵"""
    nrows, ncols = matrix.shape
    if nrows == 0 or ncols == 0:
        return zeros_like_domain(matrix.domain, nrows, 0)
    _, pivots = rref(matrix)
    if not pivots:
        return zeros_like_domain(matrix.domain, nrows, 0)
    return matrix.to_dense().extract(list(range(nrows)), list(pivots))


def image_basis(matrix):
    """像空间的基 (列向量列表)"""
    return columns(image_matrix(matrix))


def cokernel_data(matrix):
    """
    余核的投影与截面

    以 M 的主元列为像的基，再用标准单位向量补成全空间的基 B = [像 | E]，
    投影取 B⁻¹ 的后几行，截面取 E。

    Returns:
        tuple: (projection, section)，projection∘M = 0 且 projection∘section = I
    """
    nrows = matrix.shape[0]
    domain = matrix.domain
    image = image_matrix(matrix)
    k = image.shape[1]
    identity = DomainMatrix.from_list_flat(
        [domain.one if i == j else domain.zero for i in range(nrows) for j in range(nrows)],
        (nrows, nrows), domain)
    if nrows == 0:
        return zeros_like_domain(domain, 0, 0), zeros_like_domain(domain, 0, 0)
    if k == 0:
        return identity, identity
    _, pivots = rref(image.hstack(identity))
    complement = [p - k for p in pivots if p >= k]
    section = identity.extract(list(range(nrows)), complement) if complement else zeros_like_domain(domain, nrows, 0)
    if not complement:
        return zeros_like_domain(domain, 0, nrows), section
    basis = image.hstack(section)
    inverse = basis.inv()
    projection = inverse.extract(list(range(k, nrows)), list(range(nrows)))
    return projection, section


def cokernel_basis(matrix):
    """
    余核

    Returns:
        tuple: (projection, dim)，projection 将值域投到 rows - rank 维空间且 projection∘M = 0
    """
    projection, _ = cokernel_data(matrix)
    return projection, projection.shape[0]


def solve_matrix(matrix, rhs):
    """
    求解 M·X = B

    Returns:
        DomainMatrix | None: 一个解；无解时返回 None
    """
    nrows, ncols = matrix.shape
    if rhs.shape[0] != nrows:
        raise DimensionMismatchError(f"求解维数不符: {matrix.shape} 与右端 {rhs.shape}")
    domain = matrix.domain
    m = rhs.shape[1]
    if m == 0:
        return zeros_like_domain(domain, ncols, 0)
    if nrows == 0:
        return zeros_like_domain(domain, ncols, m)
    if ncols == 0:
        return zeros_like_domain(domain, 0, m) if is_zero(rhs) else None
    reduced, pivots = rref(matrix.to_dense().hstack(rhs.to_dense()))
    if any(p >= ncols for p in pivots):
        return None
    rows = to_rows(reduced)
    flat = [domain.zero] * (ncols * m)
    for i, p in enumerate(pivots):
        for j in range(m):
            flat[p * m + j] = rows[i][ncols + j]
    return DomainMatrix.from_list_flat(flat, (ncols, m), domain)


def solve(matrix, vector):
    """
    求解 M·x = b

    Args:
        matrix (DomainMatrix): 系数矩阵
        vector (DomainMatrix): 列向量 b

    Returns:
        DomainMatrix | None: 列向量解；b 不在像中时返回 None
    """
    return solve_matrix(matrix, vector)


def hstack(blocks, nrows, domain):
    """水平拼接，块列表可以为空"""
    blocks = [b for b in blocks if b.shape[1] > 0]
    if not blocks:
        return zeros_like_domain(domain, nrows, 0)
    if nrows == 0:
        return zeros_like_domain(domain, 0, sum(b.shape[1] for b in blocks))
    first, *rest = [b.to_dense() for b in blocks]
    return first.hstack(*rest) if rest else first


def vstack(blocks, ncols, domain):
    """垂直拼接，块列表可以为空"""
    blocks = [b for b in blocks if b.shape[0] > 0]
    if not blocks:
        return zeros_like_domain(domain, 0, ncols)
    if ncols == 0:
        return zeros_like_domain(domain, sum(b.shape[0] for b in blocks), 0)
    first, *rest = [b.to_dense() for b in blocks]
    return first.vstack(*rest) if rest else first


def block_matrix(grid, row_sizes, col_sizes, domain):
    """
    分块矩阵

    Args:
        grid (dict): {(块行, 块列): 矩阵}，缺省块为零
        row_sizes (list): 各块行的行数
        col_sizes (list): 各块列的列数
    """
    nrows, ncols = sum(row_sizes), sum(col_sizes)
    flat = [domain.zero] * (nrows * ncols)
    row_offsets = _offsets(row_sizes)
    col_offsets = _offsets(col_sizes)
    for (bi, bj), block in grid.items():
        if block.shape != (row_sizes[bi], col_sizes[bj]):
            raise DimensionMismatchError(f"块 ({bi},{bj}) 形状 {block.shape} 与期望不符")
        for i, row in enumerate(to_rows(block)):
            base = (row_offsets[bi] + i) * ncols + col_offsets[bj]
            for j, value in enumerate(row):
                flat[base + j] = value
    return DomainMatrix.from_list_flat(flat, (nrows, ncols), domain)


def block_diag(blocks, domain):
    """分块对角矩阵"""
    grid = {(i, i): block for i, block in enumerate(blocks)}
    return block_matrix(grid, [b.shape[0] for b in blocks], [b.shape[1] for b in blocks], domain)


def _offsets(sizes):
    offsets, total = [], 0
    for size in sizes:
        offsets.append(total)
        total += size
    return offsets


def flatten(matrix):
    """按行展开为列向量"""
    nrows, ncols = matrix.shape
    flat = [x for row in to_rows(matrix) for x in row]
    return DomainMatrix.from_list_flat(flat, (nrows * ncols, 1), matrix.domain)


def unflatten(vector, nrows, ncols, start=0):
    """从列向量的 start 位置起读取 nrows × ncols 矩阵 (行优先)"""
    values = [row[0] for row in to_rows(vector)] if vector.shape[0] else []
    flat = values[start:start + nrows * ncols]
    return DomainMatrix.from_list_flat(flat, (nrows, ncols), vector.domain)


def vector_values(vector):
    """列向量的域元素列表"""
    return [row[0] for row in to_rows(vector)] if vector.shape[0] else []


def matrix_power(matrix, k):
    """方阵的 k 次幂"""
    n = matrix.shape[0]
    result = DomainMatrix.from_list_flat(
        [matrix.domain.one if i == j else matrix.domain.zero for i in range(n) for j in range(n)],
        (n, n), matrix.domain)
    for _ in range(k):
        result = matmul(result, matrix)
    return result


def eval_polynomial(coeffs, matrix):
    """
    Horner 法求 p(M)

    Args:
        coeffs (list): 系数，最高次在前 (与 sympy dup 表示一致)
    """
    n = matrix.shape[0]
    domain = matrix.domain
    result = zeros_like_domain(domain, n, n)
    identity = matrix_power(matrix, 0)
    for c in coeffs:
        result = add(matmul(result, matrix), scale(identity, c))
    return result


def charpoly_factors(matrix):
    """
    特征多项式的不可约因子 (系数列表，最高次在前)

    sympy 的 charpoly_factor_list 对 GF(p) 与 QQ 都给出完全分解。
    """
    if matrix.shape[0] == 0:
        return []
    return [(list(coeffs), multiplicity) for coeffs, multiplicity in matrix.to_dense().charpoly_factor_list()]


def matrix_key(field, matrix):
    """矩阵的可哈希表示"""
    return (matrix.shape, tuple(tuple(row) for row in field.to_python_matrix(matrix)))


def lifted_power_trace(field, matrix, exponent, modulus):
    """
    整数提升后 tr(Ã^exponent) mod modulus

    F_p 的元素提升为 0..p-1 的整数，用 numpy object 数组做快速幂，
    每次乘法后对 modulus 取余。

    Args:
        field (PrimeField): 矩阵所在的素域
        matrix (DomainMatrix): 方阵
        exponent (int): 指数
        modulus (int): 取余的模

    Returns:
        int: 0..modulus-1 之间的整数
    """
    n = matrix.shape[0]
    if n == 0:
        return 0
    base = np.array(field.to_python_matrix(matrix), dtype=object) % modulus
    result = np.array([[int(i == j) for j in range(n)] for i in range(n)], dtype=object)
    while exponent:
        if exponent & 1:
            result = (result @ base) % modulus
        base = (base @ base) % modulus
        exponent >>= 1
    return int(sum(result[i, i] for i in range(n))) % modulus
