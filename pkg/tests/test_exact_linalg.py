#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""精确线性代数测试"""

from fractions import Fraction

import pytest

from app.models import exact_linalg as la
from app.models.exact_linalg import PrimeField
from app.utils.errors import FieldMismatchError, PreconditionFailedError


def test_inverse_modulo_101(f101):
    two = f101.scalar(2)
    assert two * 51 == 1
    assert two.inverse() == 51
    assert (f101.scalar(1) / two).to_python() == 51


def test_parse_scalar_in_both_fields(f101, qq):
    assert qq.parse_scalar("2/3").to_python() == Fraction(2, 3)
    assert qq.parse_scalar("-1").to_python() == -1
    assert f101.parse_scalar("2/3") * 3 == 2
    assert f101.parse_scalar("-1").to_python() == 100


def test_mixing_fields_is_rejected(f101, qq):
    with pytest.raises(FieldMismatchError):
        _ = f101.scalar(1) + qq.scalar(1)
    with pytest.raises(FieldMismatchError):
        f101.check_same(PrimeField(103))


@pytest.mark.parametrize("p", [2, 4, 1, 100])
def test_prime_field_requires_odd_prime(p):
    with pytest.raises(PreconditionFailedError):
        PrimeField(p)


def test_rank_kernel_and_image(f101):
    m = f101.matrix([[1, 2], [2, 4]])
    assert la.rank(m) == 1
    kernel = la.kernel_basis(m)
    assert len(kernel) == 1
    assert la.is_zero(la.matmul(m, kernel[0]))
    assert len(la.image_basis(m)) == 1


def test_rank_depends_on_characteristic(f101, qq):
    rows = [[1, 1], [1, 102]]
    assert la.rank(f101.matrix(rows)) == 1
    assert la.rank(qq.matrix(rows)) == 2


def test_solve_matrix(qq):
    m = qq.matrix([[1, 0], [0, 2], [1, 1]])
    x = qq.matrix([[3], [Fraction(1, 2)]])
    b = la.matmul(m, x)
    solution = la.solve_matrix(m, b)
    assert la.equal(la.matmul(m, solution), b)
    assert la.solve(m, qq.column([0, 0, 1])) is None


def test_cokernel_projection_and_section(f101):
    m = f101.matrix([[1, 0], [1, 0], [0, 0]])
    projection, section = la.cokernel_data(m)
    assert projection.shape == (2, 3)
    assert la.is_zero(la.matmul(projection, m))
    assert la.equal(la.matmul(projection, section), f101.identity(2))


def test_empty_blocks(f101):
    domain = f101.domain
    assert la.hstack([], 3, domain).shape == (3, 0)
    assert la.vstack([], 2, domain).shape == (0, 2)
    assert la.matmul(f101.zeros(2, 0), f101.zeros(0, 3)).shape == (2, 3)
    assert la.block_diag([f101.identity(1), f101.zeros(0, 0), f101.identity(2)], domain).shape == (3, 3)


def test_block_matrix_places_blocks(qq):
    grid = {(0, 1): qq.matrix([[5]]), (1, 0): qq.matrix([[7, 8]])}
    m = la.block_matrix(grid, [1, 1], [2, 1], qq.domain)
    assert qq.to_python_matrix(m) == [[0, 0, 5], [7, 8, 0]]


def test_flatten_roundtrip(f101):
    m = f101.matrix([[1, 2, 3], [4, 5, 6]])
    assert la.equal(la.unflatten(la.flatten(m), 2, 3), m)


def test_charpoly_factors_and_cayley_hamilton(f101, qq):
    swap = [[0, 1], [1, 0]]
    assert len(la.charpoly_factors(f101.matrix(swap))) == 2
    assert len(la.charpoly_factors(qq.matrix(swap))) == 2

    m = qq.matrix([[2, 1, 0], [0, 2, 0], [0, 0, 3]])
    product = qq.identity(3)
    for coeffs, multiplicity in la.charpoly_factors(m):
        product = la.matmul(product, la.matrix_power(la.eval_polynomial(coeffs, m), multiplicity))
    assert la.is_zero(product)


def test_rotation_factorization_depends_on_field(f101, qq):
    # x² + 1: 101 ≡ 1 mod 4 时分裂，103 ≡ 3 mod 4 与 Q 上不可约
    rotation = [[0, -1], [1, 0]]
    assert [len(c) - 1 for c, _ in la.charpoly_factors(f101.matrix(rotation))] == [1, 1]
    assert [len(c) - 1 for c, _ in la.charpoly_factors(PrimeField(103).matrix(rotation))] == [2]
    assert [len(c) - 1 for c, _ in la.charpoly_factors(qq.matrix(rotation))] == [2]


def test_matrix_power(f101):
    m = f101.matrix([[1, 1], [0, 1]])
    assert la.equal(la.matrix_power(m, 0), f101.identity(2))
    assert f101.to_python_matrix(la.matrix_power(m, 5)) == [[1, 5], [0, 1]]
    assert la.is_invertible(m)


def test_characteristic(f101, qq, f3):
    assert f101.characteristic == 101
    assert f3.characteristic == 3
    assert qq.characteristic == 0


def test_lifted_power_trace(f3):
    assert la.lifted_power_trace(f3, f3.identity(3), 3, 9) == 3
    # [[1,1],[0,1]]^3 = [[1,3],[0,1]]
    assert la.lifted_power_trace(f3, f3.matrix([[1, 1], [0, 1]]), 3, 9) == 2
    assert la.lifted_power_trace(f3, f3.matrix([[2, 0], [0, 2]]), 3, 9) == 7
    assert la.lifted_power_trace(f3, f3.zeros(0, 0), 3, 9) == 0
