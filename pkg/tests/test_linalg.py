import random

import pytest

from kummer.field import Field
from kummer.errors import StructureError
from kummer.linalg import (
    Matrix,
    determinant,
    echelon_form,
    eigenspace,
    kernel_basis,
    matrix_inverse,
    rank,
    simultaneous_diagonalizer,
)

F = Field(11)


def ints(m):
    return [[x.c0 for x in row] for row in m.entries]


def test_echelon_identity_and_zero():
    ident = Matrix.identity(F, 3)
    assert echelon_form(ident) == ident
    z = Matrix.zero(F, 2, 3)
    assert echelon_form(z) == z


def test_echelon_golden():
    m = Matrix.from_ints(F, [[2, 4], [1, 2]])
    assert ints(echelon_form(m)) == [[1, 2], [0, 0]]


def test_echelon_idempotent_random():
    rng = random.Random(0)
    for _ in range(25):
        m = Matrix(F, [[F.random(rng) for _ in range(4)] for _ in range(3)])
        e = echelon_form(m)
        assert echelon_form(e) == e


def test_kernel_basis_golden():
    assert kernel_basis(Matrix.identity(F, 3)) == []
    z = Matrix.zero(F, 2, 2)
    assert [[x.c0 for x in v] for v in kernel_basis(z)] == [[1, 0], [0, 1]]
    m = Matrix.from_ints(F, [[1, 1]])
    assert [[x.c0 for x in v] for v in kernel_basis(m)] == [[1, 10]]


def test_kernel_rank_nullity_random():
    rng = random.Random(1)
    for _ in range(25):
        rows, cols = rng.randrange(1, 5), rng.randrange(1, 5)
        m = Matrix(F, [[F.random(rng) for _ in range(cols)] for _ in range(rows)])
        basis = kernel_basis(m)
        assert rank(m) + len(basis) == cols
        zero = [F.zero()] * rows
        for v in basis:
            assert m.mul_vector(v) == zero
            first = next(x for x in v if not x.is_zero())
            assert first == F.one()


def test_matrix_inverse_and_determinant():
    rng = random.Random(2)
    for _ in range(20):
        m = Matrix(F, [[F.random(rng) for _ in range(3)] for _ in range(3)])
        d = determinant(m)
        if d.is_zero():
            with pytest.raises(StructureError):
                matrix_inverse(m)
        else:
            assert matrix_inverse(m) * m == Matrix.identity(F, 3)


def test_eigenspace():
    ident = Matrix.identity(F, 3)
    assert len(eigenspace(ident, F.one())) == 3
    diag = Matrix.from_ints(F, [[2, 0], [0, 3]])
    assert eigenspace(diag, F(5)) == []
    assert len(eigenspace(diag, F(2))) == 1


def test_eigenspace_f101_golden(f101):
    from golden import M1_101
    m1 = Matrix.from_ints(f101, M1_101)
    assert len(eigenspace(m1, f101(52))) == 2
    assert len(eigenspace(m1, f101(49))) == 2


def test_simultaneous_diagonalizer_diagonal_case():
    m1 = Matrix.from_ints(F, [[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 5, 0], [0, 0, 0, 5]])
    m2 = Matrix.from_ints(F, [[3, 0, 0, 0], [0, 7, 0, 0], [0, 0, 3, 0], [0, 0, 0, 7]])
    p = simultaneous_diagonalizer(m1, m2, (F(2), F(5)), (F(3), F(7)))
    # columns are unit vectors in the order (2,3), (2,7), (5,3), (5,7)
    assert ints(p) == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def test_simultaneous_diagonalizer_diagonalizes(f101):
    from golden import EIGS_101, M1_101, M2_101
    m1 = Matrix.from_ints(f101, M1_101)
    m2 = Matrix.from_ints(f101, M2_101)
    eigs1 = tuple(f101(x) for x in EIGS_101[0])
    eigs2 = tuple(f101(x) for x in EIGS_101[1])
    p = simultaneous_diagonalizer(m1, m2, eigs1, eigs2)
    pinv = matrix_inverse(p)
    for m in (m1, m2):
        d = pinv * m * p
        for i in range(4):
            for j in range(4):
                if i != j:
                    assert d[i, j].is_zero()


def test_simultaneous_diagonalizer_structure_errors():
    m1 = Matrix.from_ints(F, [[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    m2 = Matrix.from_ints(F, [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    with pytest.raises(StructureError, match="commute"):
        simultaneous_diagonalizer(m1, m2, (F(0), F(1)), (F(0), F(1)))
    ident4 = Matrix.identity(F, 4)
    with pytest.raises(StructureError):
        # shared eigenspace of dimension 4: intersections are not 1-dimensional
        simultaneous_diagonalizer(ident4, ident4, (F(1), F(2)), (F(1), F(2)))
