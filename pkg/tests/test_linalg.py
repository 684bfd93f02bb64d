import random

import pytest
from hypothesis import given, settings, strategies as st

from delpezzo8.field import QuadField, mpq
from delpezzo8.linalg import (
    KernelBuilder,
    Subspace,
    as_matrix,
    charpoly,
    det,
    eigenspace,
    identity,
    integer_lattice_basis,
    inverse,
    is_nilpotent,
    kernel,
    matmul,
    matrix_from_json,
    matrix_to_json,
    matvec,
    minimal_polynomial,
    poly_eval_matrix,
    rank,
    solve,
)

entries = st.integers(min_value=-6, max_value=6)


def square(n):
    return st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n).map(as_matrix)


@settings(max_examples=80, deadline=None)
@given(square(4))
def test_inverse_and_det(A):
    if det(A):
        assert matmul(A, inverse(A)) == identity(4)
        assert det(inverse(A)) * det(A) == 1
    else:
        assert rank(A) < 4


@settings(max_examples=60, deadline=None)
@given(square(3), square(3))
def test_det_multiplicative(A, B):
    assert det(matmul(A, B)) == det(A) * det(B)


@settings(max_examples=60, deadline=None)
@given(square(4))
def test_minimal_polynomial_annihilates(A):
    mp = minimal_polynomial(A)
    assert mp[-1] == 1
    Z = poly_eval_matrix(mp, A)
    assert all(not x for r in Z for x in r)
    cp = charpoly(A)
    assert all(not x for r in poly_eval_matrix(cp, A) for x in r)


def test_nilpotent():
    N = as_matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert is_nilpotent(N)
    assert not is_nilpotent(identity(3))


def test_solve():
    A = as_matrix([[2, 1], [1, 3]])
    x = solve(A, [mpq(3), mpq(5)])
    assert matvec(A, x) == [3, 5]
    assert solve(as_matrix([[1, 1], [1, 1]]), [mpq(1), mpq(2)]) is None


def test_subspace_equality_is_basis_free():
    u, v = [mpq(1), mpq(2), mpq(3)], [mpq(0), mpq(1), mpq(1)]
    S = Subspace.span([u, v], 3)
    T = Subspace.span([[a + 2 * b for a, b in zip(u, v)], [a - b for a, b in zip(u, v)]], 3)
    assert S == T
    assert S.intersection(Subspace.span([[mpq(1), mpq(3), mpq(4)]], 3)).dim == 1
    ann = S.annihilator()
    assert ann.dim == 1
    w = ann.vectors()[0]
    assert sum(a * b for a, b in zip(w, u)) == 0


def test_kernel_builder_matches_kernel():
    rng = random.Random(3)
    rows = [[mpq(rng.randint(-3, 3)) for _ in range(7)] for _ in range(4)]
    kb = KernelBuilder(7)
    for r in rows:
        kb.add(r)
    assert kb.result() == kernel(rows, 7)


def test_eigenspace_over_extension():
    F = QuadField(2)
    A = as_matrix([[0, 2], [1, 0]])
    E = eigenspace([[F(x) for x in r] for r in A], F.gen())
    assert E.dim == 1


def test_lattice_basis_is_saturated():
    # span of (2, 4, 6) and (1, 1, 1) contains (0, 1, 2) integrally
    vs = [[mpq(2), mpq(4), mpq(6)], [mpq(1, 3), mpq(1, 3), mpq(1, 3)]]
    B = integer_lattice_basis(vs)
    assert len(B) == 2
    assert Subspace.span([[mpq(x) for x in b] for b in B], 3) == Subspace.span(vs, 3)
    # saturated lattice {(a, a + b, a + 2b)} has Gram determinant 6
    g = [[sum(x * y for x, y in zip(u, v)) for v in B] for u in B]
    assert g[0][0] * g[1][1] - g[0][1] ** 2 == 6


def test_matrix_json_roundtrip():
    A = as_matrix([[1, "1/2"], ["-3/7", 0]])
    assert matrix_from_json(matrix_to_json(A)) == A
    assert matrix_from_json([["1", "2"], ["3", "4"]]) == as_matrix([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        matrix_from_json([["1"], ["2", "3"]])
