import itertools

import pytest
from hypothesis import given, settings, strategies as st

from delpezzo8.conic import (
    INCONCLUSIVE,
    SOLVABLE,
    UNSOLVABLE,
    DegenerateFormError,
    TernaryForm,
    diagonalize_symmetric,
    hilbert_symbol,
    recheck_certificate,
    solve_conic,
    solve_diagonal_q,
)
from delpezzo8.field import QuadField, mpq
from delpezzo8.linalg import as_matrix, matmul, transpose


def brute_isotropic(a, b, c, bound=12):
    for x, y, z in itertools.product(range(-bound, bound + 1), repeat=3):
        if (x, y, z) != (0, 0, 0) and a * x * x + b * y * y + c * z * z == 0:
            return True
    return False


@pytest.mark.parametrize(
    "abc,expected",
    [((1, 1, -2), SOLVABLE), ((1, 1, 1), UNSOLVABLE), ((1, 1, -3), UNSOLVABLE), ((3, 5, -7), UNSOLVABLE), ((1, -2, -7), SOLVABLE)],
)
def test_small_diagonal_forms(abc, expected):
    cert = solve_diagonal_q(*abc)
    assert cert.verdict == expected
    form = TernaryForm.diagonal(*(mpq(x) for x in abc))
    assert recheck_certificate(cert, form)


@settings(max_examples=120, deadline=None)
@given(*[st.integers(-30, 30).filter(bool)] * 3)
def test_descent_agrees_with_local_symbols(a, b, c):
    form = TernaryForm.diagonal(mpq(a), mpq(b), mpq(c))
    cert = solve_conic(form)
    if cert.solvable:
        assert form.evaluate(cert.point) == 0 and any(cert.point)
    else:
        assert cert.verdict == UNSOLVABLE
        assert recheck_certificate(cert, form)
        assert not brute_isotropic(a, b, c, 6)


def test_large_coefficients():
    # 1009 and 2017 are primes splitting each other's squares
    form = TernaryForm.diagonal(mpq(1009 * 7), mpq(-2017), mpq(-1))
    cert = solve_conic(form)
    if cert.solvable:
        assert form.evaluate(cert.point) == 0
    else:
        assert recheck_certificate(cert, form)


def test_hilbert_symbol_reciprocity():
    for a, b in [(3, 5), (-1, -1), (2, 7), (-6, 15), (10, -21)]:
        prod = hilbert_symbol(a, b, "inf")
        for p in (2, 3, 5, 7, 11, 13):
            prod *= hilbert_symbol(a, b, p)
        assert prod == 1


def test_diagonalize_congruence():
    A = as_matrix([[0, 1, 2], [1, 0, 3], [2, 3, 1]])
    T, d = diagonalize_symmetric(A)
    D = matmul(matmul(transpose(T), A), T)
    assert all(D[i][j] == (d[i] if i == j else 0) for i in range(3) for j in range(3))


def test_degenerate_rejected():
    with pytest.raises(DegenerateFormError):
        solve_conic(TernaryForm(as_matrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]])))


def test_extension_point_and_real_obstruction():
    F = QuadField(-1)
    form = TernaryForm.diagonal(F(1), F(1), F(1), field=F)
    cert = solve_conic(form)
    assert cert.solvable and form.evaluate(cert.point) == 0
    G = QuadField(2)
    neg = TernaryForm.diagonal(G(1), G(1), G(3, 1), field=G)
    cert = solve_conic(neg)
    assert cert.verdict == UNSOLVABLE
    assert recheck_certificate(cert, neg)


def test_extension_search_is_bounded():
    F = QuadField(3)
    form = TernaryForm.diagonal(F(1), F(7), F(-13, 5), field=F)
    cert = solve_conic(form, height=1)
    assert cert.verdict in (SOLVABLE, INCONCLUSIVE)
    if cert.verdict == INCONCLUSIVE:
        assert cert.height == 1
    else:
        assert form.evaluate(cert.point) == 0
