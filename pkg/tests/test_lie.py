import random

import pytest

from delpezzo8.conic import UNSOLVABLE, TernaryForm, recheck_certificate
from delpezzo8.field import QuadField, mpq
from delpezzo8.lie import (
    LieAlgebra,
    LieAlgebraError,
    centroid,
    decompose_two_ideals,
    direct_sum,
    find_sl2_triple,
    gl2,
    is_semisimple,
    killing_form,
    levi_data,
    sl2,
    so3,
)
from delpezzo8.linalg import Subspace
from delpezzo8.models import blowup_model, p1xp1_model, sphere_model


def rand_vec(rng, n):
    return [mpq(rng.randint(-5, 5)) for _ in range(n)]


def killing_invariant(L, rng):
    K = killing_form(L)

    def B(u, v):
        return sum(u[i] * K[i][j] * v[j] for i in range(L.dim) for j in range(L.dim))

    x, y, z = (rand_vec(rng, L.dim) for _ in range(3))
    return B(L.bracket(x, y), z) + B(y, L.bracket(x, z)) == 0


def test_standard_algebras_are_lie():
    rng = random.Random(0)
    for L in (sl2(), gl2(), so3(), p1xp1_model().algebra, blowup_model().algebra, sphere_model(3).algebra):
        assert L.jacobi_holds()
        assert killing_invariant(L, rng)


def test_semisimplicity():
    assert is_semisimple(sl2()) and is_semisimple(so3())
    assert not is_semisimple(gl2())
    assert not is_semisimple(blowup_model().algebra)
    assert is_semisimple(p1xp1_model().algebra)


def test_sl2_triple_found():
    t, cert = find_sl2_triple(sl2())
    assert t is not None and t.check(sl2())
    assert cert.solvable


def test_so3_is_not_split_over_q():
    L = so3()
    t, cert = find_sl2_triple(L)
    assert t is None
    assert cert.verdict == UNSOLVABLE
    d = [mpq(x) for x in cert.diagonal]
    assert recheck_certificate(cert, TernaryForm.diagonal(*d))


def test_so3_splits_over_gaussian_field():
    F = QuadField(-1)
    L = so3(F)
    t, _ = find_sl2_triple(L)
    assert t is not None and t.check(L)


def test_blowup_levi_data():
    ld = levi_data(blowup_model().algebra)
    assert (ld.radical.dim, ld.nilradical.dim, ld.levi.dim) == (3, 2, 3)


def test_centroid_and_ideals():
    L = direct_sum(sl2(), so3())
    C = centroid(L)
    assert len(C) == 2
    pair = decompose_two_ideals(L)
    assert pair is not None
    I1, I2 = pair
    assert I1.dim == I2.dim == 3
    assert L.is_ideal(I1) and L.is_ideal(I2)
    with pytest.raises(LieAlgebraError):
        decompose_two_ideals(sl2())


def test_sphere_algebra_is_simple_over_q():
    L = sphere_model(-1).algebra
    assert len(centroid(L)) == 2
    assert decompose_two_ideals(L) is None


def test_json_roundtrip():
    L = gl2()
    M = LieAlgebra.from_json(L.to_json())
    assert M.sc == L.sc


def test_subalgebra_closure():
    L = gl2()
    S = Subspace.span([[mpq(1), 0, 0, mpq(-1)], [0, mpq(1), 0, 0], [0, 0, mpq(1), 0]], 4)
    assert L.is_subalgebra(S) and L.is_ideal(S)
    sub = L.subalgebra(S.vectors())
    assert is_semisimple(sub)
