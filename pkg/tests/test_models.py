import pytest

from delpezzo8.lie import is_semisimple
from delpezzo8.models import (
    ParamMap,
    conic_product_ideal,
    model_for,
    quadric_surface_map,
    quadrics_of_parametrization,
)
from delpezzo8.pipeline import lie_algebra_matrices, verify_parametrization

MODELS = [("p1xp1", None), ("blowup", None), ("sphere", -1), ("sphere", 3), ("sphere", 2)]


@pytest.mark.parametrize("kind,a", MODELS)
def test_canonical_ideal_has_20_quadrics(kind, a):
    m = model_for(kind, a)
    assert m.ideal.dim == 20
    assert m.algebra.dim == 6
    assert verify_parametrization(m.ideal, m.param)


@pytest.mark.parametrize("kind,a", MODELS)
def test_action_is_the_lie_algebra(kind, a):
    from delpezzo8.linalg import Subspace, flatten, identity

    m = model_for(kind, a)
    got = Subspace.span([flatten(M) for M in lie_algebra_matrices(m.ideal)], 81)
    want = Subspace.span([flatten(M) for M in m.action] + [flatten(identity(9))], 81)
    assert got == want


def test_canonical_binomials():
    # the P1xP1 and blowup ideals are spanned by binomials
    for kind in ("p1xp1", "blowup"):
        polys = model_for(kind).ideal.polys()
        assert len(polys) == 20


def test_semisimplicity_by_kind():
    assert is_semisimple(model_for("p1xp1").algebra)
    assert not is_semisimple(model_for("blowup").algebra)
    assert is_semisimple(model_for("sphere", 3).algebra)


@pytest.mark.parametrize("d", [-1, 3, 8])
def test_quadric_surface_embedding(d):
    pm = quadric_surface_map(d)
    I = quadrics_of_parametrization(pm)
    assert I.dim == 20
    assert verify_parametrization(I, pm)


def test_conic_product_ideal():
    assert conic_product_ideal((1, 1, 1)).dim == 20
    assert conic_product_ideal((1, 1, -1)).dim == 20


def test_param_json_roundtrip():
    pm = model_for("sphere", 2).param
    assert ParamMap.from_json(pm.to_json()).components == pm.components


def test_transport_identity_and_inverse():
    from delpezzo8.linalg import as_matrix, identity, inverse

    I = model_for("blowup").ideal
    assert I.transport(identity(9)) == I
    g = as_matrix([[1 if i == j else (1 if j == i + 1 else 0) for j in range(9)] for i in range(9)])
    assert I.transport(g).transport(inverse(g)) == I
    assert I.transport(g) != I
