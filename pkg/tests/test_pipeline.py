import pytest

from delpezzo8.conic import TernaryForm, recheck_certificate
from delpezzo8.field import element_from_json
from delpezzo8.models import QuadricIdeal, conic_product_ideal, model_for
from delpezzo8.pipeline import (
    INVALID,
    NOT_RATIONAL,
    PARAMETRIZATION,
    classify,
    classify_and_parametrize,
    generate_instance,
    quadric_sphere_instance,
    verify_parametrization,
)
from delpezzo8.poly import parse_quadric


@pytest.mark.parametrize("kind,a,expected", [("p1xp1", None, "p1xp1"), ("blowup", None, "blowup"), ("sphere", 3, "sphere")])
def test_canonical_round_trip(kind, a, expected):
    I = model_for(kind, a).ideal
    r = classify_and_parametrize(I)
    assert r.tag == PARAMETRIZATION and r.kind == expected
    assert verify_parametrization(I, r.map)
    assert r.stats["lie_dim"] == 7


@pytest.mark.parametrize("kind,a", [("p1xp1", None), ("blowup", None), ("sphere", -1), ("sphere", 2)])
def test_perturbed_instance(kind, a):
    I, g = generate_instance(kind, 3, 11, a)
    r = classify_and_parametrize(I)
    assert r.ok, r.reason
    assert r.kind == kind
    assert model_for(kind, a).ideal.transport(r.transform) == I


def test_generate_is_deterministic():
    I1, g1 = generate_instance("blowup", 5, 1)
    I2, g2 = generate_instance("blowup", 5, 1)
    assert I1 == I2 and g1 == g2
    assert generate_instance("blowup", 5, 2)[0] != I1


def test_bound_zero_is_canonical():
    assert generate_instance("sphere", 0, 9, -1)[0] == model_for("sphere", -1).ideal


def test_generate_rejects_bad_field():
    with pytest.raises(ValueError):
        generate_instance("sphere", 1, 0, 4)
    with pytest.raises(ValueError):
        generate_instance("sphere", 1, 0)
    with pytest.raises(ValueError):
        generate_instance("cubic", 1, 0)


@pytest.mark.parametrize("d,a", [(-1, -1), (3, 3), (8, 2)])
def test_quadric_spheres(d, a):
    I, _ = quadric_sphere_instance(d, 1, 0)
    info = classify(I)
    assert info["classification"] == "sphere" and info["a"] == a
    r = classify_and_parametrize(I)
    assert r.ok and verify_parametrization(I, r.map)


def test_conic_product_not_rational():
    I = conic_product_ideal((1, 1, 1))
    r = classify_and_parametrize(I)
    assert r.tag == NOT_RATIONAL
    conic = r.certificate["conic"]
    assert conic["verdict"] == "unsolvable"
    from delpezzo8.conic import ConicCertificate

    cert = ConicCertificate(conic["verdict"], obstruction=conic["obstruction"], diagonal=[element_from_json(x) for x in conic["diagonal"]])
    assert recheck_certificate(cert, TernaryForm.diagonal(*cert.diagonal))


def test_split_conic_product_is_rational():
    I = conic_product_ideal((1, 1, -1))
    r = classify_and_parametrize(I)
    assert r.ok and r.kind == "p1xp1"


def test_invalid_inputs():
    single = QuadricIdeal.from_matrices([parse_quadric("x0*x2 - x1^2")])
    r = classify_and_parametrize(single)
    assert r.tag == INVALID and r.stage == "input"
    small = QuadricIdeal.from_matrices([parse_quadric("x0*x2 - x1^2", 2)])
    assert classify_and_parametrize(small).tag == INVALID


def test_result_json_shape():
    r = classify_and_parametrize(model_for("p1xp1").ideal)
    js = r.to_json()
    assert js["result"] == "parametrization"
    assert set(js["map"]) == {"params", "components"}
    assert len(js["map"]["components"]) == 9
    assert {"lie_dim", "max_coeff_digits"} <= set(js["stats"])
    assert js["transform"]["rows"] == 9
