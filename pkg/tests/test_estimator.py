import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from delpezzo8.estimator import DelPezzoParametrizer, check_height, check_ideal
from delpezzo8.models import conic_product_ideal, model_for


def test_params_roundtrip():
    est = DelPezzoParametrizer(height=4)
    assert est.get_params() == {"height": 4}
    assert clone(est).height == 4
    est.set_params(height=6)
    assert est.height == 6


def test_requires_fit():
    with pytest.raises(NotFittedError):
        DelPezzoParametrizer().predict([model_for("p1xp1").ideal])


def test_predict_and_transform():
    X = [model_for("p1xp1").ideal, conic_product_ideal((1, 1, 1)).to_json()]
    est = DelPezzoParametrizer().fit(X)
    tags = est.predict(X)
    assert isinstance(tags, np.ndarray)
    assert list(tags) == ["parametrization", "not_rational"]
    out = est.fit_transform(X[:1])
    assert out[0]["result"] == "parametrization"


def test_validation_helpers():
    I = model_for("blowup").ideal
    assert check_ideal(I) is I
    assert check_ideal(I.to_json()) == I
    assert check_ideal(I.matrices()) == I
    with pytest.raises(TypeError):
        check_ideal(3)
    assert check_height(np.int64(5)) == 5
    for bad in (0, -1, 2.5, True):
        with pytest.raises(ValueError):
            check_height(bad)
    with pytest.raises(ValueError):
        DelPezzoParametrizer(height=0).fit()
