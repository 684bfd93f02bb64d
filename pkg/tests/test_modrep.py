import random

import pytest

from delpezzo8.linalg import inverse, matmul
from delpezzo8.models import blowup_model, p1xp1_model, sphere_model
from delpezzo8.modrep import (
    ModuleAction,
    ModuleError,
    blowup_module_iso,
    highest_weight_iso,
    intertwiner_space,
    is_intertwiner,
    module_iso_linear,
    scalar_matrix_ratio,
    summand_dimensions,
    weight_decompose,
)
from delpezzo8.pipeline import random_transform


def conjugated(model, seed):
    g = random_transform(random.Random(seed), 2)
    gi = inverse(g)
    A = ModuleAction(model.algebra, model.action)
    B = ModuleAction(model.algebra, [matmul(matmul(g, X), gi) for X in model.action])
    return A, B, g


def test_action_must_respect_bracket():
    m = p1xp1_model()
    bad = list(m.action)
    bad[0], bad[1] = bad[1], bad[0]
    with pytest.raises(ModuleError):
        ModuleAction(m.algebra, bad)


def test_p1xp1_module_is_irreducible_tensor():
    m = p1xp1_model()
    A = ModuleAction(m.algebra, m.action)
    dims = weight_decompose(A, m.triples).dims()
    assert dims[(2, 2)] == 1 and dims[(0, 0)] == 1 and len(dims) == 9
    assert intertwiner_space(A, A).dim == 1


@pytest.mark.parametrize("seed", range(4))
def test_highest_weight_iso_unique_up_to_scalar(seed):
    m = p1xp1_model()
    A, B, g = conjugated(m, seed)
    M1 = highest_weight_iso(A, B, m.triples)
    M2 = module_iso_linear(A, B, seed=seed)
    assert is_intertwiner(M1, A, B)
    assert scalar_matrix_ratio(M1, M2) is not None
    assert scalar_matrix_ratio(g, M1) is not None


def test_blowup_summands_and_iso():
    m = blowup_model()
    A, B, g = conjugated(m, 7)
    levi = m.triples[0]
    assert summand_dimensions(A, levi) == [2, 3, 4]
    M = blowup_module_iso(A, B, levi, m.nilradical)
    assert M is not None and is_intertwiner(M, A, B)
    assert scalar_matrix_ratio(g, M) is not None


def test_sphere_linear_iso():
    m = sphere_model(2)
    A, B, g = conjugated(m, 3)
    M = module_iso_linear(A, B)
    assert is_intertwiner(M, A, B)
    assert scalar_matrix_ratio(g, M) is not None


def test_non_isomorphic_modules():
    m = p1xp1_model()
    A = ModuleAction(m.algebra, m.action)
    swapped = m.action[3:] + m.action[:3]
    B = ModuleAction(m.algebra, swapped)
    # swapping the two factors is still isomorphic (P1xP1 is symmetric);
    # a zero action is not
    assert module_iso_linear(A, B) is not None
    Z = ModuleAction(m.algebra, [[[0] * 9 for _ in range(9)] for _ in range(6)], check=False)
    assert module_iso_linear(A, Z) is None
