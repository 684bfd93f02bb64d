"""Randomized invariant checks shared by the unit and acceptance suites."""
import random

from delpezzo8.field import mpq
from delpezzo8.lie import LieAlgebra, killing_form
from delpezzo8.linalg import Subspace, flatten, identity, inverse, matmul, transpose
from delpezzo8.models import ParamMap, model_for
from delpezzo8.modrep import ModuleAction, is_intertwiner, module_iso_linear, scalar_matrix_ratio
from delpezzo8.pipeline import lie_algebra_matrices, random_transform, verify_parametrization

KIND_CYCLE = [("p1xp1", None), ("blowup", None), ("sphere", -1), ("sphere", 3), ("sphere", 2)]


class Case:
    def __init__(self, i: int):
        kind, a = KIND_CYCLE[i % len(KIND_CYCLE)]
        self.rng = random.Random(f"invariant:{i}")
        self.model = model_for(kind, a)
        self.g = random_transform(self.rng, 1 + i % 2, sparse=(kind == "sphere"))
        self.gi = inverse(self.g)
        self.ideal = self.model.ideal.transport(self.g)
        self.lie_mats = lie_algebra_matrices(self.ideal)
        self.L = LieAlgebra.from_matrices(self.lie_mats, check=False)


def conj(g, X, gi):
    return matmul(matmul(g, X), gi)


def jacobi(c: Case) -> bool:
    return c.L.jacobi_holds()


def killing_invariance(c: Case) -> bool:
    L, rng = c.L, c.rng
    K = killing_form(L)
    n = L.dim

    def B(u, v):
        return sum(u[i] * K[i][j] * v[j] for i in range(n) for j in range(n))

    x, y, z = ([mpq(rng.randint(-4, 4)) for _ in range(n)] for _ in range(3))
    return B(L.bracket(x, y), z) + B(y, L.bracket(x, z)) == 0


def closure(c: Case) -> bool:
    ideal = c.ideal
    for Y in c.lie_mats:
        for A in ideal.matrices():
            if not ideal.contains(
                [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(matmul(transpose(Y), A), matmul(A, Y))]
            ):
                return False
    return True


def equivariance(c: Case) -> bool:
    n = len(c.g)
    computed = Subspace.span([flatten(M) for M in c.lie_mats], n * n)
    expected = Subspace.span([flatten(conj(c.g, X, c.gi)) for X in c.model.action] + [flatten(identity(n))], n * n)
    return computed == expected


def intertwiner(c: Case) -> bool:
    model = c.model
    A = ModuleAction(model.algebra, model.action, check=False)
    B = ModuleAction(model.algebra, [conj(c.g, X, c.gi) for X in model.action], check=False)
    M = module_iso_linear(A, B, seed=c.rng.randrange(100))
    return M is not None and is_intertwiner(M, A, B) and scalar_matrix_ratio(c.g, M) is not None


def verification_gates(c: Case) -> bool:
    ideal, rng = c.ideal, c.rng
    pm = c.model.param.transform(c.g)
    if not verify_parametrization(ideal, pm):
        return False
    comps = list(pm.components)
    k = rng.randrange(len(comps))
    bad = ParamMap(pm.params, comps[:k] + [comps[k] + comps[(k + 1) % len(comps)]] + comps[k + 1 :])
    return not verify_parametrization(ideal, bad)


CHECKS = {
    "jacobi": jacobi,
    "killing_invariance": killing_invariance,
    "closure": closure,
    "conjugation_equivariance": equivariance,
    "intertwiner_exactness": intertwiner,
    "verification_gates": verification_gates,
}


def run_case(i: int) -> dict:
    c = Case(i)
    return {name: fn(c) for name, fn in CHECKS.items()}
