"""Canonical degree-8 Del Pezzo models in P^8 and the maps that parametrize them.

Each model carries its parametrization, its ideal of quadrics (derived from
the parametrization, never typed in), and a standard basis of its traceless
Lie algebra as 9x9 matrices acting on points.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

from .field import ONE, ZERO, QuadExt, QuadField, mpq, squarefree_part
from .lie import LieAlgebra, Sl2Triple
from .linalg import (
    KernelBuilder,
    Matrix,
    Subspace,
    inverse,
    map_entries,
    matmul,
    trace,
    transpose,
    zeros,
)
from .poly import Poly, PolyParseError, parse_poly, to_string

# ---------------------------------------------------------------------------
# parametrization maps

PARAM_SPECS = {
    "bihomogeneous(s0:s1;t0:t1)": ("s0", "s1", "t0", "t1"),
    "plane(v0:v1:v2)": ("v0", "v1", "v2"),
    "affine(u,v)": ("u", "v"),
}
BIHOMOGENEOUS, PLANE, AFFINE = PARAM_SPECS


@dataclass
class ParamMap:
    """Nine polynomials in named parameters, the coordinates of a surface point."""

    params: str
    components: list

    def __post_init__(self):
        if self.params not in PARAM_SPECS:
            raise ValueError(f"unknown parameter spec {self.params!r}")
        vs = PARAM_SPECS[self.params]
        for p in self.components:
            if p.vars != vs:
                raise ValueError("component variables do not match the parameter spec")

    @property
    def variables(self) -> tuple:
        return PARAM_SPECS[self.params]

    def transform(self, M: Matrix) -> "ParamMap":
        vs = self.variables
        out = []
        for row in M:
            p = Poly(vs)
            for c, q in zip(row, self.components):
                if c:
                    p = p + q * c
            out.append(p)
        return ParamMap(self.params, out)

    def evaluate(self, point: Sequence) -> list:
        return [p.evaluate(point) for p in self.components]

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    def max_coeff_digits(self) -> int:
        from .field import digits

        return max((digits(c) for p in self.components for c in p.terms.values()), default=0)

    def to_json(self) -> dict:
        return {"params": self.params, "components": [to_string(p) for p in self.components]}

    @classmethod
    def from_json(cls, data: dict) -> "ParamMap":
        spec = data.get("params")
        if spec not in PARAM_SPECS:
            raise PolyParseError(f"unknown parameter spec {spec!r}")
        comps = data.get("components")
        if not isinstance(comps, list):
            raise PolyParseError("map components must be a list of strings")
        vs = PARAM_SPECS[spec]
        out = []
        for i, text in enumerate(comps):
            try:
                out.append(parse_poly(str(text), vs))
            except PolyParseError as exc:
                raise PolyParseError(f"component {i}: {exc}") from None
        return cls(spec, out)


# ---------------------------------------------------------------------------
# symmetric matrices as vectors (upper triangle)


def sym_dim(n: int) -> int:
    return n * (n + 1) // 2


def sym_to_vec(A: Matrix) -> list:
    n = len(A)
    return [A[i][j] for i in range(n) for j in range(i, n)]


def vec_to_sym(v: Sequence, n: int) -> Matrix:
    A = zeros(n, n)
    k = 0
    for i in range(n):
        for j in range(i, n):
            A[i][j] = A[j][i] = v[k]
            k += 1
    return A


def is_symmetric(A: Matrix) -> bool:
    n = len(A)
    return all(len(r) == n for r in A) and all(A[i][j] == A[j][i] for i in range(n) for j in range(i))


@dataclass(eq=False)
class QuadricIdeal:
    """Linear space of quadrics in P^n as symmetric (n+1)x(n+1) matrices."""

    n: int
    space: Subspace

    @classmethod
    def from_matrices(cls, mats: Sequence[Matrix]) -> "QuadricIdeal":
        mats = list(mats)
        if not mats:
            raise ValueError("no quadrics given")
        size = len(mats[0])
        for A in mats:
            if len(A) != size or not is_symmetric(A):
                raise ValueError("quadric matrices must be symmetric and of equal size")
        return cls(size - 1, Subspace.span([sym_to_vec(A) for A in mats], sym_dim(size)))

    @property
    def dim(self) -> int:
        return self.space.dim

    def matrices(self) -> list[Matrix]:
        return [vec_to_sym(v, self.n + 1) for v in self.space.vectors()]

    def contains(self, A: Matrix) -> bool:
        return self.space.contains(sym_to_vec(A))

    def transport(self, M: Matrix) -> "QuadricIdeal":
        """Image ideal under the point map p -> M p."""
        Mi = inverse(M)
        MiT = transpose(Mi)
        return QuadricIdeal.from_matrices([matmul(matmul(MiT, A), Mi) for A in self.matrices()])

    def polys(self) -> list[Poly]:
        from .poly import matrix_to_quadric

        return [matrix_to_quadric(A) for A in self.matrices()]

    def __eq__(self, other):
        return isinstance(other, QuadricIdeal) and self.n == other.n and self.space == other.space

    def to_json(self) -> dict:
        from .linalg import matrix_to_json

        return {"n": self.n, "quadrics": [matrix_to_json(A) for A in self.matrices()]}


def quadrics_of_parametrization(pm: ParamMap) -> QuadricIdeal:
    """All quadrics vanishing identically on the image of ``pm``."""
    comps = pm.components
    n = len(comps)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    prods = [comps[i] * comps[j] for i, j in pairs]
    monos = sorted({m for p in prods for m in p.terms})
    kb = KernelBuilder(len(pairs))
    for m in monos:
        kb.add([p.terms.get(m, ZERO) for p in prods])
    mats = []
    for v in kb.result().vectors():
        A = zeros(n, n)
        for c, (i, j) in zip(v, pairs):
            if i == j:
                A[i][i] = c
            else:
                A[i][j] = A[j][i] = c / 2
        mats.append(A)
    if not mats:
        return QuadricIdeal(n - 1, Subspace.zero(sym_dim(n)))
    return QuadricIdeal.from_matrices(mats)


# ---------------------------------------------------------------------------
# induced actions on coordinate polynomials


def induced_action(components: Sequence[Poly], X: Matrix) -> Matrix:
    """Matrix R with d/de p(v + e X v) = R p(v), for coordinate polys p.

    The components must be linearly independent and their span must be
    stable under the derivation (checked).
    """
    vs = components[0].vars
    gens = Poly.gens(vs)
    Xv = [sum((g * X[i][j] for j, g in enumerate(gens) if X[i][j]), Poly(vs)) for i in range(len(vs))]
    monos = sorted({m for p in components for m in p.terms})
    index = {m: k for k, m in enumerate(monos)}
    basis = [[p.terms.get(m, ZERO) for m in monos] for p in components]
    from .lie import CoordinateSystem

    cs = CoordinateSystem(basis)
    rows = []
    for p in components:
        d = Poly(vs)
        for i, name in enumerate(vs):
            if Xv[i]:
                d = d + p.diff(name) * Xv[i]
        vec = [ZERO] * len(monos)
        for m, c in d.terms.items():
            if m not in index:
                raise ValueError("coordinate span is not stable under the action")
            vec[index[m]] = c
        coords = cs.coords(vec, check=False)
        if coords is None:
            raise ValueError("coordinate span is not stable under the action")
        rows.append(coords)
    return rows


def traceless(M: Matrix) -> Matrix:
    n = len(M)
    t = trace(M) / n
    if not t:
        return [list(r) for r in M]
    return [[M[i][j] - (t if i == j else ZERO) for j in range(n)] for i in range(n)]


def _unit(n: int, i: int, j: int, c=ONE) -> Matrix:
    M = zeros(n, n)
    M[i][j] = c
    return M


def _diag(*d) -> Matrix:
    M = zeros(len(d), len(d))
    for i, x in enumerate(d):
        M[i][i] = mpq(x)
    return M


SL2_E = [[ZERO, ONE], [ZERO, ZERO]]
SL2_H = [[ONE, ZERO], [ZERO, -ONE]]
SL2_F = [[ZERO, ZERO], [ONE, ZERO]]


def _block(A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B)
    M = zeros(n + m, n + m)
    for i in range(n):
        for j in range(n):
            M[i][j] = A[i][j]
    for i in range(m):
        for j in range(m):
            M[n + i][n + j] = B[i][j]
    return M


# ---------------------------------------------------------------------------
# the models


@dataclass(eq=False)
class CanonicalModel:
    kind: str
    param: ParamMap
    basis_names: tuple
    action: list  # traceless 9x9 matrices, images of the standard Lie basis
    a: int | None = None
    triples: list = dc_field(default_factory=list)  # standard Sl2Triples in Lie coordinates
    nilradical: list = dc_field(default_factory=list)
    basis_change: Matrix | None = None

    @property
    def algebra(self) -> LieAlgebra:
        return _algebra_cached(self)

    @property
    def ideal(self) -> QuadricIdeal:
        return _ideal_cached(self)


_ALG_CACHE: dict = {}
_IDEAL_CACHE: dict = {}


def _key(model: CanonicalModel):
    return (model.kind, model.a)


def _algebra_cached(model: CanonicalModel) -> LieAlgebra:
    k = _key(model)
    if k not in _ALG_CACHE:
        _ALG_CACHE[k] = LieAlgebra.from_matrices(model.action)
    return _ALG_CACHE[k]


def _ideal_cached(model: CanonicalModel) -> QuadricIdeal:
    k = _key(model)
    if k not in _IDEAL_CACHE:
        _IDEAL_CACHE[k] = quadrics_of_parametrization(model.param)
    return _IDEAL_CACHE[k]


def _unit_vec(n: int, i: int) -> list:
    v = [ZERO] * n
    v[i] = ONE
    return v


def p1xp1_components() -> list[Poly]:
    vs = PARAM_SPECS[BIHOMOGENEOUS]
    s0, s1, t0, t1 = Poly.gens(vs)
    return [s0 ** (2 - i) * s1**i * t0 ** (2 - j) * t1**j for i in range(3) for j in range(3)]


@lru_cache(maxsize=None)
def p1xp1_model() -> CanonicalModel:
    """Segre-Veronese image of bidegree (2,2); x_{3i+j} = s^i t^j on the chart."""
    comps = p1xp1_components()
    Z = zeros(2, 2)
    gens = []
    for g in (SL2_E, SL2_H, SL2_F):
        gens.append(_block(g, Z))
    for g in (SL2_E, SL2_H, SL2_F):
        gens.append(_block(Z, g))
    action = [traceless(induced_action(comps, X)) for X in gens]
    triples = [
        Sl2Triple(_unit_vec(6, 0), _unit_vec(6, 1), _unit_vec(6, 2)),
        Sl2Triple(_unit_vec(6, 3), _unit_vec(6, 4), _unit_vec(6, 5)),
    ]
    return CanonicalModel(
        "p1xp1",
        ParamMap(BIHOMOGENEOUS, comps),
        ("e1", "h1", "f1", "e2", "h2", "f2"),
        action,
        triples=triples,
    )


def blowup_components() -> list[Poly]:
    vs = PARAM_SPECS[PLANE]
    v0, v1, v2 = Poly.gens(vs)
    cubics = [v0**3, v0**2 * v1, v0**2 * v2, v0 * v1**2, v0 * v1 * v2, v0 * v2**2, v1**3, v1**2 * v2, v1 * v2**2, v2**3]
    return cubics[1:]


def blowup_gl3_basis() -> list[Matrix]:
    """The 3x3 model (a, b1, b2, c1, c2, c3) of the blowup algebra.

    General element [[2a, b1, b2], [0, -a + c1, c2], [0, c3, -a - c1]].
    """
    return [
        _diag(2, -1, -1),
        _unit(3, 0, 1),
        _unit(3, 0, 2),
        _diag(0, 1, -1),
        _unit(3, 1, 2),
        _unit(3, 2, 1),
    ]


def blowup_element(a=0, b1=0, b2=0, c1=0, c2=0, c3=0) -> Matrix:
    basis = blowup_gl3_basis()
    out = zeros(3, 3)
    for c, B in zip((a, b1, b2, c1, c2, c3), basis):
        c = mpq(c)
        for i in range(3):
            for j in range(3):
                out[i][j] += c * B[i][j]
    return out


@lru_cache(maxsize=None)
def blowup_model() -> CanonicalModel:
    """P^2 blown up in (1:0:0), by cubics through that point."""
    comps = blowup_components()
    action = [traceless(induced_action(comps, X)) for X in blowup_gl3_basis()]
    levi = Sl2Triple(_unit_vec(6, 4), _unit_vec(6, 3), _unit_vec(6, 5))
    return CanonicalModel(
        "blowup",
        ParamMap(PLANE, comps),
        ("a", "b1", "b2", "c1", "c2", "c3"),
        action,
        triples=[levi],
        nilradical=[_unit_vec(6, 1), _unit_vec(6, 2)],
    )


# sphere ---------------------------------------------------------------------

# e_ij index 3i+j; B basis order as in the parametrization below
_PAIRS = [(0, 1), (1, 2), (0, 2)]


def sphere_basis_change(F: QuadField) -> Matrix:
    """Columns: the basis B of the Galois-fixed space, in e_ij coordinates."""
    alpha = F.gen()
    ainv = alpha.inverse()
    cols = []
    for k in range(3):
        cols.append({3 * k + k: F(1)})
    for i, j in _PAIRS:
        cols.append({3 * i + j: F(1), 3 * j + i: F(1)})
    for i, j in _PAIRS:
        cols.append({3 * j + i: ainv, 3 * i + j: -ainv})
    M = [[F(0)] * 9 for _ in range(9)]
    for c, col in enumerate(cols):
        for r, x in col.items():
            M[r][c] = x
    return M


def sphere_components(a: int) -> list[Poly]:
    vs = PARAM_SPECS[AFFINE]
    u, v = Poly.gens(vs)
    one = Poly.const(vs, ONE)
    P = u * u - v * v * (ONE / mpq(a))
    return [one, P, P * P, u, P * u, u * u * 2 - P, v, v * P, u * v * 2]


def _rational_matrix(M: Matrix) -> Matrix:
    out = []
    for r in M:
        row = []
        for x in r:
            if isinstance(x, QuadExt):
                if x.y:
                    raise ValueError("matrix is not defined over Q")
                x = x.x
            row.append(mpq(x))
        out.append(row)
    return out


def _lift(M: Matrix, F: QuadField) -> Matrix:
    return map_entries(lambda x: x if isinstance(x, QuadExt) else F(x), M)


@lru_cache(maxsize=None)
def sphere_model(a: int) -> CanonicalModel:
    """The twist S_a of P1xP1 swapping the factors through Q(sqrt a).

    Lie basis (b, b) and (alpha b, -alpha b) for b in the Chevalley basis
    (e, h, f), acting in B coordinates.
    """
    if squarefree_part(a) != a:
        raise ValueError("sphere parameter must be squarefree")
    F = QuadField(a)
    alpha = F.gen()
    base = p1xp1_model()
    Bm = sphere_basis_change(F)
    Bi = inverse(Bm)
    acts = [_lift(M, F) for M in base.action]
    gens = []
    for k in range(3):
        gens.append([[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(acts[k], acts[k + 3])])
    for k in range(3):
        gens.append([[alpha * (x - y) for x, y in zip(r1, r2)] for r1, r2 in zip(acts[k], acts[k + 3])])
    action = [_rational_matrix(matmul(matmul(Bi, G), Bm)) for G in gens]
    return CanonicalModel(
        "sphere",
        ParamMap(AFFINE, sphere_components(a)),
        ("e+", "h+", "f+", "ae-", "ah-", "af-"),
        action,
        a=a,
        basis_change=Bm,
    )


def model_for(kind: str, a: int | None = None) -> CanonicalModel:
    if kind == "p1xp1":
        return p1xp1_model()
    if kind == "blowup":
        return blowup_model()
    if kind == "sphere":
        if a is None:
            raise ValueError("sphere model needs a")
        return sphere_model(a)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# other fixed surfaces used as inputs


def quadric_surface_map(d: int) -> ParamMap:
    """Anticanonical map of the quadric z0^2 - z1^2 = z2^2 - d z3^2.

    Coordinates are the quadratic monomials z_i z_j other than z0^2 (which
    is dependent modulo the equation), on the chart through (1:1:0:0):
    z0 - z1 = 1, z2 = u, z3 = v.
    """
    vs = PARAM_SPECS[AFFINE]
    u, v = Poly.gens(vs)
    one = Poly.const(vs, ONE)
    s = u * u - v * v * d
    z = [(s + one) * (ONE / 2), (s - one) * (ONE / 2), u, v]
    quads = [z[i] * z[j] for i in range(4) for j in range(i, 4)]
    return ParamMap(AFFINE, quads[1:])


def conic_product_ideal(coeffs: Sequence[int] = (1, 1, 1)) -> QuadricIdeal:
    """Anticanonical ideal of C x C, C: c0 x^2 + c1 y^2 + c2 z^2 = 0.

    Quadrics in the Segre coordinates w_{3i+j} = x_i y_j whose bidegree
    (2,2) image lies in the ideal (q(x), q(y)).  Solved as one kernel in
    the quadric coefficients and the multipliers of q(x), q(y).
    """
    c = [mpq(x) for x in coeffs]
    deg2 = list(_exponents(3, 2))
    keys = [(a, b) for a in deg2 for b in deg2]
    kidx = {k: n for n, k in enumerate(keys)}
    q = {(2, 0, 0): c[0], (0, 2, 0): c[1], (0, 0, 2): c[2]}
    pairs = [(i, j) for i in range(9) for j in range(i, 9)]

    def bideg(i, j):
        xs, ys = [0, 0, 0], [0, 0, 0]
        for k in (i, j):
            a, b = divmod(k, 3)
            xs[a] += 1
            ys[b] += 1
        return tuple(xs), tuple(ys)

    cols = []
    for i, j in pairs:
        col = [ZERO] * len(keys)
        col[kidx[bideg(i, j)]] = ONE
        cols.append(col)
    for other in deg2:
        for side in (0, 1):
            col = [ZERO] * len(keys)
            for m, coef in q.items():
                col[kidx[(m, other) if side == 0 else (other, m)]] -= coef
            cols.append(col)
    kb = KernelBuilder(len(cols))
    for row in range(len(keys)):
        kb.add([col[row] for col in cols])
    mats = []
    for vec in kb.result().vectors():
        w = vec[: len(pairs)]
        if not any(w):
            continue
        A = zeros(9, 9)
        for coef, (i, j) in zip(w, pairs):
            if i == j:
                A[i][i] = coef
            else:
                A[i][j] = A[j][i] = coef / 2
        mats.append(A)
    return QuadricIdeal.from_matrices(mats)


def _exponents(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for k in range(d, -1, -1):
        for rest in _exponents(n - 1, d - k):
            yield (k,) + rest


__all__ = [
    "AFFINE",
    "BIHOMOGENEOUS",
    "PLANE",
    "PARAM_SPECS",
    "CanonicalModel",
    "ParamMap",
    "QuadricIdeal",
    "blowup_components",
    "blowup_element",
    "blowup_gl3_basis",
    "blowup_model",
    "conic_product_ideal",
    "induced_action",
    "is_symmetric",
    "model_for",
    "p1xp1_components",
    "p1xp1_model",
    "quadric_surface_map",
    "quadrics_of_parametrization",
    "sphere_basis_change",
    "sphere_components",
    "sphere_model",
    "sym_dim",
    "sym_to_vec",
    "traceless",
    "vec_to_sym",
]

