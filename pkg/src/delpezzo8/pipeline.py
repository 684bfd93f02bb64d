"""End-to-end rationality decision for degree-8 Del Pezzo surfaces in P^8.

The Lie algebra of the embedded surface decides the branch:

* semisimple and split over Q into two ideals: a product of two conics,
  rational iff both factors are split sl2 (P1xP1 model);
* semisimple and simple over Q: a twist through the centroid field E,
  rational iff one ideal of L0 over E is split sl2 (sphere model);
* not semisimple: the blowup of P^2 in a point, always rational.

A parametrization is returned only after the transported canonical ideal
equals the input ideal and the map substitutes to zero in every quadric.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .conic import DEFAULT_HEIGHT, UNSOLVABLE, ConicCertificate
from .field import (
    ONE,
    ZERO,
    QuadExt,
    QuadField,
    conj,
    digits,
    mpq,
    rational_sqrt,
    squarefree_part,
)
from .lie import (
    CoordinateSystem,
    LieAlgebra,
    Sl2Triple,
    centroid,
    find_sl2_triple,
    is_semisimple,
    killing_form,
    levi_data,
    normalizer,
    _lex_key,
)
from .linalg import (
    KernelBuilder,
    Matrix,
    Subspace,
    det,
    eigenspace,
    flatten,
    identity,
    integer_lattice_basis,
    lin_comb,
    map_entries,
    matrix_to_json,
    minimal_polynomial,
    rank,
    solve,
    transpose,
    unflatten,
)
from .models import (
    CanonicalModel,
    ParamMap,
    QuadricIdeal,
    blowup_model,
    vec_to_sym,
    model_for,
    p1xp1_model,
    quadric_surface_map,
    quadrics_of_parametrization,
    sphere_model,
    traceless,
)
from .modrep import ModuleAction, ModuleError, blowup_module_iso, highest_weight_iso, module_iso_linear

log = logging.getLogger(__name__)

PARAMETRIZATION = "parametrization"
NOT_RATIONAL = "not_rational"
INCONCLUSIVE_TAG = "inconclusive"
INVALID = "invalid"

KINDS = ("p1xp1", "blowup", "sphere")


class PipelineError(Exception):
    """Structural check failed; carries the stage that failed."""

    def __init__(self, stage: str, reason: str):
        super().__init__(f"{stage}: {reason}")
        self.stage = stage
        self.reason = reason


# ---------------------------------------------------------------------------
# Lie algebra of an embedded variety


def lie_algebra_matrices(ideal: QuadricIdeal) -> list[Matrix]:
    """Basis of {x in gl_{n+1} : x^T A + A x in I for all A in I}."""
    N = ideal.n + 1
    if not ideal.dim:
        raise ValueError("empty ideal")
    # small integer bases keep the 500-row system cheap
    mats = [vec_to_sym(v, N) for v in reduced_basis(ideal.space.vectors())]
    funcs = reduced_basis(ideal.space.annihilator().vectors())
    pairs = [(i, j) for i in range(N) for j in range(i, N)]
    kb = KernelBuilder(N * N)
    for A in mats:
        for phi in funcs:
            row = [ZERO] * (N * N)
            for (i, j), w in zip(pairs, phi):
                if not w:
                    continue
                # (x^T A + A x)[i][j] = sum_r x[r][i] A[r][j] + A[i][r] x[r][j]
                for r in range(N):
                    if A[r][j]:
                        row[r * N + i] += w * A[r][j]
                    if A[i][r]:
                        row[r * N + j] += w * A[i][r]
            kb.add(row)
    return [unflatten(v, N, N) for v in reduced_basis(kb.result().vectors())]


def reduced_basis(vectors: Sequence[Sequence]) -> list[list]:
    """Reduced integer basis of the saturated lattice in the span of ``vectors``."""
    if not vectors:
        return []
    return [[mpq(x) for x in v] for v in integer_lattice_basis(vectors)]


def lie_algebra_of_variety(ideal: QuadricIdeal) -> LieAlgebra:
    return LieAlgebra.from_matrices(lie_algebra_matrices(ideal))


def split_scalar(L: LieAlgebra) -> tuple[LieAlgebra, list]:
    """Trace-zero part L0 and the coordinates of the identity in L."""
    if L.realization is None:
        raise PipelineError("lie", "algebra has no matrix realization")
    N = len(L.realization[0])
    span = Subspace.span([flatten(M) for M in L.realization], N * N)
    ident = flatten(identity(N))
    if not span.contains(ident):
        raise PipelineError("lie", "scalar matrices are not in the Lie algebra")
    scalar = CoordinateSystem([flatten(M) for M in L.realization]).coords(ident)
    tl = Subspace.span([flatten(traceless(M)) for M in L.realization], N * N)
    L0 = LieAlgebra.from_matrices([unflatten(v, N, N) for v in reduced_basis(tl.vectors())])
    return L0, scalar


# ---------------------------------------------------------------------------
# verification


def _products(components):
    n = len(components)
    return {(i, j): components[i] * components[j] for i in range(n) for j in range(i, n)}


def substitutes_to_zero(ideal: QuadricIdeal, pm: ParamMap) -> bool:
    if len(pm.components) != ideal.n + 1:
        return False
    prods = _products(pm.components)
    for A in ideal.matrices():
        acc: dict = {}
        for (i, j), p in prods.items():
            c = A[i][j] if i == j else A[i][j] + A[j][i]
            if not c:
                continue
            for m, x in p.terms.items():
                acc[m] = acc.get(m, ZERO) + c * x
        if any(acc.values()):
            return False
    return True


def image_is_surface(pm: ParamMap, seed: int = 0) -> bool:
    """Generic rank of (p, dp/dparams) is 3 at a seeded random point."""
    rng = random.Random(seed)
    partials = [[p.diff(v) for v in pm.variables] for p in pm.components]
    for _ in range(3):
        pt = [mpq(rng.randint(-97, 97), rng.randint(1, 23)) for _ in pm.variables]
        rows = []
        for p, ds in zip(pm.components, partials):
            rows.append([p.evaluate(pt)] + [d.evaluate(pt) for d in ds])
        if rank(rows) == 3:
            return True
    return False


def verify_parametrization(ideal: QuadricIdeal, pm: ParamMap, seed: int = 0) -> bool:
    if pm.is_zero():
        return False
    return substitutes_to_zero(ideal, pm) and image_is_surface(pm, seed)


# ---------------------------------------------------------------------------
# results


@dataclass
class PipelineResult:
    tag: str
    kind: str | None = None
    map: ParamMap | None = None
    transform: Matrix | None = None
    certificate: dict | None = None
    reason: str | None = None
    stage: str | None = None
    stats: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.tag == PARAMETRIZATION

    def to_json(self) -> dict:
        out: dict = {"result": self.tag}
        if self.kind is not None:
            out["kind"] = self.kind
        if self.map is not None:
            out["map"] = self.map.to_json()
        if self.transform is not None:
            out["transform"] = matrix_to_json(self.transform)
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.reason is not None:
            out["reason"] = self.reason
        if self.stage is not None:
            out["stage"] = self.stage
        out["stats"] = self.stats
        return out


def _lie_digits(L: LieAlgebra) -> int:
    return max((digits(x) for M in L.realization for r in M for x in r), default=0)


# ---------------------------------------------------------------------------
# identification helpers


def _to_ambient(basis: Sequence[Sequence], coords: Sequence) -> list:
    return lin_comb(coords, [[list(b)] for b in basis])[0] if basis else []


def _triple_in(basis: Sequence[Sequence], t: Sl2Triple) -> Sl2Triple:
    return Sl2Triple(_to_ambient(basis, t.e), _to_ambient(basis, t.h), _to_ambient(basis, t.f))


def _pulled_back_module(model: CanonicalModel, L0: LieAlgebra, images: Sequence[list]) -> ModuleAction:
    """The input module viewed as a module over the model algebra via ``images``."""
    try:
        return ModuleAction(model.algebra, [L0.element_matrix(v) for v in images])
    except ModuleError as exc:
        raise PipelineError("lie-iso", f"assignment is not a Lie algebra homomorphism ({exc})") from None


def _finish(
    ideal: QuadricIdeal, model: CanonicalModel, M: Matrix | None, kind: str, stats: dict, extra: dict | None = None
) -> PipelineResult:
    if M is None or not det(M):
        raise PipelineError("module", "no invertible module isomorphism")
    if model.ideal.transport(M) != ideal:
        raise PipelineError("final-check", "transported canonical ideal differs from the input")
    pm = model.param.transform(M)
    if not verify_parametrization(ideal, pm):
        raise PipelineError("final-check", "parametrization does not verify")
    stats = dict(stats)
    stats["max_coeff_digits"] = pm.max_coeff_digits()
    res = PipelineResult(PARAMETRIZATION, kind=kind, map=pm, transform=M, stats=stats)
    if extra:
        res.certificate = extra
    return res


def _conic_failure(cert: ConicCertificate, path: str, stats: dict, extra: dict) -> PipelineResult:
    body = {"path": path, "conic": cert.to_json(), **extra}
    if cert.verdict == UNSOLVABLE:
        return PipelineResult(NOT_RATIONAL, kind=path, certificate=body, stats=stats)
    return PipelineResult(
        INCONCLUSIVE_TAG,
        kind=path,
        certificate=body,
        reason=f"no point on the conic up to height {cert.height}",
        stage="conic",
        stats=stats,
    )


# product branch ---------------------------------------------------------------


def _split_pair(L0: LieAlgebra, C: list[Matrix]) -> tuple[Subspace, Subspace] | None:
    c = C[1]
    mp = minimal_polynomial(c)
    if len(mp) != 3:
        raise PipelineError("centroid", "centroid element is not quadratic")
    disc = mp[1] * mp[1] - 4 * mp[0]
    s = rational_sqrt(disc)
    if s is None:
        return None
    r1, r2 = (-mp[1] + s) / 2, (-mp[1] - s) / 2
    I1, I2 = eigenspace(c, r1), eigenspace(c, r2)
    if I1.dim != 3 or I2.dim != 3:
        raise PipelineError("decompose", "centroid eigenspaces are not 3-dimensional")
    if _lex_key(I2.basis[0]) < _lex_key(I1.basis[0]):
        I1, I2 = I2, I1
    return I1, I2


def _reduced_ideal(L: LieAlgebra, I: Subspace) -> list[list]:
    """Basis of I whose matrices form a reduced integer lattice."""
    flat = [flatten(lin_comb(v, L.realization)) for v in I.vectors()]
    cs = CoordinateSystem([flatten(M) for M in L.realization])
    return [cs.coords(v) for v in reduced_basis(flat)]


def _product_branch(ideal, L0, ideals, height, stats) -> PipelineResult:
    model = p1xp1_model()
    triples = []
    for k, I in enumerate(ideals):
        basis = _reduced_ideal(L0, I)
        sub = L0.subalgebra(basis)
        t, cert = find_sl2_triple(sub, height)
        if t is None:
            return _conic_failure(
                cert,
                "product",
                stats,
                {"factor": k, "killing_form": matrix_to_json(killing_form(sub))},
            )
        triples.append(_triple_in(basis, t))
    images = [x for t in triples for x in (t.e, t.h, t.f)]
    B = _pulled_back_module(model, L0, images)
    A = ModuleAction(model.algebra, model.action, check=False)
    M = highest_weight_iso(A, B, model.triples)
    return _finish(ideal, model, M, "p1xp1", stats)


# sphere branch ----------------------------------------------------------------


def centroid_field(C: list[Matrix]) -> tuple[QuadField, list, Matrix]:
    """Quadratic field of a 2-dim centroid, the minimal polynomial and element."""
    c = C[1]
    mp = minimal_polynomial(c)
    if len(mp) != 3:
        raise PipelineError("centroid", "centroid element is not quadratic")
    disc = mp[1] * mp[1] - 4 * mp[0]
    a = squarefree_part(int(disc.numerator * disc.denominator))
    return QuadField(a), mp, c


def _lift(M: Matrix, F: QuadField) -> Matrix:
    return map_entries(lambda x: x if isinstance(x, QuadExt) else F(x), M)


def _rational_vector(v: Sequence) -> list:
    out = []
    for x in v:
        if isinstance(x, QuadExt):
            if x.y:
                raise PipelineError("descent", "descended element is not rational")
            x = x.x
        out.append(mpq(x))
    return out


def _reduced_ideal_over(L: LieAlgebra, I: Subspace, F: QuadField) -> list[list]:
    """E-basis of the ideal I from a reduced Z-lattice in its underlying Q-space."""
    alpha = F.gen()
    flat = []
    for v in I.vectors():
        for w in (v, [alpha * x for x in v]):
            M = flatten(lin_comb(w, L.realization))
            flat.append([r for x in M for r in _parts(x)])
    chosen: list[list] = []
    for r in reduced_basis(flat):
        v = [F(r[2 * i], r[2 * i + 1]) for i in range(len(r) // 2)]
        if Subspace.span(chosen + [v], len(v)).dim > len(chosen):
            chosen.append(v)
        if len(chosen) == I.dim:
            break
    cs = CoordinateSystem([flatten(M) for M in L.realization])
    return [cs.coords(v) for v in chosen]


def _parts(x) -> tuple:
    return (x.x, x.y) if isinstance(x, QuadExt) else (mpq(x), ZERO)


def _sphere_branch(ideal, L0, C, height, stats) -> PipelineResult:
    F, mp, c = centroid_field(C)
    disc = mp[1] * mp[1] - 4 * mp[0]
    root = rational_sqrt(disc / F.a)
    if root is None:
        raise PipelineError("centroid", "discriminant does not match the field")
    s = F(0, root)
    thetas = [(-mp[1] + s) / 2, (-mp[1] - s) / 2]
    cE = _lift(c, F)
    spaces = [eigenspace(cE, th) for th in thetas]
    if any(S.dim != 3 for S in spaces):
        raise PipelineError("decompose", "ideals over the centroid field are not 3-dimensional")
    I1, I2 = spaces
    if _lex_key(I2.basis[0]) < _lex_key(I1.basis[0]):
        I1, I2 = I2, I1
    if Subspace.span([[conj(x) for x in v] for v in I1.vectors()], L0.dim) != I2:
        raise PipelineError("decompose", "Galois conjugation does not swap the ideals")
    LE = L0.over(F)
    basis = _reduced_ideal_over(L0, I1, F)
    L1 = LE.subalgebra(basis)
    t, cert = find_sl2_triple(L1, height)
    extra = {"a": F.a}
    if t is None:
        extra["killing_form"] = matrix_to_json(killing_form(L1))
        return _conic_failure(cert, "sphere", stats, extra)
    t1 = _triple_in(basis, t)
    alpha = F.gen()
    images = []
    for b in (t1.e, t1.h, t1.f):
        images.append(_rational_vector([x + conj(x) for x in b]))
    for b in (t1.e, t1.h, t1.f):
        images.append(_rational_vector([alpha * x + conj(alpha * x) for x in b]))
    model = sphere_model(F.a)
    B = _pulled_back_module(model, L0, images)
    A = ModuleAction(model.algebra, model.action, check=False)
    M = module_iso_linear(A, B)
    return _finish(ideal, model, M, "sphere", stats, {"a": F.a, "conic": cert.to_json()})


# blowup branch ----------------------------------------------------------------


def _restricted_ad(L: LieAlgebra, s: list, N: Subspace) -> list:
    """Flattened matrix of ad(s) on N in its echelon basis."""
    cols = []
    for n in N.vectors():
        c = N.coordinates(L.bracket(s, n))
        if c is None:
            raise PipelineError("blowup", "nilradical is not stable")
        cols.append(c)
    return [cols[j][i] for i in range(N.dim) for j in range(N.dim)]


def _blowup_branch(ideal, L0, stats) -> PipelineResult:
    ld = levi_data(L0)
    N, K = ld.nilradical, ld.levi
    if N.dim != 2 or ld.radical.dim != 3 or K.dim != 3:
        raise PipelineError(
            "blowup", f"radical/nilradical/Levi dimensions {ld.radical.dim}/{N.dim}/{K.dim}, expected 3/2/3"
        )
    nv = N.vectors()
    if any(any(L0.bracket(x, y)) for x in nv for y in nv):
        raise PipelineError("blowup", "nilradical is not abelian")
    S = normalizer(L0, K)
    if S.dim != 4:
        raise PipelineError("blowup", f"normalizer of the Levi subalgebra has dimension {S.dim}, expected 4")
    sv = S.vectors()
    ads = [_restricted_ad(L0, s, N) for s in sv]
    if rank(ads) != 4:
        raise PipelineError("blowup", "normalizer does not act faithfully on the nilradical")
    model = blowup_model()
    Y = model.algebra
    Ny = Subspace.span(model.nilradical, Y.dim)
    # canonical S_Y = span(a, c1, c2, c3): match restricted adjoint matrices
    images: list = [None] * 6
    for k in (0, 3, 4, 5):
        target = _restricted_ad(Y, [ONE if i == k else ZERO for i in range(6)], Ny)
        coeffs = solve(transpose(ads), target)
        if coeffs is None:
            raise PipelineError("blowup", "adjoint images do not match the model")
        images[k] = lin_comb(coeffs, [[v] for v in sv])[0]
    images[1], images[2] = nv[0], nv[1]
    B = _pulled_back_module(model, L0, images)
    A = ModuleAction(model.algebra, model.action, check=False)
    M = blowup_module_iso(A, B, model.triples[0], model.nilradical)
    return _finish(ideal, model, M, "blowup", stats)


# ---------------------------------------------------------------------------
# top level


def validate_ideal(ideal: QuadricIdeal) -> None:
    if ideal.n != 8:
        raise PipelineError("input", f"ambient dimension {ideal.n}, expected 8")
    if ideal.dim != 20:
        raise PipelineError("input", f"quadric space has dimension {ideal.dim}, expected 20")


def analyse(ideal: QuadricIdeal) -> tuple[LieAlgebra, LieAlgebra, dict]:
    validate_ideal(ideal)
    L = lie_algebra_of_variety(ideal)
    stats = {"lie_dim": L.dim, "lie_coeff_digits": _lie_digits(L) if L.dim else 0}
    if L.dim != 7:
        raise PipelineError("lie", f"Lie algebra has dimension {L.dim}, expected 7")
    L0, _ = split_scalar(L)
    return L, L0, stats


def classify(ideal: QuadricIdeal) -> dict:
    """Branch selection without parametrizing."""
    L, L0, stats = analyse(ideal)
    info = {"lie_dim": L.dim, "semisimple": is_semisimple(L0)}
    if not info["semisimple"]:
        info["classification"] = "blowup"
        return info
    C = centroid(L0)
    info["centroid_dim"] = len(C)
    if len(C) != 2:
        info["classification"] = "unknown"
        return info
    if _split_pair(L0, C) is not None:
        info["classification"] = "product"
    else:
        F, _, _ = centroid_field(C)
        info["classification"] = "sphere"
        info["a"] = F.a
    return info


def classify_and_parametrize(ideal: QuadricIdeal, height: int = DEFAULT_HEIGHT) -> PipelineResult:
    stats: dict = {}
    try:
        L, L0, stats = analyse(ideal)
        log.info("lie algebra: dim %d", L.dim)
        if not is_semisimple(L0):
            log.info("branch: blowup")
            return _blowup_branch(ideal, L0, stats)
        C = centroid(L0)
        if len(C) != 2:
            raise PipelineError("centroid", f"centroid has dimension {len(C)}, expected 2")
        pair = _split_pair(L0, C)
        if pair is not None:
            log.info("branch: product of two conics")
            return _product_branch(ideal, L0, pair, height, stats)
        log.info("branch: twist through the centroid field")
        return _sphere_branch(ideal, L0, C, height, stats)
    except PipelineError as exc:
        return PipelineResult(INVALID, reason=exc.reason, stage=exc.stage, stats=stats)


# ---------------------------------------------------------------------------
# instances


def random_transform(rng: random.Random, bound: int, sparse: bool = False, n: int = 9) -> Matrix:
    """Invertible integer matrix with entries in [-bound, bound].

    Sparse matrices have at most 3 nonzero entries per row, one of them on
    a random permutation so that invertibility is possible.
    """
    if bound <= 0:
        return identity(n)
    for _ in range(1000):
        if sparse:
            perm = list(range(n))
            rng.shuffle(perm)
            M = [[ZERO] * n for _ in range(n)]
            for i in range(n):
                cols = {perm[i]}
                extra = rng.randint(0, 2)
                while len(cols) < 1 + extra:
                    cols.add(rng.randrange(n))
                for j in sorted(cols):
                    x = 0
                    while x == 0:
                        x = rng.randint(-bound, bound)
                    M[i][j] = mpq(x)
        else:
            M = [[mpq(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if det(M):
            return M
    raise RuntimeError("could not sample an invertible matrix")


def generate_instance(kind: str, perturb_bound: int, seed: int, a: int | None = None) -> tuple[QuadricIdeal, Matrix]:
    """Canonical ideal of ``kind`` moved by a random integer matrix g (p -> g p)."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "sphere":
        if a is None:
            raise ValueError("sphere instances need a")
        a = int(a)
        if squarefree_part(a) != a or a == 1:
            raise ValueError("a must be squarefree and not a square")
    model = model_for(kind, a)
    rng = random.Random(f"{kind}:{a}:{perturb_bound}:{seed}")
    g = random_transform(rng, perturb_bound, sparse=(kind == "sphere"))
    return model.ideal.transport(g), g


def quadric_sphere_instance(d: int, perturb_bound: int = 0, seed: int = 0) -> tuple[QuadricIdeal, Matrix]:
    """Anticanonical ideal of z0^2 - z1^2 = z2^2 - d z3^2, sparsely moved."""
    base = quadrics_of_parametrization(quadric_surface_map(d))
    rng = random.Random(f"quadric:{d}:{perturb_bound}:{seed}")
    g = random_transform(rng, perturb_bound, sparse=True)
    return base.transport(g), g


__all__ = [
    "INCONCLUSIVE_TAG",
    "INVALID",
    "KINDS",
    "NOT_RATIONAL",
    "PARAMETRIZATION",
    "PipelineError",
    "PipelineResult",
    "analyse",
    "centroid_field",
    "classify",
    "classify_and_parametrize",
    "generate_instance",
    "image_is_surface",
    "lie_algebra_matrices",
    "lie_algebra_of_variety",
    "quadric_sphere_instance",
    "random_transform",
    "split_scalar",
    "substitutes_to_zero",
    "validate_ideal",
    "verify_parametrization",
]

