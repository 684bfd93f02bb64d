"""Lie algebras given by structure constants, over Q or Q(sqrt(a)).

Elements are coordinate vectors with respect to the algebra's basis.  An
algebra may also carry a faithful matrix realization (the images of the
basis vectors), which is how algebras computed from embedded varieties
arrive.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .conic import DEFAULT_HEIGHT, ConicCertificate, TernaryForm, diagonalize_symmetric, solve_conic
from .field import ONE, ZERO, QuadExt, QuadField, conj, element_from_json, element_to_json, qext_sqrt, rational_sqrt
from .linalg import (
    KernelBuilder,
    Matrix,
    Subspace,
    commutator,
    det,
    eigenspace,
    flatten,
    identity,
    inverse,
    kernel,
    lin_comb,
    matmul,
    matrix_from_json,
    matrix_to_json,
    minimal_polynomial,
    is_nilpotent,
    rank,
    solve,
    trace,
    vec_comb,
    zeros,
)


class LieAlgebraError(ValueError):
    pass


class CoordinateSystem:
    """Coordinates of vectors with respect to a fixed independent family."""

    def __init__(self, vectors: Sequence[Sequence]):
        self.vectors = [list(v) for v in vectors]
        self.k = len(self.vectors)
        if not self.k:
            self.cols, self._inv = [], []
            return
        from .linalg import rref

        _, cols = rref(self.vectors)
        if len(cols) != self.k:
            raise LieAlgebraError("vectors are linearly dependent")
        minor = [[v[c] for c in cols] for v in self.vectors]  # k x k, rows = vectors
        self.cols = cols
        self._inv = inverse(minor)

    def coords(self, v: Sequence, check: bool = True) -> list | None:
        if not self.k:
            if check and any(v):
                return None
            return []
        w = [v[c] for c in self.cols]
        # c^T minor = w^T  =>  c = w * minor^{-1}
        c = [ZERO] * self.k
        for i, wi in enumerate(w):
            if wi:
                row = self._inv[i]
                for j in range(self.k):
                    if row[j]:
                        c[j] = c[j] + wi * row[j]
        if check:
            back = vec_comb(c, self.vectors)
            if any(a != b for a, b in zip(back, v)):
                return None
        return c


class LieAlgebra:
    """Finite-dimensional Lie algebra with structure constants c[i][j][k].

    ``[x_i, x_j] = sum_k c[i][j][k] x_k``.  ``field`` is None for Q.
    """

    def __init__(self, sc, field: QuadField | None = None, realization=None, check: bool = True):
        self.sc = [[list(row) for row in plane] for plane in sc]
        self.dim = len(self.sc)
        self.field = field
        self.realization = [[list(r) for r in M] for M in realization] if realization is not None else None
        if check:
            self.validate()

    # construction -----------------------------------------------------------
    @classmethod
    def from_matrices(cls, mats: Sequence[Matrix], field=None, check: bool = True) -> "LieAlgebra":
        """Matrix Lie algebra spanned by ``mats`` (must be bracket-closed)."""
        mats = [[list(r) for r in M] for M in mats]
        cs = CoordinateSystem([flatten(M) for M in mats])
        d = len(mats)
        sc = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                c = cs.coords(flatten(commutator(mats[i], mats[j])))
                if c is None:
                    raise LieAlgebraError("matrices are not closed under the bracket")
                sc[i][j] = c
                sc[j][i] = [-x for x in c]
        return cls(sc, field, mats, check=check)

    def subalgebra(self, basis: Sequence[Sequence], check: bool = True) -> "LieAlgebra":
        """Subalgebra spanned by ``basis`` (coordinate vectors), in that basis."""
        basis = [list(b) for b in basis]
        cs = CoordinateSystem(basis)
        d = len(basis)
        sc = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
        for i in range(d):
            for j in range(i + 1, d):
                c = cs.coords(self.bracket(basis[i], basis[j]))
                if c is None:
                    raise LieAlgebraError("subspace is not a subalgebra")
                sc[i][j] = c
                sc[j][i] = [-x for x in c]
        real = None
        if self.realization is not None:
            real = [self.element_matrix(b) for b in basis]
        return LieAlgebra(sc, self.field, real, check=check)

    def over(self, field: QuadField) -> "LieAlgebra":
        """Scalar extension to a quadratic field (same structure constants)."""
        return LieAlgebra(self.sc, field, self.realization, check=False)

    # elementary operations -----------------------------------------------
    def zero(self) -> list:
        return [ZERO] * self.dim

    def basis_vector(self, i: int) -> list:
        v = self.zero()
        v[i] = ONE
        return v

    def bracket(self, u: Sequence, v: Sequence) -> list:
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b or i == j:
                    continue
                ab = a * b
                for k, c in enumerate(self.sc[i][j]):
                    if c:
                        out[k] = out[k] + ab * c
        return out

    @cached_property
    def ad_basis(self) -> list[Matrix]:
        # ad(x_i)[k][j] = c[i][j][k]
        return [[[self.sc[i][j][k] for j in range(self.dim)] for k in range(self.dim)] for i in range(self.dim)]

    def ad(self, v: Sequence) -> Matrix:
        return lin_comb(v, self.ad_basis) if self.dim else []

    def element_matrix(self, v: Sequence) -> Matrix:
        if self.realization is None:
            raise LieAlgebraError("algebra has no matrix realization")
        return lin_comb(v, self.realization)

    # checks -----------------------------------------------------------------
    def validate(self) -> None:
        n = self.dim
        for plane in self.sc:
            if len(plane) != n or any(len(r) != n for r in plane):
                raise LieAlgebraError("structure constants must be dim x dim x dim")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.sc[i][j][k] != -self.sc[j][i][k]:
                        raise LieAlgebraError("structure constants are not antisymmetric")
        if not self.jacobi_holds():
            raise LieAlgebraError("Jacobi identity fails")
        if self.realization is not None and not self.realization_consistent():
            raise LieAlgebraError("realization does not match the structure constants")

    def jacobi_holds(self) -> bool:
        n = self.dim
        e = [self.basis_vector(i) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                bij = self.sc[i][j]
                for k in range(j + 1, n):
                    s = self.bracket(bij, e[k])
                    t = self.bracket(self.sc[j][k], e[i])
                    u = self.bracket(self.sc[k][i], e[j])
                    if any(a + b + c for a, b, c in zip(s, t, u)):
                        return False
        return True

    def realization_consistent(self) -> bool:
        R = self.realization
        if len(R) != self.dim:
            return False
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                lhs = commutator(R[i], R[j])
                rhs = lin_comb(self.sc[i][j], R) if self.dim else lhs
                if any(a != b for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb)):
                    return False
        return True

    def is_subalgebra(self, S: Subspace) -> bool:
        vs = S.vectors()
        return all(S.contains(self.bracket(u, v)) for i, u in enumerate(vs) for v in vs[i + 1 :])

    def is_ideal(self, S: Subspace) -> bool:
        vs = S.vectors()
        return all(S.contains(self.bracket(self.basis_vector(i), v)) for i in range(self.dim) for v in vs)

    # serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        out = {
            "dim": self.dim,
            "field": {"kind": "Q"} if self.field is None else self.field.to_json(),
            "sc": [[[element_to_json(x) for x in r] for r in plane] for plane in self.sc],
        }
        if self.realization is not None:
            out["realization"] = [matrix_to_json(M) for M in self.realization]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "LieAlgebra":
        fld = data.get("field", {"kind": "Q"})
        F = None if fld.get("kind", "Q") == "Q" else QuadField(int(fld["a"]))
        sc = [[[element_from_json(x, F) for x in r] for r in plane] for plane in data["sc"]]
        if len(sc) != int(data["dim"]):
            raise LieAlgebraError("dim does not match the structure constants")
        real = data.get("realization")
        if real is not None:
            real = [matrix_from_json(M, F) for M in real]
        return cls(sc, F, real)


# ---------------------------------------------------------------------------
# standard algebras


def sl2(field=None) -> LieAlgebra:
    """sl2 in the Chevalley basis (e, h, f)."""
    e = [[ZERO, ONE], [ZERO, ZERO]]
    h = [[ONE, ZERO], [ZERO, -ONE]]
    f = [[ZERO, ZERO], [ONE, ZERO]]
    return LieAlgebra.from_matrices([e, h, f], field)


def gl2() -> LieAlgebra:
    mats = []
    for i in range(2):
        for j in range(2):
            M = zeros(2, 2)
            M[i][j] = ONE
            mats.append(M)
    return LieAlgebra.from_matrices(mats)


def so3(field=None) -> LieAlgebra:
    """Cross-product algebra: [x,y]=z, [y,z]=x, [z,x]=y."""
    sc = [[[ZERO] * 3 for _ in range(3)] for _ in range(3)]
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        sc[i][j][k] = ONE
        sc[j][i][k] = -ONE
    return LieAlgebra(sc, field)


def abelian(n: int, field=None) -> LieAlgebra:
    return LieAlgebra([[[ZERO] * n for _ in range(n)] for _ in range(n)], field)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    n1, n2 = L1.dim, L2.dim
    n = n1 + n2
    sc = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            for k in range(n1):
                sc[i][j][k] = L1.sc[i][j][k]
    for i in range(n2):
        for j in range(n2):
            for k in range(n2):
                sc[n1 + i][n1 + j][n1 + k] = L2.sc[i][j][k]
    return LieAlgebra(sc, L1.field)


# ---------------------------------------------------------------------------
# invariants


def killing_form(L: LieAlgebra) -> Matrix:
    ads = L.ad_basis
    n = L.dim
    K = zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            v = trace(matmul(ads[i], ads[j]))
            K[i][j] = K[j][i] = v
    return K


def is_semisimple(L: LieAlgebra) -> bool:
    if L.dim == 0:
        return False
    return bool(det(killing_form(L)))


def centre(L: LieAlgebra) -> Subspace:
    # x central iff ad(e_j) x = 0 for all j
    rows = [row for A in L.ad_basis for row in A]
    return kernel(rows, L.dim)


def derived_algebra(L: LieAlgebra) -> Subspace:
    vecs = [L.sc[i][j] for i in range(L.dim) for j in range(i + 1, L.dim)]
    return Subspace.span(vecs, L.dim)


def bracket_space(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    vecs = [L.bracket(a, b) for a in A.vectors() for b in B.vectors()]
    return Subspace.span(vecs, L.dim)


def centroid(L: LieAlgebra) -> list[Matrix]:
    """Basis of {X : X ad(y) = ad(y) X for all y}, identity first when present."""
    n = L.dim
    kb = KernelBuilder(n * n)
    for A in L.ad_basis:
        # (XA - AX)[i][j] = sum_k X[i][k]A[k][j] - A[i][k]X[k][j]
        for i in range(n):
            for j in range(n):
                row = [ZERO] * (n * n)
                for k in range(n):
                    if A[k][j]:
                        row[i * n + k] = row[i * n + k] + A[k][j]
                    if A[i][k]:
                        row[k * n + j] = row[k * n + j] - A[i][k]
                kb.add(row)
    space = kb.result()
    ident = flatten(identity(n))
    vecs = space.vectors()
    if space.contains(ident):
        chosen = [ident]
        for v in vecs:
            if rank(chosen + [v]) > len(chosen):
                chosen.append(v)
        vecs = chosen
    return [[v[i * n : (i + 1) * n] for i in range(n)] for v in vecs]


def normalizer(L: LieAlgebra, S: Subspace) -> Subspace:
    """{x : [x, S] in S}."""
    if S.dim == 0:
        return Subspace.full(L.dim)
    ann = S.annihilator().vectors()  # functionals vanishing on S
    rows = []
    for s in S.vectors():
        # [x, s] = -ad(s) x
        A = L.ad(s)
        for w in ann:
            rows.append([sum((w[k] * A[k][j] for k in range(L.dim)), ZERO) for j in range(L.dim)])
    if not rows:
        return Subspace.full(L.dim)
    return kernel(rows, L.dim)


def radical(L: LieAlgebra) -> Subspace:
    """Killing-orthogonal complement of [L, L] (characteristic 0)."""
    D = derived_algebra(L)
    if D.dim == 0:
        return Subspace.full(L.dim)
    K = killing_form(L)
    rows = [[sum((d[i] * K[i][j] for i in range(L.dim)), ZERO) for j in range(L.dim)] for d in D.vectors()]
    return kernel(rows, L.dim)


def _assoc_closure(mats: list[Matrix]) -> list[Matrix]:
    """Basis of the associative algebra (with 1) generated by ``mats``."""
    if not mats:
        return []
    n = len(mats[0])
    basis = [identity(n)]
    space = Subspace.span([flatten(basis[0])], n * n)
    frontier = [identity(n)]
    while frontier:
        new = []
        for M in frontier:
            for G in mats:
                P = matmul(M, G)
                v = flatten(P)
                if not space.contains(v):
                    space = Subspace.span(space.vectors() + [v], n * n)
                    basis.append(P)
                    new.append(P)
        frontier = new
    return basis


def nilradical(L: LieAlgebra, R: Subspace | None = None) -> Subspace:
    """Largest nilpotent ideal: elements of the radical with nilpotent ad.

    ad(R) generates an associative algebra A whose semisimple quotient is
    commutative, so ad(x) is nilpotent iff ad(x) lies in the radical of A,
    which is the kernel of the trace form of A in characteristic 0.
    """
    if R is None:
        R = radical(L)
    if R.dim == 0:
        return R
    rvecs = R.vectors()
    ads = [L.ad(r) for r in rvecs]
    A = _assoc_closure(ads)
    m = len(A)
    G = [[trace(matmul(A[i], A[j])) for j in range(m)] for i in range(m)]
    radA = kernel(G, m)
    rad_mats = [lin_comb(c, A) for c in radA.vectors()]
    rad_space = Subspace.span([flatten(M) for M in rad_mats], L.dim * L.dim) if rad_mats else Subspace.zero(L.dim * L.dim)
    # x = sum c_i r_i with ad(x) in rad_space  <=>  c in kernel of (proj to complement)
    ann = rad_space.annihilator().vectors()
    flat_ads = [flatten(M) for M in ads]
    rows = [[sum((w[k] * fa[k] for k in range(len(w))), ZERO) for fa in flat_ads] for w in ann]
    if not rows:
        coeffs = Subspace.full(R.dim)
    else:
        coeffs = kernel(rows, R.dim)
    return Subspace.span([vec_comb(c, rvecs) for c in coeffs.vectors()], L.dim)


def derived_series(L: LieAlgebra, S: Subspace) -> list[Subspace]:
    out = [S]
    while out[-1].dim:
        nxt = bracket_space(L, out[-1], out[-1])
        if nxt.dim == out[-1].dim:
            break
        out.append(nxt)
    return out


@dataclass
class LeviData:
    nilradical: Subspace
    radical: Subspace
    levi: Subspace


def levi_subalgebra(L: LieAlgebra, R: Subspace) -> Subspace:
    """A Levi complement to the radical R (Levi-Malcev lifting)."""
    if R.dim == L.dim:
        return Subspace.zero(L.dim)
    if R.dim == 0:
        return Subspace.full(L.dim)
    n = L.dim
    comp = R.complement_basis()
    k = len(comp)
    full_cs = CoordinateSystem(comp + R.vectors())

    def split(v):
        c = full_cs.coords(v)
        return c[:k], c[k:]

    # structure constants of L/R in the complement basis
    quot = [[split(L.bracket(comp[i], comp[j]))[0] for j in range(k)] for i in range(k)]
    xs = [list(v) for v in comp]
    series = derived_series(L, R)
    if series[-1].dim:
        raise LieAlgebraError("radical is not solvable")
    for m in range(len(series) - 1):
        Rm, Rn = series[m], series[m + 1]
        rm = Rm.vectors()
        dm = len(rm)
        ann = Rn.annihilator().vectors() if Rn.dim else [[ONE if j == i else ZERO for j in range(n)] for i in range(n)]
        # unknowns: a[i][t] with r_i = sum_t a[i][t] rm[t]
        rows, rhs = [], []
        for i in range(k):
            for j in range(i + 1, k):
                target = vec_comb(quot[i][j], xs)
                err = [a - b for a, b in zip(L.bracket(xs[i], xs[j]), target)]
                # [x_i, r_j] + [r_i, x_j] - sum_l c_ijl r_l = -err  (mod Rn)
                coeffvecs = {}
                for t in range(dm):
                    coeffvecs[(j, t)] = L.bracket(xs[i], rm[t])
                    v = L.bracket(rm[t], xs[j])
                    key = (i, t)
                    coeffvecs[key] = [a + b for a, b in zip(coeffvecs.get(key, [ZERO] * n), v)]
                    for l in range(k):
                        c = quot[i][j][l]
                        if c:
                            key = (l, t)
                            coeffvecs[key] = [a - c * b for a, b in zip(coeffvecs.get(key, [ZERO] * n), rm[t])]
                for w in ann:
                    row = [ZERO] * (k * dm)
                    for (ii, t), vec in coeffvecs.items():
                        row[ii * dm + t] = row[ii * dm + t] + sum((w[q] * vec[q] for q in range(n)), ZERO)
                    rows.append(row)
                    rhs.append(-sum((w[q] * err[q] for q in range(n)), ZERO))
        if not rows:
            continue
        sol = solve(rows, rhs)
        if sol is None:
            raise LieAlgebraError("Levi lifting failed")
        for i in range(k):
            corr = vec_comb(sol[i * dm : (i + 1) * dm], rm)
            xs[i] = [a + b for a, b in zip(xs[i], corr)]
    S = Subspace.span(xs, n)
    if not L.is_subalgebra(S):
        raise LieAlgebraError("Levi lifting did not produce a subalgebra")
    return S


def levi_data(L: LieAlgebra) -> LeviData:
    R = radical(L)
    N = nilradical(L, R)
    K = levi_subalgebra(L, R)
    return LeviData(N, R, K)


# ---------------------------------------------------------------------------
# sl2 identification


@dataclass
class Sl2Triple:
    e: list
    h: list
    f: list

    def as_list(self) -> list[list]:
        return [self.e, self.h, self.f]

    def check(self, L: LieAlgebra) -> bool:
        he = L.bracket(self.h, self.e)
        hf = L.bracket(self.h, self.f)
        ef = L.bracket(self.e, self.f)
        return (
            all(a == 2 * b for a, b in zip(he, self.e))
            and all(a == -2 * b for a, b in zip(hf, self.f))
            and all(a == b for a, b in zip(ef, self.h))
        )

    def conjugate(self) -> "Sl2Triple":
        return Sl2Triple([conj(x) for x in self.e], [conj(x) for x in self.h], [conj(x) for x in self.f])


def isotropic_vector(K: Matrix, field=None, height: int = DEFAULT_HEIGHT) -> tuple[list | None, ConicCertificate]:
    """Nonzero v with v^T K v = 0 for a nondegenerate 3x3 symmetric K."""
    T, d = diagonalize_symmetric(K)
    D = TernaryForm.diagonal(*d, field=field)
    cert = solve_conic(D, height)
    if not cert.solvable:
        return None, cert
    v = [sum((T[i][j] * cert.point[j] for j in range(3)), ZERO) for i in range(3)]
    return v, cert


def find_sl2_triple(L: LieAlgebra, height: int = DEFAULT_HEIGHT) -> tuple[Sl2Triple | None, ConicCertificate]:
    """Chevalley triple of a 3-dim semisimple L, with the conic certificate.

    An isotropic Killing vector a has nilpotent ad; b with [a, b] = a gives
    the Cartan element h = -2b.
    """
    if L.dim != 3:
        raise LieAlgebraError("identify_sl2 needs a 3-dimensional algebra")
    K = killing_form(L)
    if not det(K):
        raise LieAlgebraError("identify_sl2 needs a semisimple algebra")
    a, cert = isotropic_vector(K, L.field, height)
    if a is None:
        return None, cert
    ad_a = L.ad(a)
    if not is_nilpotent(ad_a):
        raise LieAlgebraError("isotropic element is not ad-nilpotent")
    b = solve(ad_a, a)
    if b is None:
        raise LieAlgebraError("no b with [a, b] = a")
    h = [-2 * x for x in b]
    e = list(a)
    ad_h = L.ad(h)
    Fsp = eigenspace(ad_h, -2)
    if Fsp.dim != 1:
        raise LieAlgebraError("ad(h) has no -2 eigenvector")
    f = Fsp.vectors()[0]
    ef = L.bracket(e, f)
    idx = next(i for i, x in enumerate(h) if x)
    lam = ef[idx] / h[idx]
    f = [x / lam for x in f]
    t = Sl2Triple(e, h, f)
    if not t.check(L):
        raise LieAlgebraError("constructed triple fails the sl2 relations")
    return t, cert


def identify_sl2(L: LieAlgebra, height: int = DEFAULT_HEIGHT) -> Sl2Triple | None:
    return find_sl2_triple(L, height)[0]


# ---------------------------------------------------------------------------
# decomposition into two simple ideals


def _quadratic_roots(p: list, field):
    """Roots in the field of the monic quadratic t^2 + p1 t + p0."""
    c0, c1 = p[0], p[1]
    disc = c1 * c1 - 4 * c0
    if isinstance(disc, QuadExt) or field is not None:
        if not isinstance(disc, QuadExt):
            disc = QuadExt(disc, ZERO, field)
        if not disc:
            return None
        s = qext_sqrt(disc)
    else:
        s = rational_sqrt(disc)
    if s is None or not s:
        return None
    return ((-c1 + s) / 2, (-c1 - s) / 2)


def _lex_key(v):
    out = []
    for x in v:
        if isinstance(x, QuadExt):
            out.append((x.x, x.y))
        else:
            out.append((x, 0))
    return out


def decompose_two_ideals(L: LieAlgebra) -> tuple[Subspace, Subspace] | None:
    """Split a 6-dim semisimple L into two 3-dim ideals, None if simple.

    Uses a non-scalar centroid element: its minimal polynomial is quadratic
    and its root eigenspaces are the ideals.
    """
    if L.dim != 6 or not is_semisimple(L):
        raise LieAlgebraError("decompose_two_ideals needs a 6-dim semisimple algebra")
    C = centroid(L)
    if len(C) < 2:
        return None
    c = C[1]
    mp = minimal_polynomial(c)
    if len(mp) != 3:
        raise LieAlgebraError("centroid element does not have a quadratic minimal polynomial")
    roots = _quadratic_roots(mp, L.field)
    if roots is None:
        return None
    I1, I2 = eigenspace(c, roots[0]), eigenspace(c, roots[1])
    if I1.dim != 3 or I2.dim != 3:
        return None
    if _lex_key(I2.basis[0]) < _lex_key(I1.basis[0]):
        I1, I2 = I2, I1
    return I1, I2
