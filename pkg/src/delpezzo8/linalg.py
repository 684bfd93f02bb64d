"""Exact dense linear algebra over Q and Q(sqrt(a)).

Matrices are plain row-major lists of lists; vectors are lists.  Entries
are ``mpq`` or :class:`~delpezzo8.field.QuadExt`, and rational zeros may
be mixed freely with extension elements.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from .field import ONE, ZERO, as_rational, element_from_json, element_to_json, mpq

Matrix = list  # list[list[element]]
Vector = list


class DimensionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# construction and elementary operations


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int, one=ONE) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = one
    return out


def as_matrix(rows) -> Matrix:
    return [[as_rational(x) if isinstance(x, (int, str)) else x for x in r] for r in rows]


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def _dot(u, v):
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise DimensionError(f"cannot multiply {shape(A)} by {shape(B)}")
    Bt = transpose(B)
    return [[_dot(row, col) for col in Bt] for row in A]


def matvec(A: Matrix, v: Vector) -> Vector:
    if A and len(A[0]) != len(v):
        raise DimensionError("matrix/vector size mismatch")
    return [_dot(row, v) for row in A]


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A: Matrix) -> Matrix:
    return [[c * a for a in r] for r in A]


def commutator(A: Matrix, B: Matrix) -> Matrix:
    return mat_sub(matmul(A, B), matmul(B, A))


def trace(A: Matrix):
    s = ZERO
    for i in range(len(A)):
        s = s + A[i][i]
    return s


def is_zero_matrix(A: Matrix) -> bool:
    return all(not x for r in A for x in r)


def lin_comb(coeffs: Sequence, mats: Sequence[Matrix]) -> Matrix:
    """Sum of c_i * M_i for equally shaped matrices."""
    r, c = shape(mats[0])
    out = zeros(r, c)
    for k, M in zip(coeffs, mats):
        if not k:
            continue
        for i in range(r):
            Mi, Oi = M[i], out[i]
            for j in range(c):
                if Mi[j]:
                    Oi[j] = Oi[j] + k * Mi[j]
    return out


def vec_comb(coeffs: Sequence, vecs: Sequence[Vector]) -> Vector:
    out = [ZERO] * len(vecs[0])
    for k, v in zip(coeffs, vecs):
        if not k:
            continue
        for j, x in enumerate(v):
            if x:
                out[j] = out[j] + k * x
    return out


def flatten(A: Matrix) -> Vector:
    return [x for r in A for x in r]


def unflatten(v: Vector, rows: int, cols: int) -> Matrix:
    return [list(v[i * cols : (i + 1) * cols]) for i in range(rows)]


def map_entries(f, A: Matrix) -> Matrix:
    return [[f(x) for x in r] for r in A]


# ---------------------------------------------------------------------------
# elimination


def rref(A: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows = [list(r) for r in A]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    out: list[list] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = ONE / prow[c]
        if inv != 1:
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = rows[:r]
    return out, pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def det(A: Matrix):
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionError("det of a non-square matrix")
    M = [list(r) for r in A]
    d = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        p = M[c][c]
        d = d * p
        for i in range(c + 1, n):
            f = M[i][c]
            if f:
                f = f / p
                Mi, Mc = M[i], M[c]
                for j in range(c, n):
                    if Mc[j]:
                        Mi[j] = Mi[j] - f * Mc[j]
    return d


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in R]


def solve(A: Matrix, b: Vector) -> Vector | None:
    """One exact solution of A x = b, or None if the system is inconsistent."""
    m, n = shape(A)
    if len(b) != m:
        raise DimensionError(f"right-hand side of length {len(b)} for {m} equations")
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, piv = rref(aug)
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for row, c in zip(R, piv):
        x[c] = row[n]
    return x


def solve_matrix(A: Matrix, B: Matrix) -> Matrix | None:
    """Solve A X = B column by column; None if any column is inconsistent."""
    cols = []
    for col in transpose(B):
        x = solve(A, col)
        if x is None:
            return None
        cols.append(x)
    return transpose(cols)


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F^n held as the nonzero rows of a reduced echelon form."""

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, vectors: Iterable[Vector], ambient_dim: int) -> "Subspace":
        vs = [list(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionError("vector length differs from ambient dimension")
        R, piv = rref(vs)
        return cls(ambient_dim, tuple(tuple(r) for r in R), tuple(piv))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(identity(ambient_dim), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[Vector]:
        return [list(b) for b in self.basis]

    def coordinates(self, v: Vector) -> Vector | None:
        """Coordinates of v in the echelon basis, None if v is not in the span."""
        coords = [v[p] for p in self.pivots]
        w = vec_comb(coords, self.basis) if self.basis else [ZERO] * self.ambient_dim
        if any(a != b for a, b in zip(w, v)):
            return None
        return coords

    def contains(self, v: Vector) -> bool:
        return self.coordinates(v) is not None

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(list(b)) for b in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and all(
                all(x == y for x, y in zip(r, s)) for r, s in zip(self.basis, other.basis)
            )
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.pivots))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.vectors() + other.vectors(), self.ambient_dim)

    def intersection(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        # a*U = b*W  <=>  (a, -b) in ker [U^T | -W^T]
        U, W = self.vectors(), other.vectors()
        M = [
            [U[i][k] for i in range(len(U))] + [-W[j][k] for j in range(len(W))]
            for k in range(self.ambient_dim)
        ]
        K = kernel(M)
        return Subspace.span(
            [vec_comb(c[: len(U)], U) for c in K.vectors()], self.ambient_dim
        )

    def complement_basis(self) -> list[Vector]:
        """Standard unit vectors completing the echelon basis to F^n."""
        return [
            [ONE if j == i else ZERO for j in range(self.ambient_dim)]
            for i in range(self.ambient_dim)
            if i not in self.pivots
        ]

    def annihilator(self) -> "Subspace":
        """Linear functionals vanishing on the subspace (as vectors)."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return kernel(self.vectors())

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "basis": [[element_to_json(x) for x in b] for b in self.basis],
        }


def kernel(A: Matrix, ncols: int | None = None) -> Subspace:
    """Null space {x : A x = 0} in canonical echelon form."""
    if not A:
        if ncols is None:
            raise DimensionError("cannot infer the column count of an empty matrix")
        return Subspace.full(ncols)
    n = len(A[0])
    R, piv = rref(A)
    free = [c for c in range(n) if c not in set(piv)]
    vecs = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, p in zip(R, piv):
            if row[f]:
                v[p] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, n)


class KernelBuilder:
    """Null space of a long stream of equations over a fixed set of unknowns.

    Keeps a basis of the solutions of the equations seen so far; each new
    equation either is already satisfied or removes one basis vector.  This
    is much cheaper than eliminating the full stacked system when there are
    many more equations than unknowns.
    """

    def __init__(self, n: int):
        self.n = n
        self.basis: list[list] = [
            [ONE if j == i else ZERO for j in range(n)] for i in range(n)
        ]
        self._support = [[i] for i in range(n)]

    def add(self, row: Vector) -> None:
        if not self.basis:
            return
        nz = [(j, c) for j, c in enumerate(row) if c]
        if not nz:
            return
        vals = []
        for v in self.basis:
            s = ZERO
            for j, c in nz:
                x = v[j]
                if x:
                    s = s + c * x
            vals.append(s)
        p = next((i for i, s in enumerate(vals) if s), None)
        if p is None:
            return
        vp = self.basis[p]
        sp = vals[p]
        nzp = [j for j, x in enumerate(vp) if x]
        new = []
        for i, (v, s) in enumerate(zip(self.basis, vals)):
            if i == p:
                continue
            if s:
                f = s / sp
                v = list(v)
                for j in nzp:
                    v[j] = v[j] - f * vp[j]
            new.append(v)
        self.basis = new

    def add_rows(self, rows: Iterable[Vector]) -> None:
        for r in rows:
            self.add(r)
            if not self.basis:
                return

    def result(self) -> Subspace:
        return Subspace.span(self.basis, self.n)


# ---------------------------------------------------------------------------
# polynomials of one variable (coefficient lists, constant term first)


# ---------------------------------------------------------------------------
# integer lattices


def _lll(rows: list[list[int]]) -> list[list[int]]:
    D = DomainMatrix([[ZZ(x) for x in r] for r in rows], (len(rows), len(rows[0])), ZZ)
    return [[int(x) for x in r] for r in D.lll().to_list()]


def _row_kernel(a: list[int]) -> list[list[int]]:
    """Basis of {x in Z^m : a.x = 0} by unimodular column operations (a[-1] != 0)."""
    m = len(a)
    a = list(a)
    cols = [[int(i == j) for i in range(m)] for j in range(m)]
    for i in range(m - 1):
        x, y = a[-1], a[i]
        if not y:
            continue
        g, s, t = gmpy2.gcdext(x, y)
        g, s, t = int(g), int(s), int(t)
        c0, ci = cols[-1], cols[i]
        cols[-1] = [s * u + t * v for u, v in zip(c0, ci)]
        cols[i] = [(-y // g) * u + (x // g) * v for u, v in zip(c0, ci)]
        a[-1], a[i] = g, 0
    return cols[:-1]


def integer_lattice_basis(vectors: Sequence[Vector]) -> list[list[int]]:
    """LLL-reduced basis of Z^n intersected with the rational span of ``vectors``.

    Saturating first matters: a basis obtained by clearing denominators
    generates a sublattice of large index, and its reduction stays large.
    """
    B = Subspace.span(vectors, len(vectors[0]))
    k = B.dim
    rows = B.basis  # echelon form with unit pivots
    Wb = [[int(i == j) for j in range(k)] for i in range(k)]
    for c in range(B.ambient_dim):
        col = [mpq(r[c]) for r in rows]
        vals = [sum((w[i] * col[i] for i in range(k)), ZERO) for w in Wb]
        d = 1
        for x in vals:
            d = d * int(x.denominator) // math.gcd(d, int(x.denominator))
        if d == 1:
            continue
        r = [int(x * d) % d for x in vals] + [d]
        U = [u[:k] for u in _row_kernel(r)]
        Wb = _lll([[sum(u[i] * Wb[i][j] for i in range(k)) for j in range(k)] for u in U])
    out = [[int(sum((w[i] * rows[i][c] for i in range(k)), ZERO)) for c in range(B.ambient_dim)] for w in Wb]
    return _lll(out)


def poly_eval_matrix(coeffs: Sequence, A: Matrix) -> Matrix:
    n = len(A)
    out = zeros(n, n)
    for c in reversed(coeffs):
        out = matmul(out, A)
        for i in range(n):
            out[i][i] = out[i][i] + c
    return out


def minimal_polynomial(A: Matrix) -> list:
    """Monic minimal polynomial, as coefficients from the constant term up.

    Found as the first linear dependence in the Krylov sequence I, A, A^2, ...
    of flattened matrix powers.
    """
    n = len(A)
    if any(len(r) != n for r in A):
        raise DimensionError("minimal polynomial of a non-square matrix")
    powers = [flatten(identity(n))]
    P = identity(n)
    for k in range(1, n + 1):
        P = matmul(P, A)
        powers.append(flatten(P))
        # solve sum_{i<k} c_i A^i = -A^k
        M = transpose(powers[:k])
        c = solve(M, [-x for x in powers[k]])
        if c is not None:
            return list(c) + [ONE]
    raise AssertionError("Cayley-Hamilton violated")  # pragma: no cover


def is_nilpotent(A: Matrix) -> bool:
    mp = minimal_polynomial(A)
    return all(not c for c in mp[:-1])


def eigenspace(A: Matrix, lam) -> Subspace:
    n = len(A)
    M = [[A[i][j] - (lam if i == j else ZERO) for j in range(n)] for i in range(n)]
    return kernel(M)


def charpoly(A: Matrix) -> list:
    """Characteristic polynomial via Faddeev-LeVerrier (char 0)."""
    n = len(A)
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    M = zeros(n, n)
    for k in range(1, n + 1):
        AM = matmul(A, M)
        for i in range(n):
            AM[i][i] = AM[i][i] + coeffs[n - k + 1]
        M = AM
        coeffs[n - k] = -trace(matmul(A, M)) / k
    return coeffs


# ---------------------------------------------------------------------------
# JSON


def matrix_to_json(A: Matrix) -> dict:
    r, c = shape(A)
    return {"rows": r, "cols": c, "entries": [[element_to_json(x) for x in row] for row in A]}


def matrix_from_json(data, field=None) -> Matrix:
    if isinstance(data, dict):
        entries = data["entries"]
        r, c = int(data["rows"]), int(data["cols"])
        if len(entries) != r or any(len(row) != c for row in entries):
            raise DimensionError("matrix JSON shape does not match rows/cols")
    else:
        entries = data
        if entries and any(len(row) != len(entries[0]) for row in entries):
            raise DimensionError("ragged matrix")
    return [[element_from_json(x, field) for x in row] for row in entries]


def random_int_matrix(rng, n: int, bound: int) -> Matrix:
    return [[mpq(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
