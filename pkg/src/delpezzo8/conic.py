"""Zeros of ternary quadratic forms over Q and over Q(sqrt(a)).

Over Q the classical Legendre descent either produces a rational zero or
stops at a prime where the form has no p-adic zero.  Over a quadratic
field a bounded search is used instead; it reports ``inconclusive`` when
the height bound runs out without a point or a real-place obstruction.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

from .field import (
    ONE,
    ZERO,
    QuadExt,
    QuadField,
    element_to_json,
    factor,
    mpq,
    qext_sqrt,
    sqrt_mod_prime,
    squarefree_decomposition,
)
from .linalg import Matrix, det, identity, matvec

DEFAULT_HEIGHT = 10

SOLVABLE = "solvable"
UNSOLVABLE = "unsolvable"
INCONCLUSIVE = "inconclusive"


class DegenerateFormError(ValueError):
    pass


@dataclass(frozen=True)
class TernaryForm:
    """Symmetric 3x3 Gram matrix; ``field`` is None for Q."""

    matrix: tuple
    field: QuadField | None = None

    def __init__(self, matrix, field: QuadField | None = None):
        rows = tuple(tuple(r) for r in matrix)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("a ternary form needs a 3x3 matrix")
        for i in range(3):
            for j in range(3):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("form matrix is not symmetric")
        if all(not x for r in rows for x in r):
            raise ValueError("zero form")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "field", field)

    @classmethod
    def diagonal(cls, a, b, c, field=None) -> "TernaryForm":
        return cls([[a, ZERO, ZERO], [ZERO, b, ZERO], [ZERO, ZERO, c]], field)

    def as_list(self) -> Matrix:
        return [list(r) for r in self.matrix]

    def evaluate(self, p):
        return sum((p[i] * self.matrix[i][j] * p[j] for i in range(3) for j in range(3)), ZERO)

    def det(self):
        return det(self.as_list())

    def to_json(self) -> dict:
        out = {"matrix": [[element_to_json(x) for x in r] for r in self.matrix]}
        out["field"] = {"kind": "Q"} if self.field is None else self.field.to_json()
        return out


@dataclass
class ConicCertificate:
    verdict: str
    point: list | None = None
    obstruction: dict | None = None
    diagonal: list | None = None
    height: int | None = None
    extra: dict = dc_field(default_factory=dict)

    @property
    def solvable(self) -> bool:
        return self.verdict == SOLVABLE

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.point is not None:
            out["point"] = [element_to_json(x) for x in self.point]
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction
        if self.diagonal is not None:
            out["diagonal"] = [element_to_json(x) for x in self.diagonal]
        if self.height is not None:
            out["height"] = self.height
        out.update(self.extra)
        return out


# ---------------------------------------------------------------------------
# diagonalization by congruence


def diagonalize_symmetric(A: Matrix) -> tuple[Matrix, list]:
    """Return (T, d) with T^T A T = diag(d) and T invertible."""
    n = len(A)
    M = [list(r) for r in A]
    T = identity(n)

    def add_col(dst, src, c):
        # basis change e_dst <- e_dst + c e_src, applied as congruence
        for k in range(n):
            T[k][dst] = T[k][dst] + c * T[k][src]
        for k in range(n):
            M[k][dst] = M[k][dst] + c * M[k][src]
        for k in range(n):
            M[dst][k] = M[dst][k] + c * M[src][k]

    for i in range(n):
        if not M[i][i]:
            j = next((j for j in range(i + 1, n) if M[j][j]), None)
            if j is not None:
                for k in range(n):
                    T[k][i], T[k][j] = T[k][j], T[k][i]
                M[i], M[j] = M[j], M[i]
                for r in M:
                    r[i], r[j] = r[j], r[i]
            else:
                j = next((j for j in range(i + 1, n) if M[i][j]), None)
                if j is None:
                    continue
                add_col(i, j, ONE)
        p = M[i][i]
        if not p:
            continue
        for j in range(i + 1, n):
            if M[i][j]:
                add_col(j, i, -M[i][j] / p)
    return T, [M[i][i] for i in range(n)]


def diagonalize(f: TernaryForm) -> tuple[Matrix, TernaryForm]:
    T, d = diagonalize_symmetric(f.as_list())
    return T, TernaryForm.diagonal(*d, field=f.field)


# ---------------------------------------------------------------------------
# local symbols (independent re-checking of obstructions)


def _int_pair(a, b):
    a, b = mpq(a), mpq(b)
    # multiply by squares of denominators: same square class
    return int(a.numerator * a.denominator), int(b.numerator * b.denominator)


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a, b, p) -> int:
    """Hilbert symbol (a, b)_p for nonzero rationals; p a prime or 'inf'."""
    a, b = _int_pair(a, b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol of zero")
    if p in ("inf", "real", math.inf):
        return -1 if (a < 0 and b < 0) else 1
    p = int(p)
    alpha = beta = 0
    while a % p == 0:
        a //= p
        alpha += 1
    while b % p == 0:
        b //= p
        beta += 1
    if p == 2:
        eps = lambda u: ((u - 1) // 2) % 2
        omg = lambda u: ((u * u - 1) // 8) % 2
        e = eps(a) * eps(b) + alpha * omg(b) + beta * omg(a)
        return -1 if e % 2 else 1
    s = (-1) ** (alpha * beta * ((p - 1) // 2) % 2)
    if beta % 2:
        s *= _legendre(a, p)
    if alpha % 2:
        s *= _legendre(b, p)
    return s


def is_locally_anisotropic(diag, place) -> bool:
    """True iff a x^2 + b y^2 + c z^2 has no nontrivial zero over Q_place."""
    a, b, c = (mpq(x) for x in diag)
    return hilbert_symbol(-a * c, -b * c, place) == -1


def recheck_certificate(cert: ConicCertificate, form: TernaryForm | None = None) -> bool:
    """Independently confirm a certificate over Q.

    A point is checked by evaluating ``form``; an obstruction is checked
    with Hilbert symbols of the recorded diagonal form.
    """
    if cert.verdict == SOLVABLE:
        if form is None or cert.point is None or not any(cert.point):
            return False
        return not form.evaluate(cert.point)
    if cert.verdict != UNSOLVABLE or not cert.obstruction or cert.diagonal is None:
        return False
    place = cert.obstruction.get("prime", cert.obstruction.get("place"))
    if any(isinstance(x, QuadExt) for x in cert.diagonal):
        if place != "real":
            return False
        F = next(x.field for x in cert.diagonal if isinstance(x, QuadExt))
        branch = cert.obstruction.get("branch", 1)
        d = [x if isinstance(x, QuadExt) else QuadExt(x, ZERO, F) for x in cert.diagonal]
        return len({x.real_sign(branch) for x in d}) == 1
    return is_locally_anisotropic(cert.diagonal, place)


# ---------------------------------------------------------------------------
# Legendre descent over Q


class _Obstruction(Exception):
    def __init__(self, place):
        self.place = place


def _sqrt_mod_squarefree(a: int, m: int) -> int:
    """r with r^2 = a mod |m| (m squarefree), centred; raises _Obstruction."""
    m = abs(m)
    r, mod = 0, 1
    for p in factor(m).primes():
        s = sqrt_mod_prime(a, p)
        if s is None:
            raise _Obstruction(p)
        # CRT: r = r mod `mod`, s mod p
        t = ((s - r) * pow(mod, -1, p)) % p
        r += mod * t
        mod *= p
    r %= mod
    if 2 * r > mod:
        r -= mod
    return r


def _descent(A: int, B: int) -> tuple[int, int, int]:
    """(w, x, y) nonzero with w^2 = A x^2 + B y^2, A and B squarefree."""
    if abs(A) > abs(B):
        w, y, x = _descent(B, A)
        return w, x, y
    if A == 1:
        return 1, 1, 0
    if B == 1:
        return 1, 0, 1
    if A < 0 and B < 0:
        raise _Obstruction("real")
    if A == -1 and B == -1:  # pragma: no cover - caught above
        raise _Obstruction("real")
    r = _sqrt_mod_squarefree(A, B)
    q = (r * r - A) // B
    b0, d = squarefree_decomposition(q)
    W, X, Y = _descent(A, b0)
    w, x, y = -A * X + r * W, r * X - W, Y * b0 * d
    g = math.gcd(math.gcd(w, x), y)
    return w // g, x // g, y // g


def _primitive_integer(v: list) -> list:
    v = [mpq(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, int(x.denominator))
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return [mpq(x) for x in ints]


def solve_diagonal_q(a, b, c) -> ConicCertificate:
    """Nontrivial rational zero of a x^2 + b y^2 + c z^2, or an obstruction."""
    a, b, c = mpq(a), mpq(b), mpq(c)
    diag = [a, b, c]
    if not (a and b and c):
        raise DegenerateFormError("degenerate diagonal form")
    # a X^2 + b Y^2 = -c Z^2; with W = c Z: W^2 = -ac X^2 - bc Y^2
    A, B = -a * c, -b * c
    An, Am = squarefree_decomposition(int(A.numerator * A.denominator))
    Bn, Bm = squarefree_decomposition(int(B.numerator * B.denominator))
    # A = An * (Am / A.den)^2
    sa = mpq(Am, int(A.denominator))
    sb = mpq(Bm, int(B.denominator))
    try:
        w, x1, y1 = _descent(An, Bn)
    except _Obstruction as exc:
        ob = {"place": "real"} if exc.place == "real" else {"prime": int(exc.place)}
        return ConicCertificate(UNSOLVABLE, obstruction=ob, diagonal=diag)
    X, Y, Z = mpq(x1) / sa, mpq(y1) / sb, mpq(w) / c
    p = _primitive_integer([X, Y, Z])
    return ConicCertificate(SOLVABLE, point=p, diagonal=diag)


def solve_conic_q(f: TernaryForm) -> ConicCertificate:
    if f.field is not None:
        raise ValueError("solve_conic_q needs a form over Q")
    if not f.det():
        raise DegenerateFormError("degenerate ternary form (det = 0)")
    T, D = diagonalize(f)
    d = [D.matrix[i][i] for i in range(3)]
    cert = solve_diagonal_q(*d)
    if cert.solvable:
        p = _primitive_integer(matvec(T, cert.point))
        assert f.evaluate(p) == 0
        cert = ConicCertificate(SOLVABLE, point=p, diagonal=d)
    return cert


# ---------------------------------------------------------------------------
# forms over Q(sqrt(a))


def _ring_elements(F: QuadField, h: int):
    """Elements p + q*w of the maximal order with max(|p|,|q|) == h."""
    a = F.a
    w = QuadExt(mpq(1, 2), mpq(1, 2), F) if a % 4 == 1 else F.gen()
    rng = range(-h, h + 1)
    for p in rng:
        for q in rng:
            if max(abs(p), abs(q)) == h:
                yield p + q * w


def _real_obstruction(d, F: QuadField):
    if F.a < 0:
        return None
    for branch in (1, -1):
        signs = {x.real_sign(branch) for x in d}
        if len(signs) == 1:
            return branch
    return None


def _integral_primitive(v: list, F: QuadField) -> list:
    v = [x if isinstance(x, QuadExt) else QuadExt(x, ZERO, F) for x in v]
    den = 1
    for x in v:
        for r in (x.x, x.y):
            den = den * int(r.denominator) // math.gcd(den, int(r.denominator))
    v = [x * den for x in v]
    g = 0
    for x in v:
        g = math.gcd(g, int(x.x))
        g = math.gcd(g, int(x.y))
    return [x / g for x in v]


def solve_diagonal_qext(d, F: QuadField, height: int = DEFAULT_HEIGHT) -> ConicCertificate:
    d = [x if isinstance(x, QuadExt) else QuadExt(x, ZERO, F) for x in d]
    if any(not x for x in d):
        raise DegenerateFormError("degenerate diagonal form")
    branch = _real_obstruction(d, F)
    if branch is not None:
        return ConicCertificate(
            UNSOLVABLE, obstruction={"place": "real", "branch": branch}, diagonal=d
        )
    # two-term zeros: d_i + d_j s^2 = 0
    for i, j in itertools.permutations(range(3), 2):
        s = qext_sqrt(-d[i] / d[j])
        if s is not None:
            p = [ZERO, ZERO, ZERO]
            p[i], p[j] = QuadExt(ONE, ZERO, F), s
            return ConicCertificate(SOLVABLE, point=p, diagonal=d)
    # search x, y of bounded height; z^2 = -(d0 x^2 + d1 y^2) / d2
    for h in range(1, height + 1):
        for H in range(h + 1):
            pairs = []
            for x in _ring_elements(F, h):
                for y in _ring_elements(F, H):
                    pairs.append((x, y))
                    if H != h:
                        pairs.append((y, x))
            for x, y in pairs:
                t = -(d[0] * x * x + d[1] * y * y) / d[2]
                if not t:
                    continue
                z = qext_sqrt(t)
                if z is not None:
                    return ConicCertificate(SOLVABLE, point=[x, y, z], diagonal=d, height=h)
    return ConicCertificate(INCONCLUSIVE, diagonal=d, height=height)


def solve_conic_qext(f: TernaryForm, height: int = DEFAULT_HEIGHT) -> ConicCertificate:
    if f.field is None:
        raise ValueError("solve_conic_qext needs a form over a quadratic field")
    F = f.field
    if not f.det():
        raise DegenerateFormError("degenerate ternary form (det = 0)")
    T, D = diagonalize(f)
    d = [D.matrix[i][i] for i in range(3)]
    cert = solve_diagonal_qext(d, F, height)
    if cert.solvable:
        p = _integral_primitive(matvec(T, cert.point), F)
        assert not f.evaluate(p)
        cert.point = p
    return cert


def solve_conic(f: TernaryForm, height: int = DEFAULT_HEIGHT) -> ConicCertificate:
    if f.field is None:
        return solve_conic_q(f)
    return solve_conic_qext(f, height)


def form_from_json(data: dict) -> TernaryForm:
    from .field import element_from_json

    fld = data.get("field", {"kind": "Q"})
    F = None if fld.get("kind", "Q") == "Q" else QuadField(int(fld["a"]))
    m = [[element_from_json(x, F) for x in r] for r in data["matrix"]]
    return TernaryForm(m, F)
