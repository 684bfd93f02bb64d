"""Modules over small Lie algebras: weight spaces and explicit isomorphisms."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .field import ZERO
from .lie import LieAlgebra, Sl2Triple
from .linalg import (
    KernelBuilder,
    Matrix,
    Subspace,
    commutator,
    det,
    eigenspace,
    inverse,
    kernel,
    lin_comb,
    matmul,
    matvec,
    transpose,
    unflatten,
)


class ModuleError(ValueError):
    pass


class ModuleAction:
    """Representation of ``algebra`` on F^m given by basis images."""

    def __init__(self, algebra: LieAlgebra, action: Sequence[Matrix], check: bool = True):
        if len(action) != algebra.dim:
            raise ModuleError("need one matrix per basis element")
        self.algebra = algebra
        self.action = [[list(r) for r in M] for M in action]
        self.m = len(self.action[0]) if self.action else 0
        if check:
            self.validate()

    def act(self, x: Sequence) -> Matrix:
        return lin_comb(x, self.action)

    def validate(self) -> None:
        L = self.algebra
        for i in range(L.dim):
            for j in range(i + 1, L.dim):
                lhs = self.act(L.sc[i][j])
                if lhs != commutator(self.action[i], self.action[j]):
                    raise ModuleError(f"action does not respect the bracket of basis elements {i}, {j}")


def is_intertwiner(M: Matrix, A: ModuleAction, B: ModuleAction) -> bool:
    return all(matmul(M, a) == matmul(b, M) for a, b in zip(A.action, B.action))


# ---------------------------------------------------------------------------
# generic linear method


def intertwiner_space(A: ModuleAction, B: ModuleAction) -> Subspace:
    """All M with M A(x) = B(x) M, flattened row-major."""
    if A.m != B.m or A.algebra.dim != B.algebra.dim:
        raise ModuleError("modules of different dimension or algebra")
    m = A.m
    kb = KernelBuilder(m * m)
    for a, b in zip(A.action, B.action):
        for r in range(m):
            for c in range(m):
                row = [ZERO] * (m * m)
                for k in range(m):
                    if a[k][c]:
                        row[r * m + k] = row[r * m + k] + a[k][c]
                    if b[r][k]:
                        row[k * m + c] = row[k * m + c] - b[r][k]
                kb.add(row)
    return kb.result()


def module_iso_linear(A: ModuleAction, B: ModuleAction, seed: int = 0) -> Matrix | None:
    """Invertible intertwiner from a generic point of the solution space."""
    S = intertwiner_space(A, B)
    m = A.m
    vecs = S.vectors()
    if not vecs:
        return None
    if len(vecs) == 1:
        M = unflatten(vecs[0], m, m)
        return M if det(M) else None
    rng = random.Random(seed)
    attempts = 0
    for bound in (1, 2, 4):
        for _ in range(7):
            attempts += 1
            if attempts > 20:
                break
            coeffs = [rng.randint(-bound, bound) for _ in vecs]
            M = unflatten(lin_comb(coeffs, vecs), m, m)
            if det(M):
                return M
    if len(vecs) <= 3:
        for coeffs in itertools.product(range(-3, 4), repeat=len(vecs)):
            if any(coeffs):
                M = unflatten(lin_comb(coeffs, vecs), m, m)
                if det(M):
                    return M
    return None


# ---------------------------------------------------------------------------
# weights


@dataclass
class WeightDecomposition:
    cartan_elements: list
    spaces: list  # (weight tuple, Subspace)

    def dims(self) -> dict:
        return {w: S.dim for w, S in self.spaces}


def _integer_eigenspaces(H: Matrix) -> list[tuple[int, Subspace]]:
    m = len(H)
    out = []
    total = 0
    for lam in range(-2 * m, 2 * m + 1):
        E = eigenspace(H, lam)
        if E.dim:
            out.append((lam, E))
            total += E.dim
    if total != m:
        raise ModuleError("Cartan element is not diagonalizable with integer eigenvalues")
    return out


def weight_decompose(A: ModuleAction, triples: Sequence[Sl2Triple]) -> WeightDecomposition:
    hs = [t.h for t in triples]
    spaces: list[tuple[tuple, Subspace]] = [((), Subspace.full(A.m))]
    for h in hs:
        split = _integer_eigenspaces(A.act(h))
        nxt = []
        for w, S in spaces:
            for lam, E in split:
                T = S.intersection(E)
                if T.dim:
                    nxt.append((w + (lam,), T))
        spaces = nxt
    return WeightDecomposition(hs, sorted(spaces, key=lambda ws: tuple(-x for x in ws[0])))


def _normalize(v: list) -> list:
    lead = next(x for x in v if x)
    return [x / lead for x in v]


def _common_kernel(mats: Sequence[Matrix]) -> Subspace:
    rows = [r for M in mats for r in M]
    return kernel(rows, len(mats[0][0]))


def _eigenvalue(M: Matrix, v: list):
    w = matvec(M, v)
    i = next(k for k, x in enumerate(v) if x)
    lam = w[i] / v[i]
    if any(a != lam * b for a, b in zip(w, v)):
        return None
    return lam


def _columns(vectors: Sequence[list]) -> Matrix:
    return transpose([list(v) for v in vectors])


def _solve_from_bases(basis_a: Sequence[list], basis_b: Sequence[list]) -> Matrix | None:
    Ca = _columns(basis_a)
    if not det(Ca):
        return None
    return matmul(_columns(basis_b), inverse(Ca))


# ---------------------------------------------------------------------------
# highest weight method


def highest_weight_vector(A: ModuleAction, triples: Sequence[Sl2Triple]) -> tuple[list, tuple] | None:
    K = _common_kernel([A.act(t.e) for t in triples])
    if K.dim != 1:
        return None
    v = _normalize(K.vectors()[0])
    weight = tuple(_eigenvalue(A.act(t.h), v) for t in triples)
    if any(w is None for w in weight):
        return None
    return v, weight


def _lowering_words(weight: tuple):
    # lexicographic in the exponents of f_1, f_2, ...
    return itertools.product(*[range(int(w) + 1) for w in weight])


def _apply_word(A: ModuleAction, Fs: Sequence[Matrix], word, v):
    for F, k in zip(Fs, word):
        for _ in range(k):
            v = matvec(F, v)
    return v


def highest_weight_iso(A: ModuleAction, B: ModuleAction, triples: Sequence[Sl2Triple]) -> Matrix | None:
    """Intertwiner matching highest weight vectors and lowering words."""
    if A.m != B.m:
        return None
    ha, hb = highest_weight_vector(A, triples), highest_weight_vector(B, triples)
    if ha is None or hb is None or ha[1] != hb[1]:
        return None
    weight = ha[1]
    if any(w != int(w) or w < 0 for w in weight):
        return None
    Fa = [A.act(t.f) for t in triples]
    Fb = [B.act(t.f) for t in triples]
    basis_a, basis_b = [], []
    for word in _lowering_words(weight):
        va = _apply_word(A, Fa, word, ha[0])
        vb = _apply_word(B, Fb, word, hb[0])
        if any(va):
            basis_a.append(va)
            basis_b.append(vb)
    if len(basis_a) != A.m:
        return None
    M = _solve_from_bases(basis_a, basis_b)
    if M is None or not det(M) or not is_intertwiner(M, A, B):
        return None
    return M


# ---------------------------------------------------------------------------
# blowup module: W2 + W3 + W4 under the Levi sl2, linked by the nilradical


def _weight_minus_one(L: LieAlgebra, h: list, nil: Sequence[list]) -> list | None:
    N = Subspace.span(nil, L.dim)
    E = eigenspace(L.ad(h), -1).intersection(N)
    return E.vectors()[0] if E.dim else None


def _blowup_basis(A: ModuleAction, t: Sl2Triple, n: list) -> list[list] | None:
    E, H, F, Nm = A.act(t.e), A.act(t.h), A.act(t.f), A.act(n)
    K = kernel(E)
    if K.dim != 3:
        return None
    top = K.intersection(eigenspace(H, 3))
    if top.dim != 1:
        return None
    w4 = _normalize(top.vectors()[0])
    w3 = matvec(Nm, w4)
    w2 = matvec(Nm, w3)
    if not any(w3) or not any(w2):
        return None
    if _eigenvalue(H, w3) != 2 or _eigenvalue(H, w2) != 1:
        return None
    out = []
    for w, length in ((w4, 4), (w3, 3), (w2, 2)):
        for _ in range(length):
            out.append(w)
            w = matvec(F, w)
        if any(w):
            return None
    return out


def blowup_module_iso(
    A: ModuleAction, B: ModuleAction, levi_triple: Sl2Triple, nilradical: Sequence[list]
) -> Matrix | None:
    """Intertwiner for the 6-dim blowup algebra acting on 9-dim modules.

    The Levi sl2 splits the module into irreducibles of dimensions 2, 3, 4.
    A weight -1 nilradical element carries the top of W4 to the top of W3
    and then W2, which pins the relative scalars.
    """
    if A.m != 9 or B.m != 9:
        return None
    n = _weight_minus_one(A.algebra, levi_triple.h, nilradical)
    if n is None:
        return None
    ba = _blowup_basis(A, levi_triple, n)
    bb = _blowup_basis(B, levi_triple, n)
    if ba is None or bb is None:
        return None
    M = _solve_from_bases(ba, bb)
    if M is None or not det(M) or not is_intertwiner(M, A, B):
        return None
    return M


def summand_dimensions(A: ModuleAction, t: Sl2Triple) -> list[int]:
    """Dimensions of the irreducible summands under one sl2 (from top weights)."""
    K = kernel(A.act(t.e))
    H = A.act(t.h)
    dims = []
    for lam, E in _integer_eigenspaces(H):
        k = K.intersection(E).dim
        dims.extend([lam + 1] * k)
    return sorted(dims)


def scalar_matrix_ratio(M1: Matrix, M2: Matrix):
    """c with M2 = c M1, or None."""
    flat1 = [x for r in M1 for x in r]
    flat2 = [x for r in M2 for x in r]
    i = next((k for k, x in enumerate(flat1) if x), None)
    if i is None:
        return None
    c = flat2[i] / flat1[i]
    return c if all(b == c * a for a, b in zip(flat1, flat2)) else None


__all__ = [
    "ModuleAction",
    "ModuleError",
    "WeightDecomposition",
    "blowup_module_iso",
    "highest_weight_iso",
    "highest_weight_vector",
    "intertwiner_space",
    "is_intertwiner",
    "module_iso_linear",
    "scalar_matrix_ratio",
    "summand_dimensions",
    "weight_decompose",
]
