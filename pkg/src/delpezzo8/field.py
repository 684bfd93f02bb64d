"""Exact arithmetic over Q and quadratic extensions Q(sqrt(a)).

Rationals are ``gmpy2.mpq`` values throughout the package.  Elements of a
quadratic extension are :class:`QuadExt` instances tied to a
:class:`QuadField` descriptor.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache, total_ordering

import gmpy2
from gmpy2 import mpq, mpz

Q = mpq
ZERO = mpq(0)
ONE = mpq(1)


def as_rational(value) -> mpq:
    """Coerce ints, strings ("p/q"), Fractions and mpq to ``mpq``."""
    if isinstance(value, str):
        value = value.strip()
        if not value:
            raise ValueError("empty rational literal")
        return mpq(value)
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted")
    return mpq(value)


def rational_to_str(r) -> str:
    r = mpq(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def is_rational(x) -> bool:
    return isinstance(x, (int, type(ZERO), type(mpz(0))))


def digits(r) -> int:
    """Decimal length of the larger of numerator and denominator."""
    r = mpq(r)
    return max(len(str(abs(r.numerator))), len(str(r.denominator)))


# ---------------------------------------------------------------------------
# integer number theory

_SMALL_PRIME_LIMIT = 10**6
_small_primes: list[int] | None = None


def _primes_upto(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def _small_prime_list() -> list[int]:
    global _small_primes
    if _small_primes is None:
        _small_primes = _primes_upto(_SMALL_PRIME_LIMIT)
    return _small_primes


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 with the fixed base set."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_pm1(n: int, bound: int = 100_000) -> int | None:
    """Pollard p-1 stage one; a proper factor of n or None."""
    N = mpz(n)
    a = mpz(2)
    for p in _small_prime_list():
        if p > bound:
            break
        pk = p
        while pk * p <= bound:
            pk *= p
        a = gmpy2.powmod(a, pk, N)
    g = int(gmpy2.gcd(a - 1, N))
    return g if 1 < g < n else None


def _pollard_brent(n: int, seed: int) -> int:
    N = mpz(n)
    if N % 2 == 0:
        return 2
    rng = random.Random(seed)
    while True:
        y = mpz(rng.randrange(1, n))
        c = mpz(rng.randrange(1, n))
        m = 128
        g = r = 1
        q = mpz(1)
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % N
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % N
                    q = q * abs(x - y) % N
                g = gmpy2.gcd(q, N)
                k += m
            r *= 2
        if g == N:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % N
                g = gmpy2.gcd(abs(x - ys), N)
        if g != N:
            return int(g)


@dataclass(frozen=True)
class Factorization:
    sign: int
    prime_powers: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = self.sign
        for p, e in self.prime_powers:
            out *= p**e
        return out

    def primes(self) -> list[int]:
        return [p for p, _ in self.prime_powers]


def factor(n: int) -> Factorization:
    """Complete prime factorization: trial division, Pollard p-1, Pollard-Brent rho."""
    n = int(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    return _factor_cached(n)


@lru_cache(maxsize=4096)
def _factor_cached(n: int) -> Factorization:
    sign = -1 if n < 0 else 1
    n = abs(n)
    found: dict[int, int] = {}
    for p in _small_prime_list():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    stack = [n] if n > 1 else []
    seed = 1
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            found[m] = found.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        d = _pollard_pm1(m) or _pollard_brent(m, seed)
        seed += 1
        stack.extend((d, m // d))
    return Factorization(sign, tuple(sorted(found.items())))


def squarefree_part(n: int) -> int:
    """The squarefree d with n = d*m^2, keeping the sign of n."""
    f = factor(n)
    d = f.sign
    for p, e in f.prime_powers:
        if e % 2:
            d *= p
    return d


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return (d, m) with n = d*m^2 and d squarefree."""
    f = factor(n)
    d, m = f.sign, 1
    for p, e in f.prime_powers:
        if e % 2:
            d *= p
        m *= p ** (e // 2)
    return d, m


def is_square_int(n: int) -> bool:
    return n >= 0 and gmpy2.is_square(mpz(n))


def rational_sqrt(r) -> mpq | None:
    """Exact square root of a nonnegative rational square, else None."""
    r = mpq(r)
    if r < 0:
        return None
    p, q = r.numerator, r.denominator
    if not (gmpy2.is_square(p) and gmpy2.is_square(q)):
        return None
    return mpq(gmpy2.isqrt(p), gmpy2.isqrt(q))


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of a modulo the prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0 or p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


# ---------------------------------------------------------------------------
# quadratic extensions


@dataclass(frozen=True)
class QuadField:
    """The field Q(alpha) with alpha^2 = a, a squarefree and not a square."""

    a: int

    def __post_init__(self):
        a = int(self.a)
        if a == 0:
            raise ValueError("a must be nonzero")
        d, _ = squarefree_decomposition(a)
        if d != a:
            raise ValueError(f"{a} is not squarefree; use QuadField.normalized")
        if d == 1:
            raise ValueError("a must not be a square")

    @classmethod
    def normalized(cls, a) -> tuple["QuadField", mpq]:
        """Field for sqrt(a) with a rational; also returns m with sqrt(a) = m*alpha."""
        a = mpq(a)
        num = int(a.numerator) * int(a.denominator)
        d, m = squarefree_decomposition(num)
        return cls(d), mpq(m, int(a.denominator))

    def gen(self) -> "QuadExt":
        return QuadExt(ZERO, ONE, self)

    def __call__(self, x, y=0) -> "QuadExt":
        return QuadExt(x, y, self)

    def to_json(self) -> dict:
        return {"kind": "QuadExt", "a": self.a}


@total_ordering
class QuadExt:
    """x + y*alpha in a quadratic field; immutable."""

    __slots__ = ("x", "y", "field")

    def __init__(self, x, y, field: QuadField):
        self.x = mpq(x)
        self.y = mpq(y)
        self.field = field

    # coercion ---------------------------------------------------------
    def _coerce(self, other) -> "QuadExt | None":
        if isinstance(other, QuadExt):
            if other.field != self.field:
                raise ValueError(
                    f"mixing Q(sqrt({self.field.a})) and Q(sqrt({other.field.a}))"
                )
            return other
        if is_rational(other):
            return QuadExt(other, ZERO, self.field)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.x + o.x, self.y + o.y, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.x, -self.y, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.x - o.x, self.y - o.y, self.field)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(o.x - self.x, o.y - self.y, self.field)

    def __mul__(self, other):
        if is_rational(other):
            return QuadExt(self.x * other, self.y * other, self.field)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a = self.field.a
        return QuadExt(
            self.x * o.x + a * self.y * o.y, self.x * o.y + self.y * o.x, self.field
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadExt(self.x / n, -self.y / n, self.field)

    def __truediv__(self, other):
        if is_rational(other):
            return QuadExt(self.x / other, self.y / other, self.field)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = QuadExt(ONE, ZERO, self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # queries ------------------------------------------------------------
    def conjugate(self) -> "QuadExt":
        return QuadExt(self.x, -self.y, self.field)

    def norm(self) -> mpq:
        return self.x * self.x - self.field.a * self.y * self.y

    def trace(self) -> mpq:
        return 2 * self.x

    def is_rational(self) -> bool:
        return self.y == 0

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.field == other.field and self.x == other.x and self.y == other.y
        if is_rational(other):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __lt__(self, other):
        # lexicographic on (x, y); used only for deterministic tie-breaking
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.x, self.y) < (o.x, o.y)

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.field.a))

    def __repr__(self):
        return f"QuadExt({rational_to_str(self.x)}, {rational_to_str(self.y)}, a={self.field.a})"

    def __str__(self):
        if self.y == 0:
            return rational_to_str(self.x)
        return f"{rational_to_str(self.x)}+{rational_to_str(self.y)}*sqrt({self.field.a})"

    def to_json(self) -> dict:
        return {"x": rational_to_str(self.x), "y": rational_to_str(self.y), "a": self.field.a}

    @classmethod
    def from_json(cls, data: dict) -> "QuadExt":
        return cls(as_rational(data["x"]), as_rational(data["y"]), QuadField(int(data["a"])))

    def real_sign(self, branch: int = 1) -> int:
        """Sign of x + y*sqrt(a) under the real embedding sqrt(a) -> branch*|sqrt(a)|."""
        if self.field.a < 0:
            raise ValueError("imaginary quadratic field has no real embedding")
        x, y = self.x, self.y * branch
        sx = (x > 0) - (x < 0)
        sy = (y > 0) - (y < 0)
        if sy == 0:
            return sx
        if sx == 0 or sx == sy:
            return sy
        # opposite signs: compare x^2 with a*y^2
        diff = x * x - self.field.a * y * y
        return sx if diff > 0 else (sy if diff < 0 else 0)


def qext_sqrt(z) -> QuadExt | None:
    """Square root of z in its quadratic field, or None when z is not a square.

    If w = u + v*alpha squares to z = x + y*alpha then u^2 + a v^2 = x and
    2uv = y, so u^2 = (x +- sqrt(N(z)))/2 with N(z) = x^2 - a y^2 a rational
    square.
    """
    if not isinstance(z, QuadExt):
        raise TypeError("qext_sqrt expects a QuadExt")
    F = z.field
    if not z:
        return QuadExt(ZERO, ZERO, F)
    if z.y == 0:
        r = rational_sqrt(z.x)
        if r is not None:
            return QuadExt(r, ZERO, F)
        r = rational_sqrt(z.x / F.a)
        if r is not None:
            return QuadExt(ZERO, r, F)
        return None
    s = rational_sqrt(z.norm())
    if s is None:
        return None
    for cand in ((z.x + s) / 2, (z.x - s) / 2):
        u = rational_sqrt(cand)
        if u is not None and u != 0:
            w = QuadExt(u, z.y / (2 * u), F)
            if w * w == z:
                return w
    return None


def conj(v):
    """Galois conjugate of a field element (identity on rationals)."""
    if isinstance(v, QuadExt):
        return v.conjugate()
    return v


def is_zero(v) -> bool:
    return not v


def element_to_json(v):
    if isinstance(v, QuadExt):
        return v.to_json()
    return rational_to_str(v)


def element_from_json(data, field: QuadField | None = None):
    if isinstance(data, dict):
        return QuadExt.from_json(data)
    r = as_rational(data)
    return QuadExt(r, ZERO, field) if field is not None else r
