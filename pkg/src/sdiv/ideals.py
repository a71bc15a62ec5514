"""Prime ideals, valuations and class numbers in the maximal order O_K."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from sympy import factorint, isprime, sqrt_mod, divisors

from .qfield import KElem, QuadField


@dataclass(frozen=True)
class PrimeIdeal:
    """The prime (p, w - r) of O_K, or (p) itself when p is inert.

    Identity is ``(d, p, r)``; ``r`` is None for inert primes. ``tag`` is the
    name used in ring spec strings: ``r`` ramified, ``i`` inert, ``s1``/``s2``
    the split prime with the smaller/larger root.
    """

    d: int
    p: int
    r: int | None
    e: int = field(compare=False)
    f: int = field(compare=False)
    tag: str = field(compare=False)
    gen2: KElem = field(compare=False, repr=False)
    conj_r: int | None = field(compare=False, repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def name(self) -> str:
        return f"({self.p}, {self.r})" if self.r is not None else f"({self.p})"

    def __repr__(self) -> str:
        return f"P{self.p}{self.tag}"

    def sort_key(self):
        return (self.p, -1 if self.r is None else self.r)


def _vp(m: int, p: int) -> int:
    if m == 0:
        raise ValueError("valuation of 0")
    m = abs(m)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def _roots_min_poly(K: QuadField, p: int) -> list[int]:
    """Roots of X^2 - tX + n modulo p, sorted."""
    if p == 2:
        return [r for r in (0, 1) if (r * r - K.t * r + K.n) % 2 == 0]
    if K.disc % p == 0:
        return [(K.t * pow(2, -1, p)) % p]
    s = sqrt_mod(K.disc % p, p, all_roots=True)
    if not s:
        return []
    inv2 = pow(2, -1, p)
    return sorted({((K.t + si) * inv2) % p for si in s})


@lru_cache(maxsize=None)
def split_prime(K: QuadField, p: int) -> tuple[PrimeIdeal, ...]:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if K.disc % p == 0:
        (r,) = _roots_min_poly(K, p)
        return (PrimeIdeal(K.d, p, r, 2, 1, "r", KElem.make(K, r, -1), r),)
    roots = _roots_min_poly(K, p)
    if not roots:
        return (PrimeIdeal(K.d, p, None, 1, 2, "i", KElem.make(K, p, 0), None),)
    r1, r2 = roots
    return (
        PrimeIdeal(K.d, p, r1, 1, 1, "s1", KElem.make(K, r1, -1), r2),
        PrimeIdeal(K.d, p, r2, 1, 1, "s2", KElem.make(K, r2, -1), r1),
    )


def field_of(P: PrimeIdeal, K: QuadField) -> None:
    if P.d != K.d:
        raise ValueError(f"{P!r} is not a prime of {K}")


def _int_valuation(K: QuadField, x: int, y: int, P: PrimeIdeal) -> int:
    p = P.p
    if P.f == 2:
        return min(_vp(x, p) if x else 10**18, _vp(y, p) if y else 10**18)
    nn = x * x + K.t * x * y + K.n * y * y
    if P.e == 2:
        return _vp(nn, p)
    c = min(_vp(x, p) if x else 10**18, _vp(y, p) if y else 10**18)
    pc = p ** c
    x1, y1 = x // pc, y // pc
    if (x1 + y1 * P.r) % p:
        return c
    return c + _vp(nn // (pc * pc), p)


def valuation(a: KElem, P: PrimeIdeal) -> int:
    if not a:
        raise ValueError("valuation of 0 is not defined")
    v = _int_valuation(a.K, a.x, a.y, P)
    if a.den % P.p == 0:
        v -= P.e * _vp(a.den, P.p)
    return v


def factor_element(a: KElem) -> dict[PrimeIdeal, int]:
    """Factorization of the fractional ideal a*O_K as {prime: exponent}."""
    if not a:
        raise ValueError("cannot factor 0")
    K = a.K
    primes = set(factorint(a.numerator_norm())) | set(factorint(a.den))
    out = {}
    for p in sorted(primes):
        for P in split_prime(K, p):
            v = valuation(a, P)
            if v:
                out[P] = v
    return out


def factorization_norm(fac: dict[PrimeIdeal, int]) -> Fraction:
    out = Fraction(1)
    for P, k in fac.items():
        out *= Fraction(P.q) ** k
    return out


def format_factorization(fac: dict[PrimeIdeal, int]) -> str:
    parts = [f"({P.p}, {'-' if P.r is None else P.r})^{k}"
             for P, k in sorted(fac.items(), key=lambda it: it[0].sort_key())]
    return " ".join(parts) if parts else "1"


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced primitive positive definite forms (a, b, c) with b^2 - 4ac = D."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"bad discriminant {D}")
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    return out


@lru_cache(maxsize=None)
def _class_number_disc(D: int) -> int:
    return len(reduced_forms(D))


def class_number(K: QuadField) -> int:
    return _class_number_disc(K.disc)


def principal_generator(K: QuadField, fac: dict[PrimeIdeal, int]) -> KElem | None:
    """A generator g of the integral ideal prod P^k, or None if it is not principal."""
    if any(k < 0 for k in fac.values()):
        raise ValueError("principal_generator expects an integral ideal")
    N = 1
    for P, k in fac.items():
        N *= P.q ** k
    for g in K.elements_of_norm(N):
        if all(_int_valuation(K, g.x, g.y, P) == k for P, k in fac.items()):
            return g
    return None


@lru_cache(maxsize=None)
def is_principal(K: QuadField, P: PrimeIdeal, k: int) -> KElem | None:
    return principal_generator(K, {P: k})


@lru_cache(maxsize=None)
def class_order(K: QuadField, P: PrimeIdeal) -> int:
    for k in divisors(class_number(K)):
        if is_principal(K, P, k) is not None:
            return k
    raise ArithmeticError(f"no power of {P!r} up to h_K is principal")  # pragma: no cover


def hensel_root(K: QuadField, P: PrimeIdeal, k: int) -> int:
    """Lift the root r of X^2 - tX + n at a split prime to a root mod p^k."""
    if P.e != 1 or P.f != 1:
        raise ValueError("Hensel lifting needs an unramified degree-one prime")
    p, r = P.p, P.r
    mod = p
    while mod < p ** k:
        mod = min(mod * mod, p ** k)
        fr = r * r - K.t * r + K.n
        dfr = 2 * r - K.t
        r = (r - fr * pow(dfr, -1, mod)) % mod
    return r % (p ** k)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def isqrt_ceil(n: int) -> int:
    r = isqrt(n)
    return r if r * r == n else r + 1
