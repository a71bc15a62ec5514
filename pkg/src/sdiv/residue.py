"""Finite quotients of O_K used for reductions, unit orders and congruence checks.

``QuotientRing(K, M)`` is O_K/M O_K for a rational integer M, with elements as
coordinate pairs mod M. ``ResidueRing(K, P, k)`` is O_K/P^k, localized so that
elements with denominators prime to P can be mapped in.
"""
from __future__ import annotations

from math import lcm

from sympy import factorint

from .ideals import PrimeIdeal, hensel_root, valuation, _vp
from .qfield import KElem, QuadField


class QuotientRing:
    """O_K / M O_K, elements are pairs (x, y) meaning x + y*w mod M."""

    def __init__(self, K: QuadField, M: int):
        self.K = K
        self.M = M
        self.key = ("quot", M)

    def image(self, a: KElem) -> tuple[int, int]:
        M = self.M
        inv = pow(a.den, -1, M)  # raises ValueError when den is not invertible
        return (a.x * inv % M, a.y * inv % M)

    def one(self):
        return (1 % self.M, 0)

    def mul(self, a, b):
        K, M = self.K, self.M
        bd = a[1] * b[1]
        return ((a[0] * b[0] - K.n * bd) % M, (a[0] * b[1] + a[1] * b[0] + K.t * bd) % M)

    def add(self, a, b):
        return ((a[0] + b[0]) % self.M, (a[1] + b[1]) % self.M)

    def sub(self, a, b):
        return ((a[0] - b[0]) % self.M, (a[1] - b[1]) % self.M)

    def norm(self, a) -> int:
        K = self.K
        return (a[0] * a[0] + K.t * a[0] * a[1] + K.n * a[1] * a[1]) % self.M

    def inverse(self, a):
        nn = self.norm(a)
        ninv = pow(nn, -1, self.M)
        cx, cy = (a[0] + self.K.t * a[1]), -a[1]
        return (cx * ninv % self.M, cy * ninv % self.M)

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inverse(a), -e
        result = self.one()
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_zero(self, a) -> bool:
        return a[0] % self.M == 0 and a[1] % self.M == 0

    def lift(self, a) -> KElem:
        return KElem.make(self.K, a[0], a[1], 1)


class ResidueRing:
    """O_K / P^k for a prime P, accepting elements that are P-integral.

    Split primes are handled through Z/p^k (w maps to a Hensel lift of the
    root), which lets elements whose denominator is divisible by p (but which
    are integral at P) be reduced. Inert and ramified primes use pairs mod p^K
    with K = ceil(k/e).
    """

    def __init__(self, K: QuadField, P: PrimeIdeal, k: int):
        if k < 1:
            raise ValueError("exponent must be positive")
        self.K, self.P, self.k = K, P, k
        self.key = ("res", P, k)
        self.split = P.e == 1 and P.f == 1
        if self.split:
            self.M = P.p ** k
        else:
            self.quot = QuotientRing(K, P.p ** (-(-k // P.e)))
            self.M = self.quot.M

    @property
    def unit_group_order(self) -> int:
        q = self.P.q
        return (q - 1) * q ** (self.k - 1)

    def image(self, a: KElem):
        P, K = self.P, self.K
        if self.split:
            j = _vp(a.den, P.p) if a.den % P.p == 0 else 0
            mod = P.p ** (self.k + j)
            R = hensel_root(K, P, self.k + j)
            num = (a.x + a.y * R) % mod
            if j:
                if num % (P.p ** j):
                    raise ValueError(f"{a!r} is not integral at {P!r}")
                num //= P.p ** j
            dd = a.den // P.p ** j
            return num * pow(dd, -1, self.M) % self.M
        if a.den % P.p == 0:
            raise ValueError(f"{a!r} is not integral at {P!r}")
        return self.quot.image(a)

    def one(self):
        return 1 if self.split else self.quot.one()

    def mul(self, a, b):
        return a * b % self.M if self.split else self.quot.mul(a, b)

    def sub(self, a, b):
        return (a - b) % self.M if self.split else self.quot.sub(a, b)

    def add(self, a, b):
        return (a + b) % self.M if self.split else self.quot.add(a, b)

    def inverse(self, a):
        return pow(a, -1, self.M) if self.split else self.quot.inverse(a)

    def pow(self, a, e: int):
        return pow(a, e, self.M) if self.split else self.quot.pow(a, e)

    def is_zero(self, a) -> bool:
        if self.split:
            return a % self.M == 0
        if self.quot.is_zero(a):
            return True
        if self.P.e == 1:
            return False
        return valuation(self.quot.lift(a), self.P) >= self.k

    def is_one(self, a) -> bool:
        return self.is_zero(self.sub(a, self.one()))

    def order(self, a) -> int:
        """Multiplicative order of a unit of O_K/P^k."""
        n = self.unit_group_order
        if not self.is_one(self.pow(a, n)):
            raise ValueError("element is not a unit modulo P^k")
        for ell in factorint(n):
            while n % ell == 0 and self.is_one(self.pow(a, n // ell)):
                n //= ell
        return n


def residue_int(K: QuadField, P: PrimeIdeal, a: KElem) -> int:
    """Image of a P-integral element in F_p for a degree-one prime P."""
    if P.f != 1:
        raise ValueError("residue_int needs a degree-one prime")
    if P.e == 1:
        return ResidueRing(K, P, 1).image(a)
    x, y = QuotientRing(K, P.p).image(a)
    return (x + y * P.r) % P.p


def order_mod_p(a: int, p: int) -> int:
    """Order of a in F_p^x."""
    a %= p
    if a == 0:
        raise ValueError("0 has no multiplicative order")
    n = p - 1
    for ell in factorint(n):
        while n % ell == 0 and pow(a, n // ell, p) == 1:
            n //= ell
    return n


def subgroup_order(gens: list[int], p: int) -> int:
    """Order of the subgroup of the cyclic group F_p^x generated by gens."""
    return lcm(1, *(order_mod_p(g, p) for g in gens))
