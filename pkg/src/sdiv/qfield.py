"""Exact arithmetic in imaginary quadratic fields K = Q(sqrt(d)).

Elements are stored as ``(x + y*w)/den`` over the integral basis {1, w}, where
``w = sqrt(d)`` if d = 2, 3 mod 4 and ``w = (1 + sqrt(d))/2`` if d = 1 mod 4.
With that choice O_K = Z[w] and an element is integral iff ``den == 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Union

from sympy import factorint

Number = Union[int, Fraction]


@dataclass(frozen=True)
class QuadField:
    """An imaginary quadratic field.

    ``t`` and ``n`` are the trace and norm of ``w``, so ``w**2 = t*w - n``.
    """

    d: int
    disc: int
    omega_kind: str  # "sqrt" or "half"
    t: int
    n: int
    w: int = field(compare=False)

    def __repr__(self) -> str:
        return f"QuadField(d={self.d})"

    def __call__(self, x: int = 0, y: int = 0, den: int = 1) -> "KElem":
        return KElem.make(self, x, y, den)

    @property
    def zero(self) -> "KElem":
        return KElem.make(self, 0, 0, 1)

    @property
    def one(self) -> "KElem":
        return KElem.make(self, 1, 0, 1)

    @property
    def omega(self) -> "KElem":
        return KElem.make(self, 0, 1, 1)

    @property
    def zeta(self) -> "KElem":
        """Generator of the torsion units."""
        return self.omega if self.w > 2 else KElem.make(self, -1, 0, 1)

    @property
    def torsion_units(self) -> list["KElem"]:
        z = self.zeta
        out = [self.one]
        for _ in range(self.w - 1):
            out.append(out[-1] * z)
        return out

    def coerce(self, a) -> "KElem":
        if isinstance(a, KElem):
            if a.K != self:
                raise ValueError("elements of different fields")
            return a
        if isinstance(a, int):
            return KElem.make(self, a, 0, 1)
        if isinstance(a, Fraction):
            return KElem.make(self, a.numerator, 0, a.denominator)
        if isinstance(a, str):
            return parse_elem(self, a)
        raise TypeError(f"cannot coerce {a!r} into {self}")

    def elements_of_norm(self, N: int) -> list["KElem"]:
        """All integral elements of norm exactly N, in a fixed order.

        The order prefers small |y|, then small |x|, then nonnegative
        coordinates, so e.g. 1+w comes before its associates.
        """
        if N < 0:
            return []
        if N == 0:
            return [self.zero]
        out = []
        if self.t == 0:
            ny = self.n
            ymax = isqrt(N // ny)
            for y in range(-ymax, ymax + 1):
                r = N - ny * y * y
                s = isqrt(r)
                if s * s == r:
                    for x in {s, -s}:
                        out.append((x, y))
        else:
            dd = -self.d
            ymax = isqrt(4 * N // dd)
            for y in range(-ymax, ymax + 1):
                r = 4 * N - dd * y * y
                if r < 0:
                    continue
                s = isqrt(r)
                if s * s != r:
                    continue
                for u in {s, -s}:
                    if (u - y) % 2 == 0:
                        out.append(((u - y) // 2, y))
        out.sort(key=lambda c: (abs(c[1]), abs(c[0]), c[0] < 0, c[1] < 0))
        return [KElem.make(self, x, y, 1) for x, y in out]


def make_field(d: int) -> QuadField:
    if d >= 0:
        raise ValueError(f"d must be negative, got {d}")
    if d != -1 and any(e > 1 for e in factorint(-d).values()):
        raise ValueError(f"d must be squarefree, got {d}")
    if d % 4 == 1:
        disc, kind, t, n = d, "half", 1, (1 - d) // 4
    else:
        disc, kind, t, n = 4 * d, "sqrt", 0, -d
    w = {-1: 4, -3: 6}.get(d, 2)
    return QuadField(d, disc, kind, t, n, w)


class KElem:
    """An element (x + y*w)/den of a QuadField, always in lowest terms."""

    __slots__ = ("K", "x", "y", "den")

    def __init__(self, K: QuadField, x: int, y: int, den: int):
        self.K = K
        self.x = x
        self.y = y
        self.den = den

    @classmethod
    def make(cls, K: QuadField, x: int, y: int, den: int = 1) -> "KElem":
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            x, y, den = -x, -y, -den
        g = gcd(gcd(x, y), den)
        if g > 1:
            x, y, den = x // g, y // g, den // g
        return cls(K, x, y, den)

    def __repr__(self) -> str:
        return format_elem(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, KElem):
            return (self.x, self.y, self.den, self.K.d) == (other.x, other.y, other.den, other.K.d)
        if isinstance(other, int):
            return self.y == 0 and self.den == 1 and self.x == other
        if isinstance(other, Fraction):
            return self.y == 0 and Fraction(self.x, self.den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.y == 0:
            return hash(Fraction(self.x, self.den))
        return hash((self.x, self.y, self.den, self.K.d))

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0

    def _other(self, b) -> "KElem | None":
        if isinstance(b, KElem):
            return b
        if isinstance(b, (int, Fraction)):
            return self.K.coerce(b)
        return None

    def __add__(self, b):
        b = self._other(b)
        if b is None:
            return NotImplemented
        if self.den == b.den:
            return KElem.make(self.K, self.x + b.x, self.y + b.y, self.den)
        return KElem.make(self.K, self.x * b.den + b.x * self.den,
                          self.y * b.den + b.y * self.den, self.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> "KElem":
        return KElem(self.K, -self.x, -self.y, self.den)

    def __sub__(self, b):
        b = self._other(b)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, b):
        b = self._other(b)
        if b is None:
            return NotImplemented
        return b + (-self)

    def __mul__(self, b):
        if isinstance(b, int):
            return KElem.make(self.K, self.x * b, self.y * b, self.den)
        b = self._other(b)
        if b is None:
            return NotImplemented
        K = self.K
        bd = self.y * b.y
        x = self.x * b.x - K.n * bd
        y = self.x * b.y + self.y * b.x + K.t * bd
        return KElem.make(K, x, y, self.den * b.den)

    __rmul__ = __mul__

    def conj(self) -> "KElem":
        return KElem(self.K, self.x + self.K.t * self.y, -self.y, self.den)

    def inverse(self) -> "KElem":
        if not self:
            raise ZeroDivisionError("division by zero in K")
        c = self.conj()
        nn = self.x * self.x + self.K.t * self.x * self.y + self.K.n * self.y * self.y
        # self = alpha/den, so 1/self = den*conj(alpha)/N(alpha)
        return KElem.make(self.K, c.x * self.den, c.y * self.den, nn)

    def __truediv__(self, b):
        b = self._other(b)
        if b is None:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, b):
        b = self._other(b)
        if b is None:
            return NotImplemented
        return b * self.inverse()

    def __pow__(self, k: int) -> "KElem":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.K.one
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def numerator_norm(self) -> int:
        """Norm of x + y*w (an integer)."""
        return self.x * self.x + self.K.t * self.x * self.y + self.K.n * self.y * self.y

    def norm(self) -> Fraction:
        return Fraction(self.numerator_norm(), self.den * self.den)

    def is_integral(self) -> bool:
        return self.den == 1

    def is_rational(self) -> bool:
        return self.y == 0

    def numerator(self) -> "KElem":
        return KElem(self.K, self.x, self.y, 1)


def arith(a: KElem, b: KElem | None, op: str) -> KElem:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    if op == "conj":
        return a.conj()
    raise ValueError(f"unknown op {op!r}")


def norm(a: KElem) -> Fraction:
    return a.norm()


def is_integral(a: KElem) -> bool:
    return a.den == 1


def norm_sum_bound(a: KElem, b: KElem) -> bool:
    """Exact squared triangle inequality N(a+b) <= N(a) + N(b) + 2*sqrt(N(a)N(b))."""
    na, nb, ns = a.norm(), b.norm(), (a + b).norm()
    # scale to integers so the square root bound is exact
    D = (a.den * b.den) ** 2
    prod = na * nb * D * D
    assert prod.denominator == 1
    r = isqrt(prod.numerator)
    if r * r < prod.numerator:
        r += 1
    return ns * D <= (na + nb) * D + 2 * r


def format_elem(a: KElem) -> str:
    sign = "-" if a.y < 0 else "+"
    return f"({a.x} {sign} {abs(a.y)}*w)/{a.den}"


_TOKEN = re.compile(r"\s*(?:(\d+)|(w)|([-+*/()]))")


def parse_elem(K: QuadField, text: str) -> KElem:
    """Parse expressions such as ``(3 - 2*w)/5``, ``1/2`` or ``-w``.

    Accepts integers, ``w``, + - * / and parentheses.
    """
    toks: list[str] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad element syntax at {pos}: {text!r}")
        toks.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    toks_iter = _Peek(toks)

    def expr() -> KElem:
        v = term()
        while toks_iter.peek() in ("+", "-"):
            op = toks_iter.next()
            r = term()
            v = v + r if op == "+" else v - r
        return v

    def term() -> KElem:
        v = unary()
        while toks_iter.peek() in ("*", "/"):
            op = toks_iter.next()
            r = unary()
            v = v * r if op == "*" else v / r
        return v

    def unary() -> KElem:
        if toks_iter.peek() == "-":
            toks_iter.next()
            return -unary()
        if toks_iter.peek() == "+":
            toks_iter.next()
            return unary()
        return atom()

    def atom() -> KElem:
        tok = toks_iter.next()
        if tok == "(":
            v = expr()
            if toks_iter.next() != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return v
        if tok == "w":
            return K.omega
        if tok is not None and tok.isdigit():
            return K(int(tok))
        raise ValueError(f"unexpected token {tok!r} in {text!r}")

    v = expr()
    if toks_iter.peek() is not None:
        raise ValueError(f"trailing input in {text!r}")
    return v


class _Peek:
    def __init__(self, items: list[str]):
        self.items = items
        self.i = 0

    def peek(self) -> str | None:
        return self.items[self.i] if self.i < len(self.items) else None

    def next(self) -> str | None:
        tok = self.peek()
        self.i += 1
        return tok


def iter_box(K: QuadField, bound: int) -> Iterator[KElem]:
    """Integral elements m + n*w with |m|, |n| <= bound, lexicographic in (m, n)."""
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            yield KElem(K, m, n, 1)
