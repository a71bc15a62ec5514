"""Laurent polynomials in a fixed S-unit, for certificates with huge units.

A ``UnitPoly`` is sum_i c_i * E^i with c_i in O_{K,S} and E an ``SUnit``. Its
value is an element of O_{K,S} that is never expanded. Relations between such
values are decided in one of three ways:

* polynomial identities (b = a*c with c having S-integral coefficients);
* congruences modulo a concrete divisor, computed in O_K/P^k;
* nonvanishing witnessed by a nonzero image modulo some prime.

Anything else raises ``Undecided``; no answer is ever guessed.
"""
from __future__ import annotations

from sympy import nextprime

from .ideals import factor_element
from .qfield import KElem
from .residue import ResidueRing
from .sring import SRing, SUnit, is_s_integer, split_prime


class Undecided(RuntimeError):
    """The relation cannot be settled by the certificate checker."""


class UnitPoly:
    __slots__ = ("unit", "coeffs")

    def __init__(self, unit: SUnit, coeffs: dict[int, KElem]):
        self.unit = unit
        self.coeffs = {e: c for e, c in coeffs.items() if c}

    @classmethod
    def power(cls, unit: SUnit, k: int = 1) -> "UnitPoly":
        return cls(unit, {k: unit.R.field.one})

    def __repr__(self) -> str:
        terms = " + ".join(f"{c!r}*E^{e}" for e, c in sorted(self.coeffs.items()))
        return f"UnitPoly({terms or '0'})"

    def _lift(self, b) -> "UnitPoly":
        if isinstance(b, UnitPoly):
            if b.unit != self.unit:
                raise ValueError("polynomials in different units")
            return b
        return UnitPoly(self.unit, {0: self.unit.R.field.coerce(b)})

    def __add__(self, b):
        b = self._lift(b)
        out = dict(self.coeffs)
        for e, c in b.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return UnitPoly(self.unit, out)

    __radd__ = __add__

    def __neg__(self):
        return UnitPoly(self.unit, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, b):
        return self + (-self._lift(b))

    def __rsub__(self, b):
        return self._lift(b) - self

    def __mul__(self, b):
        b = self._lift(b)
        out: dict[int, KElem] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in b.coeffs.items():
                e = e1 + e2
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return UnitPoly(self.unit, out)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return all(e == 0 for e in self.coeffs)

    def constant(self) -> KElem:
        return self.coeffs.get(0, self.unit.R.field.zero)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def image(self, ring: ResidueRing):
        eps = self.unit.image(ring)
        out = ring.sub(ring.one(), ring.one())
        for e, c in self.coeffs.items():
            out = ring.add(out, ring.mul(ring.image(c), ring.pow(eps, e)))
        return out

    def coefficients_in_ring(self, R: SRing) -> bool:
        return all(is_s_integer(R, c) for c in self.coeffs.values())


Value = "KElem | UnitPoly"


def _laurent_divide(a: UnitPoly, b: UnitPoly) -> UnitPoly | None:
    """b / a as a Laurent polynomial, or None if a does not divide b exactly."""
    K = a.unit.R.field
    ma, mb = min(a.coeffs), min(b.coeffs)
    A = [a.coeffs.get(ma + i, K.zero) for i in range(max(a.coeffs) - ma + 1)]
    B = [b.coeffs.get(mb + i, K.zero) for i in range(max(b.coeffs) - mb + 1)]
    if len(B) < len(A):
        return None
    lead_inv = A[-1].inverse()
    Q = [K.zero] * (len(B) - len(A) + 1)
    B = list(B)
    for i in range(len(Q) - 1, -1, -1):
        c = B[i + len(A) - 1] * lead_inv
        Q[i] = c
        if c:
            for j, aj in enumerate(A):
                B[i + j] = B[i + j] - c * aj
    if any(B):
        return None
    return UnitPoly(a.unit, {mb - ma + i: c for i, c in enumerate(Q)})


def _nonzero_witness(R: SRing, b: UnitPoly, tries: int = 40) -> bool:
    """True if b(E) is shown nonzero by a nonzero image modulo some prime."""
    ell = 2
    below = set(R.rational_primes)
    for _ in range(tries):
        ell = nextprime(ell)
        if ell in below:
            continue
        if any(c.den % ell == 0 for c in b.coeffs.values()):
            continue
        for P in split_prime(R.field, ell):
            ring = ResidueRing(R.field, P, 1)
            try:
                if not ring.is_zero(b.image(ring)):
                    return True
            except ValueError:
                continue
    return False


def non_s_support(R: SRing, c: KElem) -> list[tuple]:
    """[(P, k)] for primes P outside S with v_P(c) = k > 0."""
    return [(P, k) for P, k in factor_element(c).items() if k > 0 and P not in R.S]


def congruent_zero(R: SRing, b: UnitPoly, c: KElem) -> bool:
    """c | b(E) in O_{K,S} for a nonzero concrete c in O_{K,S}."""
    for P, k in non_s_support(R, c):
        ring = ResidueRing(R.field, P, k)
        if not ring.is_zero(b.image(ring)):
            return False
    return True


def sym_divides(R: SRing, a, b) -> bool:
    if not isinstance(a, UnitPoly):
        a = b._lift(a)
    if not isinstance(b, UnitPoly):
        b = a._lift(b)
    if not b:
        return True
    if a.is_constant():
        c = a.constant()
        if not c:
            if _nonzero_witness(R, b):
                return False
            raise Undecided(f"cannot decide whether {b!r} vanishes")
        if b.is_constant():
            from .sring import divides
            return divides(R, c, b.constant())
        return congruent_zero(R, b, c)
    q = _laurent_divide(a, b)
    if q is not None and q.coefficients_in_ring(R):
        return True
    if a.is_monomial():
        # a = c * E^m and E is a unit, so a | b iff c | b
        (c,) = a.coeffs.values()
        return sym_divides(R, UnitPoly(a.unit, {0: c}), b)
    raise Undecided(f"cannot decide {a!r} | {b!r}")


def sym_equal(R: SRing, a, b) -> bool:
    if not isinstance(a, UnitPoly):
        a = b._lift(a)
    diff = a - b
    if not diff:
        return True
    if diff.is_constant():
        return False
    if _nonzero_witness(R, diff):
        return False
    raise Undecided(f"cannot decide whether {diff!r} vanishes")
