"""The ring of S-integers O_{K,S} of an imaginary quadratic field.

Besides membership and divisibility this module holds the S-unit group: a
torsion generator plus a basis of the lattice of valuation vectors
{v in Z^s : prod P_i^v_i is principal}, and the ``SUnit`` type, which stores an
S-unit by exponents over that basis so that units of astronomical height can be
handled without expanding them.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd

from .ideals import (PrimeIdeal, class_number, class_order, factor_element,
                     principal_generator, split_prime, valuation, _vp)
from .qfield import KElem, QuadField, make_field
from .residue import ResidueRing, residue_int, subgroup_order


class RingError(ValueError):
    """An argument lies outside O_{K,S} or violates a precondition."""


class NotAUnit(RingError):
    pass


_SPEC_ITEM = re.compile(r"^(\d+)(r|i|s1|s2)$")


@dataclass(eq=False)
class SRing:
    field: QuadField
    S: tuple[PrimeIdeal, ...]
    h: int
    class_orders: tuple[int, ...]
    pis: tuple[KElem, ...]  # pis[i] generates S[i]^class_orders[i]
    basis: tuple[KElem, ...]  # free part of the S-unit group
    basis_vals: tuple[tuple[int, ...], ...]  # basis_vals[i][m] = v_{S[m]}(basis[i])
    spec: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __repr__(self) -> str:
        return f"SRing({self.spec or self.field})"

    @property
    def K(self) -> QuadField:
        return self.field

    @property
    def w(self) -> int:
        return self.field.w

    @property
    def u_K(self) -> int:
        """Number of units of O_K (the torsion of the S-unit group)."""
        return self.field.w

    @property
    def zeta(self) -> KElem:
        return self.field.zeta

    @cached_property
    def rational_primes(self) -> tuple[int, ...]:
        return tuple(sorted({P.p for P in self.S}))

    @cached_property
    def _outside_above_s(self) -> dict[int, tuple[PrimeIdeal, ...]]:
        # primes P not in S lying over a rational prime below S
        out = {}
        for p in self.rational_primes:
            out[p] = tuple(P for P in split_prime(self.field, p) if P not in self.S)
        return out

    def index(self, P: PrimeIdeal) -> int:
        return self.S.index(P)

    def s_valuations(self, a: KElem) -> tuple[int, ...]:
        return tuple(valuation(a, P) for P in self.S)

    def p_power(self, alpha, scale: int = 1) -> int:
        """p^alpha = prod p_i^(scale*alpha_i) over the rational primes below S."""
        out = 1
        for p, a in zip(self.rational_primes, alpha):
            out *= p ** (scale * a)
        return out


def parse_spec(text: str) -> tuple[int | None, list[tuple[int, str]]]:
    """Parse ``"d=-1;S=2r,5s1"`` (or just ``"2r,5s1"``) into (d, [(p, tag)])."""
    d = None
    items = text
    if ";" in text or text.startswith("d="):
        parts = dict(part.split("=", 1) for part in text.split(";") if part)
        d = int(parts["d"])
        items = parts.get("S", "")
    out = []
    for item in items.split(","):
        item = item.strip()
        if not item:
            continue
        m = _SPEC_ITEM.match(item)
        if not m:
            raise RingError(f"bad prime spec {item!r}; expected <prime><r|i|s1|s2>")
        out.append((int(m.group(1)), m.group(2)))
    return d, out


def resolve_prime(K: QuadField, p: int, tag: str) -> PrimeIdeal:
    try:
        primes = split_prime(K, p)
    except ValueError as exc:
        raise RingError(str(exc)) from None
    for P in primes:
        if P.tag == tag:
            return P
    kinds = ",".join(P.tag for P in primes)
    raise RingError(f"{p}{tag} does not exist in {K}; primes above {p}: {kinds}")


def _hnf(rows: list[list[int]], s: int) -> list[list[int]]:
    """Row Hermite normal form of a full-rank integer lattice in Z^s."""
    rows = [list(r) for r in rows if any(r)]
    out = []
    for col in range(s):
        piv = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        while len(piv) > 1:
            piv.sort(key=lambda r: abs(r[col]))
            lead = piv[0]
            new = [lead]
            for r in piv[1:]:
                qt = r[col] // lead[col]
                r = [a - qt * b for a, b in zip(r, lead)]
                (new if r[col] else rest).append(r)
            piv = new
        if not piv:
            raise ValueError("lattice is not of full rank")
        lead = piv[0]
        if lead[col] < 0:
            lead = [-a for a in lead]
        out.append(lead)
        rows = [r for r in rest if any(r)]
    # reduce entries above the diagonal into [0, pivot)
    for i in range(s):
        for j in range(i):
            qt = out[j][i] // out[i][i]
            if qt:
                out[j] = [a - qt * b for a, b in zip(out[j], out[i])]
    return out


def make_sring(K: QuadField | int, spec: list[tuple[int, str]] | str) -> SRing:
    if isinstance(K, int):
        K = make_field(K)
    if isinstance(spec, str):
        d, spec = parse_spec(spec)
        if d is not None and d != K.d:
            raise RingError("spec string names a different field")
    if not spec:
        raise RingError("S must be nonempty")
    S = tuple(resolve_prime(K, p, tag) for p, tag in spec)
    if len(set(S)) != len(S):
        raise RingError("S contains repeated primes")
    h = class_number(K)
    orders = tuple(class_order(K, P) for P in S)
    pis = tuple(principal_generator(K, {P: k}) for P, k in zip(S, orders))
    s = len(S)
    gens = [[orders[i] if j == i else 0 for j in range(s)] for i in range(s)]
    for vec in itertools.product(*(range(k) for k in orders)):
        if any(vec) and principal_generator(K, {P: v for P, v in zip(S, vec) if v}) is not None:
            gens.append(list(vec))
    lattice = _hnf(gens, s)
    basis = []
    for vec in lattice:
        g = principal_generator(K, {P: v for P, v in zip(S, vec) if v})
        assert g is not None
        basis.append(g)
    text = f"d={K.d};S=" + ",".join(f"{P.p}{P.tag}" for P in S)
    return SRing(K, S, h, orders, pis, tuple(basis),
                 tuple(tuple(r) for r in lattice), spec=text)


def ring_from_spec(text: str) -> SRing:
    d, items = parse_spec(text)
    if d is None:
        raise RingError("spec string must include d=...")
    return make_sring(make_field(d), items)


def is_s_integer(R: SRing, a: KElem) -> bool:
    if not a:
        return True
    den = a.den
    for p in R.rational_primes:
        if den % p == 0:
            for P in R._outside_above_s[p]:
                if valuation(a, P) < 0:
                    return False
            while den % p == 0:
                den //= p
    return den == 1


def _check(R: SRing, *elems: KElem) -> None:
    for a in elems:
        if not is_s_integer(R, a):
            raise RingError(f"{a!r} is not in O_K,S")


def divides(R: SRing, x: KElem, y: KElem) -> bool:
    """x | y in O_{K,S}. Only 0 is divisible by 0."""
    _check(R, x, y)
    if not x:
        return not y
    return is_s_integer(R, y / x)


def is_s_unit(R: SRing, a: KElem) -> bool:
    if not a:
        return False
    if not is_s_integer(R, a):
        return False
    return is_s_integer(R, a.inverse())


def unit_decompose(R: SRing, a: KElem) -> tuple[int, tuple[int, ...]]:
    """Write an S-unit as zeta^j * prod basis_i^(e_i); returns (j, e)."""
    if not is_s_unit(R, a):
        raise NotAUnit(f"{a!r} is not an S-unit")
    vals = list(R.s_valuations(a))
    exps = _solve_lattice(R, vals)
    rem = a
    for g, e in zip(R.basis, exps):
        if e:
            rem = rem / g ** e
    for j, t in enumerate(R.field.torsion_units):
        if rem == t:
            return j, tuple(exps)
    raise AssertionError("torsion remainder not found")  # pragma: no cover


def _solve_lattice(R: SRing, vals: list[int]) -> list[int]:
    # basis_vals is upper triangular (row HNF)
    s = len(R.S)
    vals = list(vals)
    exps = [0] * s
    for i in range(s):
        piv = R.basis_vals[i][i]
        if vals[i] % piv:
            raise RingError("valuation vector outside the S-unit lattice")
        e = vals[i] // piv
        exps[i] = e
        vals = [v - e * b for v, b in zip(vals, R.basis_vals[i])]
    assert not any(vals)
    return exps


def reduce_mod(R: SRing, P: PrimeIdeal, a: KElem) -> int:
    """Image of a in k(P)^x = F_p^x for a degree-one prime P outside S."""
    if P.f != 1:
        raise RingError("reduce_mod needs a degree-one prime")
    if P in R.S:
        raise RingError(f"{P!r} lies in S")
    if not a or valuation(a, P) != 0:
        raise RingError(f"{a!r} is not a unit at {P!r}")
    return residue_int(R.field, P, a)


def unit_image_index(R: SRing, P: PrimeIdeal) -> int:
    """[k(P)^x : image of the S-units] for a degree-one prime outside S."""
    p = P.p
    gens = [reduce_mod(R, P, R.zeta)] + [reduce_mod(R, P, g) for g in R.basis]
    return (p - 1) // subgroup_order(gens, p)


def c_squared(R: SRing) -> Fraction:
    """C^2 = prod_{P in S} q_P^(-h_K)."""
    out = Fraction(1)
    for P in R.S:
        out /= P.q ** R.h
    return out


@dataclass(frozen=True)
class ABDecomp:
    x: KElem
    a: KElem
    b: KElem
    poles: tuple[PrimeIdeal, ...]  # D(x): primes of S where v(x) < 0
    betas: tuple[int, ...]


def ab_decompose(R: SRing, x: KElem) -> ABDecomp:
    """x = a/b with b in O_K built from principal powers of the poles of x."""
    if not x:
        raise RingError("ab_decompose needs x != 0")
    _check(R, x)
    b = R.field.one
    poles, betas = [], []
    for P, k, pi in zip(R.S, R.class_orders, R.pis):
        v = valuation(x, P)
        if v < 0:
            beta = k * ((-v) // k)
            poles.append(P)
            betas.append(beta)
            if beta:
                b = b * pi ** (beta // k)
    return ABDecomp(x, x * b, b, tuple(poles), tuple(betas))


def ab_violations(R: SRing, dec: ABDecomp) -> list[str]:
    """Check the decomposition invariants; returns a list of failures."""
    out = []
    if dec.a != dec.x * dec.b:
        out.append("x != a/b")
    if not dec.b.is_integral():
        out.append("b not integral")
    for P in R.S:
        va = valuation(dec.a, P)
        vb = valuation(dec.b, P)
        vx = valuation(dec.x, P)
        if va <= -R.h:
            out.append(f"v_{P!r}(a) <= -h_K")
        if vx >= 0 and vb != 0:
            out.append(f"v_{P!r}(x) >= 0 but v(b) != 0")
        if va > 0 and vb != 0:
            out.append(f"v_{P!r}(a) > 0 but v(b) != 0")
    if not dec.a.norm() > c_squared(R):
        out.append("|a|^2 <= C^2")
    return out


# -- symbolic S-units ---------------------------------------------------------


@dataclass(frozen=True)
class SUnit:
    """zeta^j * prod basis_i^(exps_i); exponents may be arbitrarily large."""

    R: SRing = field(compare=False, hash=False, repr=False)
    j: int
    exps: tuple[int, ...]

    @classmethod
    def of(cls, R: SRing, a: KElem) -> "SUnit":
        j, e = unit_decompose(R, a)
        return cls(R, j, e)

    def __mul__(self, other: "SUnit") -> "SUnit":
        return SUnit(self.R, (self.j + other.j) % self.R.w,
                     tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __pow__(self, k: int) -> "SUnit":
        return SUnit(self.R, (self.j * k) % self.R.w, tuple(a * k for a in self.exps))

    def inverse(self) -> "SUnit":
        return self ** -1

    def is_torsion(self) -> bool:
        return not any(self.exps)

    def valuations(self) -> tuple[int, ...]:
        R = self.R
        return tuple(sum(e * R.basis_vals[i][m] for i, e in enumerate(self.exps))
                     for m in range(len(R.S)))

    def height_bits(self) -> int:
        return sum(abs(e) * (g.numerator_norm().bit_length() + g.den.bit_length())
                   for e, g in zip(self.exps, self.R.basis))

    def to_elem(self, max_bits: int = 1 << 16) -> KElem:
        if self.height_bits() > max_bits:
            raise OverflowError("S-unit too large to expand")
        out = self.R.zeta ** self.j
        for g, e in zip(self.R.basis, self.exps):
            out = out * g ** e
        return out

    def norm_factored(self) -> dict[int, int]:
        """|u|^2 as {rational prime: exponent} via the product formula."""
        out: dict[int, int] = {}
        for P, v in zip(self.R.S, self.valuations()):
            if v:
                out[P.p] = out.get(P.p, 0) + P.f * v
        return {p: e for p, e in out.items() if e}

    def image(self, ring: ResidueRing):
        key = ("img", self.j, self.exps, ring.key)
        cache = self.R._cache
        if key not in cache:
            out = ring.pow(ring.image(self.R.zeta), self.j)
            for g, e in zip(self.R.basis, self.exps):
                if e:
                    out = ring.mul(out, ring.pow(ring.image(g), e))
            cache[key] = out
        return cache[key]

    def __repr__(self) -> str:
        return f"SUnit(j={self.j}, exps={self.exps})"


def sunit_ab(R: SRing, u: SUnit) -> tuple[SUnit, SUnit]:
    """ab_decompose for a symbolic S-unit: returns (a, b) with u = a/b."""
    b = SUnit(R, 0, tuple(0 for _ in R.basis))
    for m, (P, k, v) in enumerate(zip(R.S, R.class_orders, u.valuations())):
        if v < 0:
            beta = k * ((-v) // k)
            if beta:
                b = b * (pi_unit(R, m) ** (beta // k))
    return u * b, b


def pi_unit(R: SRing, m: int) -> SUnit:
    key = ("pi", m)
    if key not in R._cache:
        R._cache[key] = SUnit.of(R, R.pis[m])
    return R._cache[key]


def unit_candidates(R: SRing, bound: int) -> list[KElem]:
    """zeta^j * prod basis_i^a_i with |a_i| <= bound; a lexicographic, then j."""
    out = []
    rng = range(-bound, bound + 1)
    for exps in itertools.product(rng, repeat=len(R.basis)):
        base = R.field.one
        for g, e in zip(R.basis, exps):
            base = base * g ** e
        for t in R.field.torsion_units:
            out.append(base * t)
    return out


def box_candidates(R: SRing, bound: int) -> list[KElem]:
    """(m + n*w)/p^alpha, |m|,|n| <= bound, 0 <= alpha_i <= bound, deduplicated.

    Order: alpha lexicographic, then m, then n. Elements that are not in
    O_{K,S} (possible when only one prime above p_i lies in S) are skipped.
    """
    K = R.field
    seen = set()
    out = []
    for alpha in itertools.product(range(bound + 1), repeat=len(R.rational_primes)):
        den = R.p_power(alpha)
        for m in range(-bound, bound + 1):
            for n in range(-bound, bound + 1):
                a = KElem.make(K, m, n, den)
                if a in seen:
                    continue
                seen.add(a)
                if is_s_integer(R, a):
                    out.append(a)
    return out


def random_element(R: SRing, rng, size: int = 6, depth: int = 2, nonzero: bool = True) -> KElem:
    """A random element of O_{K,S}: (m + n*w) * prod pi_i^(-a_i)."""
    K = R.field
    while True:
        a = KElem.make(K, rng.randint(-size, size), rng.randint(-size, size), 1)
        for pi in R.pis:
            k = rng.randint(0, depth)
            if k:
                a = a / pi ** k
        if a or not nonzero:
            return a


def random_unit(R: SRing, rng, bound: int = 3) -> KElem:
    out = R.field.torsion_units[rng.randrange(R.w)]
    for g in R.basis:
        out = out * g ** rng.randint(-bound, bound)
    return out


def gcd_list(xs) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g
