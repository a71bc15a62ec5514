"""Constants, formula builders and witness builders for the L_div definitions.

The formulas are

* ``psi_neq(y)``: exists a, b, x (y | a and p*x + b | b and a + b = 1), true
  exactly for y != 0 once p*x + b can never be an S-unit;
* ``Prod_u(x, y, z)``: quantifier-free, true for S-units exactly when z = x*y;
* ``phi_inf(u)``: u is an S-unit of infinite order;
* ``phi_sq(x, y)``: y = x^2.

Witnesses for phi_sq involve a unit eps = eps0^t whose exponent t is the
least common multiple of many residue orders. Such units are kept symbolic
(``SUnit``/``UnitPoly``) and every atom is decided exactly from that form.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from mpmath import iv
from sympy import factorint, isprime, nextprime, primerange

from .ideals import PrimeIdeal, split_prime, valuation
from .lform import Exists, Formula, Term, V, conj, disj, div, eq
from .qfield import KElem
from .residue import QuotientRing, ResidueRing
from .sring import (SRing, SUnit, RingError, ab_decompose, ab_violations, c_squared,
                    is_s_integer, pi_unit, reduce_mod, sunit_ab, unit_image_index)
from .symbolic import UnitPoly, congruent_zero, non_s_support


class ConstructionError(RuntimeError):
    """A search for a constant or witness failed within its bounds."""


# -- constants ----------------------------------------------------------------


@dataclass(frozen=True)
class LenstraPair:
    p: int
    b: int
    prime: PrimeIdeal  # degree-one prime above p certifying the pair
    index: int  # [F_p^x : image of the S-units]


@dataclass(frozen=True)
class Constants:
    lenstra_p: int
    lenstra_b: int
    lenstra_prime: PrimeIdeal
    C_sq: Fraction
    q: int
    q_list: tuple[int, ...]
    I: tuple[tuple[int, ...], ...]
    J: tuple[tuple[int, ...], ...]
    exponent_17: int = 17
    exponent_34: int = 34

    def replace(self, **changes) -> "Constants":
        from dataclasses import replace
        return replace(self, **changes)


def _multi_indices(R: SRing, top: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product(range(top + 1), repeat=len(R.rational_primes)))


def find_lenstra_pair(R: SRing, scan_bound: int = 2000) -> LenstraPair:
    """Least prime p with a degree-one P | p outside S where the S-units miss
    part of F_p^x, and the least b in 1..p-1 outside their image."""
    if scan_bound < 2:
        raise ValueError("scan_bound must be at least 2")
    for p in primerange(2, scan_bound + 1):
        for P in split_prime(R.field, p):
            if P.e != 1 or P.f != 1 or P in R.S:
                continue
            index = unit_image_index(R, P)
            if index == 1:
                continue
            # in the cyclic group F_p^x, b lies in the subgroup H iff b^|H| = 1
            size = (p - 1) // index
            b = next(b for b in range(1, p) if pow(b, size, p) != 1)
            return LenstraPair(p, b, P, index)
    raise ConstructionError(f"no Lenstra pair with p <= {scan_bound}")


def _admissible_primes(R: SRing, start: int):
    below = set(R.rational_primes)
    p = start
    while True:
        p = nextprime(p)
        if p not in below:
            yield p


def compute_constants(R: SRing, scan_bound: int = 2000) -> Constants:
    pair = find_lenstra_pair(R, scan_bound)
    C_sq = c_squared(R)
    bound = 4 / C_sq
    q = next(_admissible_primes(R, int(bound)))  # nextprime(n) > n >= 4/C^2
    gen = _admissible_primes(R, 1)
    q_list = tuple(next(gen) for _ in range(R.u_K + 1))
    return Constants(pair.p, pair.b, pair.prime, C_sq, q, q_list,
                     _multi_indices(R, 4), _multi_indices(R, 6))


def _subgroup_bruteforce(gens: list[int], p: int) -> set[int]:
    H = {1}
    frontier = [1]
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                x = h * g % p
                if x not in H:
                    H.add(x)
                    new.append(x)
        frontier = new
    return H


CONSTANT_INVARIANTS = (
    "C^2 = prod q_P^(-h_K)", "q > 4/C^2", "q prime not below S", "u_K + 1 primes q_i",
    "q_i distinct", "q_i prime not below S", "I = {0..4}^k", "J = {0..6}^k", "0 < b < p",
    "Lenstra prime unramified of degree one outside S", "unit image index > 1",
    "b outside the unit image",
)


def verify_constants(R: SRing, C: Constants) -> list[str]:
    """Independent re-check of every constant; returns the violated invariants."""
    out = []
    if C.C_sq != c_squared(R):
        out.append("C^2 = prod q_P^(-h_K)")
    if not C.q > 4 / C.C_sq:
        out.append("q > 4/C^2")
    below = set(R.rational_primes)
    if not isprime(C.q) or C.q in below:
        out.append("q prime not below S")
    if len(C.q_list) != R.u_K + 1:
        out.append("u_K + 1 primes q_i")
    if len(set(C.q_list)) != len(C.q_list):
        out.append("q_i distinct")
    if any(not isprime(qi) or qi in below for qi in C.q_list):
        out.append("q_i prime not below S")
    if C.I != _multi_indices(R, 4):
        out.append("I = {0..4}^k")
    if C.J != _multi_indices(R, 6):
        out.append("J = {0..6}^k")
    p, b, P = C.lenstra_p, C.lenstra_b, C.lenstra_prime
    if not 0 < b < p:
        out.append("0 < b < p")
    if P.p != p or P.e != 1 or P.f != 1 or P in R.S:
        out.append("Lenstra prime unramified of degree one outside S")
        return out
    gens = [reduce_mod(R, P, R.zeta)] + [reduce_mod(R, P, g) for g in R.basis]
    H = _subgroup_bruteforce(gens, p)
    if len(H) == p - 1:
        out.append("unit image index > 1")
    if b % p in H:
        out.append("b outside the unit image")
    return out


# -- formula builders ---------------------------------------------------------


def _term(t) -> Term:
    return t if isinstance(t, Term) else (V(t) if isinstance(t, str) else Term.const(t))


def neq_formula(C: Constants, target, names=("a", "b", "x")) -> Formula:
    """psi_neq(target) with the given names for its bound variables."""
    a, b, x = names
    target = _term(target)
    return Exists((a, b, x), conj(
        div(target, V(a)),
        div(V(x) * C.lenstra_p + C.lenstra_b, V(b)),
        eq(V(a) + V(b), 1),
    ))


def build_neq(R: SRing, C: Constants) -> Formula:
    return neq_formula(C, V("y"))


def produnits_atoms(R: SRing, C: Constants, x, y, z) -> list[Formula]:
    x, y, z = _term(x), _term(y), _term(z)
    atoms = [div(x, 1), div(y, 1), div(z, 1)]
    for alpha in C.I:
        pa = R.p_power(alpha)
        for qi in C.q_list:
            lhs = x * pa + qi
            rhs = z * pa + y * qi
            atoms += [div(lhs, rhs), div(rhs, lhs)]
    return atoms


def build_produnits(R: SRing, C: Constants) -> Formula:
    return conj(*produnits_atoms(R, C, "x", "y", "z"))


def _phi_inf_targets(R: SRing) -> list[tuple[int, int, int]]:
    """Elements that must be nonzero, as (coefficient of u, coefficient of m, constant)
    with m = u^2; together they rule out every root of unity in K."""
    out = [(1, 0, -1), (1, 0, 1)]
    if R.w == 4:
        out.append((0, 1, 1))
    elif R.w == 6:
        out += [(1, 1, 1), (-1, 1, 1)]
    return out


def _phi_inf_names(prefix: str, i: int) -> tuple[str, str, str]:
    return (f"{prefix}a{i}", f"{prefix}b{i}", f"{prefix}x{i}")


def phi_inf_formula(R: SRing, C: Constants, u: str = "u", prefix: str = "") -> Formula:
    targets = _phi_inf_targets(R)
    m = f"{prefix}m"
    plain, squared = [], []
    for i, (cu, cm, c0) in enumerate(targets, 1):
        t = Term.build({u: cu, m: cm}, c0)
        f = neq_formula(C, t, _phi_inf_names(prefix, i))
        (squared if cm else plain).append(f)
    parts = [div(V(u), 1)] + plain
    if squared:
        parts.append(Exists((m,), conj(*produnits_atoms(R, C, u, u, m), *squared)))
    return conj(*parts)


def build_phi_inf(R: SRing, C: Constants) -> Formula:
    return phi_inf_formula(R, C, "u", "")


CHAIN = (("e2", "eps", "eps"), ("e4", "e2", "e2"), ("e8", "e4", "e4"),
         ("e16", "e8", "e8"), ("e17", "e16", "eps"), ("e34", "e17", "e17"))
CHAIN_POWERS = {"eps": 1, "e2": 2, "e4": 4, "e8": 8, "e16": 16, "e17": 17, "e34": 34}


def build_sq(R: SRing, C: Constants) -> Formula:
    x, y = V("x"), V("y")
    eps = V("eps")
    branches = [conj(eq(x, 0), eq(y, 0))]
    for alpha in C.J:
        pa, p2a = R.p_power(alpha), R.p_power(alpha, 2)
        for s in (1, -1):
            branches.append(conj(eq(x * pa + s, 0), eq(y * p2a - 1, 0)))
    if R.w == 4:
        # x = +-i * p^-alpha: here p^(2 alpha) y + 1 = 0 kills the moduli of psi_2
        for alpha in C.J:
            p2a = R.p_power(alpha, 2)
            branches.append(conj(eq(y * p2a + 1, 0), *produnits_atoms(R, C, x, x, y)))
    psi1, psi2, psi5 = [], [], []
    for alpha in C.J:
        pa, p2a = R.p_power(alpha), R.p_power(alpha, 2)
        for s in (1, -1):
            psi1.append(div(x * pa + s, eps - 1))
            psi2.append(div(y * p2a + s, eps - 1))
            psi5.append(div(x * pa + V("e17") * s, y * p2a - V("e34")))
    chain = []
    for out, left, right in CHAIN:
        chain += produnits_atoms(R, C, left, right, out)
    body = conj(div(eps, 1), phi_inf_formula(R, C, "eps", "f"), *psi1, *psi2,
                div(Term.const(C.q), eps - 1), *chain, *psi5)
    branches.append(Exists(("eps",) + tuple(o for o, _, _ in CHAIN), body))
    return disj(*branches)


def sq_unit_hints(R: SRing) -> dict[str, str]:
    """Search hints for φ_sq: the unit-valued bound variables."""
    return {v: "unit" for v in (*CHAIN_POWERS, "fm")}


def phi_inf_unit_hints(R: SRing) -> dict[str, str]:
    return {"m": "unit"}


# -- witnesses ----------------------------------------------------------------


@dataclass(frozen=True)
class NeqWitness:
    values: dict = field(hash=False)
    ell: int  # the rational prime p*x + b
    r: object  # A = r * y
    s: int  # B = s * ell


def _clear_denominators(R: SRing, y: KElem) -> tuple[KElem, KElem]:
    """(y', sigma) with y' = y*sigma in O_K and sigma a product of the pi_i."""
    sigma = R.field.one
    for P, k, pi in zip(R.S, R.class_orders, R.pis):
        v = valuation(y, P)
        if v < 0:
            sigma = sigma * pi ** (-(v // k))
    y1 = y * sigma
    assert y1.is_integral(), "denominator outside S"
    return y1, sigma


def witness_neq(R: SRing, C: Constants, y, names=("a", "b", "x")) -> NeqWitness:
    """Witness for psi_neq(y), y != 0. y may be a KElem or a symbolic UnitPoly."""
    if isinstance(y, UnitPoly):
        return _witness_neq_symbolic(R, C, y, names)
    K = R.field
    y = K.coerce(y)
    if not y:
        raise ValueError("psi_neq has no witness at y = 0")
    if not is_s_integer(R, y):
        raise RingError(f"{y!r} is not in O_K,S")
    y1, sigma = _clear_denominators(R, y)
    Ny = y1.numerator_norm()
    x = 0
    while True:
        ell = C.lenstra_p * x + C.lenstra_b
        if isprime(ell) and Ny % ell:
            break
        x += 1
    s1 = pow(Ny, -1, ell)
    s = (1 - s1 * Ny) // ell
    r = y1.conj() * s1 * sigma  # A = r*y = s1 * N(y')
    A = r * y
    B = K.coerce(s * ell)
    assert A + B == 1
    return NeqWitness({names[0]: A, names[1]: B, names[2]: K(x)}, ell, r, s)


def _witness_neq_symbolic(R: SRing, C: Constants, tau: UnitPoly, names) -> NeqWitness:
    # A = r*tau with r an inverse of tau modulo a rational prime ell = p*x + b
    K = R.field
    below = set(R.rational_primes)
    x = 0
    while True:
        ell = C.lenstra_p * x + C.lenstra_b
        if isprime(ell) and ell not in below and all(c.den % ell for c in tau.coeffs.values()):
            Q = QuotientRing(K, ell)
            img = tau.image(Q)
            if Q.norm(img) % ell:
                r = Q.lift(Q.inverse(img))
                break
        x += 1
        if x > 10**6:  # pragma: no cover
            raise ConstructionError("no invertibility prime found for symbolic psi_neq")
    A = tau * r
    B = 1 - A
    return NeqWitness({names[0]: A, names[1]: B, names[2]: K(x)}, ell, r, 0)


def witness_phi_inf(R: SRing, C: Constants, u, u_name: str = "u", prefix: str = "") -> dict:
    """Witnesses for phi_inf(u), for u a concrete or symbolic S-unit of infinite order."""
    K = R.field
    sym = isinstance(u, UnitPoly)
    if not sym:
        u = K.coerce(u)
    m = u * u
    out = {}
    targets = _phi_inf_targets(R)
    for i, (cu, cm, c0) in enumerate(targets, 1):
        t = u * cu + m * cm + c0
        out.update(witness_neq(R, C, t, _phi_inf_names(prefix, i)).values)
    if any(cm for _, cm, _ in targets):
        out[f"{prefix}m"] = m
    return out


@dataclass(frozen=True)
class InfUnit:
    eps: SUnit
    t: int
    eps0: SUnit
    moduli: tuple = field(hash=False)


def witness_inf_unit(R: SRing, moduli) -> InfUnit:
    """eps = pi_1^t of infinite order with every nonzero modulus dividing eps - 1."""
    K = R.field
    mods = [K.coerce(m) for m in moduli]
    mods = [m for m in mods if m]
    need: dict[PrimeIdeal, int] = {}
    for m in mods:
        if not is_s_integer(R, m):
            raise RingError(f"modulus {m!r} is not in O_K,S")
        for P, k in non_s_support(R, m):
            need[P] = max(need.get(P, 0), k)
    eps0 = pi_unit(R, 0)
    t = 1
    for P in sorted(need, key=PrimeIdeal.sort_key):
        ring = ResidueRing(K, P, need[P])
        t = lcm(t, ring.order(eps0.image(ring)))
    eps = eps0 ** t
    E = UnitPoly.power(eps)
    assert not eps.is_torsion()
    for m in mods:
        assert congruent_zero(R, E - 1, m), "eps - 1 not divisible by a modulus"
    return InfUnit(eps, t, eps0, tuple(mods))


def sq_special_case(R: SRing, C: Constants, x: KElem, y: KElem) -> str | None:
    """Name of the quantifier-free disjunct of phi_sq that (x, y) satisfies, if any."""
    if not x and not y:
        return "zero"
    for alpha in C.J:
        pa, p2a = R.p_power(alpha), R.p_power(alpha, 2)
        if p2a * y == 1 and (pa * x == 1 or pa * x == -1):
            return "plus_minus_power"
        if R.w == 4 and p2a * y == -1 and y == x * x:
            return "i_power"
    return None


def sq_moduli(R: SRing, C: Constants, x: KElem, y: KElem) -> list[KElem]:
    out = []
    for alpha in C.J:
        pa, p2a = R.p_power(alpha), R.p_power(alpha, 2)
        for s in (1, -1):
            out.append(x * pa + s)
        for s in (1, -1):
            out.append(y * p2a + s)
    out.append(R.field.coerce(C.q))
    return out


@dataclass(frozen=True)
class SqWitness:
    values: dict = field(hash=False)
    case: str  # "special:<name>" or "unit"
    unit: InfUnit | None = None


def witness_sq(R: SRing, C: Constants, x, y=None) -> SqWitness:
    K = R.field
    x = K.coerce(x)
    y = x * x if y is None else K.coerce(y)
    if y != x * x:
        raise ValueError("witness_sq needs y = x^2")
    if not is_s_integer(R, x):
        raise RingError(f"{x!r} is not in O_K,S")
    special = sq_special_case(R, C, x, y)
    if special:
        return SqWitness({}, f"special:{special}")
    moduli = [m for m in sq_moduli(R, C, x, y) if m]
    inf = witness_inf_unit(R, moduli)
    E = inf.eps
    values = {name: UnitPoly.power(E, k) for name, k in CHAIN_POWERS.items()}
    values.update(witness_phi_inf(R, C, values["eps"], "eps", "f"))
    return SqWitness(values, "unit", inf)


# -- multi-index choices ------------------------------------------------------


def _vals(R: SRing, a) -> tuple[int, ...]:
    if isinstance(a, SUnit):
        return a.valuations()
    return R.s_valuations(R.field.coerce(a))


def _choose(R: SRing, top: int, excluded_by_prime) -> tuple[int, ...]:
    """Least value in 0..top per rational prime avoiding the excluded values."""
    out = []
    for p in R.rational_primes:
        bad = set()
        for m, P in enumerate(R.S):
            if P.p == p:
                bad |= excluded_by_prime(m, P)
        out.append(next(a for a in range(top + 1) if a not in bad))
    return tuple(out)


def _exact(num: int, den: int) -> set[int]:
    return {num // den} if num % den == 0 else set()


def select_beta(R: SRing, x, y, z) -> tuple[int, ...]:
    """beta in {0..4}^k with v(p^beta x) != 0 and v(p^beta z) != v(y) on S."""
    vx, vy, vz = _vals(R, x), _vals(R, y), _vals(R, z)
    return _choose(R, 4, lambda m, P: _exact(-vx[m], P.e) | _exact(vy[m] - vz[m], P.e))


def select_alpha_claimA(R: SRing, x, y, eps1) -> tuple[int, ...]:
    """alpha in {0..6}^k with v(p^alpha x) != 0, v(p^(2 alpha) y) != 0 and
    v(p^alpha x) != v(eps1) on S."""
    vx, vy, ve = _vals(R, x), _vals(R, y), _vals(R, eps1)
    return _choose(R, 6, lambda m, P: (_exact(-vx[m], P.e) | _exact(-vy[m], 2 * P.e)
                                       | _exact(ve[m] - vx[m], P.e)))


# -- exact comparison of factored positive rationals -------------------------


def _fac(a) -> dict[int, int]:
    a = Fraction(a)
    if a <= 0:
        raise ValueError("expected a positive rational")
    out = dict(factorint(a.numerator))
    for p, e in factorint(a.denominator).items():
        out[p] = out.get(p, 0) - e
    return out


def _fmul(*fs: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for f in fs:
        for p, e in f.items():
            out[p] = out.get(p, 0) + e
    return {p: e for p, e in out.items() if e}


def _fpow(f: dict[int, int], k: int) -> dict[int, int]:
    return {p: e * k for p, e in f.items() if e * k}


_EXACT_BITS = 1 << 14


def fcmp(f: dict[int, int], g: dict[int, int]) -> int:
    """Sign of f - g for positive rationals given as {prime: exponent}."""
    diff = _fmul(f, _fpow(g, -1))
    if not diff:
        return 0
    bits = sum(abs(e) * p.bit_length() for p, e in diff.items())
    if bits <= _EXACT_BITS:
        num = den = 1
        for p, e in diff.items():
            if e > 0:
                num *= p ** e
            else:
                den *= p ** -e
        return (num > den) - (num < den)
    # log(f/g) = sum e*log p is never 0 here, so refining the interval terminates
    prec = 64 + max(abs(e).bit_length() for e in diff.values())
    while True:
        saved = iv.prec
        try:
            iv.prec = prec
            s = iv.mpf(0)
            for p, e in sorted(diff.items()):
                s += iv.mpf(e) * iv.log(p)
        finally:
            iv.prec = saved
        if s.a > 0:
            return 1
        if s.b < 0:
            return -1
        prec *= 2


def _max_le(lhs, rhs, strict: bool = False) -> bool:
    """max(lhs) <= max(rhs) (or <) for lists of factored positives."""
    if strict:
        return all(any(fcmp(a, b) < 0 for b in rhs) for a in lhs)
    return all(any(fcmp(a, b) <= 0 for b in rhs) for a in lhs)


# -- inequality checks --------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    status: str  # pass, fail or skip
    detail: str = ""


def _unit_div(R: SRing, E: UnitPoly, m: KElem) -> bool:
    return bool(m) and congruent_zero(R, E - 1, m)


def lemma_checks(R: SRing, C: Constants, x, eps: SUnit, y=None) -> list[Check]:
    """Re-verify, for concrete x (and y = x^2 by default) and a symbolic unit eps,
    the hypotheses and every inequality of the height argument used to refute
    y != x^2.  Norms |.|^2 are compared exactly in factored form."""
    K = R.field
    x = K.coerce(x)
    y = x * x if y is None else K.coerce(y)
    out: list[Check] = []

    def add(name, ok, detail=""):
        out.append(Check(name, "pass" if ok else "fail", detail))

    E = UnitPoly.power(eps)
    hyp = []
    hyp.append(("hypothesis: x, y nonzero", bool(x) and bool(y)))
    hyp.append(("hypothesis: eps of infinite order", not eps.is_torsion()))
    hyp.append(("hypothesis: q | eps - 1", _unit_div(R, E, K.coerce(C.q))))
    alpha = None
    if bool(x) and bool(y):
        eps1 = eps ** C.exponent_17
        alpha = select_alpha_claimA(R, x, y, eps1)
        X, Y = x * R.p_power(alpha), y * R.p_power(alpha, 2)
        vX, vY, vE1 = R.s_valuations(X), R.s_valuations(Y), eps1.valuations()
        add("alpha choice: v(X) != 0, v(Y) != 0, v(X) != v(eps^17)",
            all(a != 0 and b != 0 and a != c for a, b, c in zip(vX, vY, vE1)), f"alpha={alpha}")
        for s in (1, -1):
            hyp.append((f"hypothesis: X {'+' if s > 0 else '-'} 1 | eps - 1", _unit_div(R, E, X + s)))
            hyp.append((f"hypothesis: Y {'+' if s > 0 else '-'} 1 | eps - 1", _unit_div(R, E, Y + s)))
    for name, ok in hyp:
        add(name, ok)
    if not all(ok for _, ok in hyp):
        out.append(Check("inequalities", "skip", "hypotheses not met"))
        return out

    h = R.h
    dX, dY = ab_decompose(R, X), ab_decompose(R, Y)
    for label, dec in (("X", dX), ("Y", dY)):
        bad = ab_violations(R, dec)
        add(f"decomposition invariants for {label}", not bad, "; ".join(bad))
    u, v = sunit_ab(R, eps)
    bad = []
    for m, (P, vu, vv, ve) in enumerate(zip(R.S, u.valuations(), v.valuations(), eps.valuations())):
        if vu <= -h:
            bad.append(f"v_{P!r}(u) <= -h_K")
        if ve >= 0 and vv != 0:
            bad.append(f"v_{P!r}(eps) >= 0 but v(v) != 0")
        if vu > 0 and vv != 0:
            bad.append(f"v_{P!r}(u) > 0 but v(v) != 0")
    Nu, Nv = u.norm_factored(), v.norm_factored()
    Csq = _fac(C.C_sq)
    if not fcmp(Nu, Csq) > 0:
        bad.append("|u|^2 <= C^2")
    add("decomposition invariants for eps", not bad, "; ".join(bad))

    four_over = _fmul(_fac(4), _fpow(Csq, -1))
    add("height: max(|u|^2, |v|^2) > 4/C^2", _max_le([four_over], [Nu, Nv], strict=True))
    NA = {k: _fac(val.norm()) for k, val in (("a", dX.a), ("b", dX.b), ("c", dY.a), ("d", dY.b))}
    for name in "abcd":
        # |a| < (2/C) max(|u|, |v|)
        add(f"height: |{name}|^2 < (4/C^2) max(|u|^2, |v|^2)",
            _max_le([NA[name]], [_fmul(four_over, Nu), _fmul(four_over, Nv)], strict=True))
    for label, keys in (("X", "ab"), ("Y", "cd")):
        add(f"height: max(4/C^2, |a|^2, |b|^2) <= max(|u|^4, |v|^4) for {label}",
            _max_le([four_over, NA[keys[0]], NA[keys[1]]], [_fpow(Nu, 2), _fpow(Nv, 2)]))

    va = R.s_valuations(dX.a)
    vb = R.s_valuations(dX.b)
    vu_, vv_ = u.valuations(), v.valuations()
    n17 = C.exponent_17
    delta = dX.b * dX.b * dY.a - dX.a * dX.a * dY.b
    for m, P in enumerate(R.S):
        left, right = va[m] + n17 * vv_[m], vb[m] + n17 * vu_[m]
        add(f"valuation bound at {P!r}: v(a v^17 +- u^17 b) distinct terms", left != right)
        vmin = min(left, right)
        add(f"valuation bound at {P!r}: v(a v^17 +- u^17 b) <= h_K + v(a) + v(b)",
            vmin <= h + va[m] + vb[m], f"{vmin} <= {h + va[m] + vb[m]}")
        if delta:
            vd = valuation(delta, P)
            add(f"poles at {P!r}: v(b^2 c - a^2 d) > -2 h_K", vd > -2 * h)
            add(f"poles at {P!r}: v(e+-) >= -3 h_K - v(a) - v(b)",
                vd - vmin >= -3 * h - va[m] - vb[m])
        else:
            out.append(Check(f"poles at {P!r}", "skip", "b^2 c = a^2 d"))
    if delta:
        add("final chain: |b^2 c - a^2 d|^2 <= 4 max(|a|^6, ..., |d|^6)",
            _max_le([_fac(delta.norm())], [_fmul(_fac(4), _fpow(NA[k], 3)) for k in "abcd"]))
    add("final chain: 4 max(|a|^6, |b|^6, |c|^6, |d|^6) <= max(|u|^16, |v|^16)",
        _max_le([_fmul(_fac(4), _fpow(NA[k], 3)) for k in "abcd"], [_fpow(Nu, 8), _fpow(Nv, 8)]))
    C6 = _fpow(Csq, 3)
    add("final chain: max(C^6 |u|^34/|a|^2, C^6 |v|^34/|b|^2) >= max(|u|^18, |v|^18)",
        _max_le([_fpow(Nu, 9), _fpow(Nv, 9)],
                [_fmul(C6, _fpow(Nu, 17), _fpow(NA["a"], -1)),
                 _fmul(C6, _fpow(Nv, 17), _fpow(NA["b"], -1))]))
    return out


def checks_pass(checks: list[Check]) -> bool:
    return all(c.status != "fail" for c in checks)
