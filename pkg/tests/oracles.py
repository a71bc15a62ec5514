"""Independent reference computations used as test oracles.

Each function here recomputes a quantity by a different method than the
package does (analytic formulas, floating point, naive enumeration).
"""
import cmath
from fractions import Fraction
from math import gcd, isqrt

from sympy import kronecker_symbol, primerange


def fundamental_discriminants(limit):
    out = []
    for D in range(-3, -limit - 1, -1):
        if D % 4 == 1:
            m = -D
            if all(m % (p * p) for p in range(2, isqrt(m) + 1)):
                out.append(D)
        elif D % 4 == 0:
            m = -D // 4
            if m % 4 in (1, 2) and all(m % (p * p) for p in range(2, isqrt(m) + 1)):
                out.append(D)
    return out


def class_number_analytic(D):
    """h(D) = -(w / 2|D|) * sum_{a=1}^{|D|-1} chi_D(a) a."""
    w = {-3: 6, -4: 4}.get(D, 2)
    s = sum(kronecker_symbol(D, a) * a for a in range(1, -D))
    return Fraction(-w * s, 2 * -D)


def class_number_box(D):
    """Count SL2(Z) classes of primitive forms by reducing every form in a box."""
    seen = set()
    bound = isqrt(-D // 3) + 1
    for a in range(1, bound + 1):
        for b in range(-a, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if gcd(gcd(a, b), c) != 1:
                continue
            seen.add(_reduce(a, b, c))
    return len(seen)


def _reduce(a, b, c):
    while True:
        if c < a or (c == a and b < 0):
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            k = (a - b) // (2 * a)
            b2 = b + 2 * a * k
            c = (b2 * b2 - (b * b - 4 * a * c)) // (4 * a)
            b = b2
            continue
        if a == c and b < 0:
            b = -b
            continue
        return a, b, c


def complex_value(a):
    K = a.K
    w = cmath.sqrt(K.d) if K.omega_kind == "sqrt" else (1 + cmath.sqrt(K.d)) / 2
    return (a.x + a.y * w) / a.den


def residue_at(a, p, r):
    """Image of a in F_p at the degree-one prime (p, w - r), a with den prime to p."""
    return (a.x + a.y * r) * pow(a.den, -1, p) % p


def subgroup_closure(gens, p):
    H = {1}
    stack = [1]
    while stack:
        h = stack.pop()
        for g in gens:
            x = h * g % p
            if x not in H:
                H.add(x)
                stack.append(x)
    return H


def lenstra_pair_bruteforce(R, scan_bound):
    """First (p, b) found by enumerating the image of the S-units in F_p."""
    from sdiv.ideals import split_prime
    for p in primerange(2, scan_bound + 1):
        for P in split_prime(R.field, p):
            if P.e != 1 or P.f != 1 or P in R.S:
                continue
            gens = [residue_at(u, p, P.r) for u in (R.zeta, *R.basis)]
            H = subgroup_closure(gens, p)
            if len(H) < p - 1:
                return p, min(set(range(1, p)) - H)
    return None


def multiplicative_order_bruteforce(a, modulus):
    """Order of an integral element a modulo the rational integer m by repeated multiplication."""
    K = a.K
    x = a
    k = 1
    while True:
        y = x - 1
        if y.x % modulus == 0 and y.y % modulus == 0 and y.den == 1:
            return k
        x = x * a
        x = K(x.x % modulus, x.y % modulus)
        k += 1
