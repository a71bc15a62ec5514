import random

import pytest
from hypothesis import given, strategies as st

from sdiv.sring import SUnit, divides, pi_unit, random_element, ring_from_spec
from sdiv.symbolic import Undecided, UnitPoly, sym_divides, sym_equal

SPECS = ["d=-1;S=2r", "d=-5;S=2r", "d=-3;S=2i"]


def _small_poly(R, rng, E):
    coeffs = {rng.randint(-2, 3): random_element(R, rng, 4, 1) for _ in range(rng.randint(1, 3))}
    return UnitPoly(E, coeffs)


def _expand(P):
    u = P.unit.to_elem()
    return sum((c * u ** e for e, c in P.coeffs.items()), P.unit.R.field.zero)


@given(st.sampled_from(SPECS), st.integers(0, 10**6))
def test_decisions_agree_with_expansion(spec, seed):
    R = ring_from_spec(spec)
    rng = random.Random(seed)
    E = pi_unit(R, 0) ** rng.randint(1, 3)
    a, b = _small_poly(R, rng, E), _small_poly(R, rng, E)
    if rng.random() < 0.5:
        b = a * _small_poly(R, rng, E)
    ea, eb = _expand(a), _expand(b)
    try:
        got = sym_divides(R, a, b)
    except Undecided:
        got = None
    if got is not None:
        assert got == divides(R, ea, eb)
    try:
        assert sym_equal(R, a, b) == (ea == eb)
    except Undecided:
        pass


@given(st.sampled_from(SPECS), st.integers(0, 10**6))
def test_constant_divisor_congruence(spec, seed):
    R = ring_from_spec(spec)
    rng = random.Random(seed)
    E = pi_unit(R, 0) ** rng.randint(1, 6)
    c = random_element(R, rng, 9, 1)
    P = _small_poly(R, rng, E)
    assert sym_divides(R, UnitPoly(E, {0: c}), P) == divides(R, c, _expand(P))


def test_polynomial_identity(gauss):
    E = pi_unit(gauss, 0) ** (10**30)
    X = gauss.field(3, 1)
    lhs = UnitPoly.power(E, 17) + X
    rhs = UnitPoly.power(E, 34) * -1 + X * X
    assert sym_divides(gauss, lhs, rhs)
    assert sym_divides(gauss, UnitPoly.power(E), 1)


def test_huge_congruence(gauss):
    E = pi_unit(gauss, 0) ** 8
    assert sym_divides(gauss, gauss.field(3), UnitPoly.power(E) - 1)
    assert not sym_divides(gauss, gauss.field(7), UnitPoly.power(E) - 1)


def test_zero_divisor(gauss):
    E = pi_unit(gauss, 0)
    assert not sym_divides(gauss, 0, UnitPoly.power(E) - 1)
    assert sym_divides(gauss, 0, UnitPoly.power(E) - UnitPoly.power(E))


def test_undecided(gauss):
    E = pi_unit(gauss, 0)
    a = UnitPoly.power(E, 2) + 3
    b = UnitPoly.power(E, 3) + 5
    with pytest.raises(Undecided):
        sym_divides(gauss, a, b)


def test_mixed_units_rejected(gauss, r5):
    with pytest.raises(ValueError):
        UnitPoly.power(pi_unit(gauss, 0)) + UnitPoly.power(pi_unit(gauss, 0) ** 2)
