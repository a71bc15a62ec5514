import pytest
from hypothesis import given, strategies as st

from sdiv.ideals import split_prime, valuation
from sdiv.qfield import make_field
from sdiv.residue import QuotientRing, ResidueRing, order_mod_p, residue_int, subgroup_order
from oracles import multiplicative_order_bruteforce, residue_at, subgroup_closure
from strategies import elements

CASES = [(d, p, k) for d in (-1, -5, -3) for p in (2, 3, 5, 7) for k in (1, 2, 3)]


def _prime_rings():
    out = []
    for d, p, k in CASES:
        K = make_field(d)
        for P in split_prime(K, p):
            out.append(ResidueRing(K, P, k))
    return out


RINGS = _prime_rings()


@given(st.sampled_from(RINGS).flatmap(
    lambda Rg: st.tuples(st.just(Rg), elements(Rg.K, dens=(1, 3, 7, 11, 13)),
                         elements(Rg.K, dens=(1, 3, 7, 11, 13)))))
def test_residue_homomorphism(case):
    Rg, a, b = case
    if a.den % Rg.P.p == 0 or b.den % Rg.P.p == 0:
        return
    assert Rg.is_zero(Rg.sub(Rg.image(a * b), Rg.mul(Rg.image(a), Rg.image(b))))
    assert Rg.is_zero(Rg.sub(Rg.image(a + b), Rg.add(Rg.image(a), Rg.image(b))))


@given(st.sampled_from(RINGS).flatmap(
    lambda Rg: st.tuples(st.just(Rg), elements(Rg.K, nonzero=True, dens=(1, 3, 7)))))
def test_zero_iff_valuation(case):
    Rg, a = case
    if a.den % Rg.P.p:
        assert Rg.is_zero(Rg.image(a)) == (valuation(a, Rg.P) >= Rg.k)


def test_split_ring_accepts_p_denominators():
    K = make_field(-1)
    P, Q = split_prime(K, 5)
    a = K(2, -1, 5)  # (2 - i)/5 = 1/(2 + i) is integral at one prime above 5
    good = [R for R in (P, Q) if valuation(a, R) >= 0]
    assert len(good) == 1
    Rg = ResidueRing(K, good[0], 2)
    assert Rg.is_one(Rg.mul(Rg.image(a), Rg.image(K(2, 1))))
    bad = [R for R in (P, Q) if valuation(a, R) < 0][0]
    with pytest.raises(ValueError):
        ResidueRing(K, bad, 1).image(a)


def test_order_matches_bruteforce():
    K = make_field(-1)
    (P3,) = split_prime(K, 3)
    for k in (1, 2):
        Rg = ResidueRing(K, P3, k)
        assert Rg.order(Rg.image(K(1, 1))) == multiplicative_order_bruteforce(K(1, 1), 3 ** k)


def test_order_rejects_nonunit():
    K = make_field(-1)
    (P3,) = split_prime(K, 3)
    with pytest.raises(ValueError):
        ResidueRing(K, P3, 1).order(ResidueRing(K, P3, 1).image(K(3)))


def test_quotient_ring_inverse():
    K = make_field(-5)
    Q = QuotientRing(K, 41)
    a = Q.image(K(3, 7))
    assert Q.mul(a, Q.inverse(a)) == Q.one()


def test_residue_int_matches_oracle():
    K = make_field(-1)
    for P in split_prime(K, 13):
        for a in (K(2, 3), K(1, 1, 3), K(-4, 7, 5)):
            assert residue_int(K, P, a) == residue_at(a, 13, P.r)


@pytest.mark.parametrize("p", [7, 11, 41, 101])
def test_subgroup_order(p):
    for gens in ([2], [3, 5], [p - 1], [4, 9]):
        assert subgroup_order(gens, p) == len(subgroup_closure(gens, p))
        assert order_mod_p(gens[0], p) == len(subgroup_closure(gens[:1], p))
