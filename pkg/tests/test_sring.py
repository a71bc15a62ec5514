import random

import pytest
from hypothesis import given, strategies as st

from sdiv.ideals import factor_element, split_prime, valuation
from sdiv.qfield import KElem, make_field
from sdiv.sring import (NotAUnit, RingError, SUnit, ab_decompose, ab_violations, box_candidates,
                        c_squared, divides, is_s_integer, is_s_unit, make_sring, parse_spec,
                        random_element, random_unit, reduce_mod, ring_from_spec, sunit_ab,
                        unit_candidates, unit_decompose, unit_image_index)
from oracles import residue_at, subgroup_closure
from strategies import ring_elements

SPECS = ["d=-1;S=2r", "d=-5;S=2r", "d=-3;S=2i", "d=-1;S=5s1,5s2", "d=-23;S=2s1", "d=-14;S=3s1"]
spec_st = st.sampled_from(SPECS)


def test_parse_spec():
    assert parse_spec("d=-1;S=2r,5s1") == (-1, [(2, "r"), (5, "s1")])
    assert parse_spec("2r") == (None, [(2, "r")])
    with pytest.raises(RingError):
        parse_spec("2x")
    with pytest.raises(RingError):
        ring_from_spec("d=-1;S=5r")
    with pytest.raises(RingError):
        ring_from_spec("2r")


def test_gaussian_ring(gauss):
    K = gauss.field
    assert gauss.pis == (K(1, 1),) and gauss.basis == (K(1, 1),)
    assert gauss.h == 1 and gauss.u_K == 4
    assert unit_decompose(gauss, K(2)) == (3, (2,))
    assert c_squared(gauss) == make_field(-1)(1, 0, 2)


def test_r5_basis(r5):
    assert r5.basis == (r5.field(2),) and r5.class_orders == (2,)
    assert c_squared(r5) == r5.field(1, 0, 4)


def test_split_s_basis():
    R = ring_from_spec("d=-1;S=5s1,5s2")
    K = R.field
    assert set(R.basis) <= {K(2, -1), K(2, 1), K(-2, 1), K(-2, -1), K(1, 2), K(1, -2),
                            K(-1, 2), K(-1, -2)}
    assert reduce_mod(ring_from_spec("d=-1;S=2r"), split_prime(K, 5)[0], K.omega) == 2
    assert reduce_mod(ring_from_spec("d=-1;S=2r"), split_prime(K, 5)[1], K.omega) == 3


def test_membership_and_divisibility(gauss):
    K = gauss.field
    assert is_s_integer(gauss, K(1, 0, 2)) and not is_s_integer(gauss, K(1, 0, 3))
    assert divides(gauss, K(2), K(1))
    assert not divides(gauss, K(0), K(5)) and divides(gauss, K(0), K(0))
    assert divides(gauss, K(3), K(6, 3))
    with pytest.raises(RingError):
        divides(gauss, K(1, 0, 3), K(1))


def test_membership_one_sided():
    R = ring_from_spec("d=-1;S=5s1")
    K = R.field
    P, Q = split_prime(K, 5)
    a = KElem.make(K, 1, 0, 1) / K(2, -1) if valuation(K(2, -1), P) else KElem.make(K, 1, 0, 1) / K(2, 1)
    assert is_s_integer(R, a)
    assert not is_s_integer(R, K(1, 0, 5))


@given(spec_st.flatmap(lambda s: st.tuples(st.just(s), ring_elements(ring_from_spec(s), nonzero=True))))
def test_ring_elements_are_integral_outside_s(case):
    spec, a = case
    R = ring_from_spec(spec)
    assert is_s_integer(R, a)
    assert all(P in R.S for P, k in factor_element(a).items() if k < 0)


@given(spec_st, st.integers(0, 10**6))
def test_unit_decompose_roundtrip(spec, seed):
    R = ring_from_spec(spec)
    rng = random.Random(seed)
    u = random_unit(R, rng, bound=3)
    assert is_s_unit(R, u)
    su = SUnit.of(R, u)
    assert su.to_elem() == u
    v = random_unit(R, rng, bound=3)
    sv = SUnit.of(R, v)
    assert (su * sv).to_elem() == u * v
    assert (su ** 3).to_elem() == u ** 3
    assert su.inverse().to_elem() == 1 / u
    assert su.valuations() == R.s_valuations(u)
    prod = 1
    for p, e in su.norm_factored().items():
        prod = prod * KElem.make(R.field, p, 0, 1) ** e
    assert prod == u.norm()


def test_unit_decompose_rejects_nonunit(gauss):
    with pytest.raises(NotAUnit):
        unit_decompose(gauss, gauss.field(3))


def test_sunit_huge_stays_symbolic(gauss):
    e = SUnit.of(gauss, gauss.pis[0]) ** (10**40)
    assert e.valuations() == (10**40,)
    with pytest.raises(OverflowError):
        e.to_elem()


def test_ab_decompose_examples(gauss, r5):
    K = gauss.field
    dec = ab_decompose(gauss, K(1, 0, 2))
    assert dec.b * K(1, 0, 2) == dec.a
    assert dec.b.norm() == 4 and ab_violations(gauss, dec) == []
    dec = ab_decompose(r5, r5.field(1, 0, 2))
    assert (dec.a, dec.b) == (1, 2)
    with pytest.raises(RingError):
        ab_decompose(gauss, K(0))


@given(spec_st.flatmap(lambda s: st.tuples(st.just(s), ring_elements(ring_from_spec(s), nonzero=True))))
def test_ab_invariants(case):
    spec, x = case
    R = ring_from_spec(spec)
    assert ab_violations(R, ab_decompose(R, x)) == []


@given(spec_st, st.integers(0, 10**6))
def test_sunit_ab_matches_concrete(spec, seed):
    R = ring_from_spec(spec)
    u = random_unit(R, random.Random(seed), bound=4)
    a, b = sunit_ab(R, SUnit.of(R, u))
    dec = ab_decompose(R, u)
    assert a.to_elem() == dec.a and b.to_elem() == dec.b


def test_unit_image_index_matches_oracle(gauss):
    from sympy import primerange
    for p in primerange(3, 200):
        for P in split_prime(gauss.field, p):
            if P.f != 1 or P.e != 1:
                continue
            gens = [residue_at(u, p, P.r) for u in (gauss.zeta, *gauss.basis)]
            assert unit_image_index(gauss, P) == (p - 1) // len(subgroup_closure(gens, p))


def test_first_index_above_one(gauss):
    from sympy import primerange
    first = next(p for p in primerange(3, 200)
                 for P in split_prime(gauss.field, p)
                 if P.f == 1 and P.e == 1 and unit_image_index(gauss, P) > 1)
    assert first == 41


def test_candidates(gauss, r5):
    assert len(unit_candidates(gauss, 2)) == 5 * 4
    assert len(unit_candidates(r5, 2)) == 5 * 2
    box = box_candidates(gauss, 1)
    assert len(box) == len(set(box)) and all(is_s_integer(gauss, a) for a in box)
    R = ring_from_spec("d=-1;S=5s1")
    assert all(is_s_integer(R, a) for a in box_candidates(R, 2))


def test_random_element_deterministic(gauss):
    a = [random_element(gauss, random.Random(3)) for _ in range(2)]
    assert a[0] == a[1]
