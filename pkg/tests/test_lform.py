import pytest
from hypothesis import given, strategies as st

from sdiv.lform import (And, Div, Eq, Exists, MissingVariable, Or, ParseError, Term, V,
                        atom_count, conj, disj, div, eq, eval_closed, parse, pretty,
                        search_exists, shape_one, to_text)
from sdiv.sring import RingError

names = st.sampled_from(["x", "y", "z", "e2", "fa1"])


def terms():
    return st.builds(lambda cs, c: Term.build(dict(cs), c),
                     st.lists(st.tuples(names, st.integers(-5, 5)), max_size=3),
                     st.integers(-9, 9))


def formulas():
    atoms = st.one_of(st.builds(Eq, terms(), terms()), st.builds(Div, terms(), terms()))
    return st.recursive(atoms, lambda sub: st.one_of(
        st.builds(lambda ps: And(tuple(ps)), st.lists(sub, min_size=1, max_size=3)),
        st.builds(lambda ps: Or(tuple(ps)), st.lists(sub, min_size=1, max_size=3)),
        st.builds(lambda v, f: Exists((v,), f), st.sampled_from(["u", "v", "m1"]), sub),
    ), max_leaves=8)


@given(formulas())
def test_print_parse_roundtrip(F):
    assert parse(to_text(F)) == F
    assert parse(pretty(F)) == F
    assert to_text(parse(to_text(F))) == to_text(F)


def test_term_normalization():
    t = V("x") * 3 + V("y") - V("x") * 3 + 2
    assert t == Term.build({"y": 1}, 2)
    assert parse("(eq (+ x x y 1) 0)") == eq(V("x") * 2 + V("y") + 1, 0)


@pytest.mark.parametrize("text", [
    "", "(eq x)", "(not (eq x 0))", "(forall (x) (eq x 0))", "(eq x 0))", "(eq (* x 2) 0)",
    "(exists x (eq x 0))", "(div X 1)", "(frob x y)", "(eq (+ x) 0)",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse("(and (eq x 0) (not (eq x 1)))")
    assert exc.value.pos == 14


def test_eval_closed(gauss):
    K = gauss.field
    F = parse("(exists (z) (and (eq z x) (div 2 z)))")
    assert eval_closed(gauss, F, {"x": 4}, {"z": 4})
    assert not eval_closed(gauss, F, {"x": 4}, {"z": 3})
    with pytest.raises(MissingVariable):
        eval_closed(gauss, F, {}, {"z": 1})
    with pytest.raises(MissingVariable):
        eval_closed(gauss, F, {"x": 1}, {})
    with pytest.raises(RingError):
        eval_closed(gauss, F, {"x": K(1, 0, 3)}, {"z": 1})
    with pytest.raises(ValueError):
        eval_closed(gauss, F, {"x": 1, "z": 1}, {"z": 1})


def test_zero_divides_only_zero(gauss):
    F = parse("(div x y)")
    assert eval_closed(gauss, F, {"x": 0, "y": 0})
    assert not eval_closed(gauss, F, {"x": 0, "y": 1})


def test_or_short_circuits(gauss):
    F = disj(eq(V("x"), 0), Exists(("z",), eq(V("z"), V("x"))))
    assert eval_closed(gauss, F, {"x": 0}, {})


def test_search_examples(gauss):
    assert search_exists(gauss, parse("(exists (z) (eq z x))"), {"x": 3}, 3) == {"z": 3}
    F = parse("(exists (z) (and (eq z 0) (eq (+ z 1) 0)))")
    assert search_exists(gauss, F, {}, 4) is None
    F = parse("(exists (a b) (and (div a 1) (eq (+ a b) 0) (div 3 (+ b 1))))")
    w = search_exists(gauss, F, {}, 3, {"a": "unit"})
    assert w is not None and eval_closed(gauss, F, {}, w)


def test_search_rejects_shadowing(gauss):
    F = conj(Exists(("z",), eq(V("z"), 1)), Exists(("z",), eq(V("z"), 2)))
    with pytest.raises(ValueError):
        search_exists(gauss, F, {}, 2)


def test_search_bound_validation(gauss):
    with pytest.raises(ValueError):
        search_exists(gauss, parse("(eq x 0)"), {"x": 0}, -1)


def test_shape_one(gauss):
    F = shape_one([({"x": 1, "y": -1}, 0)], [(({"x": 1}, 0), ({"y": 2}, 0))], ["x", "y"])
    assert atom_count(F) == 2
    assert F.free_vars() == frozenset()
    assert search_exists(gauss, F, {}, 1) is not None
