"""Positive-existential formulas of the divisibility language {=, 0, 1, +, |}.

Concrete syntax (one formula per file, UTF-8)::

    F ::= (eq T T) | (div T T) | (and F ...) | (or F ...) | (exists (v ...) F)
    T ::= v | <int> | (+ T T ...) | (* <int> T)

Variables match ``[a-z][a-z0-9_]*``. There is no negation and no universal
quantifier; ``not``/``forall`` are rejected by the parser. Terms are normalized
to integer-linear combinations, so printing is canonical.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .qfield import KElem
from .sring import RingError, SRing, box_candidates, divides, is_s_integer, unit_candidates
from .symbolic import UnitPoly, sym_divides, sym_equal

_VAR = re.compile(r"^[a-z][a-z0-9_]*$")
_KEYWORDS = {"eq", "div", "and", "or", "exists", "not", "forall", "+", "*"}


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


class MissingVariable(KeyError):
    pass


@dataclass(frozen=True)
class Term:
    """sum(c * v) + constant with integer coefficients; zero coefficients dropped."""

    coeffs: tuple[tuple[str, int], ...] = ()
    constant: int = 0

    @staticmethod
    def build(coeffs: dict[str, int], constant: int = 0) -> "Term":
        return Term(tuple(sorted((v, c) for v, c in coeffs.items() if c)), constant)

    @staticmethod
    def var(name: str) -> "Term":
        if not _VAR.match(name) or name in _KEYWORDS:
            raise ValueError(f"bad variable name {name!r}")
        return Term(((name, 1),), 0)

    @staticmethod
    def const(c: int) -> "Term":
        return Term((), c)

    def _lift(self, other) -> "Term":
        if isinstance(other, Term):
            return other
        if isinstance(other, int):
            return Term.const(other)
        return NotImplemented

    def __add__(self, other) -> "Term":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        d = dict(self.coeffs)
        for v, c in other.coeffs:
            d[v] = d.get(v, 0) + c
        return Term.build(d, self.constant + other.constant)

    __radd__ = __add__

    def __mul__(self, k: int) -> "Term":
        if not isinstance(k, int):
            return NotImplemented
        return Term.build({v: c * k for v, c in self.coeffs}, self.constant * k)

    __rmul__ = __mul__

    def __neg__(self) -> "Term":
        return self * -1

    def __sub__(self, other) -> "Term":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Term":
        return self._lift(other) - self

    @property
    def variables(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.coeffs)

    def evaluate(self, env: dict):
        out = None
        for v, c in self.coeffs:
            try:
                val = env[v]
            except KeyError:
                raise MissingVariable(v) from None
            val = val * c if c != 1 else val
            out = val if out is None else out + val
        if out is None:
            return _const_value(env, self.constant)
        return out + self.constant if self.constant else out


def _const_value(env, c: int):
    K = env["__field__"]
    return K(c)


def V(name: str) -> Term:
    return Term.var(name)


class Formula:
    def free_vars(self) -> frozenset[str]:
        raise NotImplementedError

    def bound_vars(self) -> list[str]:
        raise NotImplementedError

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Eq(Formula):
    lhs: Term
    rhs: Term

    def free_vars(self):
        return self.lhs.variables | self.rhs.variables

    def bound_vars(self):
        return []


@dataclass(frozen=True)
class Div(Formula):
    lhs: Term
    rhs: Term

    def free_vars(self):
        return self.lhs.variables | self.rhs.variables

    def bound_vars(self):
        return []


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]

    def free_vars(self):
        return frozenset().union(*(p.free_vars() for p in self.parts))

    def bound_vars(self):
        return [v for p in self.parts for v in p.bound_vars()]


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]

    def free_vars(self):
        return frozenset().union(*(p.free_vars() for p in self.parts))

    def bound_vars(self):
        return [v for p in self.parts for v in p.bound_vars()]


@dataclass(frozen=True)
class Exists(Formula):
    variables: tuple[str, ...]
    body: Formula

    def free_vars(self):
        return self.body.free_vars() - frozenset(self.variables)

    def bound_vars(self):
        return list(self.variables) + self.body.bound_vars()


def conj(*parts: Formula) -> Formula:
    flat = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, And) else [p])
    return And(tuple(flat))


def disj(*parts: Formula) -> Formula:
    flat = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, Or) else [p])
    return Or(tuple(flat))


def _as_term(t) -> Term:
    return Term.const(t) if isinstance(t, int) else t


def eq(a, b) -> Eq:
    return Eq(_as_term(a), _as_term(b))


def div(a, b) -> Div:
    return Div(_as_term(a), _as_term(b))


def atom_count(F: Formula) -> int:
    if isinstance(F, (Eq, Div)):
        return 1
    if isinstance(F, Exists):
        return atom_count(F.body)
    return sum(atom_count(p) for p in F.parts)


# -- printing -----------------------------------------------------------------


def term_text(t: Term) -> str:
    parts = [v if c == 1 else f"(* {c} {v})" for v, c in t.coeffs]
    if t.constant or not parts:
        parts.append(str(t.constant))
    out = parts[0]
    for p in parts[1:]:
        out = f"(+ {out} {p})"
    return out


def to_text(F: Formula) -> str:
    if isinstance(F, Eq):
        return f"(eq {term_text(F.lhs)} {term_text(F.rhs)})"
    if isinstance(F, Div):
        return f"(div {term_text(F.lhs)} {term_text(F.rhs)})"
    if isinstance(F, And):
        return "(and" + "".join(" " + to_text(p) for p in F.parts) + ")"
    if isinstance(F, Or):
        return "(or" + "".join(" " + to_text(p) for p in F.parts) + ")"
    if isinstance(F, Exists):
        return f"(exists ({' '.join(F.variables)}) {to_text(F.body)})"
    raise TypeError(F)


def pretty(F: Formula, indent: int = 0) -> str:
    """Multi-line rendering; parses back to the same formula."""
    pad = "  " * indent
    if isinstance(F, (And, Or)):
        head = "and" if isinstance(F, And) else "or"
        if not F.parts:
            return f"{pad}({head})"
        inner = "\n".join(pretty(p, indent + 1) for p in F.parts)
        return f"{pad}({head}\n{inner})"
    if isinstance(F, Exists):
        return f"{pad}(exists ({' '.join(F.variables)})\n{pretty(F.body, indent + 1)})"
    return pad + to_text(F)


# -- parsing ------------------------------------------------------------------

_TOK = re.compile(r"\s*(?:(\()|(\))|([^\s()]+))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            break
        if m.end() == pos:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is None:
            break
        out.append((tok, m.start(m.lastindex)))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError("unexpected input", pos)
    return out


def _read(tokens, i: int):
    if i >= len(tokens):
        raise ParseError("unexpected end of input", tokens[-1][1] if tokens else 0)
    tok, pos = tokens[i]
    if tok == "(":
        items = []
        i += 1
        while True:
            if i >= len(tokens):
                raise ParseError("missing ')'", pos)
            if tokens[i][0] == ")":
                return ("list", items, pos), i + 1
            node, i = _read(tokens, i)
            items.append(node)
    if tok == ")":
        raise ParseError("unexpected ')'", pos)
    return ("atom", tok, pos), i + 1


_INT = re.compile(r"^-?\d+$")


def _term(node) -> Term:
    kind, val, pos = node
    if kind == "atom":
        if _INT.match(val):
            return Term.const(int(val))
        if _VAR.match(val) and val not in _KEYWORDS:
            return Term.var(val)
        raise ParseError(f"bad term {val!r}", pos)
    if not val or val[0][0] != "atom":
        raise ParseError("bad term", pos)
    head = val[0][1]
    if head == "+":
        if len(val) < 3:
            raise ParseError("'+' needs at least two arguments", pos)
        out = Term()
        for sub in val[1:]:
            out = out + _term(sub)
        return out
    if head == "*":
        if len(val) != 3 or val[1][0] != "atom" or not _INT.match(val[1][1]):
            raise ParseError("'*' takes an integer literal and a term", pos)
        return _term(val[2]) * int(val[1][1])
    raise ParseError(f"unknown term operator {head!r}", pos)


def _formula(node) -> Formula:
    kind, val, pos = node
    if kind != "list" or not val or val[0][0] != "atom":
        raise ParseError("expected a formula", pos)
    head = val[0][1]
    args = val[1:]
    if head in ("not", "forall"):
        raise ParseError(f"'{head}' is not part of the positive-existential language", pos)
    if head in ("eq", "div"):
        if len(args) != 2:
            raise ParseError(f"'{head}' takes two terms", pos)
        cls = Eq if head == "eq" else Div
        return cls(_term(args[0]), _term(args[1]))
    if head in ("and", "or"):
        parts = tuple(_formula(a) for a in args)
        return And(parts) if head == "and" else Or(parts)
    if head == "exists":
        if len(args) != 2 or args[0][0] != "list":
            raise ParseError("'exists' takes a variable list and a body", pos)
        names = []
        for v in args[0][1]:
            if v[0] != "atom" or not _VAR.match(v[1]) or v[1] in _KEYWORDS:
                raise ParseError("bad bound variable", v[2])
            names.append(v[1])
        return Exists(tuple(names), _formula(args[1]))
    raise ParseError(f"unknown connective {head!r}", pos)


def parse(text: str) -> Formula:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input", 0)
    node, i = _read(tokens, 0)
    if i != len(tokens):
        raise ParseError("trailing input", tokens[i][1])
    return _formula(node)


# -- evaluation ---------------------------------------------------------------


def _atom_true(R: SRing, F: Formula, env: dict) -> bool:
    a = F.lhs.evaluate(env)
    b = F.rhs.evaluate(env)
    sym = isinstance(a, UnitPoly) or isinstance(b, UnitPoly)
    if isinstance(F, Eq):
        return sym_equal(R, a, b) if sym else a == b
    if sym:
        return sym_divides(R, a, b)
    return divides(R, a, b)


def evaluate(R: SRing, F: Formula, env: dict) -> bool:
    """Truth of F with every variable (free and bound) taken from env.

    Or and And short-circuit left to right, so witnesses are only needed for
    the branches actually visited.
    """
    if isinstance(F, (Eq, Div)):
        return _atom_true(R, F, env)
    if isinstance(F, And):
        return all(evaluate(R, p, env) for p in F.parts)
    if isinstance(F, Or):
        return any(evaluate(R, p, env) for p in F.parts)
    if isinstance(F, Exists):
        for v in F.variables:
            if v not in env:
                raise MissingVariable(f"no witness for bound variable {v!r}")
        return evaluate(R, F.body, env)
    raise TypeError(F)


def _check_values(R: SRing, values: dict) -> None:
    for name, val in values.items():
        if isinstance(val, UnitPoly):
            if not val.coefficients_in_ring(R):
                raise RingError(f"value of {name!r} is not certified to lie in O_K,S")
        elif not is_s_integer(R, val):
            raise RingError(f"value of {name!r} is not in O_K,S: {val!r}")


def eval_closed(R: SRing, F: Formula, assignment: dict, witness: dict | None = None) -> bool:
    """Check F under a free-variable assignment and a witness map for bound variables."""
    witness = witness or {}
    missing = F.free_vars() - set(assignment)
    if missing:
        raise MissingVariable(f"free variables without values: {sorted(missing)}")
    overlap = set(assignment) & set(witness)
    if overlap:
        raise ValueError(f"variables both free and witnessed: {sorted(overlap)}")
    assignment = {k: R.field.coerce(v) if isinstance(v, int) else v for k, v in assignment.items()}
    witness = {k: R.field.coerce(v) if isinstance(v, int) else v for k, v in witness.items()}
    _check_values(R, assignment)
    _check_values(R, witness)
    env = {"__field__": R.field, **assignment, **witness}
    return evaluate(R, F, env)


# -- bounded witness search ---------------------------------------------------


def _atoms_and_branches(F: Formula, order: list[str]):
    """Split a formula into atoms and Or nodes, registering existential variables."""
    if isinstance(F, (Eq, Div)):
        return [F], []
    if isinstance(F, And):
        atoms, ors = [], []
        for p in F.parts:
            a, o = _atoms_and_branches(p, order)
            atoms += a
            ors += o
        return atoms, ors
    if isinstance(F, Exists):
        for v in F.variables:
            if v in order:
                raise ValueError(f"variable {v!r} bound twice; rename apart first")
            order.append(v)
        return _atoms_and_branches(F.body, order)
    if isinstance(F, Or):
        return [], [F]
    raise TypeError(F)


class _Search:
    def __init__(self, R: SRing, bound: int, hints: dict[str, str]):
        self.R = R
        self.bound = bound
        self.hints = hints
        self._units = None
        self._box = None

    def candidates(self, var: str) -> list[KElem]:
        if self.hints.get(var) == "unit":
            if self._units is None:
                self._units = unit_candidates(self.R, self.bound)
            return self._units
        if self._box is None:
            self._box = box_candidates(self.R, self.bound)
        return self._box

    def solve(self, goals: list[Formula], env: dict, order: list[str]) -> dict | None:
        atoms: list[Formula] = []
        ors: list[Formula] = []
        for g in goals:
            a, o = _atoms_and_branches(g, order)
            atoms += a
            ors += o
        if ors:
            first, rest = ors[0], ors[1:]
            for branch in first.parts:
                found = self.solve(atoms + rest + [branch], dict(env), list(order))
                if found is not None:
                    return found
            return None
        return self._solve_atoms(atoms, env, order)

    def _solve_atoms(self, atoms: list[Formula], env: dict, order: list[str]) -> dict | None:
        pending = []
        for a in atoms:
            if a.free_vars() <= env.keys():
                if not _atom_true(self.R, a, env):
                    return None
            else:
                pending.append(a)
        if not pending:
            return env
        # independent groups of atoms are solved separately
        groups = _components(pending, env)
        for group in groups:
            found = self._enumerate(group, env, order)
            if found is None:
                return None
            env = found
        return env

    def _enumerate(self, atoms: list[Formula], env: dict, order: list[str]) -> dict | None:
        unbound = set().union(*(a.free_vars() for a in atoms)) - env.keys()
        var = next(v for v in order if v in unbound)
        for cand in self.candidates(var):
            env2 = dict(env)
            env2[var] = cand
            found = self._solve_atoms(atoms, env2, order)
            if found is not None:
                return found
        return None


def _components(atoms: list[Formula], env: dict) -> list[list[Formula]]:
    groups: list[tuple[set, list]] = []
    for a in atoms:
        vs = set(a.free_vars()) - env.keys()
        merged = [g for g in groups if g[0] & vs]
        for g in merged:
            groups.remove(g)
            vs |= g[0]
        atoms_ = [x for g in merged for x in g[1]] + [a]
        groups.append((vs, atoms_))
    # keep the original atom order inside and between groups
    pos = {id(a): i for i, a in enumerate(atoms)}
    groups.sort(key=lambda g: min(pos[id(a)] for a in g[1]))
    return [sorted(g[1], key=lambda a: pos[id(a)]) for g in groups]


def search_exists(R: SRing, F: Formula, assignment: dict, bound: int,
                  hints: dict[str, str] | None = None) -> dict | None:
    """Bounded search for witnesses of all existential variables of F.

    Unit-hinted variables range over zeta^j * prod g_i^a_i with |a_i| <= bound;
    the others over (m + n*w)/p^alpha with |m|, |n|, alpha_i <= bound. The
    search is exhaustive over these boxes, so None means no witness exists in
    them. The returned witness is re-checked with eval_closed.
    """
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    bound_vars = F.bound_vars()
    if len(set(bound_vars)) != len(bound_vars):
        raise ValueError("bound variables must be distinct")
    env = {"__field__": R.field}
    for k, v in assignment.items():
        env[k] = R.field.coerce(v)
    found = _Search(R, bound, hints or {}).solve([F], env, [])
    if found is None:
        return None
    witness = {v: found.get(v, R.field.zero) for v in bound_vars}
    if not eval_closed(R, F, assignment, witness):  # pragma: no cover
        raise AssertionError("search produced an invalid witness")
    return witness


def shape_one(equations: Iterable[tuple[dict[str, int], int]],
              divisibilities: Iterable[tuple[tuple[dict[str, int], int], tuple[dict[str, int], int]]],
              variables: Iterable[str]) -> Formula:
    """Encode  exists x: /\\ f_i = 0 /\\ g_j | h_j  for integer-linear f, g, h."""
    parts: list[Formula] = []
    for coeffs, c in equations:
        parts.append(Eq(Term.build(coeffs, c), Term.const(0)))
    for (gc, g0), (hc, h0) in divisibilities:
        parts.append(Div(Term.build(gc, g0), Term.build(hc, h0)))
    return Exists(tuple(variables), And(tuple(parts)))
