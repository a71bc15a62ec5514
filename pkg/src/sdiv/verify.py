"""Property suites behind ``sdiv verify``.

Every suite is driven by a seeded ``random.Random`` and returns a plain dict
(counters, per-check tallies, first counterexample) so that reports serialize
to identical JSON for identical configurations.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import asdict, dataclass, field

from .construct import (CONSTANT_INVARIANTS, Constants, build_neq, build_produnits, build_sq, checks_pass,
                        lemma_checks, sq_special_case, sq_unit_hints, verify_constants,
                        witness_neq, witness_sq)
from .ideals import factor_element, factorization_norm
from .lform import atom_count, eval_closed, evaluate, search_exists
from .qfield import KElem, format_elem
from .sring import (SRing, ab_decompose, ab_violations, is_s_unit, random_element,
                    unit_candidates)

SUITES = ("constants", "produnits", "neq", "sq", "lemmas")


@dataclass(frozen=True)
class RunConfig:
    spec: str = "d=-1;S=2r"
    scan_bound: int = 2000
    bound: int = 6
    samples: int = 100
    seed: int = 0
    fmt: str = "text"
    overrides: tuple = field(default=())

    def __post_init__(self):
        if self.scan_bound < 2 or self.bound < 0 or self.samples < 0:
            raise ValueError("bounds must be positive")


class _Suite:
    def __init__(self, name: str):
        self.name = name
        self.counters: Counter = Counter()
        self.checks: dict[str, Counter] = {}
        self.counterexample = None

    def tally(self, check: str, status: str, example=None) -> None:
        self.checks.setdefault(check, Counter())[status] += 1
        if status == "fail" and self.counterexample is None:
            self.counterexample = {"check": check, **(example or {})}

    def ok(self) -> bool:
        return all(c["fail"] == 0 for c in self.checks.values())

    def report(self) -> dict:
        return {
            "ok": self.ok(),
            "counters": dict(sorted(self.counters.items())),
            "checks": {k: {s: v[s] for s in ("pass", "fail", "skip")}
                       for k, v in sorted(self.checks.items())},
            "counterexample": self.counterexample,
        }


def _e(a: KElem) -> str:
    return format_elem(a)


def _rng(cfg: RunConfig, suite: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{cfg.spec}:{suite}")


def sample_sq_inputs(R: SRing, C: Constants, rng: random.Random, n: int) -> list[KElem]:
    """n nonzero elements x whose pair (x, x^2) falls in the unit branch of phi_sq."""
    out = []
    while len(out) < n:
        x = random_element(R, rng, size=6, depth=2)
        if sq_special_case(R, C, x, x * x) is None:
            out.append(x)
    return out


def suite_constants(R: SRing, C: Constants, cfg: RunConfig) -> _Suite:
    s = _Suite("constants")
    bad = verify_constants(R, C)
    for name in CONSTANT_INVARIANTS:
        s.tally(name, "fail" if name in bad else "pass", {"violation": name})
    p, b = C.lenstra_p, C.lenstra_b
    rng = _rng(cfg, "constants")
    for _ in range(min(cfg.samples, 50)):
        x = random_element(R, rng, 6, 2, nonzero=False)
        t = x * p + b
        s.counters["non-unit samples"] += 1
        s.tally("p*x + b is not an S-unit", "fail" if is_s_unit(R, t) else "pass", {"x": _e(x)})
    return s


def suite_produnits(R: SRing, C: Constants, cfg: RunConfig) -> _Suite:
    s = _Suite("produnits")
    F = build_produnits(R, C)
    expected = 3 + 2 * len(C.I) * len(C.q_list)
    s.tally("atom count 5^k (u_K + 1) 2 + 3", "pass" if atom_count(F) == expected else "fail",
            {"atoms": atom_count(F)})
    U = unit_candidates(R, 2)
    K = R.field
    for x in U:
        for y in U:
            for z in U:
                got = evaluate(R, F, {"__field__": K, "x": x, "y": y, "z": z})
                want = z == x * y
                s.counters["triples"] += 1
                s.counters["true triples"] += want
                s.tally("Prod_u(x, y, z) iff z = x y", "pass" if got == want else "fail",
                        {"x": _e(x), "y": _e(y), "z": _e(z)})
    return s


def suite_neq(R: SRing, C: Constants, cfg: RunConfig) -> _Suite:
    s = _Suite("neq")
    rng = _rng(cfg, "neq")
    F = build_neq(R, C)
    for _ in range(cfg.samples):
        y = random_element(R, rng, size=8, depth=3)
        W = witness_neq(R, C, y)
        s.counters["certificates"] += 1
        s.tally("witness certifies psi_neq(y)", "pass" if eval_closed(R, F, {"y": y}, W.values)
                else "fail", {"y": _e(y)})
    found = search_exists(R, F, {"y": 0}, cfg.bound)
    s.tally("no witness for psi_neq(0) in the search box", "pass" if found is None else "fail",
            {"witness": None if found is None else {k: _e(v) for k, v in sorted(found.items())}})
    return s


def suite_sq(R: SRing, C: Constants, cfg: RunConfig) -> _Suite:
    s = _Suite("sq")
    rng = _rng(cfg, "sq")
    F = build_sq(R, C)
    K = R.field
    for x in sample_sq_inputs(R, C, rng, cfg.samples):
        W = witness_sq(R, C, x)
        s.counters["certificates"] += 1
        s.tally("witness certifies phi_sq(x, x^2)",
                "pass" if eval_closed(R, F, {"x": x, "y": x * x}, W.values) else "fail",
                {"x": _e(x)})
    for x0 in (K.zero, K(1, 0, R.rational_primes[0])):
        W = witness_sq(R, C, x0)
        s.tally("special forms hold without a unit",
                "pass" if eval_closed(R, F, {"x": x0, "y": x0 * x0}, W.values) else "fail",
                {"x": _e(x0)})
    hints = sq_unit_hints(R)
    for _ in range(cfg.samples):
        x = random_element(R, rng, size=6, depth=2, nonzero=False)
        y = x * x + random_element(R, rng, size=3, depth=1)
        found = search_exists(R, F, {"x": x, "y": y}, cfg.bound, hints)
        s.counters["refutations"] += 1
        s.tally("no witness for phi_sq(x, y), y != x^2, in the search box",
                "pass" if found is None else "fail", {"x": _e(x), "y": _e(y)})
    return s


def suite_lemmas(R: SRing, C: Constants, cfg: RunConfig) -> _Suite:
    s = _Suite("lemmas")
    rng = _rng(cfg, "lemmas")
    for _ in range(cfg.samples):
        a = random_element(R, rng, size=12, depth=4)
        s.counters["elements"] += 1
        fac = factor_element(a)
        s.tally("product formula |a|^2 = prod q_P^v_P(a)",
                "pass" if factorization_norm(fac) == a.norm() else "fail", {"a": _e(a)})
        bad = ab_violations(R, ab_decompose(R, a))
        s.tally("decomposition a/b invariants", "fail" if bad else "pass",
                {"a": _e(a), "violations": bad})
    for x in sample_sq_inputs(R, C, rng, cfg.samples):
        W = witness_sq(R, C, x)
        checks = lemma_checks(R, C, x, W.unit.eps)
        s.counters["height arguments"] += 1
        s.counters["height arguments passing"] += checks_pass(checks)
        for c in checks:
            s.tally(c.name, c.status, {"x": _e(x), "detail": c.detail})
    return s


_RUNNERS = {"constants": suite_constants, "produnits": suite_produnits, "neq": suite_neq,
            "sq": suite_sq, "lemmas": suite_lemmas}


def run_verify(R: SRing, C: Constants, cfg: RunConfig, suite: str = "all") -> dict:
    names = SUITES if suite == "all" else (suite,)
    if suite != "all" and suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}")
    reports = {}
    if "constants" not in names:
        # constants are always re-verified; a bad constant invalidates every suite
        reports["constants"] = suite_constants(R, C, cfg).report()
    for name in names:
        reports[name] = _RUNNERS[name](R, C, cfg).report()
    return {
        "schema": 1,
        "command": "verify",
        "suite": suite,
        "config": {k: v for k, v in asdict(cfg).items() if k != "fmt"},
        "suites": reports,
        "ok": all(r["ok"] for r in reports.values()),
    }
