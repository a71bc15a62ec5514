"""Command-line front end: ``sdiv <command> [-d D] [-S SPEC] ...``.

Commands: field, factor, sunits, lenstra, constants, build, verify. With
``--json`` every command prints a report carrying ``"schema": 1``; keys are
sorted so equal runs give byte-identical output.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .construct import (Constants, build_neq, build_phi_inf, build_produnits, build_sq,
                        compute_constants, find_lenstra_pair)
from .ideals import class_number, factor_element, format_factorization, split_prime
from .lform import atom_count, to_text
from .qfield import format_elem, make_field, parse_elem
from .sring import RingError, is_s_integer, is_s_unit, make_sring, unit_decompose
from .verify import RunConfig, run_verify

BUILDERS = {"neq": build_neq, "produnits": build_produnits, "phi-inf": build_phi_inf,
            "sq": build_sq}


def _prime_json(P) -> dict:
    return {"p": P.p, "r": P.r, "tag": P.tag, "e": P.e, "f": P.f, "name": P.name}


def _ring(args):
    return make_sring(make_field(args.d), args.S)


def _constants(R, args) -> Constants:
    C = compute_constants(R, args.scan_bound)
    for item in args.set:
        key, _, val = item.partition("=")
        if key == "q":
            C = replace(C, q=int(val))
        elif key == "b":
            C = replace(C, lenstra_b=int(val))
        elif key == "q_list":
            C = replace(C, q_list=tuple(int(v) for v in val.split(",")))
        else:
            raise ValueError(f"cannot override {key!r}")
    return C


def constants_json(C: Constants) -> dict:
    return {
        "lenstra_p": C.lenstra_p, "lenstra_b": C.lenstra_b,
        "lenstra_prime": _prime_json(C.lenstra_prime),
        "C_sq": str(C.C_sq), "q": C.q, "q_list": list(C.q_list),
        "I_size": len(C.I), "J_size": len(C.J),
        "exponent_17": C.exponent_17, "exponent_34": C.exponent_34,
    }


def cmd_field(args) -> dict:
    K = make_field(args.d)
    out = {"d": K.d, "disc": K.disc, "w": K.w, "omega": K.omega_kind,
           "min_poly": f"X^2 - {K.t}X + {K.n}", "class_number": class_number(K)}
    if args.primes:
        out["primes"] = {str(p): [_prime_json(P) for P in split_prime(K, p)] for p in args.primes}
    return out


def cmd_factor(args) -> dict:
    K = make_field(args.d)
    a = parse_elem(K, args.element)
    out = {"element": format_elem(a), "norm": str(a.norm()),
           "factorization": format_factorization(factor_element(a)) if a else "0"}
    if args.S:
        R = make_sring(K, args.S)
        out["s_integer"] = is_s_integer(R, a)
        if is_s_unit(R, a):
            j, exps = unit_decompose(R, a)
            out["s_unit"] = {"zeta_power": j, "zeta": format_elem(R.zeta),
                             "basis": [format_elem(g) for g in R.basis], "exponents": list(exps)}
    return out


def cmd_sunits(args) -> dict:
    R = _ring(args)
    return {
        "ring": R.spec, "class_number": R.h, "w": R.w, "zeta": format_elem(R.zeta),
        "S": [_prime_json(P) for P in R.S], "class_orders": list(R.class_orders),
        "pis": [format_elem(g) for g in R.pis], "basis": [format_elem(g) for g in R.basis],
        "basis_valuations": [list(v) for v in R.basis_vals],
    }


def cmd_lenstra(args) -> dict:
    R = _ring(args)
    pair = find_lenstra_pair(R, args.scan_bound)
    return {"ring": R.spec, "p": pair.p, "b": pair.b, "prime": _prime_json(pair.prime),
            "index": pair.index}


def cmd_constants(args) -> dict:
    R = _ring(args)
    return {"ring": R.spec, "constants": constants_json(_constants(R, args))}


def cmd_build(args) -> dict:
    R = _ring(args)
    C = _constants(R, args)
    F = BUILDERS[args.which](R, C)
    return {"ring": R.spec, "formula": args.which, "atoms": atom_count(F),
            "free": sorted(F.free_vars()), "text": to_text(F)}


def cmd_verify(args) -> dict:
    R = _ring(args)
    C = _constants(R, args)
    cfg = RunConfig(R.spec, args.scan_bound, args.bound, args.samples, args.seed,
                    "json" if args.json else "text", tuple(args.set))
    return run_verify(R, C, cfg, args.suite)


COMMANDS = {"field": cmd_field, "factor": cmd_factor, "sunits": cmd_sunits,
            "lenstra": cmd_lenstra, "constants": cmd_constants, "build": cmd_build,
            "verify": cmd_verify}


def _text(cmd: str, out: dict) -> str:
    if cmd == "build":
        return out["text"] + "\n"
    if cmd == "verify":
        lines = []
        for name, rep in out["suites"].items():
            lines.append(f"[{'PASS' if rep['ok'] else 'FAIL'}] {name} "
                         + " ".join(f"{k}={v}" for k, v in rep["counters"].items()))
            for check, tally in rep["checks"].items():
                mark = "ok  " if tally["fail"] == 0 else "FAIL"
                lines.append(f"    {mark} {check}: {tally['pass']} pass, {tally['fail']} fail"
                             + (f", {tally['skip']} skip" if tally["skip"] else ""))
            if rep["counterexample"]:
                lines.append(f"    counterexample: {json.dumps(rep['counterexample'], sort_keys=True)}")
        lines.append("ALL PASS" if out["ok"] else "FAILED")
        return "\n".join(lines) + "\n"
    lines = []
    for k, v in out.items():
        if isinstance(v, dict):
            lines.append(f"{k}:")
            lines.extend(f"  {kk}: {vv}" for kk, vv in v.items())
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def _spec_list(text: str) -> list[tuple[int, str]]:
    from .sring import parse_spec
    return parse_spec(text)[1]


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-d", type=int, default=-1, help="squarefree d < 0, K = Q(sqrt d)")
    common.add_argument("-S", type=_spec_list, default=None,
                        help="primes of S, e.g. 2r or 2r,5s1 (default 2r)")
    common.add_argument("--scan-bound", type=int, default=2000)
    common.add_argument("--bound", type=int, default=6, help="witness search bound B")
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true")
    common.add_argument("--out", help="write the report to this path")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override a computed constant (q, b, q_list)")
    ap = argparse.ArgumentParser(prog="sdiv", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)
    p = sub.add_parser("field", parents=[common])
    p.add_argument("primes", nargs="*", type=int, help="rational primes to split")
    p = sub.add_parser("factor", parents=[common])
    p.add_argument("element", help="element such as (3 - 2*w)/5")
    for name in ("sunits", "lenstra", "constants"):
        sub.add_parser(name, parents=[common])
    p = sub.add_parser("build", parents=[common])
    p.add_argument("which", choices=sorted(BUILDERS))
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("suite", nargs="?", default="all",
                   choices=["all", "constants", "produnits", "neq", "sq", "lemmas"])
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        if args.S is None and args.cmd != "factor":
            args.S = [(2, split_prime(make_field(args.d), 2)[0].tag)]
        out = COMMANDS[args.cmd](args)
    except (RingError, ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        text = json.dumps({"schema": 1, "command": args.cmd, **out}, sort_keys=True,
                          indent=2, ensure_ascii=False) + "\n"
    else:
        text = _text(args.cmd, out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.cmd == "verify":
        return 0 if out["ok"] else 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
