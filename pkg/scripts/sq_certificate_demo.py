"""Build the squaring formula for one ring and certify phi_sq(x, x^2) for a given x.

The unit eps used by the certificate is reported symbolically (torsion index,
exponents and the power t of the first S-unit) since it is far too large to expand.

    python scripts/sq_certificate_demo.py "d=-1;S=2r" "3"
"""
import argparse

from sdiv.construct import build_sq, checks_pass, compute_constants, lemma_checks, witness_sq
from sdiv.lform import atom_count, eval_closed
from sdiv.qfield import parse_elem
from sdiv.sring import ring_from_spec


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("spec", nargs="?", default="d=-1;S=2r")
    ap.add_argument("x", nargs="?", default="3")
    args = ap.parse_args()
    R = ring_from_spec(args.spec)
    C = compute_constants(R)
    F = build_sq(R, C)
    x = parse_elem(R.field, args.x)
    W = witness_sq(R, C, x)
    print(f"ring {R.spec}: phi_sq has {atom_count(F)} atoms")
    print(f"case: {W.case}")
    if W.unit is not None:
        print(f"eps = pi_1^t with t = {W.unit.t} ({W.unit.t.bit_length()} bits), "
              f"{len(W.unit.moduli)} moduli")
    ok = eval_closed(R, F, {"x": x, "y": x * x}, W.values)
    print(f"certificate holds: {ok}")
    if W.unit is not None:
        checks = lemma_checks(R, C, x, W.unit.eps)
        for c in checks:
            print(f"  {c.status:<4} {c.name}  {c.detail}")
        print(f"height argument checks pass: {checks_pass(checks)}")


if __name__ == "__main__":
    main()
