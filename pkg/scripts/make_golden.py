"""Regenerate the golden records in tests/data.

Each record holds the constants and the emitted formula texts for one ring.
The Lenstra pair is cross-checked against a brute-force subgroup enumeration
before anything is written.

    python scripts/make_golden.py
"""
import hashlib
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from oracles import lenstra_pair_bruteforce  # noqa: E402
from sdiv.cli import BUILDERS, constants_json  # noqa: E402
from sdiv.construct import compute_constants  # noqa: E402
from sdiv.lform import atom_count, to_text  # noqa: E402
from sdiv.sring import ring_from_spec  # noqa: E402

SPECS = {"gauss_2r": "d=-1;S=2r", "sqrt5_2r": "d=-5;S=2r", "eisen_2i": "d=-3;S=2i"}


def record(spec: str) -> dict:
    R = ring_from_spec(spec)
    C = compute_constants(R, 2000)
    oracle = lenstra_pair_bruteforce(R, 2000)
    if oracle != (C.lenstra_p, C.lenstra_b):
        raise SystemExit(f"{spec}: Lenstra pair {C.lenstra_p, C.lenstra_b} != oracle {oracle}")
    formulas = {}
    for name, build in sorted(BUILDERS.items()):
        text = to_text(build(R, C))
        formulas[name] = {"atoms": atom_count(build(R, C)), "text": text,
                          "sha256": hashlib.sha256(text.encode()).hexdigest()}
    return {"schema": 1, "ring": R.spec, "constants": constants_json(C), "formulas": formulas}


def main() -> None:
    out = ROOT / "tests" / "data"
    out.mkdir(parents=True, exist_ok=True)
    for tag, spec in SPECS.items():
        path = out / f"golden_{tag}.json"
        path.write_text(json.dumps(record(spec), sort_keys=True, indent=1) + "\n", encoding="utf-8")
        print(path.relative_to(ROOT))


if __name__ == "__main__":
    main()
