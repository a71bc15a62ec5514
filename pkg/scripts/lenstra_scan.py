"""Print the Lenstra pair (p, b) and the index of the S-unit image for several rings.

    python scripts/lenstra_scan.py "d=-1;S=2r" "d=-5;S=2r" --scan-bound 2000
"""
import argparse

from sdiv.construct import find_lenstra_pair
from sdiv.sring import ring_from_spec, unit_image_index


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("specs", nargs="*", default=["d=-1;S=2r", "d=-5;S=2r", "d=-3;S=2i"])
    ap.add_argument("--scan-bound", type=int, default=2000)
    args = ap.parse_args()
    for spec in args.specs:
        R = ring_from_spec(spec)
        pair = find_lenstra_pair(R, args.scan_bound)
        idx = unit_image_index(R, pair.prime)
        print(f"{spec:<14} p={pair.p:<5} b={pair.b:<4} prime={pair.prime.name} index={idx}")


if __name__ == "__main__":
    main()
