"""Print the cell walk of the grid pin sequence on M^k.

Each line shows a pin index, its cell and its direction, so the turn at
the C cell and the double pin in the D cell can be read off directly.
"""

import argparse

from gridkit.family import mk_matrix
from gridkit.pins import generate_pin_sequence, validate_pin_sequence


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=8)
    ap.add_argument("--pins", type=int, default=None, help="default: two periods")
    args = ap.parse_args()
    k = args.k
    M, c_cell, d_cell = mk_matrix(k)
    num = args.pins or 2 * (2 * k + 2)
    ps = generate_pin_sequence(k, num)
    print(f"M^{k}: {M.dims[0]}x{M.dims[1]}, C at {c_cell}, D at {d_cell}, origin {ps.origin}")
    for idx, pin in enumerate(ps.pins, 1):
        tag = " C" if pin.cell == c_cell else " D" if pin.cell == d_cell else ""
        print(f"p{idx:<3} cell {pin.cell}  {'/'.join(sorted(pin.direction)):10}{tag}")
    print("valid:", validate_pin_sequence(ps).ok)
    print("permutation:", " ".join(map(str, ps.permutation())))


if __name__ == "__main__":
    main()
