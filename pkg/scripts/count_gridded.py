"""Count gridded permutations of a gridding matrix by length.

The matrix is read from a JSON file in the CLI's matrix format, or one of
the built-in examples is used.
"""

import argparse
import json
import time

from gridkit.classes import AV12, SUM21
from gridkit.gridding import all_gridded, matrix_from_json, row_matrix
from gridkit.perm import all_perms


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("matrix", nargs="?", help="matrix JSON (default: the 1x2 matrix (⊕21 Av12))")
    ap.add_argument("--max-length", type=int, default=7)
    args = ap.parse_args()
    if args.matrix:
        with open(args.matrix) as fh:
            M = matrix_from_json(json.load(fh))
    else:
        M = row_matrix(SUM21, AV12)
    print(f"{'n':>3} {'gridded':>9} {'griddable':>10} {'seconds':>8}")
    for n in range(1, args.max_length + 1):
        start = time.perf_counter()
        gridded = griddable = 0
        for p in all_perms(n):
            count = len(all_gridded(p, M))
            gridded += count
            griddable += count > 0
        print(f"{n:>3} {gridded:>9} {griddable:>10} {time.perf_counter() - start:>8.2f}")


if __name__ == "__main__":
    main()
