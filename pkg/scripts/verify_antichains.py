"""Compare two pin counts for the antichain elements built on M^k.

For each (k, i) the script builds the inflated pin permutation with
(2i-1)k pins and with (2i-1)(k+1) pins, then reports whether it is gridded
by M^k and strongly uniquely griddable, and whether each family is an
antichain.
"""

import argparse
import time

from gridkit.family import mk_matrix
from gridkit.gridding import is_gridded_by
from gridkit.pins import (
    inflated_pin_permutation,
    min_antichain_length,
    verify_antichain,
    verify_strongly_unique,
)

VARIANTS = {
    "(2i-1)k": lambda k, i: (2 * i - 1) * k,
    "(2i-1)(k+1)": lambda k, i: (2 * i - 1) * (k + 1),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--i", type=int, nargs="+", default=[5, 6, 7])
    args = ap.parse_args()
    for k in args.k:
        M = mk_matrix(k)[0]
        print(f"k={k}  min length {min_antichain_length(k)}")
        for name, count in VARIANTS.items():
            perms = []
            for i in args.i:
                start = time.perf_counter()
                gp = inflated_pin_permutation(k, count(k, i))
                gridded_ok = is_gridded_by(gp, M)
                su = verify_strongly_unique(gp, M).ok if gridded_ok else False
                perms.append(gp.perm)
                print(
                    f"  {name:12} i={i}  pins={count(k, i):3}  length={len(gp):3}"
                    f"  gridded={gridded_ok!s:5}  strongly_unique={su!s:5}  {time.perf_counter() - start:.2f}s"
                )
            print(f"  {name:12} antichain={verify_antichain(perms).ok}")


if __name__ == "__main__":
    main()
