"""Run the partial well-order decider on M^1..M^K and a few small matrices."""

import argparse

from gridkit.classes import AV12, AV21, SUM21
from gridkit.decision import decide_pwo, stacked_example
from gridkit.family import mk_matrix
from gridkit.gridding import from_cells, row_matrix


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-k", type=int, default=8)
    args = ap.parse_args()
    corpus = {
        "(Av21 Av21)": row_matrix(AV21, AV21),
        "(⊕21 Av12)": row_matrix(SUM21, AV12),
        "2x2 all Av21": from_cells(2, 2, {c: AV21 for c in [(1, 1), (1, 2), (2, 1), (2, 2)]}),
        "stacked": stacked_example(),
    }
    corpus.update({f"M^{k}": mk_matrix(k)[0] for k in range(1, args.max_k + 1)})
    for name, M in corpus.items():
        v = decide_pwo(M)
        rules = ", ".join(sorted({c.rule for c in v.components}))
        print(f"{name:14} {M.dims[0]}x{M.dims[1]}  {v.status.name:8} {rules}")


if __name__ == "__main__":
    main()
