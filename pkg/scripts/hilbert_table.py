"""Direct vs predicted Hilbert function of the pairwise-intersection ideal."""

from __future__ import annotations

import argparse

from logforms.logarithmic import DegreeVector, random_instance
from logforms.poly import FieldSpec
from logforms.singular import hilbert_check


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--degrees", nargs="+", default=["1,1,1", "2,1,1", "2,2,1"])
    ap.add_argument("--kmax", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--field", default="prime:2147483647")
    args = ap.parse_args()
    fs = FieldSpec.parse(args.field)
    for text in args.degrees:
        dv = DegreeVector.parse(text)
        inst = random_instance(args.n, dv, fs, args.seed)
        print(f"d = {dv}, n = {args.n}, seed = {args.seed}")
        print("   k  direct  predicted")
        for k in range(args.kmax + 1):
            row = hilbert_check(inst, k)
            flag = "" if row.match else "  <-- mismatch"
            print(f"  {k:>2}  {row.direct:>6}  {row.predicted:>9}{flag}")


if __name__ == "__main__":
    main()
