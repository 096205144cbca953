"""Stability certificates over a grid of degree vectors and seeds.

    python3 scripts/certify_sweep.py --n 3 --degrees 1,1 1,1,1 2,1 2,1,1 --seeds 0,1,2,3,4
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, field

from logforms.logarithmic import DegreeVector, random_instance
from logforms.poly import FieldSpec
from logforms.tangent import stability_certificate


@dataclass
class SweepConfig:
    n: int = 3
    degrees: list = field(default_factory=lambda: ["1,1", "1,1,1", "2,1"])
    seeds: list = field(default_factory=lambda: [0, 1, 2, 3, 4])
    field: str = "prime:2147483647"
    out: str | None = None


def run(cfg: SweepConfig) -> list:
    fs = FieldSpec.parse(cfg.field)
    rows = []
    for text in cfg.degrees:
        dv = DegreeVector.parse(text)
        t0 = time.perf_counter()
        reps = [stability_certificate(random_instance(cfg.n, dv, fs, s)) for s in cfg.seeds]
        elapsed = time.perf_counter() - t0
        r = reps[0]
        rows.append({
            "degrees": list(dv.parts),
            "dim_V": r.dim_V,
            "dim_ambient": r.dim_ambient,
            "dim_T": sorted({x.dim_T for x in reps}),
            "rank_dmu": sorted({x.rank_dmu for x in reps}),
            "ker_dmu_dim": sorted({x.ker_dmu_dim for x in reps}),
            "balanced": r.balanced,
            "r_d": r.r_d,
            "surjective": sum(x.surjective for x in reps),
            "seeds": len(reps),
            "seconds": round(elapsed, 2),
        })
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--degrees", nargs="+", default=SweepConfig().degrees)
    ap.add_argument("--seeds", default="0,1,2,3,4")
    ap.add_argument("--field", default="prime:2147483647")
    ap.add_argument("--out")
    args = ap.parse_args()
    cfg = SweepConfig(args.n, args.degrees, [int(s) for s in args.seeds.split(",")], args.field, args.out)
    rows = run(cfg)
    print(f"{'d':<16}{'dim V':>6}{'dim P':>7}{'dim T':>7}{'rank':>6}{'ker':>5}  bal  r  surj")
    for row in rows:
        d = "(" + ",".join(map(str, row["degrees"])) + ")"
        print(f"{d:<16}{row['dim_V']:>6}{row['dim_ambient']:>7}{'/'.join(map(str, row['dim_T'])):>7}"
              f"{'/'.join(map(str, row['rank_dmu'])):>6}{'/'.join(map(str, row['ker_dmu_dim'])):>5}"
              f"  {'y' if row['balanced'] else 'n':>3}{row['r_d']:>3}  {row['surjective']}/{row['seeds']}")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(rows, fh, indent=2)
            fh.write("\n")


if __name__ == "__main__":
    main()
