"""Number of factorizations and base-locus components for every small degree vector."""

from __future__ import annotations

import argparse
import itertools

from logforms.baselocus import components
from logforms.logarithmic import DegreeVector


def degree_vectors(max_d: int, max_m: int):
    for d in range(2, max_d + 1):
        for m in range(2, min(d, max_m) + 1):
            for parts in itertools.combinations_with_replacement(range(d, 0, -1), m):
                if sum(parts) == d:
                    yield DegreeVector(parts)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-d", type=int, default=6)
    ap.add_argument("--max-m", type=int, default=4)
    ap.add_argument("-v", "--verbose", action="store_true", help="list the components")
    args = ap.parse_args()
    print(f"{'d':<18}{'factorizations':>15}{'components':>12}{'max lambda_dim':>16}")
    for dv in degree_vectors(args.max_d, args.max_m):
        comps = components(dv)
        top = [c for c in comps if c.is_maximal and c.lambda_dim > 0]
        print(f"{str(dv):<18}{len(comps):>15}{len(top):>12}{max(c.lambda_dim for c in top):>16}")
        if args.verbose:
            for c in top:
                print(f"    e={[list(r) for r in c.phi.e]} d'={list(c.phi.d_prime)} lambda_dim={c.lambda_dim}")


if __name__ == "__main__":
    main()
