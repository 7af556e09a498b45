#!/usr/bin/env python3
"""Print the splitting / intersection grid for the extension matrices
[[u^(m+n), u^m], [0, 1]] with 1 <= n <= m, comparing the factorization
method against the h^0 scan and the ruled-surface arithmetic."""

import argparse
import sys

from gawb.p1bundles import birkhoff_split, h0_twist, splitting_by_h0_scan, transition_matrix
from gawb.surfaces import delta_class, scroll, sdm_boundary_class, self_intersection


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=5)
    args = ap.parse_args()

    header = (f"{'(m,n)':>7} {'split':>10} {'h0 scan':>10} {'F-index':>8} "
              f"{'(C+mF)^2':>9} {'delta^2':>8} {'h0(E(m-1))':>11}")
    print(header)
    print("-" * len(header))
    for m in range(1, args.max_m + 1):
        for n in range(1, m + 1):
            M = transition_matrix(m, n)
            split = birkhoff_split(M).splitting
            scan = splitting_by_h0_scan(M)
            assert split == scan
            boundary = sdm_boundary_class(m, n)[1]
            dsq = self_intersection(delta_class(scroll(m, n)))
            h0m1 = h0_twist(M, m - 1)[0]
            mark = "" if h0m1 == 0 else "  <- nonzero (normalization shifts)"
            print(f"({m},{n})".rjust(7)
                  + f"{str((split.a1, split.a2)):>11}"
                  + f"{str((scan.a1, scan.a2)):>11}"
                  + f"{split.hirzebruch_index:>8}"
                  + f"{boundary:>10}{dsq:>9}{h0m1:>11}{mark}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
