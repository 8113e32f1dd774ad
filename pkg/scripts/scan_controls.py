"""Print the Brown-scan controls: Z^2 grid, 3-regular tree and DL(2,2).

Usage: python3 scripts/scan_controls.py [--workers N]
"""

import argparse

from tdlc.germ import DiestelLeader, Grid, RegularTree
from tdlc.scan import ScanGrid, brown_scan

CONTROLS = [
    ("grid:2 (positive control)", Grid(2), [4, 6], [1, 2]),
    ("tree:3 (acyclic)", RegularTree(3), [3, 5], [1, 2]),
    ("dl:2,2 (3,1)->(5,2)", DiestelLeader(2, 2), [3, 5], [1, 2]),
    ("dl:2,2 (4,1)->(6,2)", DiestelLeader(2, 2), [4, 6], [1, 2]),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    for label, germ, radii, scales in CONTROLS:
        prof = brown_scan(ScanGrid(germ, radii, scales, [1], workers=args.workers))
        (r, r2), (d, d2) = radii, scales
        (v,) = [v for v in prof.verdicts if (v.r, v.d, v.r2, v.d2) == (r, d, r2, d2)]
        fate = "no inner classes" if v.betti_inner == 0 else ("all die" if v.trivial else "some survive")
        print(f"{label}: {v.betti_inner} inner H1 classes at ({r},{d}); into ({r2},{d2}): {fate}")


if __name__ == "__main__":
    main()
