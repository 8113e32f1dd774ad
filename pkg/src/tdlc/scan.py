"""Brown-style essential-triviality scans over Rips windows of germ balls.

These are finite-window diagnostics.  A trivial verdict means every inner
class dies inside the window; it is evidence, never a proof, about the
infinite filtration.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .complex import SimplicialComplex, normalize_ring, relative_chain_complex, rips
from .errors import InputError
from .germ import DEFAULT_VERTEX_CAP, ball
from .complex import DEFAULT_SIMPLEX_CAP
from .homology import homology, map_is_trivial

MODULE = "scan"

INFINITY = "inf"


@dataclass
class ScanGrid:
    germ: object
    radii: list
    scales: list
    dims: list = field(default_factory=lambda: [1])
    inner_margin: int | None = None  # default: largest scale
    ring: str = "Q"
    workers: int = 1
    vertex_cap: int = DEFAULT_VERTEX_CAP
    simplex_cap: int = DEFAULT_SIMPLEX_CAP

    def __post_init__(self):
        self.radii = [int(r) for r in self.radii]
        self.scales = [int(d) for d in self.scales]
        self.dims = sorted({int(k) for k in self.dims})
        if not self.radii or not self.scales or not self.dims:
            raise InputError(MODULE, "scan grid needs at least one radius, scale and dimension")
        for name, seq in (("radii", self.radii), ("scales", self.scales)):
            if any(b <= a for a, b in zip(seq, seq[1:])):
                raise InputError(MODULE, f"{name} must be strictly increasing")
        if self.radii[0] < 0 or self.scales[0] < 1 or self.dims[0] < 0:
            raise InputError(MODULE, "radii must be >= 0, scales >= 1, dims >= 0")
        if self.inner_margin is None:
            self.inner_margin = self.scales[-1]
        if self.inner_margin < self.scales[-1]:
            raise InputError(MODULE, f"inner margin {self.inner_margin} is below the largest scale {self.scales[-1]}")
        self.ring = normalize_ring(self.ring)
        if self.workers < 1:
            raise InputError(MODULE, "workers must be >= 1")

    @property
    def max_dim(self):
        return self.dims[-1] + 1

    def stages(self):
        """The diagonal chain of windows used by the pair scan."""
        n = max(len(self.radii), len(self.scales))
        return [(self.radii[min(s, len(self.radii) - 1)], self.scales[min(s, len(self.scales) - 1)]) for s in range(n)]


@dataclass(frozen=True)
class Verdict:
    k: int
    r: int
    d: int
    r2: int
    d2: int
    betti_inner: int
    trivial: bool


@dataclass
class TrivialityProfile:
    grid: ScanGrid
    verdicts: list

    def summary(self):
        """Per k: fate of the inner classes of the first window."""
        r0, d0 = self.grid.radii[0], self.grid.scales[0]
        out = {}
        for k in self.grid.dims:
            rows = [v for v in self.verdicts if v.k == k and (v.r, v.d) == (r0, d0)]
            if rows and all(v.betti_inner == 0 for v in rows):
                out[k] = "no inner classes"
                continue
            dead = [v for v in rows if v.trivial]
            if dead:
                v = min(dead, key=lambda v: (v.r2 + v.d2, v.r2, v.d2))
                out[k] = f"dies by ({v.r2},{v.d2})"
            else:
                out[k] = "survives window"
        return out

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "r", "d", "r2", "d2", "betti_inner", "trivial"])
        for v in self.verdicts:
            w.writerow([v.k, v.r, v.d, v.r2, v.d2, v.betti_inner, int(v.trivial)])
        return buf.getvalue()


class _Windows:
    """Caches balls and Rips complexes for one grid."""

    def __init__(self, grid):
        self.grid = grid
        self.balls = {}
        self.complexes = {}

    def ball(self, r):
        if r not in self.balls:
            self.balls[r] = ball(self.grid.germ, r, cap=self.grid.vertex_cap)
        return self.balls[r]

    def rips(self, r, d):
        if (r, d) not in self.complexes:
            self.complexes[(r, d)] = rips(self.ball(r), d, self.grid.max_dim, cap=self.grid.simplex_cap)
        return self.complexes[(r, d)]

    def inner(self, r, d, r2):
        radius = min(r, r2 - self.grid.inner_margin)
        b = self.ball(r)
        K = self.rips(r, d)
        if radius < 0:
            return SimplicialComplex([])
        return K.full_subcomplex([v for v in range(b.n) if b.depth[v] <= radius])


def brown_scan(grid):
    """Induced-map verdicts for every k in dims and every window pair
    (r, d) -> (r2, d2) with r <= r2, d <= d2 and (r, d) != (r2, d2).

    Attention is restricted to the full subcomplex on vertices within
    ``min(r, r2 - inner_margin)`` of the root, so that every Rips simplex the
    target could use to fill an inner cycle lies inside the target window.
    """
    win = _Windows(grid)
    cells = []
    for k in grid.dims:
        for r in grid.radii:
            for d in grid.scales:
                for r2 in grid.radii:
                    for d2 in grid.scales:
                        if r2 >= r and d2 >= d and (r2, d2) != (r, d):
                            cells.append((k, r, d, r2, d2))
    # build windows up front so worker threads only read the caches
    for r in grid.radii:
        for d in grid.scales:
            win.rips(r, d)

    def run(cell):
        k, r, d, r2, d2 = cell
        K = win.inner(r, d, r2)
        L = win.rips(r2, d2)
        betti, trivial = map_is_trivial(K, L, k, grid.ring, reduced=(k == 0))
        return Verdict(k, r, d, r2, d2, betti, trivial)

    if grid.workers > 1:
        with ThreadPoolExecutor(max_workers=grid.workers) as pool:
            verdicts = list(pool.map(run, cells))
    else:
        verdicts = [run(c) for c in cells]
    verdicts.sort(key=lambda v: (v.k, v.r, v.d, v.r2, v.d2))
    return TrivialityProfile(grid, verdicts)


def pair_connectivity(K, L, max_dim, ring="Q"):
    """Least k <= max_dim with H_k(L, K) != 0, or ``INFINITY``."""
    C = relative_chain_complex(L, K, ring)
    H = homology(C)
    for k in range(0, max_dim + 1):
        if k < len(H.betti) and (H.betti[k] or H.torsion[k]):
            return k
    return INFINITY


@dataclass(frozen=True)
class PairStep:
    step: int
    r: int
    d: int
    r2: int
    d2: int
    min_k: object


def pair_connectivity_scan(grid):
    """Relative homology of consecutive windows along ``grid.stages()``."""
    win = _Windows(grid)
    stages = grid.stages()
    out = []
    for j, ((r, d), (r2, d2)) in enumerate(zip(stages, stages[1:])):
        K, L = win.rips(r, d), win.rips(r2, d2)
        out.append(PairStep(j, r, d, r2, d2, pair_connectivity(K, L, grid.dims[-1], grid.ring)))
    return out
