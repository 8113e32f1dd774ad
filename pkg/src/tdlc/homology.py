"""Homology of chain complexes and maps induced by simplicial inclusions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complex import chain_complex, normalize_ring
from .errors import InputError
from .linalg import (
    INCONSISTENT,
    SparseMatrix,
    _echelon,
    _integer_columns,
    invariant_factors,
    kernel_basis_q,
    lattice_contains,
    rank_q,
    smith,
    solve_q,
)

MODULE = "homology"


@dataclass(frozen=True)
class HomologySummary:
    ring: str
    reduced: bool
    betti: tuple
    torsion: tuple  # per dimension, invariant factors > 1 (empty over Q)

    def group(self, p):
        """Human-readable H_p, e.g. ``Z^2 + Z/2`` or ``0``."""
        b = self.betti[p] if p < len(self.betti) else 0
        tors = self.torsion[p] if p < len(self.torsion) else ()
        parts = []
        if b:
            parts.append(self.ring if b == 1 else f"{self.ring}^{b}")
        parts += [f"Z/{t}" for t in tors]
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        name = "~H" if self.reduced else "H"
        return ", ".join(f"{name}{p}={self.group(p)}" for p in range(len(self.betti)))


def _rank(M, ring):
    if M.rows == 0 or M.cols == 0 or M.nnz == 0:
        return 0
    return len(invariant_factors(M)) if ring == "Z" else rank_q(M)


def homology(C):
    """Betti numbers and torsion of a chain complex."""
    top = C.top
    ranks = [_rank(C.boundary(p), C.ring) if (p > 0 or C.augmented) else 0 for p in range(top + 2)]
    torsion = []
    betti = []
    for p in range(top + 1):
        betti.append(C.rank(p) - ranks[p] - ranks[p + 1])
        if C.ring == "Z" and p + 1 <= top:
            torsion.append(tuple(d for d in invariant_factors(C.boundary(p + 1)) if d > 1))
        else:
            torsion.append(())
    return HomologySummary(C.ring, C.augmented, tuple(betti), tuple(torsion))


def simplicial_homology(K, ring="Z", reduced=False):
    return homology(chain_complex(K, ring, augmented=reduced))


@dataclass(frozen=True)
class InducedMap:
    p: int
    ring: str
    source_betti: int
    target_betti: int
    matrix: tuple  # rows: target free generators, cols: source free generators
    trivial: bool


def _cycle_space(C, p):
    """Rational kernel basis of the p-th boundary (all of C_p when it is zero)."""
    n = C.rank(p)
    D = C.boundary(p) if (p > 0 or C.augmented) else SparseMatrix(0, n)
    if D.nnz == 0:
        return [[1 if k == j else 0 for k in range(n)] for j in range(n)]
    return kernel_basis_q(D)


def _integer_cycles(C, p):
    """A Z-basis of the cycle lattice, from the columns of V in an SNF of the boundary."""
    n = C.rank(p)
    D = C.boundary(p) if (p > 0 or C.augmented) else SparseMatrix(0, n)
    if D.nnz == 0:
        return [[1 if k == j else 0 for k in range(n)] for j in range(n)]
    S = smith(D)
    cols = S.V.columns()
    out = []
    for c in cols[S.rank:]:
        vec = [0] * n
        for i, v in c.items():
            vec[i] = v
        out.append(vec)
    return out


def homology_basis(C, p):
    """Cycles whose classes form a basis of H_p over Q (greedy against boundaries)."""
    bcols = _integer_columns(C.boundary(p + 1)) if C.rank(p + 1) else []
    cycles = _cycle_space(C, p)
    cols = bcols + [{i: v for i, v in enumerate(z) if v} for z in cycles]
    _, reduced, _ = _echelon(cols)
    nb = len(bcols)
    return [cycles[k] for k in range(len(cycles)) if reduced[nb + k]]


def _push(vec, K, L, p):
    """Transport a p-chain of K to L along the inclusion."""
    idx = L.index(p)
    out = {}
    for k, s in enumerate(K.simplices(p)):
        if vec[k]:
            out[idx[s]] = vec[k]
    return out


def _check_inclusion(K, L):
    if not K.is_subcomplex_of(L):
        raise InputError(MODULE, "not a subcomplex: K has simplices missing from L")


def map_is_trivial(K, L, p, ring="Q", reduced=False):
    """Return ``(dim H_p(K) over Q, verdict)``; the verdict is exact over the ring."""
    ring = normalize_ring(ring)
    _check_inclusion(K, L)
    CK = chain_complex(K, "Q", augmented=reduced)
    CL = chain_complex(L, "Q", augmented=reduced)
    gens = homology_basis(CK, p)
    if ring == "Q":
        if not gens:
            return 0, True
        bcols = _integer_columns(CL.boundary(p + 1)) if CL.rank(p + 1) else []
        cols = bcols + [_push(z, K, L, p) for z in gens]
        _, red, _ = _echelon(cols)
        return len(gens), not any(red[len(bcols):])
    # over Z every cycle (torsion classes included) must bound in L
    CKz = chain_complex(K, "Z", augmented=reduced)
    CLz = chain_complex(L, "Z", augmented=reduced)
    cycles = _integer_cycles(CKz, p)
    if not cycles:
        return len(gens), True
    images = []
    for z in cycles:
        img = _push(z, K, L, p)
        vec = [0] * L.count(p)
        for i, v in img.items():
            vec[i] = v
        images.append(vec)
    B = CLz.boundary(p + 1) if CLz.rank(p + 1) else SparseMatrix(L.count(p), 0)
    if B.cols == 0:
        return len(gens), not any(any(v) for v in images)
    return len(gens), lattice_contains(B, images)


def induced_map(K, L, p, ring="Q", reduced=False):
    """The map H_p(K) -> H_p(L) for K a subcomplex of L.

    ``matrix`` records the free part in the greedy cycle bases;
    ``trivial`` is exact over the chosen ring (over Z it includes torsion).
    """
    ring = normalize_ring(ring)
    nsrc, trivial = map_is_trivial(K, L, p, ring, reduced)
    CK = chain_complex(K, "Q", augmented=reduced)
    CL = chain_complex(L, "Q", augmented=reduced)
    src = homology_basis(CK, p)
    tgt = homology_basis(CL, p)
    B = CL.boundary(p + 1) if CL.rank(p + 1) else SparseMatrix(L.count(p), 0)
    nb = B.cols
    cols = B.columns() + [{i: v for i, v in enumerate(z) if v} for z in tgt]
    A = SparseMatrix.from_columns(L.count(p), cols)
    matrix = [[Fraction(0)] * len(src) for _ in tgt]
    for j, z in enumerate(src):
        img = _push(z, K, L, p)
        rhs = [img.get(i, 0) for i in range(L.count(p))]
        x = solve_q(A, rhs)
        if x is INCONSISTENT:
            raise InputError(MODULE, "image cycle outside cycle space (inconsistent chain data)")
        for i in range(len(tgt)):
            matrix[i][j] = x[nb + i]
    return InducedMap(p, ring, nsrc, len(tgt), tuple(tuple(r) for r in matrix), trivial)
