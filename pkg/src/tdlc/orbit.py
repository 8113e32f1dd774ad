"""Orbit complexes of proper cocompact actions and their deflation Q (x)_G -.

An orbit complex lists, per dimension, the cell orbits (each with a
stabiliser label) and for every p-orbit its boundary as signed terms
``(coefficient, target (p-1)-orbit)``.  Tensoring with Q over G sends every
coset to 1, so the deflated boundary entry is the sum of the coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .complex import subdivide
from .errors import InputError, InvariantError
from .groups import closure
from .linalg import SparseMatrix, rank_q

MODULE = "orbit"


@dataclass(frozen=True)
class Orbit:
    stab: str
    compact_open: bool = True


@dataclass(frozen=True)
class OrbitComplex:
    orbits: tuple  # per dimension, tuple of Orbit
    boundary: tuple  # per dimension, per orbit, tuple of (coef, target)
    contractible_asserted: bool = True

    def __post_init__(self):
        if len(self.boundary) != len(self.orbits):
            raise InputError(MODULE, "boundary must list one entry per dimension")
        for p, (orbs, bds) in enumerate(zip(self.orbits, self.boundary)):
            if len(orbs) != len(bds):
                raise InputError(MODULE, f"dimension {p}: {len(orbs)} orbits but {len(bds)} boundary lists")
            for o in orbs:
                if not o.compact_open:
                    raise InputError(MODULE, f"stabiliser {o.stab!r} is not compact open (action not proper)")
            for terms in bds:
                if p == 0 and terms:
                    raise InputError(MODULE, "0-orbits cannot have boundary terms")
                for c, t in terms:
                    if not isinstance(t, int) or not 0 <= t < len(self.orbits[p - 1]):
                        raise InputError(MODULE, f"dimension {p}: boundary target {t!r} out of range")

    @property
    def dim(self):
        return len(self.orbits) - 1

    def counts(self):
        return [len(o) for o in self.orbits]

    def deflated_boundary(self, p):
        """The matrix of Q (x)_G d_p : one row per (p-1)-orbit, one column per p-orbit."""
        rows = len(self.orbits[p - 1]) if p >= 1 else 0
        ent = {}
        if 1 <= p <= self.dim:
            for j, terms in enumerate(self.boundary[p]):
                for c, t in terms:
                    ent[(t, j)] = ent.get((t, j), 0) + Fraction(c)
        return SparseMatrix(rows, len(self.orbits[p]) if 0 <= p <= self.dim else 0, ent)

    def check(self):
        for p in range(2, self.dim + 1):
            if (self.deflated_boundary(p - 1) @ self.deflated_boundary(p)).nnz:
                raise InvariantError(MODULE, f"deflated boundary composite d{p - 1} d{p} is non-zero")
        return True

    def euler_characteristic(self):
        return sum((-1) ** p * n for p, n in enumerate(self.counts()))

    def to_json(self):
        data = {
            "orbits": [[{"stab": o.stab} for o in orbs] for orbs in self.orbits],
            "boundary": [[[list(t) for t in terms] for terms in bds] for bds in self.boundary],
        }
        return json.dumps(data, separators=(",", ":"))

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except ValueError as exc:
                raise InputError(MODULE, f"bad orbit-complex JSON: {exc}") from None
        try:
            orbits = data["orbits"]
            boundary = data.get("boundary", [])
        except (KeyError, TypeError):
            raise InputError(MODULE, "orbit-complex JSON needs an 'orbits' list") from None
        orbs = []
        for layer in orbits:
            orbs.append(tuple(Orbit(str(o.get("stab", "?")), bool(o.get("compact_open", True))) for o in layer))
        counts = [len(x) for x in orbs]
        bds = _parse_boundary(boundary, counts)
        return cls(tuple(orbs), bds)

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(MODULE, f"cannot read orbit complex {path}: {exc}") from None
        return cls.from_json(text)


def _is_term(x):
    return isinstance(x, list) and len(x) == 2 and all(isinstance(v, int) for v in x)


def _parse_boundary(boundary, counts):
    """Accept boundaries grouped per dimension (``boundary[p][orbit]``) or as a
    flat list over all orbits in dimension order."""
    if not isinstance(boundary, list):
        raise InputError(MODULE, "boundary must be a list")
    flat = len(boundary) == sum(counts) and all(
        isinstance(b, list) and all(_is_term(t) for t in b) for b in boundary
    )
    per_dim = len(boundary) == len(counts) and all(
        isinstance(layer, list) and len(layer) == counts[p] and all(
            isinstance(b, list) and all(_is_term(t) for t in b) for b in layer)
        for p, layer in enumerate(boundary)
    )
    if not boundary:
        return tuple(tuple(() for _ in range(n)) for n in counts)
    if per_dim:
        return tuple(tuple(tuple(tuple(t) for t in b) for b in layer) for layer in boundary)
    if flat:
        out, k = [], 0
        for n in counts:
            out.append(tuple(tuple(tuple(t) for t in boundary[k + i]) for i in range(n)))
            k += n
        return tuple(out)
    raise InputError(MODULE, "boundary must be grouped per dimension or list one entry per orbit")


def deflate_homology(oc):
    """Betti numbers over Q of the deflated complex, i.e. dH_p(G; Q) for a
    contractible proper cocompact complex."""
    oc.check()
    ranks = [0] + [rank_q(oc.deflated_boundary(p)) for p in range(1, oc.dim + 1)] + [0]
    return tuple(len(oc.orbits[p]) - ranks[p] - ranks[p + 1] for p in range(oc.dim + 1))


@dataclass(frozen=True)
class CdReport:
    upper: int  # dimension of the complex: cd_Q upper bound
    lower: int  # top degree with non-zero deflated homology
    betti: tuple
    contractible_asserted: bool


def cd_report(oc):
    betti = deflate_homology(oc)
    nonzero = [p for p, b in enumerate(betti) if b]
    return CdReport(oc.dim, max(nonzero) if nonzero else 0, betti, oc.contractible_asserted)


def point(stab="G"):
    return OrbitComplex(((Orbit(stab),),), (((),),))


def subdivided_tree():
    """A regular tree with edges subdivided, under its full automorphism group:
    one vertex orbit, one midpoint orbit, one half-edge orbit."""
    orbits = ((Orbit("Gv"), Orbit("Ge")), (Orbit("Gh"),))
    boundary = (((), ()), (((1, 0), (-1, 1)),))
    return OrbitComplex(orbits, boundary)


def torus_cubical(m):
    """The standard cubulation of R^m under Z^m.

    Cell orbits are the subsets S of the coordinate directions.  The boundary
    of the cube at the origin spanned by S has, for each i in S, the face at
    the origin and the face translated by e_i, with opposite signs; both lie
    in the orbit of S - {i}, so the deflated boundary vanishes.
    """
    if m < 1:
        raise InputError(MODULE, "torus dimension must be >= 1")
    cells = [list(combinations(range(m), p)) for p in range(m + 1)]
    pos = [{S: k for k, S in enumerate(layer)} for layer in cells]
    orbits = tuple(tuple(Orbit("1") for _ in layer) for layer in cells)
    boundary = [tuple(() for _ in cells[0])]
    for p in range(1, m + 1):
        layer = []
        for S in cells[p]:
            terms = []
            for k, i in enumerate(S):
                face = pos[p - 1][S[:k] + S[k + 1:]]
                sign = (-1) ** k
                terms.append((-sign, face))  # face at the origin
                terms.append((sign, face))  # face translated by e_i
            layer.append(tuple(terms))
        boundary.append(tuple(layer))
    return OrbitComplex(orbits, tuple(boundary))


def _perm_sign(seq):
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def from_action(K, gens):
    """Orbit complex of a finite group (generated by vertex permutations of K)
    acting simplicially on K.  Actions that reverse a simplex's orientation
    are rejected; subdivide first (see :func:`subdivided_action`)."""
    n = len(K.vertices)
    if K.vertices != list(range(n)):
        raise InputError(MODULE, "complex vertices must be 0..n-1")
    G = sorted(closure(gens, n))
    for g in G:
        for p in range(K.dim + 1):
            for s in K.simplices(p):
                if not K.contains(tuple(sorted(g[v] for v in s))):
                    raise InputError(MODULE, "group does not act on the complex")
    orbits, reps, where = [], [], []
    for p in range(K.dim + 1):
        seen = {}
        layer_reps, layer_orbs = [], []
        for s in K.simplices(p):
            if s in seen:
                continue
            k = len(layer_reps)
            stab = []
            for g in G:
                img = tuple(g[v] for v in s)
                t = tuple(sorted(img))
                if t == s:
                    if _perm_sign(img) != 1:
                        raise InputError(MODULE, f"stabiliser of {s} reverses its orientation; subdivide first")
                    stab.append(g)
                seen.setdefault(t, (k, g))
            layer_reps.append(s)
            layer_orbs.append(Orbit(f"stab{list(s)}"))
        orbits.append(tuple(layer_orbs))
        reps.append(layer_reps)
        where.append(seen)
    boundary = [tuple(() for _ in reps[0])]
    for p in range(1, K.dim + 1):
        layer = []
        for s in reps[p]:
            terms = []
            for i in range(p + 1):
                f = s[:i] + s[i + 1:]
                k, g = where[p - 1][f]
                rep = reps[p - 1][k]
                # f = g.rep as sets; orientation sign of g.rep against sorted f
                eps = _perm_sign(tuple(g[v] for v in rep))
                terms.append(((-1) ** i * eps, k))
            layer.append(tuple(terms))
        boundary.append(tuple(layer))
    return OrbitComplex(tuple(orbits), tuple(boundary))


def subdivided_action(K, gens):
    """Barycentric subdivision of K with the induced generator permutations."""
    n = len(K.vertices)
    if K.vertices != list(range(n)):
        raise InputError(MODULE, "complex vertices must be 0..n-1")
    for g in gens:
        if len(g) != n or sorted(g) != list(range(n)):
            raise InputError(MODULE, f"generator {list(g)} is not a permutation of the {n} vertices")
        for p in range(K.dim + 1):
            for s in K.simplices(p):
                if not K.contains(tuple(sorted(g[v] for v in s))):
                    raise InputError(MODULE, "group does not act on the complex")
    sd = subdivide(K)
    order = [s for p in range(K.dim + 1) for s in K.simplices(p)]
    vid = {s: k for k, s in enumerate(order)}
    new_gens = []
    for g in gens:
        new_gens.append(tuple(vid[tuple(sorted(g[v] for v in s))] for s in order))
    return sd, new_gens
