"""Simplicial complexes, Rips complexes of balls, subdivision, chain complexes.

Simplices are strictly increasing tuples of vertex IDs; that ordering is the
orientation.  The boundary of ``(v0, ..., vp)`` is the alternating sum of its
faces, the i-th face carrying the sign (-1)^i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from .errors import InputError, InvariantError, ResourceLimitError
from .linalg import SparseMatrix

MODULE = "complex"

DEFAULT_SIMPLEX_CAP = 2_000_000
RINGS = ("Z", "Q")


def normalize_ring(ring):
    r = str(ring).upper()
    if r not in RINGS:
        raise InputError(MODULE, f"ring must be Z or Q, got {ring!r}")
    return r


class SimplicialComplex:
    """Simplices stored per dimension as sorted lists of sorted tuples."""

    def __init__(self, simplices, check=True):
        dims = []
        for layer in simplices:
            dims.append(sorted(set(tuple(s) for s in layer)))
        while dims and not dims[-1]:
            dims.pop()
        self._simplices = dims
        self._index = None
        if check:
            self.validate()

    @classmethod
    def from_simplices(cls, simplices, close=True):
        """Build from any iterable of vertex collections, adding all faces."""
        layers = {}
        for s in simplices:
            t = tuple(sorted(set(s)))
            if not t:
                continue
            if len(t) != len(s):
                raise InputError(MODULE, f"simplex {list(s)} repeats a vertex")
            if close:
                for k in range(1, len(t) + 1):
                    for f in combinations(t, k):
                        layers.setdefault(k - 1, set()).add(f)
            else:
                layers.setdefault(len(t) - 1, set()).add(t)
        top = max(layers, default=-1)
        return cls([layers.get(p, ()) for p in range(top + 1)])

    def validate(self):
        for p, layer in enumerate(self._simplices):
            for s in layer:
                if len(s) != p + 1 or any(a >= b for a, b in zip(s, s[1:])):
                    raise InputError(MODULE, f"simplex {s} is not a sorted {p}-simplex")
            if p == 0:
                continue
            lower = set(self._simplices[p - 1])
            for s in layer:
                for i in range(p + 1):
                    if s[:i] + s[i + 1:] not in lower:
                        raise InputError(MODULE, f"face of {s} missing: complex not closed")

    @property
    def dim(self):
        return len(self._simplices) - 1

    def simplices(self, p):
        if 0 <= p < len(self._simplices):
            return self._simplices[p]
        return []

    def count(self, p):
        return len(self.simplices(p))

    def f_vector(self):
        return [len(layer) for layer in self._simplices]

    def size(self):
        return sum(self.f_vector())

    @property
    def vertices(self):
        return [s[0] for s in self.simplices(0)]

    def index(self, p):
        if self._index is None:
            self._index = [{s: k for k, s in enumerate(layer)} for layer in self._simplices]
        return self._index[p] if 0 <= p < len(self._index) else {}

    def euler_characteristic(self):
        return sum((-1) ** p * n for p, n in enumerate(self.f_vector()))

    def contains(self, s):
        return tuple(s) in self.index(len(s) - 1)

    def is_subcomplex_of(self, other):
        return all(other.contains(s) for p in range(self.dim + 1) for s in self.simplices(p))

    def full_subcomplex(self, vertices):
        keep = set(vertices)
        return SimplicialComplex(
            [[s for s in layer if all(v in keep for v in s)] for layer in self._simplices], check=False
        )

    def skeleton(self, k):
        return SimplicialComplex(self._simplices[: k + 1], check=False)

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._simplices == other._simplices

    def __repr__(self):
        return f"SimplicialComplex(f={self.f_vector()})"

    def to_json(self):
        """Deterministic serialisation: by dimension, then lexicographic."""
        flat = [list(s) for layer in self._simplices for s in layer]
        return json.dumps({"simplices": flat}, separators=(",", ":"))

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except ValueError as exc:
                raise InputError(MODULE, f"bad complex JSON: {exc}") from None
        try:
            simplices = data["simplices"]
        except (KeyError, TypeError):
            raise InputError(MODULE, "complex JSON needs a 'simplices' list") from None
        for s in simplices:
            if not isinstance(s, list) or not all(isinstance(v, int) and v >= 0 for v in s):
                raise InputError(MODULE, f"simplex {s!r} must be a list of vertex IDs")
        return cls.from_simplices(simplices)

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(MODULE, f"cannot read complex file {path}: {exc}") from None
        return cls.from_json(text)


def rips(b, d, max_dim=3, cap=DEFAULT_SIMPLEX_CAP):
    """The Rips complex P_d of a ball: cliques of pairwise ball-distance <= d."""
    if not isinstance(d, int) or d < 1:
        raise InputError(MODULE, f"Rips scale must be an integer >= 1, got {d!r}")
    if not isinstance(max_dim, int) or max_dim < 1:
        raise InputError(MODULE, f"max_dim must be an integer >= 1, got {max_dim!r}")
    n = b.n
    up = []
    for v in range(n):
        near = b.distances_from(v, limit=d)
        up.append(frozenset(w for w in near if w > v))
    layers = [[(v,) for v in range(n)]]
    total = n
    # extend cliques one vertex at a time; candidates are common upper neighbours
    current = [((v,), up[v]) for v in range(n)]
    for p in range(1, max_dim + 1):
        nxt = []
        for s, cand in current:
            for w in sorted(cand):
                nxt.append((s + (w,), cand & up[w]))
        total += len(nxt)
        if total > cap:
            raise ResourceLimitError(MODULE, f"Rips complex exceeds simplex cap {cap}")
        if not nxt:
            break
        layers.append([s for s, _ in nxt])
        current = nxt
    return SimplicialComplex(layers, check=False)


@dataclass(frozen=True)
class ChainComplex:
    """Ranks per dimension and boundary matrices ``boundaries[p]`` : C_p -> C_{p-1}.

    When ``augmented`` is set, ``boundaries[0]`` is the augmentation
    (a 1 x ranks[0] row of ones) and the complex computes reduced homology.
    """

    ring: str
    ranks: tuple
    boundaries: dict
    augmented: bool = False

    def boundary(self, p):
        """∂_p as a matrix (zero matrix outside the stored range)."""
        m = self.boundaries.get(p)
        if m is not None:
            return m
        rows = self.rank(p - 1) if p >= 1 else (1 if self.augmented and p == 0 else 0)
        return SparseMatrix(rows, self.rank(p))

    def rank(self, p):
        if p == -1 and self.augmented:
            return 1
        return self.ranks[p] if 0 <= p < len(self.ranks) else 0

    @property
    def top(self):
        return len(self.ranks) - 1

    def check(self):
        """Raise unless every composite ∂_p ∂_{p+1} vanishes."""
        lo = 0 if self.augmented else 1
        for p in range(lo, self.top):
            a, b = self.boundaries.get(p), self.boundaries.get(p + 1)
            if a is None or b is None:
                continue
            if (a @ b).nnz:
                raise InvariantError(MODULE, f"boundary composite d{p} d{p + 1} is non-zero")
        return True


def _convert(v, ring):
    return Fraction(v) if ring == "Q" else v


def chain_complex(K, ring="Z", augmented=False):
    """Simplicial chain complex of K with alternating face signs."""
    ring = normalize_ring(ring)
    ranks = tuple(K.f_vector())
    bds = {}
    for p in range(1, K.dim + 1):
        idx = K.index(p - 1)
        ent = {}
        for j, s in enumerate(K.simplices(p)):
            for i in range(p + 1):
                ent[(idx[s[:i] + s[i + 1:]], j)] = _convert(-1 if i % 2 else 1, ring)
        bds[p] = SparseMatrix(ranks[p - 1], ranks[p], ent)
    if augmented:
        bds[0] = SparseMatrix(1, ranks[0] if ranks else 0, {(0, j): _convert(1, ring) for j in range(ranks[0] if ranks else 0)})
    return ChainComplex(ring, ranks, bds, augmented)


def relative_chain_complex(L, K, ring="Z"):
    """Chains of L modulo chains of the subcomplex K (the quotient complex)."""
    ring = normalize_ring(ring)
    if not K.is_subcomplex_of(L):
        raise InputError(MODULE, "relative complex needs K to be a subcomplex of L")
    keep = [[s for s in L.simplices(p) if not K.contains(s)] for p in range(L.dim + 1)]
    while keep and not keep[-1]:
        keep.pop()
    ranks = tuple(len(layer) for layer in keep)
    bds = {}
    for p in range(1, len(keep)):
        idx = {s: k for k, s in enumerate(keep[p - 1])}
        ent = {}
        for j, s in enumerate(keep[p]):
            for i in range(p + 1):
                f = s[:i] + s[i + 1:]
                if f in idx:
                    ent[(idx[f], j)] = _convert(-1 if i % 2 else 1, ring)
        bds[p] = SparseMatrix(ranks[p - 1], ranks[p], ent)
    return ChainComplex(ring, ranks, bds, False)


def subdivide(K):
    """Barycentric subdivision of a complex of dimension <= 2.

    The new vertices are the simplices of K numbered by (dimension, lex
    order), so a flag sigma_0 < sigma_1 < ... is already increasing.
    """
    if K.dim > 2:
        raise InputError(MODULE, f"subdivision supports dimension <= 2, got {K.dim}")
    order = [s for p in range(K.dim + 1) for s in K.simplices(p)]
    vid = {s: k for k, s in enumerate(order)}
    flags = [(k,) for k in range(len(order))]
    for p in range(1, K.dim + 1):
        for s in K.simplices(p):
            # a maximal flag ending at s is an ordering of its vertices
            for perm in permutations(s):
                chain = [vid[tuple(sorted(perm[: k + 1]))] for k in range(p + 1)]
                flags.append(tuple(chain))
    return SimplicialComplex.from_simplices(flags)


def freudenthal_torus(m, n=3):
    """Triangulated m-torus (R/nZ)^m via the Freudenthal subdivision of the
    cubes of the n x ... x n grid; n >= 3 keeps it a simplicial complex."""
    if m < 1 or n < 3:
        raise InputError(MODULE, "torus needs m >= 1 and n >= 3")
    cells = list(product(range(n), repeat=m))
    vid = {c: k for k, c in enumerate(cells)}
    tops = []
    for base in cells:
        for perm in permutations(range(m)):
            cur = list(base)
            simplex = [vid[tuple(cur)]]
            for axis in perm:
                cur[axis] = (cur[axis] + 1) % n
                simplex.append(vid[tuple(cur)])
            tops.append(simplex)
    return SimplicialComplex.from_simplices(tops)


def cone(K, apex=None):
    """Cone over K with a new apex vertex (largest ID by default)."""
    if apex is None:
        apex = max(K.vertices, default=-1) + 1
    tops = [s + (apex,) for p in range(K.dim + 1) for s in K.simplices(p)]
    return SimplicialComplex.from_simplices(tops + [(apex,)])
