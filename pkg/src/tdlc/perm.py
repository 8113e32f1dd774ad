"""Finite-stage permutation-module calculus.

For a finite group G every subgroup is compact and open, so the stages
Q[G/U] of the standard bimodule, the transfer maps between them and the
averaging map theta can be evaluated exactly.  Vectors are sparse maps from
canonical coset representatives (least element of the coset) to Fractions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, ResourceLimitError
from .groups import PermGroup, closure, group_from_json, inv, mul
from .linalg import INCONSISTENT, SparseMatrix, kernel_basis_q, rank_q, solve_q

MODULE = "perm"

BAR_ORDER_CAP = 48


@dataclass(frozen=True)
class CosetVector:
    """A formal Q-combination of left cosets xU (keys: canonical reps)."""

    subgroup: frozenset
    coeffs: tuple  # sorted ((rep, Fraction), ...) without zeros

    @classmethod
    def make(cls, subgroup, coeffs):
        items = tuple(sorted((k, Fraction(v)) for k, v in coeffs.items() if v))
        return cls(frozenset(subgroup), items)

    def as_dict(self):
        return dict(self.coeffs)

    def __add__(self, other):
        if self.subgroup != other.subgroup:
            raise InputError(MODULE, "cannot add vectors over different subgroups")
        acc = self.as_dict()
        for k, v in other.coeffs:
            acc[k] = acc.get(k, 0) + v
        return CosetVector.make(self.subgroup, acc)

    def scale(self, c):
        return CosetVector.make(self.subgroup, {k: c * v for k, v in self.coeffs})


class CosetSystem:
    """A finite group with named subgroups and cached coset tables."""

    def __init__(self, G, subgroups=None, chain=None):
        self.G = G
        self.subgroups = {}
        for name, S in (subgroups or {}).items():
            self.add(name, S)
        if chain:
            for a, b in zip(chain, chain[1:]):
                if not self.named(b) <= self.named(a):
                    raise InputError(MODULE, f"chain violation: {b} is not contained in {a}")
        self._reps = {}

    def add(self, name, S):
        S = frozenset(S)
        if not self.G.is_subgroup(S):
            raise InputError(MODULE, f"{name} is not a subgroup of {self.G.name}")
        if self.G.order % len(S):
            raise InputError(MODULE, f"order of {name} does not divide |G|")
        self.subgroups[name] = S
        return S

    def named(self, U):
        if isinstance(U, str):
            if U == "G":
                return self.G.whole()
            if U in ("1", "e"):
                return self.G.trivial()
            try:
                return self.subgroups[U]
            except KeyError:
                raise InputError(MODULE, f"unknown subgroup {U!r}") from None
        S = frozenset(U)
        if not self.G.is_subgroup(S):
            raise InputError(MODULE, "argument is not a subgroup")
        return S

    def reps(self, U):
        U = self.named(U)
        if U not in self._reps:
            self._reps[U] = self.G.left_coset_reps(U)
        return self._reps[U]

    def coset(self, x, U):
        return self.G.left_coset_rep(self.G.element(x), self.named(U))

    def basis_vector(self, x, U):
        U = self.named(U)
        return CosetVector.make(U, {self.coset(x, U): 1})

    @classmethod
    def from_json(cls, data):
        G = group_from_json(data)
        subs = {}
        for name, gens in (data.get("subgroups") or {}).items():
            subs[name] = G.subgroup(gens) if gens else G.trivial()
        return cls(G, subs, chain=data.get("chain"))

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise InputError(MODULE, f"cannot read group file {path}: {exc}") from None
        return cls.from_json(data)


def _relative_reps(G, U, V):
    """Least elements of the cosets rV inside U."""
    return sorted({G.left_coset_rep(u, V) for u in U})


def transfer(sys, U, V, x):
    """eta_{U,V}(xU) = (1/|U:V|) sum_r x r V over coset reps r of V in U."""
    U, V = sys.named(U), sys.named(V)
    if not V <= U:
        raise InputError(MODULE, "transfer needs V to be a subgroup of U")
    x = sys.G.element(x)
    R = _relative_reps(sys.G, U, V)
    c = Fraction(1, len(R))
    acc = {}
    for r in R:
        k = sys.G.left_coset_rep(mul(x, r), V)
        acc[k] = acc.get(k, 0) + c
    return CosetVector.make(V, acc)


def transfer_vector(sys, U, V, vec):
    """Linear extension of :func:`transfer` to a vector over U."""
    U, V = sys.named(U), sys.named(V)
    if vec.subgroup != U:
        raise InputError(MODULE, "vector does not live over U")
    out = CosetVector.make(V, {})
    for x, c in vec.coeffs:
        out = out + transfer(sys, U, V, x).scale(c)
    return out


def right_action(sys, vec, g):
    """(xU).g = xg U^g with U^g = g^-1 U g."""
    g = sys.G.element(g)
    Ug = sys.G.conjugate(vec.subgroup, g)
    acc = {}
    for x, c in vec.coeffs:
        k = sys.G.left_coset_rep(mul(x, g), Ug)
        acc[k] = acc.get(k, 0) + c
    return CosetVector.make(Ug, acc)


def left_action(sys, g, vec):
    g = sys.G.element(g)
    acc = {}
    for x, c in vec.coeffs:
        k = sys.G.left_coset_rep(mul(g, x), vec.subgroup)
        acc[k] = acc.get(k, 0) + c
    return CosetVector.make(vec.subgroup, acc)


class Representation:
    """A finite-dimensional Q[G]-module given by matrices for G's generators.

    The assignment is extended along the Cayley graph; any clash means the
    matrices do not satisfy the relations of G and is reported.
    """

    def __init__(self, G, matrices, name="A"):
        self.G = G
        self.name = name
        if len(matrices) != len(G.generators):
            raise InputError(MODULE, "need one matrix per group generator")
        mats = [tuple(tuple(Fraction(v) for v in row) for row in M) for M in matrices]
        dims = {len(M) for M in mats} | {len(r) for M in mats for r in M}
        if len(dims) > 1:
            raise InputError(MODULE, "representation matrices must be square of one size")
        self.dim = dims.pop() if dims else 0
        e = G.identity
        I = tuple(tuple(Fraction(int(i == j)) for j in range(self.dim)) for i in range(self.dim))
        self.matrix = {e: I}
        frontier = [e]
        while frontier:
            nxt = []
            for h in frontier:
                for g, M in zip(G.generators, mats):
                    k = mul(g, h)
                    P = _matmul(M, self.matrix[h])
                    old = self.matrix.get(k)
                    if old is None:
                        self.matrix[k] = P
                        nxt.append(k)
                    elif old != P:
                        raise InputError(MODULE, f"invalid representation {name}: relations of G fail")
            frontier = nxt

    def act(self, g, a):
        M = self.matrix[self.G.element(g)]
        return [sum(M[i][j] * a[j] for j in range(self.dim) if a[j]) for i in range(self.dim)]

    @classmethod
    def trivial(cls, G):
        return cls(G, [[[1]] for _ in G.generators], name="trivial")

    @classmethod
    def permutation(cls, G):
        """The standard permutation module on G's points.

        With left-to-right products the point action is a right action, so g
        sends the basis vector e_j to e_{g^-1(j)}.
        """
        n = G.degree
        mats = [[[int(g[i] == j) for j in range(n)] for i in range(n)] for g in G.generators]
        return cls(G, mats, name="permutation")

    @classmethod
    def regular(cls, G):
        els = G.elements
        idx = G.index
        mats = []
        for g in G.generators:
            M = [[0] * len(els) for _ in els]
            for j, h in enumerate(els):
                M[idx[mul(g, h)]][j] = 1
            mats.append(M)
        return cls(G, mats, name="regular")

    @classmethod
    def by_name(cls, G, name):
        table = {"trivial": cls.trivial, "permutation": cls.permutation, "regular": cls.regular}
        if name not in table:
            raise InputError(MODULE, f"unknown module {name!r}; use trivial, permutation or regular")
        return table[name](G)


def _matmul(A, B):
    n = len(B[0]) if B else 0
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(len(B)) if A[i][k]) for j in range(n)) for i in range(len(A)))


def stabilizer(rep, a):
    return frozenset(g for g in rep.G.elements if rep.act(g, a) == list(a))


def theta(sys, U, g, rep, a, reps=None):
    """theta_A(Ug (x) a) = (1/|U:U∩W|) sum_r r.(g.a), W = stab(g.a).

    ``reps`` may supply any set of representatives of the cosets of U∩W in U;
    by default the least elements are used.  The result does not depend on
    the choice because U∩W fixes g.a.
    """
    U = sys.named(U)
    a = [Fraction(v) for v in a]
    if len(a) != rep.dim:
        raise InputError(MODULE, f"vector of length {len(a)} for a {rep.dim}-dimensional module")
    ga = rep.act(g, a)
    W = stabilizer(rep, ga)
    UW = U & W
    if reps is None:
        reps = _relative_reps(sys.G, U, UW)
    else:
        reps = [sys.G.element(r) for r in reps]
        if len({sys.G.left_coset_rep(r, UW) for r in reps}) != len(reps) or len(reps) * len(UW) != len(U):
            raise InputError(MODULE, "reps are not a transversal of U∩W in U")
        if not all(r in U for r in reps):
            raise InputError(MODULE, "reps must lie in U")
    out = [Fraction(0)] * rep.dim
    for r in reps:
        for i, v in enumerate(rep.act(r, ga)):
            out[i] += v
    return [v / len(reps) for v in out]


@dataclass(frozen=True)
class PhiWitness:
    dim_invariants: int
    dim_coinvariants: int
    invariant_basis: tuple
    matrix: tuple  # coinvariant coordinates of each invariant basis vector (columns)
    isomorphism: bool


def _columns_to_matrix(n, cols):
    return SparseMatrix.from_columns(n, [{i: v for i, v in enumerate(c) if v} for c in cols])


def invariants_vs_coinvariants(sys, U, rep):
    """Bases of A^U and A_U and the matrix of phi(a) = a (x)_U 1."""
    U = sys.named(U)
    n = rep.dim
    # relations a - u.a span the kernel of A -> A_U
    rel = []
    for u in sorted(U):
        M = rep.matrix[u]
        for j in range(n):
            rel.append([(1 if i == j else 0) - M[i][j] for i in range(n)])
    rel = [c for c in rel if any(c)]
    D = _columns_to_matrix(n, rel)
    rank_rel = rank_q(D) if rel else 0
    # fixed space: kernel of the stacked (rho(u) - 1)
    stacked = {}
    for b, u in enumerate(sorted(U)):
        M = rep.matrix[u]
        for i in range(n):
            for j in range(n):
                v = M[i][j] - (1 if i == j else 0)
                if v:
                    stacked[(b * n + i, j)] = v
    S = SparseMatrix(len(U) * n, n, stacked)
    if S.nnz:
        inv_basis = kernel_basis_q(S)
    else:
        inv_basis = [[int(i == j) for i in range(n)] for j in range(n)]
    # complement of the relation span by standard vectors, chosen greedily
    comp = []
    r = rank_rel
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        trial = _columns_to_matrix(n, rel + comp + [e])
        if rank_q(trial) > r:
            comp.append(e)
            r += 1
    dim_co = n - rank_rel
    A = _columns_to_matrix(n, rel + comp)
    matrix = []
    for a in inv_basis:
        x = solve_q(A, a)
        if x is INCONSISTENT:
            raise InputError(MODULE, "coinvariant coordinates failed")
        matrix.append(tuple(x[len(rel):]))
    square = len(inv_basis) == dim_co
    if square and dim_co:
        iso = rank_q(SparseMatrix.from_dense(matrix)) == dim_co
    else:
        iso = square
    return PhiWitness(len(inv_basis), dim_co, tuple(tuple(v) for v in inv_basis), tuple(matrix), iso)


@dataclass(frozen=True)
class MackeyFactor:
    rep: tuple
    stabilizer: frozenset
    index: int


def mackey_restrict(sys, U, V):
    """res^G_U Q[G/V] as a sum over double cosets UgV of Q[U/(U ∩ gVg^-1)]."""
    G = sys.G
    U, V = sys.named(U), sys.named(V)
    out = []
    for g in G.double_coset_reps(U, V):
        gVg = G.conjugate(V, inv(g))  # g V g^-1
        stab = U & gVg
        out.append(MackeyFactor(g, stab, len(U) // len(stab)))
    total = sum(f.index for f in out)
    if total * len(V) != G.order:
        raise InputError(MODULE, "double coset bookkeeping failed")
    return out


@dataclass(frozen=True)
class Collapse:
    dim: int
    quotient: PermGroup
    image_subgroup: frozenset
    matrix: tuple  # |G:UN| x |G:U|, rows: cosets of UN, cols: cosets of U
    coinvariant_rank: int  # dim of Q[G/U]_N computed directly


def coinvariants_bi(sys, N, U):
    """Q (x)_N Q[G/U] ≅ Q[(G/N)/(UN/N)] at a finite stage."""
    G = sys.G
    N, U = sys.named(N), sys.named(U)
    if not G.is_normal(N):
        raise InputError(MODULE, "N is not normal in G")
    # G/N as a permutation group on the cosets of N
    nreps = G.left_coset_reps(N)
    pos = {r: k for k, r in enumerate(nreps)}

    def image(g):
        return tuple(pos[G.left_coset_rep(mul(g, r), N)] for r in nreps)

    Q = PermGroup(len(nreps), [image(g) for g in G.generators] or [tuple(range(len(nreps)))], name=f"{G.name}/N")
    UN = closure(list(U) + list(N), G.degree)
    imgU = closure([image(u) for u in U], Q.degree)
    big = G.left_coset_reps(UN)
    small = G.left_coset_reps(U)
    bpos = {r: k for k, r in enumerate(big)}
    M = [[0] * len(small) for _ in big]
    for j, x in enumerate(small):
        M[bpos[G.left_coset_rep(x, UN)]][j] = 1
    # independent check: rank of Q[G/U] modulo span{v - n.v}
    spos = {r: k for k, r in enumerate(small)}
    rel = []
    for n in sorted(N):
        for j, x in enumerate(small):
            k = spos[G.left_coset_rep(mul(n, x), U)]
            if k != j:
                rel.append({j: 1, k: -1})
    co_rank = len(small) - (rank_q(SparseMatrix.from_columns(len(small), rel)) if rel else 0)
    dim = Q.order // len(imgU)
    if dim * len(UN) != G.order:
        raise InputError(MODULE, "collapse dimension disagrees with |G:UN|")
    return Collapse(dim, Q, imgU, tuple(tuple(r) for r in M), co_rank)


@dataclass(frozen=True)
class SummandWitness:
    incl: tuple  # |G:U| x |H:U|
    proj: tuple  # |H:U| x |G:U|
    identity: bool
    equivariant: bool


def open_summand_check(sys, H, U):
    """Q[H/U] is an H-direct summand of Q[G/U]: inclusion and projection."""
    G = sys.G
    H, U = sys.named(H), sys.named(U)
    if not (U <= H):
        raise InputError(MODULE, "chain violation: U is not contained in H")
    big = G.left_coset_reps(U)
    small = sorted({G.left_coset_rep(h, U) for h in H})
    bpos = {r: k for k, r in enumerate(big)}
    spos = {r: k for k, r in enumerate(small)}
    incl = [[0] * len(small) for _ in big]
    proj = [[0] * len(big) for _ in small]
    for j, x in enumerate(small):
        incl[bpos[x]][j] = 1
    for k, x in enumerate(big):
        if x in H:
            proj[spos[x]][k] = 1
    ident = all(
        sum(proj[i][k] * incl[k][j] for k in range(len(big))) == (1 if i == j else 0)
        for i in range(len(small)) for j in range(len(small))
    )

    def act(h, reps, pos):
        M = [[0] * len(reps) for _ in reps]
        for j, x in enumerate(reps):
            M[pos[G.left_coset_rep(mul(h, x), U)]][j] = 1
        return M

    def prod(A, B):
        return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]

    equi = True
    for h in sorted(H):
        Gh, Hh = act(h, big, bpos), act(h, small, spos)
        if prod(Gh, incl) != prod(incl, Hh) or prod(proj, Gh) != prod(Hh, proj):
            equi = False
            break
    return SummandWitness(tuple(map(tuple, incl)), tuple(map(tuple, proj)), ident, equi)


def bar_boundary(G, n):
    """The n-th boundary of the unnormalised bar complex with trivial coefficients."""
    els = G.elements
    m = len(els)
    idx = G.index
    if n <= 0:
        return SparseMatrix(0, 1)

    def code(tup):
        c = 0
        for t in tup:
            c = c * m + t
        return c

    ent = {}
    for j in range(m ** n):
        t = []
        c = j
        for _ in range(n):
            t.append(c % m)
            c //= m
        t.reverse()
        terms = []
        terms.append((code(t[1:]), 1))
        for i in range(n - 1):
            merged = idx[mul(els[t[i]], els[t[i + 1]])]
            terms.append((code(t[:i] + [merged] + t[i + 2:]), (-1) ** (i + 1)))
        terms.append((code(t[:-1]), (-1) ** n))
        for row, s in terms:
            ent[(row, j)] = ent.get((row, j), 0) + s
    return SparseMatrix(m ** (n - 1), m ** n, ent)


def bar_homology_q(G, k):
    """dim H_k(G; Q) from the truncated bar complex (exact ranks)."""
    if k not in (0, 1, 2):
        raise InputError(MODULE, "bar homology is available for k in {0, 1, 2}")
    if G.order > BAR_ORDER_CAP:
        raise ResourceLimitError(MODULE, f"group order {G.order} exceeds the bar-complex cap {BAR_ORDER_CAP}")
    m = G.order
    rk_in = rank_q(bar_boundary(G, k)) if k >= 1 else 0
    rk_out = rank_q(bar_boundary(G, k + 1))
    return m ** k - rk_in - rk_out
