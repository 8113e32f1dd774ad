"""Finite permutation groups by brute-force closure, plus a small catalogue.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i``.  Products
compose left to right as in GAP: ``mul(a, b)[i] == b[a[i]]`` (apply a, then
b), so conjugation ``g^-1 u g`` relabels the points of u by g.  Subgroups are frozensets
of permutation tuples.  Everything is exhaustive, which is the point: these
groups are oracles for the permutation-module calculus.
"""

from __future__ import annotations

from itertools import permutations

from .errors import InputError, ResourceLimitError

MODULE = "perm"

DEFAULT_ORDER_CAP = 100_000


def mul(a, b):
    return tuple(b[i] for i in a)


def inv(a):
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def identity(n):
    return tuple(range(n))


def check_perm(p, degree):
    p = tuple(p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise InputError(MODULE, f"{list(p)} is not a permutation of 0..{degree - 1}")
    return p


def closure(gens, degree, cap=DEFAULT_ORDER_CAP):
    """All products of the generators (the generated subgroup)."""
    e = identity(degree)
    gens = [check_perm(g, degree) for g in gens]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise ResourceLimitError(MODULE, f"group order exceeds cap {cap}")
        frontier = nxt
    return frozenset(seen)


class PermGroup:
    """A finite permutation group with its sorted element list."""

    def __init__(self, degree, generators, name=None, cap=DEFAULT_ORDER_CAP):
        self.degree = degree
        self.generators = tuple(check_perm(g, degree) for g in generators)
        self.name = name or f"<{len(self.generators)} gens on {degree} pts>"
        self.element_set = closure(self.generators, degree, cap)
        self.elements = sorted(self.element_set)
        self.index = {g: k for k, g in enumerate(self.elements)}
        self.identity = identity(degree)

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, g):
        return tuple(g) in self.element_set

    def __repr__(self):
        return f"PermGroup({self.name}, order={self.order})"

    def element(self, g):
        g = tuple(g)
        if g not in self.element_set:
            raise InputError(MODULE, f"{list(g)} is not an element of {self.name}")
        return g

    def subgroup(self, gens):
        """The subgroup generated by ``gens`` (checked to lie in the group)."""
        gens = [self.element(g) for g in gens]
        return closure(gens, self.degree)

    def trivial(self):
        return frozenset([self.identity])

    def whole(self):
        return self.element_set

    def is_subgroup(self, S):
        if not S or self.identity not in S:
            return False
        return all(x in self.element_set for x in S) and all(mul(a, b) in S for a in S for b in S)

    def conjugate(self, S, g):
        """S^g = g^-1 S g."""
        gi = inv(g)
        return frozenset(mul(gi, mul(s, g)) for s in S)

    def is_normal(self, N):
        return all(self.conjugate(N, g) == N for g in self.generators)

    def join(self, A, B):
        return closure(list(A) + list(B), self.degree)

    def cyclic_subgroups(self):
        out = set()
        for g in self.elements:
            out.add(closure([g], self.degree))
        return out

    def all_subgroups(self):
        """Every subgroup, sorted by (order, sorted elements)."""
        subs = self.cyclic_subgroups()
        cyclic = list(subs)
        frontier = list(subs)
        while frontier:
            nxt = []
            for S in frontier:
                for C in cyclic:
                    if C <= S:
                        continue
                    J = self.join(S, C)
                    if J not in subs:
                        subs.add(J)
                        nxt.append(J)
            frontier = nxt
        return sorted(subs, key=lambda S: (len(S), sorted(S)))

    def left_coset_rep(self, x, U):
        """Canonical representative of xU: its least element."""
        return min(mul(x, u) for u in U)

    def left_coset_reps(self, U):
        reps = sorted({self.left_coset_rep(g, U) for g in self.elements})
        if len(reps) * len(U) != self.order:
            raise InputError(MODULE, "coset count times subgroup order differs from group order")
        return reps

    def double_coset_reps(self, U, V):
        """Least elements of the double cosets UgV."""
        seen = set()
        reps = []
        for g in self.elements:
            if g in seen:
                continue
            D = {mul(u, mul(g, v)) for u in U for v in V}
            seen |= D
            reps.append(min(D))
        return sorted(reps)


def _cycle_perm(n, *cycles):
    p = list(range(n))
    for c in cycles:
        for k, x in enumerate(c):
            p[x] = c[(k + 1) % len(c)]
    return tuple(p)


def _regular(elements, op):
    """Left-regular permutation representation of a group given by a product."""
    idx = {e: k for k, e in enumerate(elements)}
    return [tuple(idx[op(g, h)] for h in elements) for g in elements]


def _quaternion_gens():
    # units +-1, +-i, +-j, +-k as (sign, letter)
    table = {("1", x): (1, x) for x in "1ijk"}
    table.update({(x, "1"): (1, x) for x in "1ijk"})
    table.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    elems = [(s, x) for s in (1, -1) for x in "1ijk"]

    def op(a, b):
        s, x = table[(a[1], b[1])]
        return (a[0] * b[0] * s, x)

    reg = _regular(elems, op)
    return [reg[elems.index((1, "i"))], reg[elems.index((1, "j"))]]


def _sl23_gens():
    vecs = [(a, b) for a in range(3) for b in range(3) if (a, b) != (0, 0)]

    def act(m):
        return tuple(vecs.index(((m[0] * a + m[1] * b) % 3, (m[2] * a + m[3] * b) % 3)) for a, b in vecs)

    return [act((1, 1, 0, 1)), act((0, 2, 1, 0))]


def cyclic(n):
    return PermGroup(n, [_cycle_perm(n, tuple(range(n)))] if n > 1 else [identity(1)], name=f"C{n}")


def dihedral(n):
    """Dihedral group of order 2n acting on an n-gon."""
    rot = _cycle_perm(n, tuple(range(n)))
    ref = tuple((-i) % n for i in range(n))
    return PermGroup(n, [rot, ref], name=f"D{n}")


def symmetric(n):
    if n == 1:
        return PermGroup(1, [identity(1)], name="S1")
    return PermGroup(n, [_cycle_perm(n, tuple(range(n))), _cycle_perm(n, (0, 1))], name=f"S{n}")


def alternating(n):
    gens = [_cycle_perm(n, (0, 1, k)) for k in range(2, n)]
    return PermGroup(n, gens or [identity(n)], name=f"A{n}")


def direct_product(G, H, name=None):
    n, m = G.degree, H.degree
    gens = [tuple(g) + tuple(m_ + n for m_ in identity(m)) for g in G.generators]
    gens += [tuple(range(n)) + tuple(x + n for x in h) for h in H.generators]
    return PermGroup(n + m, gens, name=name or f"{G.name}x{H.name}")


def catalogue():
    """Bundled groups of order <= 24, as ``{name: PermGroup}`` in a fixed order."""
    groups = []
    for n in range(1, 9):
        groups.append(cyclic(n))
    groups += [
        direct_product(cyclic(2), cyclic(2), name="V4"),
        symmetric(3),
        direct_product(cyclic(4), cyclic(2), name="C4xC2"),
        direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2), name="C2^3"),
        dihedral(4),
        PermGroup(8, _quaternion_gens(), name="Q8"),
        direct_product(cyclic(3), cyclic(3), name="C3xC3"),
        dihedral(5),
        alternating(4),
        dihedral(6),
        PermGroup(7, [_cycle_perm(7, (0, 1, 2)), _cycle_perm(7, (1, 2), (3, 4, 5, 6))], name="Dic3"),
        direct_product(cyclic(2), cyclic(6), name="C2xC6"),
        symmetric(4),
        PermGroup(8, _sl23_gens(), name="SL(2,3)"),
        direct_product(symmetric(3), cyclic(4), name="S3xC4"),
    ]
    return {G.name: G for G in groups}


def group_from_json(data):
    """``{"degree": n, "generators": [[...], ...]}`` to a PermGroup."""
    try:
        degree = data["degree"]
        gens = data["generators"]
    except (KeyError, TypeError):
        raise InputError(MODULE, "group JSON needs 'degree' and 'generators'") from None
    if not isinstance(degree, int) or degree < 1:
        raise InputError(MODULE, "degree must be a positive integer")
    return PermGroup(degree, gens, name=data.get("name"))


def brute_force_group(degree, gens):
    """Independent closure by multiplying all pairs until stable (test oracle)."""
    S = {identity(degree)} | {tuple(g) for g in gens}
    while True:
        new = {mul(a, b) for a in S for b in S} | S
        if new == S:
            return frozenset(S)
        S = new


def all_perms(n):
    return [tuple(p) for p in permutations(range(n))]
