"""The rule catalogue.

Most theorems have the shape "min of some premise levels gives a conclusion
level", possibly with a shift (the quotient in an extension gains one) or a
cap (compact generation only gives F_1).  :class:`MinRule` covers that shape
and also fires its contrapositives: when the conclusion is refuted at a level
and all premises but one are known at that level, the remaining premise is
refuted.  Cohomological dimension subadditivity is a sum, handled by
:class:`SumRule`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lattice import FAMILIES, INF, Lit

NEG_INF = -INF


@dataclass(frozen=True)
class Atom:
    role: str
    family: str
    at: float | None = None  # None: graded use at a variable level
    offset: int = 0
    positive: bool = True


def lvl(role, family, offset=0):
    return Atom(role, family, None, offset)


def flag(role, family, level=1, positive=True):
    return Atom(role, family, level, 0, positive)


@dataclass(frozen=True)
class MinRule:
    id: str
    scope: str  # "group" or a relation kind
    premises: tuple
    conclusion: Atom
    citation: str
    cap: float = INF
    need: int = 1

    def atoms(self):
        return self.premises + (self.conclusion,)

    def _value(self, store, a, binding):
        e = binding[a.role]
        if a.at is None:
            return store.get_top(e, a.family) + a.offset
        if a.positive:
            return INF if store.get_top(e, a.family) >= a.at else NEG_INF
        b = store.get_bot(e, a.family)
        return INF if b is not None and b <= a.at else NEG_INF

    def _premise_lit(self, a, binding, level):
        e = binding[a.role]
        if a.at is None:
            return Lit(e, a.family, level - a.offset, True)
        return Lit(e, a.family, a.at, a.positive)

    def _refuted_lit(self, a, binding, level):
        e = binding[a.role]
        if a.at is None:
            return Lit(e, a.family, level - a.offset, False)
        return Lit(e, a.family, a.at, not a.positive)

    def fire(self, store, binding):
        """Yield ``(literal, premises, direction)`` for everything the rule gives."""
        vals = [self._value(store, a, binding) for a in self.premises]
        c = self.conclusion
        ce = binding[c.role]
        v = min(vals)
        if c.at is None:
            lam = min(v, self.cap)
            if lam >= self.need and lam > FAMILIES[c.family].base:
                prem = tuple(self._premise_lit(a, binding, lam) for a in self.premises)
                yield Lit(ce, c.family, lam, True), prem, "forward"
        elif v >= self.need:
            prem = tuple(self._premise_lit(a, binding, self.need) for a in self.premises)
            yield Lit(ce, c.family, c.at, c.positive), prem, "forward"
        # contrapositives
        if c.at is None:
            b = store.get_bot(ce, c.family)
            if b is None:
                return
            t = max(b, self.need)
            if t > self.cap:
                return
            refuted = Lit(ce, c.family, t, False)
        else:
            if c.positive:
                b = store.get_bot(ce, c.family)
                ok = b is not None and b <= c.at
            else:
                ok = store.get_top(ce, c.family) >= c.at
            if not ok:
                return
            t = self.need
            refuted = Lit(ce, c.family, c.at, not c.positive)
        for i, a in enumerate(self.premises):
            if all(vals[j] >= t for j in range(len(vals)) if j != i):
                others = tuple(self._premise_lit(self.premises[j], binding, t)
                               for j in range(len(vals)) if j != i)
                yield self._refuted_lit(a, binding, t), (refuted,) + others, "contrapositive"


@dataclass(frozen=True)
class SumRule:
    """dim(G) <= dim(N) + dim(Q) for a bound family, with its two contrapositives."""

    id: str
    scope: str
    family: str
    citation: str
    n: str = "N"
    g: str = "G"
    q: str = "Q"

    def atoms(self):
        return tuple(lvl(r, self.family) for r in (self.n, self.g, self.q))

    def fire(self, store, binding):
        f = self.family
        N, G, Q = binding[self.n], binding[self.g], binding[self.q]
        bN, bQ = store.get_bot(N, f), store.get_bot(Q, f)
        if bN is not None and bQ is not None:
            yield Lit(G, f, bN + bQ, False), (Lit(N, f, bN, False), Lit(Q, f, bQ, False)), "forward"
        # dim(G) >= c + 1 and dim(other) <= b give dim(this) >= c + 1 - b
        cG = store.get_top(G, f)
        if cG < 0:
            return
        for this, other in ((N, Q), (Q, N)):
            b = store.get_bot(other, f)
            if b is None:
                continue
            if b == INF:
                if cG != INF:
                    continue
                level = INF
            else:
                level = cG - b
            if level >= 0:
                yield Lit(this, f, level, True), (Lit(G, f, cG, True), Lit(other, f, b, False)), "contrapositive"


# ---------------------------------------------------------------- catalogue

RINGS = ("Z", "Q")
TRANSFER = ("FP_Z", "FP_Q", "F")

C_COMPACT = "compact groups: every discrete rational module is projective and dH_k vanishes in positive degrees; the point is a cocompact model"
C_DEF = "definition of the finiteness type"
C_CLOSED = "closed subgroups and continuous quotients of compact groups are compact"
C_SIGMA = "compactly generated locally compact groups are sigma-compact"
C_R1 = "type F_1 iff compactly generated; type F_2 iff compactly presented"
C_R2 = "a group of type F_n is of type FP_n over any ring (cellular chains)"
C_R3 = "for compactly presented groups, type F_n is equivalent to type FP_n over Z (Hurewicz)"
C_R4 = "type FP_n over R iff type KP_n over R"
C_R5 = "type FP_n (or FP) over Z implies the same type over Q (Q is flat over Z)"
C_R6 = "LHS extension theorem: N FP_m and Q FP_n give G FP_min(m,n); G FP_n gives Q FP_min(m+1,n); same for F"
C_R7 = "commensurability invariance: G and a closed cocompact subgroup H share types FP_n and F_n"
C_R8 = "quasi-isometric compactly generated groups share types FP_n and F_n"
C_R9 = "quasi-retracts inherit types FP_n and F_n for n >= 2"
C_R10 = "G and a uniform lattice share types FP_n and F_n"
C_R11 = "a group retract of a compactly presented group is compactly presented"
C_R12 = "wreath sufficiency: B, H of type F_n and H acting diagonally on X^p with finitely many orbits and FP_{n-p} stabilisers give type F_n"
C_R13 = "graph-wreath necessity: compact generation (presentation) of G passes to B and H with orbit finiteness"
C_R14 = "wreath necessity: G of type F_n with FP_{n-p} stabilisers on X^p gives B, H of type F_n and finitely many orbits on X^n"
C_R15 = "poly-(compact-open-by-cyclic) H: wreath of type F_n iff B of type F_n and finitely many orbits on X^p, p <= n"
C_R16 = "hd <= cd; cd <= hd + 1 when sigma-compact; cd = hd under FP_infinity over Q"
C_R17 = "subadditivity of cd and hd over extensions (LHS spectral sequence)"
C_R18 = "type F_n implies type K_n (the converse is open)"


def _catalogue():
    R = []
    add = R.append
    # R0: compact groups, closed subgroups and quotients
    for fam in ("F", "FP_Z", "FP_Q"):
        add(MinRule("R0", "group", (flag("G", "compact"),), lvl("G", fam), C_COMPACT))
    add(MinRule("R0", "group", (flag("G", "compact"),), flag("G", "cd_gt", 0, positive=False), C_COMPACT))
    add(MinRule("R0", "group", (flag("G", "compact"),), flag("G", "type_F"), C_COMPACT))
    add(MinRule("R0", "group", (flag("G", "compact"),), flag("G", "sigma_compact"), C_COMPACT))
    for kind, sub, big in (("extension", "N", "G"), ("extension", "Q", "G"), ("normal_closed", "N", "G"),
                           ("closed_cocompact_subgroup", "H", "G"), ("open_finite_index", "H", "G"),
                           ("uniform_lattice", "L", "G"), ("group_retract", "H", "G")):
        add(MinRule("R0", kind, (flag(big, "compact"),), flag(sub, "compact"), C_CLOSED))
    # definitions
    add(MinRule("DEF", "group", (flag("G", "type_F"),), lvl("G", "F"), C_DEF))
    for r in RINGS:
        add(MinRule("DEF", "group", (flag("G", f"type_FP_{r}"),), lvl("G", f"FP_{r}"), C_DEF))
    add(MinRule("DEF", "group", (flag("G", "type_FP_Q"),), flag("G", "cd_gt", INF, positive=False), C_DEF))
    add(MinRule("DEF", "group", (flag("G", "compactly_generated"),), flag("G", "sigma_compact"), C_SIGMA))
    # R1
    add(MinRule("R1", "group", (lvl("G", "F"),), flag("G", "compactly_generated"), C_R1, need=1))
    add(MinRule("R1", "group", (flag("G", "compactly_generated"),), lvl("G", "F"), C_R1, cap=1))
    add(MinRule("R1", "group", (lvl("G", "F"),), flag("G", "compactly_presented"), C_R1, need=2))
    add(MinRule("R1", "group", (flag("G", "compactly_presented"),), lvl("G", "F"), C_R1, cap=2))
    # R2
    for r in RINGS:
        add(MinRule("R2", "group", (lvl("G", "F"),), lvl("G", f"FP_{r}"), C_R2))
    add(MinRule("R2", "group", (flag("G", "type_F"),), flag("G", "type_FP_Z"), C_R2))
    # R3
    add(MinRule("R3", "group", (lvl("G", "FP_Z"), flag("G", "compactly_presented")), lvl("G", "F"), C_R3))
    # R4
    for r in RINGS:
        add(MinRule("R4", "group", (lvl("G", f"FP_{r}"),), lvl("G", f"KP_{r}"), C_R4))
        add(MinRule("R4", "group", (lvl("G", f"KP_{r}"),), lvl("G", f"FP_{r}"), C_R4))
    # R5
    add(MinRule("R5", "group", (lvl("G", "FP_Z"),), lvl("G", "FP_Q"), C_R5))
    add(MinRule("R5", "group", (flag("G", "type_FP_Z"),), flag("G", "type_FP_Q"), C_R5))
    # R6
    for fam in TRANSFER:
        add(MinRule("R6", "extension", (lvl("N", fam), lvl("Q", fam)), lvl("G", fam), C_R6))
        add(MinRule("R6", "extension", (lvl("N", fam, 1), lvl("G", fam)), lvl("Q", fam), C_R6))
    # R7, R10: two-way transfer along a relation
    for fam in TRANSFER:
        for kind in ("closed_cocompact_subgroup", "open_finite_index"):
            add(MinRule("R7", kind, (lvl("H", fam),), lvl("G", fam), C_R7))
            add(MinRule("R7", kind, (lvl("G", fam),), lvl("H", fam), C_R7))
        add(MinRule("R10", "uniform_lattice", (lvl("L", fam),), lvl("G", fam), C_R10))
        add(MinRule("R10", "uniform_lattice", (lvl("G", fam),), lvl("L", fam), C_R10))
    # R8, R9
    cg = "compactly_generated"
    for fam in TRANSFER:
        for a, b in (("G", "H"), ("H", "G")):
            add(MinRule("R8", "quasi_isometric", (flag("G", cg), flag("H", cg), lvl(a, fam)), lvl(b, fam), C_R8))
        add(MinRule("R9", "quasi_retract", (flag("G", cg), flag("H", cg), lvl("H", fam)), lvl("G", fam), C_R9, need=2))
    # R11
    add(MinRule("R11", "group_retract", (flag("G", "compactly_presented"),), flag("H", "compactly_presented"), C_R11))
    # R12 to R15: wreath products G = B wr_X H
    add(MinRule("R12", "wreath", (lvl("B", "F"), lvl("H", "F"), lvl("X", "orbits"), lvl("X", "stab")), lvl("G", "F"), C_R12))
    for role in ("B", "H"):
        add(MinRule("R13", "wreath", (flag("G", cg),), flag(role, cg), C_R13))
        add(MinRule("R13", "wreath", (flag("G", "compactly_presented"),), flag(role, "compactly_presented"), C_R13))
        add(MinRule("R13", "graph_wreath", (flag("G", cg),), flag(role, cg), C_R13))
        add(MinRule("R13", "graph_wreath", (flag("G", "compactly_presented"),), flag(role, "compactly_presented"), C_R13))
    add(MinRule("R13", "wreath", (flag("G", cg),), lvl("X", "orbits"), C_R13, cap=1))
    add(MinRule("R13", "wreath", (flag("G", "compactly_presented"),), lvl("X", "orbits"), C_R13, cap=2))
    add(MinRule("R13", "graph_wreath", (flag("G", cg),), flag("X", "vertex_orbits_finite"), C_R13))
    for key in ("edge_orbits_finite", "vertex_stabilizers_cg"):
        add(MinRule("R13", "graph_wreath", (flag("G", "compactly_presented"),), flag("X", key), C_R13))
    for role, fam in (("B", "F"), ("H", "F"), ("X", "orbits")):
        add(MinRule("R14", "wreath", (lvl("G", "F"), lvl("X", "stab")), lvl(role, fam), C_R14))
    poly = flag("H", "poly_compact_open_by_cyclic")
    add(MinRule("R15", "wreath", (poly, lvl("B", "F"), lvl("X", "orbits")), lvl("G", "F"), C_R15))
    for role, fam in (("B", "F"), ("X", "orbits")):
        add(MinRule("R15", "wreath", (poly, lvl("G", "F")), lvl(role, fam), C_R15))
    # R16
    add(MinRule("R16", "group", (lvl("G", "hd_gt"),), lvl("G", "cd_gt"), C_R16, need=0))
    add(MinRule("R16", "group", (flag("G", "sigma_compact"), lvl("G", "cd_gt", -1)), lvl("G", "hd_gt"), C_R16, need=0))
    add(MinRule("R16", "group", (flag("G", "FP_Q", INF), lvl("G", "cd_gt")), lvl("G", "hd_gt"), C_R16, need=0))
    # R17
    add(SumRule("R17", "extension", "cd_gt", C_R17))
    add(SumRule("R17", "extension", "hd_gt", C_R17))
    # R18
    add(MinRule("R18", "group", (lvl("G", "F"),), lvl("G", "K"), C_R18))
    return tuple(R)


RULES = _catalogue()

# relation kinds: argument roles and the entity kind each role must have
RELATIONS = {
    "extension": (("N", "G", "Q"), ("group", "group", "group")),
    "normal_closed": (("N", "G"), ("group", "group")),
    "closed_cocompact_subgroup": (("H", "G"), ("group", "group")),
    "open_finite_index": (("H", "G"), ("group", "group")),
    "uniform_lattice": (("L", "G"), ("group", "group")),
    "quasi_isometric": (("G", "H"), ("group", "group")),
    "quasi_retract": (("G", "H"), ("group", "group")),
    "group_retract": (("H", "G"), ("group", "group")),
    "wreath": (("G", "B", "H", "X"), ("group", "group", "group", "action")),
    "graph_wreath": (("G", "B", "H", "X"), ("group", "group", "group", "graph")),
}

RULE_IDS = tuple(sorted({r.id for r in RULES}, key=lambda s: (len(s), s)))
