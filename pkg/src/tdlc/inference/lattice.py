"""Graded fact store.

Every property is a *family* of literals indexed by a level.  A graded family
P is downward closed: P_n implies P_m for m <= n, so the store keeps only the
largest level known true (``top``) and the smallest level known false
(``bot``).  Boolean flags are families with the single level 1.  Bounds on
cd and hd use the family ``cd_gt`` with ``cd_gt(k)`` meaning cd > k, which is
downward closed as well.  Levels run over 0..cap plus ``INF``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

INF = math.inf
DEFAULT_CAP = 64


@dataclass(frozen=True)
class Family:
    key: str
    kind: str  # "graded", "bool" or "bound"
    entity: str  # "group", "action" or "graph"
    base: int = 0  # highest level that always holds

    @property
    def max_level(self):
        return 1 if self.kind == "bool" else INF


def _fam(key, kind, entity="group", base=0):
    return Family(key, kind, entity, base)


FAMILIES = {f.key: f for f in [
    _fam("compact", "bool"),
    _fam("sigma_compact", "bool"),
    _fam("compactly_generated", "bool"),
    _fam("compactly_presented", "bool"),
    _fam("poly_compact_open_by_cyclic", "bool"),
    _fam("type_F", "bool"),
    _fam("type_FP_Z", "bool"),
    _fam("type_FP_Q", "bool"),
    _fam("F", "graded"),
    _fam("FP_Z", "graded"),
    _fam("FP_Q", "graded"),
    _fam("KP_Z", "graded"),
    _fam("KP_Q", "graded"),
    _fam("K", "graded"),
    _fam("cd_gt", "bound", base=-1),
    _fam("hd_gt", "bound", base=-1),
    # H acting on X: finitely many orbits on X^p for p <= n
    _fam("orbits", "graded", "action"),
    # stabilisers of H on X^p have type FP_{n-p} for 1 <= p <= n
    _fam("stab", "graded", "action"),
    _fam("vertex_orbits_finite", "bool", "graph"),
    _fam("edge_orbits_finite", "bool", "graph"),
    _fam("vertex_stabilizers_cg", "bool", "graph"),
]}


class Lit(NamedTuple):
    entity: str
    family: str
    level: float
    positive: bool

    def negate(self):
        return Lit(self.entity, self.family, self.level, not self.positive)


def level_str(n):
    return "inf" if n == INF else str(int(n))


def lit_str(lit):
    """Human-readable literal, e.g. ``G FP_2 over Q`` or ``G not compactly_presented``."""
    e, key, n, pos = lit
    fam = FAMILIES[key]
    neg = "" if pos else "not "
    if fam.kind == "bool":
        name = key
        if key.startswith("type_FP_"):
            name = f"type FP over {key[-1]}"
        elif key == "type_F":
            name = "type F"
        return f"{e} {neg}{name}"
    if fam.kind == "bound":
        which = key[:2]
        if pos:
            return f"{e} {which} = inf" if n == INF else f"{e} {which} >= {int(n) + 1}"
        return f"{e} {which} < inf" if n == INF else f"{e} {which} <= {int(n)}"
    if key in ("FP_Z", "FP_Q", "KP_Z", "KP_Q"):
        return f"{e} {neg}{key[:2]}_{level_str(n)} over {key[-1]}"
    return f"{e} {neg}{key}_{level_str(n)}"


class Store:
    """Top and bottom levels per (entity, family)."""

    def __init__(self, entities, cap=DEFAULT_CAP):
        self.entities = dict(entities)  # name -> kind
        self.cap = cap
        self.top = {}
        self.bot = {}

    def family(self, key):
        return FAMILIES[key]

    def get_top(self, e, key):
        return self.top.get((e, key), FAMILIES[key].base)

    def get_bot(self, e, key):
        return self.bot.get((e, key))

    def normalize(self, lit):
        """Clamp to the representable lattice; ``None`` if the literal says nothing."""
        fam = FAMILIES[lit.family]
        n = lit.level
        if fam.kind == "bool":
            n = min(n, 1) if lit.positive else max(n, 1)
            if lit.positive and n < 1:
                return None
            return lit._replace(level=n)
        if n != INF and n > self.cap:
            # true levels clamp down, false levels weaken to "not at infinity"
            n = self.cap if lit.positive else INF
        if lit.positive and n <= fam.base:
            return None
        return lit._replace(level=n)

    def holds(self, lit):
        fam = FAMILIES[lit.family]
        if lit.positive:
            return lit.level <= self.get_top(lit.entity, lit.family) or lit.level <= fam.base
        b = self.get_bot(lit.entity, lit.family)
        return b is not None and b <= lit.level

    def add(self, lit):
        """Strengthen the store with ``lit``; return True if anything changed."""
        lit = self.normalize(lit)
        if lit is None:
            return False
        k = (lit.entity, lit.family)
        if lit.positive:
            if lit.level > self.get_top(*k):
                self.top[k] = lit.level
                return True
            return False
        b = self.bot.get(k)
        if b is None or lit.level < b:
            self.bot[k] = lit.level
            return True
        return False

    def conflict(self, e, key):
        """The level known both true and false, or None."""
        b = self.get_bot(e, key)
        if b is not None and b <= self.get_top(e, key):
            return b
        return None

    def snapshot(self):
        return (tuple(sorted(self.top.items())), tuple(sorted(self.bot.items())))
