"""Forward chaining to a fixpoint, with derivation records and queries."""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field

from ..errors import InputError
from .lattice import DEFAULT_CAP, FAMILIES, INF, Lit, Store, level_str, lit_str
from .rules import RELATIONS, RULES

MODULE = "inference"

GIVEN = "GIVEN"
TRIVIAL = "TRIVIAL"


@dataclass(frozen=True)
class Derivation:
    lit: Lit
    rule: str
    premises: tuple = ()
    citation: str = ""
    direction: str = ""
    rule_index: int = -1
    binding: tuple = ()
    line: int = 0
    seq: int = 0

    def describe(self):
        if self.rule == GIVEN:
            return f"{lit_str(self.lit)}  [given, line {self.line}]"
        if self.rule == TRIVIAL:
            return f"{lit_str(self.lit)}  [trivial]"
        prem = "; ".join(lit_str(p) for p in self.premises)
        tag = self.rule if self.direction == "forward" else f"{self.rule}, contrapositive"
        return f"{lit_str(self.lit)}  [{tag}] from {prem} | {self.citation}"


@dataclass(frozen=True)
class Contradiction:
    entity: str
    family: str
    level: float

    @property
    def lit(self):
        return Lit(self.entity, self.family, self.level, True)


@dataclass
class Closure:
    script: object
    store: Store
    records: dict = field(default_factory=dict)  # (e, family, positive) -> [Derivation]
    contradictions: list = field(default_factory=list)
    steps: int = 0

    def state(self):
        return self.store.snapshot()

    # -- explanation
    def explain(self, lit):
        """The earliest derivation that establishes ``lit``, or None."""
        norm = self.store.normalize(lit)
        if norm is None:
            return Derivation(lit, TRIVIAL)
        for d in self.records.get((norm.entity, norm.family, norm.positive), ()):
            if (d.lit.level >= norm.level) if norm.positive else (d.lit.level <= norm.level):
                return d
        return None

    def chain(self, lit):
        """Derivations (premises first) that establish ``lit``."""
        out, seen = [], set()

        def visit(x):
            d = self.explain(x)
            if d is None or d.rule == TRIVIAL or d.seq in seen:
                return
            seen.add(d.seq)
            for p in d.premises:
                visit(p)
            out.append(d)

        visit(lit)
        return out


def instances(script):
    """(rule index, binding) pairs for every rule and matching group or relation."""
    out = []
    groups = [e for e, k in script.entities.items() if k == "group"]
    for ri, rule in enumerate(RULES):
        if rule.scope == "group":
            for g in groups:
                out.append((ri, (("G", g),)))
        else:
            for rel in script.relations:
                if rel.kind == rule.scope:
                    roles = RELATIONS[rel.kind][0]
                    out.append((ri, tuple(zip(roles, rel.args))))
    return out


def close(script, seed=None, cap=DEFAULT_CAP, step_limit=10_000_000):
    """Run every rule to a fixpoint.  ``seed`` randomises the firing order."""
    store = Store(script.entities, cap)
    cl = Closure(script, store)
    seq = [0]
    reported = set()

    def record(lit, make):
        norm = store.normalize(lit)
        if norm is None or store.holds(norm):
            return False
        store.add(norm)
        seq[0] += 1
        d = make(norm, seq[0])
        cl.records.setdefault((norm.entity, norm.family, norm.positive), []).append(d)
        lvl = store.conflict(norm.entity, norm.family)
        if lvl is not None and (norm.entity, norm.family) not in reported:
            reported.add((norm.entity, norm.family))
            cl.contradictions.append(Contradiction(norm.entity, norm.family, lvl))
        return True

    for lit, line in script.facts:
        record(lit, lambda n, s, line=line: Derivation(n, GIVEN, line=line, seq=s))

    inst = instances(script)
    index = {}
    for i, (ri, binding) in enumerate(inst):
        b = dict(binding)
        for a in RULES[ri].atoms():
            index.setdefault((b[a.role], a.family), []).append(i)
    rng = random.Random(seed) if seed is not None else None
    order = list(range(len(inst)))
    if rng:
        rng.shuffle(order)
    queue = list(order) if rng else deque(order)
    queued = set(order)
    while queue:
        if rng:
            # take a random pending instance
            k = rng.randrange(len(queue))
            queue[k], queue[-1] = queue[-1], queue[k]
            i = queue.pop()
        else:
            i = queue.popleft()
        queued.discard(i)
        cl.steps += 1
        if cl.steps > step_limit:
            raise InputError(MODULE, f"closure exceeded {step_limit} rule firings")
        ri, binding = inst[i]
        rule = RULES[ri]
        for lit, prem, direction in list(rule.fire(store, dict(binding))):
            changed = record(lit, lambda n, s: Derivation(
                n, rule.id, prem, rule.citation, direction, ri, binding, seq=s))
            if changed:
                for j in index.get((lit.entity, lit.family), ()):
                    if j not in queued:
                        queued.add(j)
                        queue.append(j)
    return cl


def replay(cl, d):
    """Re-derive ``d`` from its recorded premises alone with its recorded rule."""
    if d.rule in (GIVEN, TRIVIAL):
        return True
    store = Store(cl.store.entities, cl.store.cap)
    for p in d.premises:
        store.add(p)
    target = store.normalize(d.lit)
    rule = RULES[d.rule_index]
    if rule.id != d.rule:
        return False
    for lit, _, _ in rule.fire(store, dict(d.binding)):
        lit = store.normalize(lit)
        if lit is None or (lit.entity, lit.family, lit.positive) != (target.entity, target.family, target.positive):
            continue
        if (lit.level >= target.level) if lit.positive else (lit.level <= target.level):
            return True
    return False


# ---------------------------------------------------------------- queries

@dataclass(frozen=True)
class Answer:
    text: str
    value: str  # "true", "false", "unknown", "contradictory" or an interval
    chain: tuple  # Derivations, premises first


def query_lit(cl, lit, text=None):
    t, f = cl.store.holds(lit), cl.store.holds(lit.negate())
    if t and f:
        value = "contradictory"
    else:
        value = "true" if t else "false" if f else "unknown"
    chain = []
    if t:
        chain += cl.chain(lit)
    if f:
        chain += [d for d in cl.chain(lit.negate()) if d not in chain]
    return Answer(text or lit_str(lit), value, tuple(chain))


def query_bound(cl, entity, family):
    """Interval answer for cd or hd."""
    top = cl.store.get_top(entity, family)
    bot = cl.store.get_bot(entity, family)
    lo = INF if top == INF else int(top) + 1
    hi = "inf" if bot is None else ("<inf" if bot == INF else str(int(bot)))
    value = f"[{level_str(lo)}, {hi}]"
    chain = []
    if top > FAMILIES[family].base:
        chain += cl.chain(Lit(entity, family, top, True))
    if bot is not None:
        chain += [d for d in cl.chain(Lit(entity, family, bot, False)) if d not in chain]
    return Answer(f"{entity} {family[:2]}", value, tuple(chain))


def query(cl, name, prop, args=(), ring=None):
    """Tri-state answer for a property phrase, e.g. ``query(cl, "G", "FP", ["2"], "Q")``."""
    from .dsl import property_literals

    if name not in cl.script.entities:
        raise InputError(MODULE, f"unknown name {name!r}")
    lits = property_literals(name, cl.script.entities[name], prop, list(args), ring, cl.store.cap, line=0,
                             allow_bare_bound=True)
    if lits[0] == "bound":
        return query_bound(cl, name, lits[1])
    if len(lits) == 1:
        return query_lit(cl, lits[0])
    answers = [query_lit(cl, x) for x in lits]
    vals = {a.value for a in answers}
    value = answers[0].value if len(vals) == 1 else ("false" if "false" in vals else "unknown")
    chain = []
    for a in answers:
        chain += [d for d in a.chain if d not in chain]
    return Answer(" and ".join(a.text for a in answers), value, tuple(chain))


# ---------------------------------------------------------------- reports

def _fact_rows(cl):
    rows = []
    for e in cl.script.entities:
        for key in FAMILIES:
            for pos in (True, False):
                recs = cl.records.get((e, key, pos))
                if recs:
                    rows.append(recs[-1])
    return rows


def _chain_ids(chain):
    return [d.rule for d in chain if d.rule not in (GIVEN, TRIVIAL)]


def run_queries(cl):
    out = []
    for q in cl.script.queries:
        if q.lits[0] == "bound":
            a = query_bound(cl, q.entity, q.lits[1])
        elif len(q.lits) == 1:
            a = query_lit(cl, q.lits[0])
        else:
            a = query(cl, q.entity, q.prop, q.args, q.ring)
        out.append((q, a))
    return out


def report_text(cl):
    lines = []
    names = ", ".join(f"{e}" if k == "group" else f"{e} ({k})" for e, k in cl.script.entities.items())
    lines.append(f"entities: {names}")
    lines.append("facts:")
    for d in _fact_rows(cl):
        lines.append(f"  {d.describe()}")
    answers = run_queries(cl)
    if answers:
        lines.append("queries:")
    for q, a in answers:
        lines.append(f"  query {q.text}: {a.value}")
        for d in a.chain:
            lines.append(f"    {d.describe()}")
        ids = _chain_ids(a.chain)
        if ids:
            lines.append(f"    chain: [{', '.join(ids)}]")
    if cl.contradictions:
        lines.append("contradictions:")
        for c in cl.contradictions:
            lit = c.lit
            lines.append(f"  {lit_str(lit)} derived both true and false")
            lines.append("    true by:")
            for d in cl.chain(lit):
                lines.append(f"      {d.describe()}")
            lines.append("    false by:")
            for d in cl.chain(lit.negate()):
                lines.append(f"      {d.describe()}")
    else:
        lines.append("contradictions: none")
    return "\n".join(lines) + "\n"


def _lvl_json(n):
    return "inf" if n == INF else int(n)


def _deriv_json(d):
    out = {
        "fact": lit_str(d.lit),
        "entity": d.lit.entity,
        "family": d.lit.family,
        "level": _lvl_json(d.lit.level),
        "positive": d.lit.positive,
        "rule": d.rule,
    }
    if d.rule == GIVEN:
        out["line"] = d.line
    else:
        out["direction"] = d.direction
        out["premises"] = [lit_str(p) for p in d.premises]
        out["citation"] = d.citation
    return out


def report_json(cl):
    data = {
        "entities": [{"name": e, "kind": k} for e, k in cl.script.entities.items()],
        "relations": [{"kind": r.kind, "args": list(r.args)} for r in cl.script.relations],
        "facts": [_deriv_json(d) for d in _fact_rows(cl)],
        "queries": [
            {"query": q.text, "answer": a.value, "chain": _chain_ids(a.chain),
             "derivations": [_deriv_json(d) for d in a.chain]}
            for q, a in run_queries(cl)
        ],
        "contradictions": [
            {"fact": lit_str(c.lit),
             "true_chain": [_deriv_json(d) for d in cl.chain(c.lit)],
             "false_chain": [_deriv_json(d) for d in cl.chain(c.lit.negate())]}
            for c in cl.contradictions
        ],
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
