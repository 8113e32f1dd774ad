"""Line-oriented input language for the inference engine.

    group NAME
    property NAME PROP [ARGS] [over RING] [= BOOL]
    relation KIND NAME+ [key=value ...]
    query NAME PROP [ARGS] [over RING]

``#`` starts a comment.  PROP is one of the boolean flags (``compact``,
``sigma_compact``, ``compactly_generated``, ``compactly_presented``,
``poly_compact_open_by_cyclic``), a graded type with a level (``F 2``,
``FP inf over Q``, ``KP 3``, ``K 1``; also written ``FP_2``), the bare types
``F`` and ``FP`` (finite-length versions), or a dimension bound
(``cd <= 2``, ``hd >= 1``, ``cd 2``).  The last name of a ``wreath`` or
``graph_wreath`` relation declares the set (graph) the top group acts on;
its properties are ``orbits N`` and ``stab N`` (respectively
``vertex_orbits_finite``, ``edge_orbits_finite``, ``vertex_stabilizers_cg``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..errors import InputError
from .lattice import DEFAULT_CAP, INF, Lit
from .rules import RELATIONS

MODULE = "inference"

_TOKEN = re.compile(r"<=|>=|=|[^\s=<>]+")
_NAME = re.compile(r"^[^\W\d]\w*'*$")
_GRADED = re.compile(r"^(FP|KP|F|K)_(\w+)$")

GROUP_FLAGS = ("compact", "sigma_compact", "compactly_generated", "compactly_presented",
               "poly_compact_open_by_cyclic")
GRAPH_FLAGS = ("vertex_orbits_finite", "edge_orbits_finite", "vertex_stabilizers_cg")


@dataclass(frozen=True)
class Relation:
    kind: str
    args: tuple
    line: int


@dataclass(frozen=True)
class Query:
    entity: str
    prop: str
    args: tuple
    ring: str | None
    lits: tuple  # literals, or ("bound", family)
    text: str
    line: int


@dataclass
class Script:
    entities: dict = field(default_factory=dict)  # name -> "group" | "action" | "graph"
    relations: list = field(default_factory=list)
    facts: list = field(default_factory=list)  # (Lit, line)
    queries: list = field(default_factory=list)

    def descriptor(self, name):
        """Asserted facts about one entity."""
        return [lit for lit, _ in self.facts if lit.entity == name]


def _err(line, msg):
    return InputError(MODULE, f"line {line}: {msg}" if line else msg)


def parse_level(tok, cap, line):
    if tok.lower() in ("inf", "infinity", "∞"):
        return INF
    if not tok.isdigit():
        raise _err(line, f"expected a level (0..{cap} or inf), got {tok!r}")
    n = int(tok)
    if n > cap:
        raise _err(line, f"level {n} exceeds the cap {cap}")
    return n


def _ring(ring, line):
    if ring is None:
        return "Z"
    r = ring.upper()
    if r not in ("Z", "Q"):
        raise _err(line, f"unknown ring {ring!r} (expected Z or Q)")
    return r


def property_literals(name, kind, prop, args, ring, cap=DEFAULT_CAP, line=0, allow_bare_bound=False):
    """Literals asserted by a property phrase, or ``("bound", family)`` for a
    bare ``cd``/``hd`` when ``allow_bare_bound``."""
    m = _GRADED.match(prop)
    if m and not args:
        prop, args = m.group(1), [m.group(2)]
    if kind == "group":
        if prop in GROUP_FLAGS:
            if args or ring:
                raise _err(line, f"{prop} takes no arguments")
            return [Lit(name, prop, 1, True)]
        if prop in ("F", "FP", "KP", "K"):
            if prop in ("F", "K") and ring is not None:
                raise _err(line, f"type {prop} takes no ring")
            r = _ring(ring, line)
            if len(args) > 1:
                raise _err(line, f"too many arguments for {prop}")
            if not args:
                if prop == "F":
                    return [Lit(name, "type_F", 1, True)]
                if prop == "FP":
                    return [Lit(name, f"type_FP_{r}", 1, True)]
                raise _err(line, f"{prop} needs a level")
            n = parse_level(args[0], cap, line)
            key = prop if prop in ("F", "K") else f"{prop}_{r}"
            return [Lit(name, key, n, True)]
        if prop in ("cd", "hd"):
            if ring is not None and ring.upper() != "Q":
                raise _err(line, f"{prop} is taken over Q")
            fam = f"{prop}_gt"
            if not args:
                if allow_bare_bound:
                    return ["bound", fam]
                raise _err(line, f"{prop} needs a bound such as '<= 2'")
            if args[0] in ("<=", ">="):
                if len(args) != 2:
                    raise _err(line, f"{prop} {args[0]} needs one level")
                n = parse_level(args[1], cap, line)
                if args[0] == "<=":
                    if n == INF:
                        raise _err(line, f"{prop} <= inf says nothing")
                    return [Lit(name, fam, n, False)]
                return [Lit(name, fam, INF if n == INF else n - 1, True)]
            if len(args) != 1:
                raise _err(line, f"bad {prop} bound")
            n = parse_level(args[0], cap, line)
            if n == INF:
                return [Lit(name, fam, INF, True)]
            return [Lit(name, fam, n - 1, True), Lit(name, fam, n, False)]
        raise _err(line, f"unknown property {prop!r}")
    if kind == "action":
        if prop in ("orbits", "stab"):
            if len(args) != 1 or ring is not None:
                raise _err(line, f"{prop} takes one level")
            return [Lit(name, prop, parse_level(args[0], cap, line), True)]
        raise _err(line, f"unknown property {prop!r} for the action set {name}")
    if prop in GRAPH_FLAGS:
        if args or ring is not None:
            raise _err(line, f"{prop} takes no arguments")
        return [Lit(name, prop, 1, True)]
    raise _err(line, f"unknown property {prop!r} for the graph {name}")


def _split_prop(tokens, line):
    """PROP ARGS [over RING] [= BOOL] -> (prop, args, ring, value)."""
    if not tokens:
        raise _err(line, "missing property")
    value = None
    if "=" in tokens:
        k = tokens.index("=")
        rest = tokens[k + 1:]
        if len(rest) != 1 or rest[0].lower() not in ("true", "false"):
            raise _err(line, "expected '= true' or '= false'")
        value = rest[0].lower() == "true"
        tokens = tokens[:k]
    ring = None
    if "over" in tokens:
        k = tokens.index("over")
        if k != len(tokens) - 2:
            raise _err(line, "'over' must be followed by exactly one ring")
        ring = tokens[k + 1]
        tokens = tokens[:k]
    if not tokens:
        raise _err(line, "missing property")
    return tokens[0], tokens[1:], ring, value


def _assert(script, name, tokens, cap, line):
    prop, args, ring, value = _split_prop(tokens, line)
    lits = property_literals(name, script.entities[name], prop, args, ring, cap, line)
    if value is False:
        if len(lits) != 1:
            raise _err(line, "an exact value cannot be negated; use <= or >=")
        lits = [lits[0].negate()]
    for lit in lits:
        script.facts.append((lit, line))


def parse(text, cap=DEFAULT_CAP):
    script = Script()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        src = raw.split("#", 1)[0].strip()
        if not src:
            continue
        tokens = _TOKEN.findall(src)
        head, rest = tokens[0], tokens[1:]

        def known(name):
            if name not in script.entities:
                raise _err(lineno, f"unknown name {name!r} (declare it with 'group {name}')")
            return name

        if head == "group":
            if len(rest) != 1:
                raise _err(lineno, "syntax: group NAME")
            name = rest[0]
            if not _NAME.match(name):
                raise _err(lineno, f"bad name {name!r}")
            if name in script.entities:
                raise _err(lineno, f"{name} is already declared")
            script.entities[name] = "group"
        elif head == "property":
            if len(rest) < 2:
                raise _err(lineno, "syntax: property NAME PROP [ARGS] [over RING] [= BOOL]")
            _assert(script, known(rest[0]), rest[1:], cap, lineno)
        elif head == "relation":
            if not rest:
                raise _err(lineno, "syntax: relation KIND NAME+")
            kind = rest[0]
            if kind not in RELATIONS:
                raise _err(lineno, f"unknown relation kind {kind!r}")
            roles, kinds = RELATIONS[kind]
            body = rest[1:]
            cut = body.index("=") - 1 if "=" in body else len(body)
            names, toks = body[:cut], body[cut:]
            params = []
            for k in range(0, len(toks), 3):
                trio = toks[k:k + 3]
                if len(trio) != 3 or trio[1] != "=" or "=" in (trio[0], trio[2]):
                    raise _err(lineno, "parameters are written key=value")
                params.append((trio[0], trio[2]))
            if len(names) != len(roles):
                raise _err(lineno, f"{kind} takes {len(roles)} names ({' '.join(roles)}), got {len(names)}")
            for nm, want in zip(names, kinds):
                if want == "group":
                    known(nm)
                    if script.entities[nm] != "group":
                        raise _err(lineno, f"{nm} is not a group")
                else:
                    have = script.entities.get(nm)
                    if have is None:
                        if not _NAME.match(nm):
                            raise _err(lineno, f"bad name {nm!r}")
                        script.entities[nm] = want
                    elif have != want:
                        raise _err(lineno, f"{nm} is already declared as a {have}")
            if params and kinds[-1] == "group":
                raise _err(lineno, f"{kind} takes no parameters")
            for key, val in params:
                if script.entities[names[-1]] == "graph":
                    if val.lower() not in ("true", "false"):
                        raise _err(lineno, f"{key} expects true or false")
                    _assert(script, names[-1], [key, "=", val], cap, lineno)
                else:
                    _assert(script, names[-1], [key, val], cap, lineno)
            script.relations.append(Relation(kind, tuple(names), lineno))
        elif head == "query":
            if len(rest) < 2:
                raise _err(lineno, "syntax: query NAME PROP [ARGS] [over RING]")
            name = known(rest[0])
            prop, args, ring, value = _split_prop(rest[1:], lineno)
            if value is not None:
                raise _err(lineno, "queries take no '= BOOL'")
            lits = property_literals(name, script.entities[name], prop, args, ring, cap, lineno,
                                     allow_bare_bound=True)
            text = " ".join(rest)
            script.queries.append(Query(name, prop, tuple(args), ring, tuple(lits), text, lineno))
        else:
            raise _err(lineno, f"syntax error: unknown statement {head!r}")
    return script


def load(path, cap=DEFAULT_CAP):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(MODULE, f"cannot read {path}: {exc}") from None
    return parse(text, cap)

