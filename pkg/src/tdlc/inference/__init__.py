"""Forward-chaining inference over finiteness properties of t.d.l.c. groups."""

from .dsl import Query, Relation, Script, load, parse, property_literals
from .engine import (
    GIVEN,
    TRIVIAL,
    Answer,
    Closure,
    Contradiction,
    Derivation,
    close,
    query,
    query_lit,
    replay,
    report_json,
    report_text,
)
from .lattice import DEFAULT_CAP, FAMILIES, INF, Lit, Store, lit_str
from .rules import RELATIONS, RULE_IDS, RULES

__all__ = [
    "Answer", "Closure", "Contradiction", "DEFAULT_CAP", "Derivation", "FAMILIES", "GIVEN", "INF", "Lit",
    "Query", "RELATIONS", "RULES", "RULE_IDS", "Relation", "Script", "Store", "TRIVIAL", "close", "lit_str",
    "load", "parse", "property_literals", "query", "query_lit", "replay", "report_json", "report_text",
]
