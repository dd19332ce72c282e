"""Total preorders as a median join-semilattice, filter-based social welfare
functions, agenda-contingent aggregation and a brute-force axiom harness."""

from .errors import (
    EmptyAgenda,
    FamilyUndefined,
    GroundTooLarge,
    IllFormedFamily,
    InternalError,
    MedianSWFError,
    ParameterError,
    ParseError,
)
from .relations import GroundSet, Profile, TotalPreorder, enumerate_preorders, parse_preorder, render_preorder
from .report import FAILS, HOLDS, INCONCLUSIVE, SCHEMA_VERSION, CheckReport, Scope
from .rules import Rule, catalog, parse_rule

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "EmptyAgenda",
    "FAILS",
    "FamilyUndefined",
    "GroundSet",
    "GroundTooLarge",
    "HOLDS",
    "INCONCLUSIVE",
    "IllFormedFamily",
    "InternalError",
    "MedianSWFError",
    "ParameterError",
    "ParseError",
    "Profile",
    "Rule",
    "SCHEMA_VERSION",
    "Scope",
    "TotalPreorder",
    "catalog",
    "enumerate_preorders",
    "parse_preorder",
    "parse_rule",
    "render_preorder",
]
