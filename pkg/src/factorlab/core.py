"""Shared plumbing: error types, enumeration budgets, exact-rational helpers.

Every quantity that gets compared against a threshold is kept as an exact
``fractions.Fraction`` (or a plain int); floats never enter a comparison.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction


class FactorLabError(Exception):
    """Base class for all library errors."""


class FormatError(FactorLabError):
    """Malformed input text (graph files, vertex-function files, specs)."""


class ScaleExceeded(FactorLabError):
    """An enumeration budget was blown.  Never a mathematical verdict."""


class PreconditionError(FactorLabError):
    """Caller violated an operation contract."""


INF = math.inf


@dataclass(frozen=True)
class Budgets:
    """Caps for the exhaustive enumerations.

    subset_n_cap:    max n for 2^n subset sweeps (toughness, hypothesis checks)
    pair_n_cap:      max n for 3^n disjoint-pair sweeps (factor criteria)
    indep_budget:    max number of independent sets enumerated
    cycle_dim_cap:   max cycle-space dimension for even-subgraph exhaustion
    search_budget:   max nodes for branch-and-bound factor searches
    mtc_union_budget: max part-subset candidates in the merge fixed point
    """

    subset_n_cap: int = 24
    pair_n_cap: int = 15
    indep_budget: int = 10_000_000
    cycle_dim_cap: int = 26
    search_budget: int = 5_000_000
    mtc_union_budget: int = 1_000_000

    _ENV = {
        "subset_n_cap": "FACTORLAB_BUDGET_SUBSET_N",
        "pair_n_cap": "FACTORLAB_BUDGET_PAIR_N",
        "indep_budget": "FACTORLAB_BUDGET_INDEP",
        "cycle_dim_cap": "FACTORLAB_BUDGET_CYCLE_DIM",
        "search_budget": "FACTORLAB_BUDGET_SEARCH",
        "mtc_union_budget": "FACTORLAB_BUDGET_MTC_UNION",
    }

    @classmethod
    def from_env(cls, environ=None) -> "Budgets":
        environ = os.environ if environ is None else environ
        kwargs = {}
        for field, var in cls._ENV.items():
            raw = environ.get(var)
            if raw is not None:
                try:
                    kwargs[field] = int(raw)
                except ValueError as exc:
                    raise FormatError(f"{var} must be an integer, got {raw!r}") from exc
        return cls(**kwargs)


DEFAULT_BUDGETS = Budgets()


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", an integer, or a decimal literal into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational: {text!r}") from exc


def fmt_rational(value) -> str:
    """Render a Fraction/int (or +infinity) the way reports expect: "p/q" / "inf"."""
    if value == INF:
        return "inf"
    return str(Fraction(value))
