"""Exact non-Archimedean and p-adic Welch bound toolkit."""

from ._core import (  # noqa: F401
    ParseError,
    PreconditionError,
    __version__,
    binomial_valuation,
    check_bound,
    check_field_condition,
    check_unital,
    demo,
    find_field_condition_counterexample,
    gram,
    padic_valuation,
    search_equality,
    search_equiangular,
    search_zauner,
    sym_dim,
)
