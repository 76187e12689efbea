"""Exact homomorphism densities and domination exponents."""

from ._core import (
    Graph,
    InvalidArgument,
    ParseError,
    ResourceLimit,
    all_cycle_cone,
    complete,
    construct,
    cycle,
    disjoint_union,
    estimate,
    even_cycle_cone,
    even_cycle_exponent,
    exponent,
    hom_count,
    hom_density,
    kr_lp,
    odd_cycle_bounds,
    path,
    path_exponent,
    search_p6,
    solve_lp,
    tensor_product,
    union_exponent_lp,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
