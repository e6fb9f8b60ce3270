"""Base-B digit economy toolkit.

An integer is economical when writing out its prime factorization takes no
more digits than the number itself; the sign of h(n) = delta(n) - phi(n)
splits integers into extravagant (h < 0), equidigital (h = 0) and frugal
(h > 0). This package classifies integers, scans ranges for distributions
and runs, and constructs arbitrarily long runs of consecutive k-frugal
numbers from a covering system of congruences plus a simultaneous-prime
search.
"""

from econum._core import (
    Plan,
    build_extravagant,
    build_plan,
    classify,
    classify_factored,
    crt,
    delta,
    dickson_search,
    factor,
    find_runs,
    first_with_h,
    frugal_sample,
    h,
    histogram,
    is_prime,
    is_probable_prime,
    plan_from_json,
    verify_run,
    verify_run_u64,
)

__all__ = [
    "Plan",
    "build_extravagant",
    "build_plan",
    "classify",
    "classify_factored",
    "crt",
    "delta",
    "dickson_search",
    "factor",
    "find_runs",
    "first_with_h",
    "frugal_sample",
    "h",
    "histogram",
    "is_prime",
    "is_probable_prime",
    "plan_from_json",
    "verify_run",
    "verify_run_u64",
]
