"""Invariants of loops of embedded circles in S1 x S3.

Thin wrapper over the compiled extension: converts coefficient strings
(arbitrary-precision integers) to Python ints at the boundary.
"""

import json

from _twistloop import (
    invariants_json,
    m0_verdict,
    smith_normal_form as _snf,
    w1,
    w2_terms as _w2_terms,
    lambda0_reduce as _lambda0_reduce,
)

__all__ = [
    "invariants",
    "invariants_json",
    "lambda0_reduce",
    "m0_verdict",
    "smith_normal_form",
    "w1",
    "w2",
]


def invariants(family, i, grid=64, eps=0.05):
    """Certified invariant report as a Python dict."""
    return json.loads(invariants_json(family, i, grid, eps))


def w2(family, i, grid=64, eps=0.05):
    """W2 as a dict {exponent: integer coefficient}."""
    return {e: int(c) for e, c in _w2_terms(family, i, grid, eps)}


def lambda0_reduce(terms):
    """Reduce Laurent terms [(exp, coef), ...] into Lambda0."""
    return {e: int(c) for e, c in _lambda0_reduce(list(terms))}


def smith_normal_form(relations):
    """Certified Smith normal form with integer entries."""
    raw = _snf([list(r) for r in relations])
    return {
        "D": [[int(v) for v in row] for row in raw["D"]],
        "U": [[int(v) for v in row] for row in raw["U"]],
        "V": [[int(v) for v in row] for row in raw["V"]],
        "invariant_factors": [int(v) for v in raw["invariant_factors"]],
        "free_rank": raw["free_rank"],
    }
