"""Control networks over finite lattices.

Element and state indices are 0-based; structure matrices are given as lists
of 1-based column indices, as in delta notation.
"""

import json

from ._core import (
    ASSR,
    Error,
    Lattice,
    assr_from_matrix,
    chain,
    controllability_matrix,
    distinguishable_pairs,
    factor,
    format_model,
    is_controllable,
    is_observable,
    lattice_from_join,
    load_network,
    product,
    simulate,
)
from ._core import recover_json as _recover_json


def recover(assr, mode="monotone", labels=None):
    """Recovery report as a dict (same layout as `latnet recover`)."""
    return json.loads(_recover_json(assr, mode, labels or []))


__all__ = [
    "ASSR",
    "Error",
    "Lattice",
    "assr_from_matrix",
    "chain",
    "controllability_matrix",
    "distinguishable_pairs",
    "factor",
    "format_model",
    "is_controllable",
    "is_observable",
    "lattice_from_join",
    "load_network",
    "product",
    "recover",
    "simulate",
]
