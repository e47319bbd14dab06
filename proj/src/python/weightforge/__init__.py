"""Exact weights, blocks and Galois actions for finite permutation groups.

The heavy lifting lives in the compiled extension; this package re-exports
it and points the bundled atlas at the packaged data when present.
"""

import os

if "WEIGHTFORGE_ATLAS" not in os.environ:
    _packaged = os.path.join(os.path.dirname(__file__), "atlas")
    if os.path.isdir(_packaged):
        os.environ["WEIGHTFORGE_ATLAS"] = _packaged

from ._core import (  # noqa: E402,F401
    GroupDomainError,
    InputError,
    Permutation,
    PermutationGroup,
    ResourceLimitError,
    TableValidationError,
    atlas_names,
    centralizer,
    character_degrees,
    class_counts,
    load_atlas,
    normalizer,
    p_core,
    radical_orders,
    run,
    sylow_subgroup,
    weight_count,
)

__all__ = [
    "Permutation",
    "PermutationGroup",
    "atlas_names",
    "load_atlas",
    "sylow_subgroup",
    "p_core",
    "normalizer",
    "centralizer",
    "class_counts",
    "character_degrees",
    "radical_orders",
    "weight_count",
    "run",
    "InputError",
    "GroupDomainError",
    "TableValidationError",
    "ResourceLimitError",
]
