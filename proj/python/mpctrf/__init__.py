"""Minimum peak-cost temporally repeated flow solvers.

Thin JSON-string facade over the C++ core; see the individual function
docstrings for the document formats.
"""

try:
    from ._mpctrf import (
        SolverError,
        check,
        evaluate,
        generate_3sat,
        generate_figure,
        generate_subsetsum,
        profile_csv,
        solve,
        validate_instance,
    )
except ImportError:  # build-tree layout: extension sits next to the package
    from _mpctrf import (
        SolverError,
        check,
        evaluate,
        generate_3sat,
        generate_figure,
        generate_subsetsum,
        profile_csv,
        solve,
        validate_instance,
    )

__all__ = [
    "SolverError",
    "check",
    "evaluate",
    "generate_3sat",
    "generate_figure",
    "generate_subsetsum",
    "profile_csv",
    "solve",
    "validate_instance",
]
