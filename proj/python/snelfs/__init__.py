"""Feature selection with a sparse neural-network selection layer.

Thin re-export of the compiled module. Installed builds place the extension
inside this package; in-tree test runs have it on sys.path directly.
"""

try:
    from snelfs._snelfs import (
        DataError,
        NumericError,
        ParamError,
        ShapeError,
        __version__,
        fisher_score,
        generate,
        index_of_success,
        select,
        success_from_ranking,
    )
except ImportError:  # in-tree: extension built next to the package
    from _snelfs import (
        DataError,
        NumericError,
        ParamError,
        ShapeError,
        __version__,
        fisher_score,
        generate,
        index_of_success,
        select,
        success_from_ranking,
    )

__all__ = [
    "DataError",
    "NumericError",
    "ParamError",
    "ShapeError",
    "__version__",
    "fisher_score",
    "generate",
    "index_of_success",
    "select",
    "success_from_ranking",
]
