"""Log event feature selection for fault detection."""

try:
    from ._logsel import (
        Dataset,
        LogselError,
        detect,
        evaluate,
        event_counts,
        generate_scenario,
        kendall_tau,
        persistence_scores,
        read_dataset,
        robust_scores,
        select_features,
    )
    from ._logsel import __version__
except ImportError:
    # CMake builds place the extension next to this package on sys.path
    from _logsel import (
        Dataset,
        LogselError,
        detect,
        evaluate,
        event_counts,
        generate_scenario,
        kendall_tau,
        persistence_scores,
        read_dataset,
        robust_scores,
        select_features,
    )
    from _logsel import __version__

__all__ = [
    "Dataset",
    "LogselError",
    "__version__",
    "detect",
    "evaluate",
    "event_counts",
    "generate_scenario",
    "kendall_tau",
    "persistence_scores",
    "read_dataset",
    "robust_scores",
    "select_features",
]
