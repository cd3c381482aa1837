"""Python access to the sykclt core: Majorana algebra, SYK ensembles,
moment limits, subset combinatorics and Fejer smoothing."""

from ._core import (
    ArgumentError,
    DimensionError,
    ResourceError,
    SchemaError,
    ValidationError,
    __version__,
    cli,
    count_B3,
    count_B4,
    covariance_limit,
    crossing_histogram,
    eigenvalues,
    exact_covariance_oracle,
    fejer_kernel,
    hypergeometric_overlap_pmf,
    m_k_a,
    run_clt,
    smoothing_sup_error,
    tv_distance_to_poisson,
    word_product,
)

__all__ = [
    "ArgumentError",
    "DimensionError",
    "ResourceError",
    "SchemaError",
    "ValidationError",
    "__version__",
    "cli",
    "count_B3",
    "count_B4",
    "covariance_limit",
    "crossing_histogram",
    "eigenvalues",
    "exact_covariance_oracle",
    "fejer_kernel",
    "hypergeometric_overlap_pmf",
    "m_k_a",
    "run_clt",
    "smoothing_sup_error",
    "tv_distance_to_poisson",
    "word_product",
]
