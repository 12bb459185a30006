"""Covariance, correlation, and PCA for categorical data via regular-simplex embeddings.

Categories are placed at the vertices of a unit-edge regular simplex, so
single-variable dispersion reduces to the Gini variance and the covariance
of a variable pair becomes an orthogonally-invariant quantity: the nuclear
norm of their embedded cross matrix.  The same embedding turns a whole
dataset into a block covariance matrix whose eigendecomposition gives
principal components that can be read as combinations of "category A vs
category B" directions.
"""

from .covariance import (
    CovarianceResult,
    CrossMatrix,
    build_embeddings,
    correlation_matrix,
    covariance_matrix,
    covariance_newton,
    covariance_svd,
    cross_matrix,
    gini_variance,
)
from .dataset import (
    CategoricalDataset,
    CategoricalVariable,
    frequencies,
    from_columns,
    joint_table,
    load_contingency,
    load_csv,
)
from .errors import DataError, NumericalError, RspcaError
from .pca import (
    ComponentInterpretation,
    LrsvLayout,
    PcaModel,
    ScoreTable,
    fit,
    interpret,
    lrsv_vector,
    refit_subset,
    scores,
    scree,
    variable_importance,
)
from .simplex import BasisAtom, SimplexEmbedding, basis_atoms, build_simplex

__version__ = "0.1.0"

__all__ = [
    "BasisAtom",
    "CategoricalDataset",
    "CategoricalVariable",
    "ComponentInterpretation",
    "CovarianceResult",
    "CrossMatrix",
    "DataError",
    "LrsvLayout",
    "NumericalError",
    "PcaModel",
    "RspcaError",
    "ScoreTable",
    "SimplexEmbedding",
    "basis_atoms",
    "build_embeddings",
    "build_simplex",
    "correlation_matrix",
    "covariance_matrix",
    "covariance_newton",
    "covariance_svd",
    "cross_matrix",
    "fit",
    "frequencies",
    "from_columns",
    "gini_variance",
    "interpret",
    "joint_table",
    "load_contingency",
    "load_csv",
    "lrsv_vector",
    "refit_subset",
    "scores",
    "scree",
    "variable_importance",
]
