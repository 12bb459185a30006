"""Gini variances and simplex-embedded covariances between categorical variables.

The covariance of a variable pair is the maximum over rotations of the
cross-covariance of their embedded coordinates, which equals the nuclear
norm of the cross matrix.  The SVD route is the primary path; the Newton
solve of the stationarity system is kept as an independent oracle.
"""

from dataclasses import dataclass

import numpy as np

from . import numerics
from .dataset import CategoricalDataset, frequencies, joint_table
from .errors import NumericalError
from .simplex import SimplexEmbedding, build_simplex


@dataclass(frozen=True)
class CrossMatrix:
    """Cross-covariance of two variables' embedded coordinates, (k_i-1) x (k_j-1)."""

    entries: np.ndarray

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True)
class CovarianceResult:
    """A covariance value with the rotation and singular values behind it.

    ``sigma`` is the sum of ``singular_values``.  ``rotation`` maximizes
    trace(A L^T); for rectangular cross matrices it is the partial isometry
    U V^T (orthonormal on the smaller side).  When singular values repeat
    or vanish the maximizer is not unique and only ``sigma`` is contractual.
    """

    sigma: float
    rotation: np.ndarray
    singular_values: np.ndarray


def build_embeddings(dataset: CategoricalDataset) -> dict[str, SimplexEmbedding]:
    """One regular-simplex embedding per variable, keyed by name."""
    return {v.name: build_simplex(v.k) for v in dataset.variables}


def gini_variance(dataset: CategoricalDataset, variable: str) -> float:
    """Gini variance (1 - sum p_k^2) / 2 from weighted category frequencies.

    Equals the average weighted disagreement rate over instance pairs and
    the trace of the variable's diagonal cross matrix.
    """
    p = np.array([f for _, f in frequencies(dataset, variable)])
    return float((1.0 - np.dot(p, p)) / 2.0)


def cross_matrix(
    dataset: CategoricalDataset,
    var_i: str,
    var_j: str,
    embeddings: dict[str, SimplexEmbedding] | None = None,
) -> CrossMatrix:
    """Cross matrix of two variables in their simplex coordinates.

    Computed from the weighted joint category distribution in
    O(N + k_i * k_j): with joint probabilities P and marginals p_i, p_j,
    the pairwise double sum collapses to V_i^T (P - p_i p_j^T) V_j.
    """
    if embeddings is None:
        embeddings = build_embeddings(dataset)
    total = dataset.total_weight
    joint = joint_table(dataset, var_i, var_j) / total
    p_i = joint.sum(axis=1)
    p_j = joint.sum(axis=0)
    v_i = embeddings[var_i].vertices
    v_j = embeddings[var_j].vertices
    return CrossMatrix(v_i.T @ (joint - np.outer(p_i, p_j)) @ v_j)


def covariance_svd(cross: CrossMatrix) -> CovarianceResult:
    """Covariance via SVD: sigma = trace(D), rotation = U V^T.

    A zero cross matrix has sigma 0 and, by convention, the identity-shaped
    rotation.
    """
    a = cross.entries
    if a.size == 0:
        return CovarianceResult(0.0, np.eye(a.shape[0], a.shape[1]), np.zeros(0))
    if not np.any(a):
        return CovarianceResult(0.0, np.eye(a.shape[0], a.shape[1]), np.zeros(min(a.shape)))
    u, s, v = numerics.svd(a)
    return CovarianceResult(float(s.sum()), u @ v.T, s)


def covariance_newton(
    cross: CrossMatrix,
    tolerance: float = 1e-10,
    max_iter: int = 50,
) -> CovarianceResult:
    """Covariance via the Newton-solved stationarity system (test oracle).

    Rectangular cross matrices are zero-padded to square, which leaves the
    trace over the original block, and hence sigma, unchanged.  The
    singular values are recovered as the eigenvalues of the symmetric part
    of A L^T at the solution.
    """
    a = cross.entries
    n = max(a.shape) if a.size else 0
    if n == 0:
        return CovarianceResult(0.0, np.eye(a.shape[0], a.shape[1]), np.zeros(0))
    padded = np.zeros((n, n))
    padded[: a.shape[0], : a.shape[1]] = a
    rot = numerics.newton_orthogonal_stationarity(padded, tol=tolerance, max_iter=max_iter)
    prod = padded @ rot.T
    evals, _ = numerics.sym_eig((prod + prod.T) / 2.0)
    # PSD up to roundoff at the maximizer; clamp stray -1e-17s
    return CovarianceResult(float(np.trace(prod)), rot, np.maximum(evals, 0.0))


def covariance_matrix(dataset: CategoricalDataset) -> np.ndarray:
    """Symmetric matrix of pairwise covariances; diagonal is the Gini variance.

    Each unordered pair is computed once through the SVD path.
    """
    names = dataset.variable_names()
    embeddings = build_embeddings(dataset)
    n = len(names)
    out = np.zeros((n, n))
    for i in range(n):
        out[i, i] = gini_variance(dataset, names[i])
        for j in range(i + 1, n):
            try:
                sigma = covariance_svd(cross_matrix(dataset, names[i], names[j], embeddings)).sigma
            except NumericalError as exc:
                raise NumericalError(
                    f"covariance failed for pair ({names[i]}, {names[j]}): {exc}",
                    matrix=exc.matrix,
                ) from exc
            out[i, j] = out[j, i] = sigma
    return out


def correlation_matrix(dataset: CategoricalDataset) -> tuple[np.ndarray, np.ndarray]:
    """Correlations rho_ij = sigma_ij / sqrt(sigma_ii sigma_jj) plus a validity mask.

    Returns (values, defined).  Rows and columns of zero-variance variables
    are flagged undefined rather than silently emitted as NaN; defined
    diagonal entries are exactly 1.
    """
    cov = covariance_matrix(dataset)
    var = np.diag(cov).copy()
    ok = var > 0.0
    n = len(var)
    values = np.full((n, n), np.nan)
    defined = np.outer(ok, ok)
    scale = np.sqrt(var, where=ok, out=np.ones_like(var))
    for i in range(n):
        for j in range(n):
            if defined[i, j]:
                values[i, j] = cov[i, j] / (scale[i] * scale[j])
        if ok[i]:
            values[i, i] = 1.0
    return values, defined
