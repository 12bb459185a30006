"""Principal component analysis on concatenated simplex coordinates.

Each instance is represented by the concatenation of its variables'
embedded vertex coordinates; the covariance matrix of those vectors is
the block matrix of pairwise cross matrices.  Its eigendecomposition
yields components whose blocks can be read back in terms of simplex
edge and center vectors, which is what makes them interpretable.
"""

from dataclasses import dataclass

import numpy as np

from . import numerics
from .covariance import build_embeddings, cross_matrix
from .dataset import CategoricalDataset, frequencies
from .errors import DataError
from .simplex import BasisAtom, SimplexEmbedding, basis_atoms, build_simplex


@dataclass(frozen=True)
class LrsvLayout:
    """Block layout of the concatenated coordinate space.

    Variable i occupies ``widths[i]`` = k_i - 1 consecutive coordinates
    starting at ``offsets[i]``; ``dim`` is the total.
    """

    names: list[str]
    categories: list[list[str]]
    offsets: list[int]
    widths: list[int]
    dim: int

    def block(self, i: int) -> slice:
        return slice(self.offsets[i], self.offsets[i] + self.widths[i])


@dataclass(frozen=True)
class PcaModel:
    """Eigendecomposition of the block covariance matrix.

    ``eigenvectors`` holds component m in column m; eigenvalues are sorted
    descending and each eigenvector's largest-magnitude entry is made
    positive so repeated fits are bit-identical.
    """

    mean: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    layout: LrsvLayout

    @property
    def n_components(self) -> int:
        return len(self.eigenvalues)


@dataclass(frozen=True)
class ScoreTable:
    """Per-instance component scores with plot-ready labels."""

    instance_ids: np.ndarray
    weights: np.ndarray
    labels: list[str]
    values: np.ndarray


@dataclass(frozen=True)
class ComponentInterpretation:
    """A component expressed as coefficients on edge/center atoms.

    ``terms`` is sorted by coefficient magnitude, descending;
    ``residual_norm`` is what remains of the eigenvector after placing the
    terms back into their blocks.
    """

    component: int
    terms: list[tuple[float, BasisAtom]]
    residual_norm: float


def make_layout(dataset: CategoricalDataset) -> LrsvLayout:
    names, cats, offsets, widths = [], [], [], []
    dim = 0
    for var in dataset.variables:
        names.append(var.name)
        cats.append(list(var.categories))
        offsets.append(dim)
        widths.append(var.k - 1)
        dim += var.k - 1
    return LrsvLayout(names, cats, offsets, widths, dim)


def lrsv_vector(
    dataset: CategoricalDataset,
    embeddings: dict[str, SimplexEmbedding] | None = None,
    instance: int = 0,
) -> np.ndarray:
    """Concatenated vertex coordinates of one instance."""
    if not 0 <= instance < dataset.n_instances:
        raise DataError(f"instance index {instance} out of range")
    if embeddings is None:
        embeddings = build_embeddings(dataset)
    parts = [embeddings[v.name].vertices[v.codes[instance]] for v in dataset.variables]
    if not parts:
        return np.zeros(0)
    return np.concatenate(parts)


def _lrsv_matrix(dataset: CategoricalDataset, embeddings) -> np.ndarray:
    cols = [embeddings[v.name].vertices[v.codes] for v in dataset.variables]
    return np.concatenate(cols, axis=1) if cols else np.zeros((dataset.n_instances, 0))


def fit(
    dataset: CategoricalDataset,
    embeddings: dict[str, SimplexEmbedding] | None = None,
) -> PcaModel:
    """Eigendecompose the block covariance matrix of the dataset.

    The matrix is assembled blockwise from the pairwise cross matrices, so
    block (i, j) is exactly the cross matrix of variables i and j.
    """
    if embeddings is None:
        embeddings = build_embeddings(dataset)
    layout = make_layout(dataset)
    if layout.dim < 1:
        raise DataError("all variables are single-category; nothing to decompose")
    names = layout.names
    block_cov = np.zeros((layout.dim, layout.dim))
    for i in range(len(names)):
        bi = layout.block(i)
        block_cov[bi, bi] = cross_matrix(dataset, names[i], names[i], embeddings).entries
        for j in range(i + 1, len(names)):
            bj = layout.block(j)
            a_ij = cross_matrix(dataset, names[i], names[j], embeddings).entries
            block_cov[bi, bj] = a_ij
            block_cov[bj, bi] = a_ij.T

    mean_parts = []
    for var in dataset.variables:
        p = np.array([f for _, f in frequencies(dataset, var.name)])
        mean_parts.append(p @ embeddings[var.name].vertices)
    mean = np.concatenate(mean_parts) if mean_parts else np.zeros(0)

    evals, evecs = numerics.sym_eig(block_cov)
    evecs = evecs.copy()
    for m in range(evecs.shape[1]):
        lead = np.argmax(np.abs(evecs[:, m]))
        if evecs[lead, m] < 0:
            evecs[:, m] = -evecs[:, m]
    return PcaModel(mean, evals, evecs, layout)


def _check_dataset_matches(model: PcaModel, dataset: CategoricalDataset) -> None:
    if dataset.variable_names() != model.layout.names or make_layout(dataset).widths != model.layout.widths:
        raise DataError("dataset does not match the fitted model layout")


def scores(model: PcaModel, dataset: CategoricalDataset, n_components: int) -> ScoreTable:
    """Project instances onto the leading components.

    Row a, column m holds (x(a) - mean) . e_m; labels join each instance's
    category values for plot annotation.
    """
    if not 1 <= n_components <= model.n_components:
        raise DataError(f"n_components must be in [1, {model.n_components}]")
    _check_dataset_matches(model, dataset)
    embeddings = build_embeddings(dataset)
    centered = _lrsv_matrix(dataset, embeddings) - model.mean
    values = centered @ model.eigenvectors[:, :n_components]
    return ScoreTable(
        instance_ids=np.arange(dataset.n_instances),
        weights=dataset.weights.copy(),
        labels=dataset.instance_labels(),
        values=values,
    )


def interpret(
    model: PcaModel,
    component: int,
    embeddings: dict[str, SimplexEmbedding] | None = None,
    max_terms: int = 4,
    eps: float = 0.05,
) -> ComponentInterpretation:
    """Expand one component (1-based) over the edge/center atom dictionary.

    Greedy matching pursuit per variable block: repeatedly pick the atom
    with the highest absolute correlation with the residual, subtract its
    projection, and stop once the block residual drops to ``eps`` times
    the block norm or the block has ``max_terms`` distinct atoms.  The
    dictionary is overcomplete, so coefficients are a choice, not a basis
    expansion; re-picking an atom accumulates into its coefficient.
    """
    if not 1 <= component <= model.n_components:
        raise DataError(f"component must be in [1, {model.n_components}]")
    if max_terms < 1:
        raise DataError("max_terms must be >= 1")
    layout = model.layout
    if embeddings is None:
        embeddings = {
            name: build_simplex(w + 1) for name, w in zip(layout.names, layout.widths)
        }
    vector = model.eigenvectors[:, component - 1]
    iter_cap = max(8 * max_terms, 32)

    collected: list[tuple[float, BasisAtom]] = []
    residual_sq = 0.0
    for i, name in enumerate(layout.names):
        block = vector[layout.block(i)]
        block_norm = np.linalg.norm(block)
        if block.size == 0 or block_norm == 0.0:
            continue
        atoms = basis_atoms(embeddings[name], name)
        dictionary = np.stack([atom.vector for atom in atoms])
        norms = np.linalg.norm(dictionary, axis=1)
        threshold = eps * block_norm
        resid = block.copy()
        coefs: dict[int, float] = {}
        for _ in range(iter_cap):
            if np.linalg.norm(resid) <= threshold:
                break
            correlation = np.abs(dictionary @ resid) / norms
            pick = int(np.argmax(correlation))
            if pick not in coefs and len(coefs) >= max_terms:
                break
            c = float(dictionary[pick] @ resid) / float(norms[pick] ** 2)
            coefs[pick] = coefs.get(pick, 0.0) + c
            resid = resid - c * dictionary[pick]
        residual_sq += float(np.dot(resid, resid))
        collected.extend((c, atoms[idx]) for idx, c in coefs.items())

    collected.sort(key=lambda term: -abs(term[0]))
    return ComponentInterpretation(component, collected, float(np.sqrt(residual_sq)))


def scree(model: PcaModel) -> list[tuple[int, float]]:
    """(mode number, eigenvalue) pairs, eigenvalues descending, modes 1-based."""
    return [(m + 1, float(ev)) for m, ev in enumerate(model.eigenvalues)]


def variable_importance(model: PcaModel, n_components: int) -> list[tuple[str, float]]:
    """Rank variables by eigenvalue-weighted energy in the leading components.

    importance_i = sum over the first n components of lambda_m times the
    squared norm of eigenvector m restricted to variable i's block.  Ties
    keep dataset order.
    """
    if not 1 <= n_components <= model.n_components:
        raise DataError(f"n_components must be in [1, {model.n_components}]")
    layout = model.layout
    importance = np.zeros(len(layout.names))
    for m in range(n_components):
        vec = model.eigenvectors[:, m]
        lam = model.eigenvalues[m]
        for i in range(len(layout.names)):
            block = vec[layout.block(i)]
            importance[i] += lam * float(np.dot(block, block))
    ranked = sorted(zip(layout.names, importance), key=lambda item: -item[1])
    return [(name, float(val)) for name, val in ranked]


def refit_subset(
    dataset: CategoricalDataset,
    variables: list[str] | None = None,
    components: tuple[int, int] | None = None,
) -> PcaModel:
    """Refit on a variable subset, or slice a component range of the full model.

    Exactly one of ``variables`` (names, refit on the reduced dataset) and
    ``components`` (1-based inclusive mode range of the full fit; scores on
    the sliced model use only those modes) may be given.
    """
    if (variables is None) == (components is None):
        raise DataError("give exactly one of variables or components")
    if variables is not None:
        if not variables:
            raise DataError("empty variable selection")
        return fit(dataset.select(variables))
    first, last = components
    full = fit(dataset)
    if not 1 <= first <= last <= full.n_components:
        raise DataError(f"component range must satisfy 1 <= first <= last <= {full.n_components}")
    return PcaModel(
        full.mean,
        full.eigenvalues[first - 1 : last],
        full.eigenvectors[:, first - 1 : last],
        full.layout,
    )
