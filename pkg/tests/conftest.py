import numpy as np
import pytest

from rspca import build_embeddings, from_columns, load_contingency

# Caithness eye/hair color table (Fisher 1940); rows = eye, columns = hair.
FISHER_CSV = (
    "eye\\hair,fair,red,medium,dark,black\n"
    "blue,326,38,241,110,3\n"
    "light,688,116,584,188,4\n"
    "medium,343,84,909,412,26\n"
    "dark,98,48,403,681,85\n"
)

FISHER_EYE_MARGINALS = [718, 1580, 1774, 1315]
FISHER_HAIR_MARGINALS = [1455, 286, 2137, 1391, 118]
FISHER_TOTAL = 5387


@pytest.fixture(scope="session")
def fisher_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "fisher.csv"
    path.write_text(FISHER_CSV, encoding="utf-8")
    return path


@pytest.fixture(scope="session")
def fisher(fisher_path):
    return load_contingency(fisher_path, "eye", "hair")


def random_dataset(rng, n_vars=2, max_rows=200, max_categories=5, weighted=True):
    """Small random weighted dataset for property tests."""
    n = int(rng.integers(5, max_rows + 1))
    names = [f"v{i}" for i in range(n_vars)]
    columns = []
    for _ in range(n_vars):
        k = int(rng.integers(1, max_categories + 1))
        columns.append([f"c{c}" for c in rng.integers(0, k, size=n)])
    weights = np.round(rng.uniform(0.0, 3.0, size=n), 3) if weighted else None
    if weights is not None and weights.sum() <= 0:
        weights[0] = 1.0
    return from_columns(names, columns, weights)


def gini_double_sum(dataset, name):
    """Literal pairwise definition: average weighted disagreement over pairs."""
    codes = dataset.variable(name).codes
    w = dataset.weights
    total = w.sum()
    neq = (codes[:, None] != codes[None, :]).astype(float)
    return float(w @ neq @ w) / (2.0 * total * total)


def cross_double_sum(dataset, var_i, var_j, embeddings=None):
    """Literal pairwise cross matrix (outer products of coordinate differences)."""
    if embeddings is None:
        embeddings = build_embeddings(dataset)
    vi = embeddings[var_i].vertices[dataset.variable(var_i).codes]
    vj = embeddings[var_j].vertices[dataset.variable(var_j).codes]
    w = dataset.weights
    total = w.sum()
    di = vi[:, None, :] - vi[None, :, :]
    dj = vj[:, None, :] - vj[None, :, :]
    return np.einsum("a,b,abi,abj->ij", w, w, di, dj) / (2.0 * total * total)


def haar_orthogonal(rng, n, count=1):
    """Stack of Haar-distributed orthogonal matrices."""
    out = np.empty((count, n, n))
    for i in range(count):
        q, r = np.linalg.qr(rng.normal(size=(n, n)))
        out[i] = q * np.sign(np.diag(r))
    return out


def procrustes_correlation(x, y):
    """Pearson r between y and x after the best orthogonal alignment of x to y."""
    u, _, vt = np.linalg.svd(x.T @ y)
    aligned = x @ (u @ vt)
    return float(np.corrcoef(aligned.ravel(), y.ravel())[0, 1])


def permute_table_columns(csv_text, order):
    """Contingency CSV with its value columns (and labels) reordered."""
    lines = csv_text.strip().split("\n")
    header = lines[0].split(",")
    out = [",".join([header[0]] + [header[1 + j] for j in order])]
    for line in lines[1:]:
        cells = line.split(",")
        out.append(",".join([cells[0]] + [cells[1 + j] for j in order]))
    return "\n".join(out) + "\n"
