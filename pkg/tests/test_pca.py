import numpy as np
import pytest

from rspca import (
    DataError,
    build_embeddings,
    cross_matrix,
    fit,
    from_columns,
    gini_variance,
    interpret,
    load_contingency,
    lrsv_vector,
    refit_subset,
    scores,
    scree,
    variable_importance,
)
from rspca.pca import make_layout, _lrsv_matrix
from .conftest import FISHER_CSV, permute_table_columns, random_dataset


def binary_pair():
    return from_columns(
        ["u", "v"],
        [["a", "a", "b", "b", "a", "b"], ["x", "y", "x", "y", "y", "x"]],
    )


def test_lrsv_vector_fisher(fisher):
    emb = build_embeddings(fisher)
    vec = lrsv_vector(fisher, emb, 0)  # (blue, fair)
    assert vec.shape == (7,)
    assert np.array_equal(vec[:3], emb["eye"].vertices[0])
    assert np.array_equal(vec[3:], emb["hair"].vertices[0])


def test_lrsv_vector_binary_orientation():
    ds = binary_pair()
    emb = build_embeddings(ds)
    vec = lrsv_vector(ds, emb, 1)  # (a, y) -> (v_a, v_y)
    assert vec.shape == (2,)
    assert abs(abs(vec[0]) - 0.5) <= 1e-15
    assert abs(abs(vec[1]) - 0.5) <= 1e-15
    assert vec[1] == -lrsv_vector(ds, emb, 0)[1]


def test_lrsv_vector_all_single_category():
    ds = from_columns(["A", "B"], [["x", "x"], ["y", "y"]])
    assert lrsv_vector(ds, None, 0).shape == (0,)
    with pytest.raises(DataError):
        fit(ds)


def test_lrsv_vector_bad_instance(fisher):
    with pytest.raises(DataError):
        lrsv_vector(fisher, None, 99)


def test_fit_blocks_equal_cross_matrices(fisher):
    emb = build_embeddings(fisher)
    model = fit(fisher, emb)
    layout = model.layout
    # reassemble the block matrix from the eigendecomposition and compare blocks
    block_cov = model.eigenvectors @ np.diag(model.eigenvalues) @ model.eigenvectors.T
    for i, vi in enumerate(layout.names):
        for j, vj in enumerate(layout.names):
            expected = cross_matrix(fisher, vi, vj, emb).entries
            got = block_cov[layout.block(i), layout.block(j)]
            assert np.all(np.abs(got - expected) <= 1e-12)


def test_fit_trace_conservation(fisher):
    model = fit(fisher)
    total = sum(gini_variance(fisher, n) for n in fisher.variable_names())
    assert abs(model.eigenvalues.sum() - total) <= 1e-8


def test_fit_eigenvalues_sorted_nonnegative(fisher):
    model = fit(fisher)
    assert np.all(np.diff(model.eigenvalues) <= 1e-15)
    assert np.all(model.eigenvalues >= -1e-10)


def test_fit_eigenvectors_orthonormal(fisher):
    model = fit(fisher)
    gram = model.eigenvectors.T @ model.eigenvectors
    assert np.all(np.abs(gram - np.eye(7)) <= 1e-10)


def test_fit_sign_convention(fisher):
    model = fit(fisher)
    for m in range(model.n_components):
        vec = model.eigenvectors[:, m]
        assert vec[np.argmax(np.abs(vec))] > 0


def test_fit_is_deterministic(fisher):
    m1 = fit(fisher)
    m2 = fit(fisher)
    assert m1.eigenvalues.tobytes() == m2.eigenvalues.tobytes()
    assert m1.eigenvectors.tobytes() == m2.eigenvectors.tobytes()


def test_fit_single_balanced_binary_variable():
    ds = from_columns(["A"], [["x", "y"] * 4])
    model = fit(ds)
    assert model.n_components == 1
    assert abs(model.eigenvalues[0] - 0.25) <= 1e-12


def test_independent_balanced_binaries_give_quarter_eigenvalues():
    # product design: all 4 combinations equally often -> block-diagonal covariance
    ds = from_columns(
        ["u", "v"],
        [["a", "a", "b", "b"], ["x", "y", "x", "y"]],
    )
    model = fit(ds)
    assert np.all(np.abs(model.eigenvalues - 0.25) <= 1e-10)


def test_scores_centered_and_variance_matches_eigenvalues(fisher):
    model = fit(fisher)
    table = scores(model, fisher, 7)
    w = table.weights
    total = w.sum()
    for m in range(7):
        col = table.values[:, m]
        mean = float(w @ col) / total
        var = float(w @ (col - mean) ** 2) / total
        assert abs(mean) <= 1e-10
        assert abs(var - model.eigenvalues[m]) <= 1e-8


def test_scores_fisher_has_20_labeled_points(fisher):
    model = fit(fisher)
    table = scores(model, fisher, 2)
    assert len(table.labels) == 20
    assert len(set(table.labels)) == 20
    assert "light-fair" in table.labels


def test_scores_validation(fisher):
    model = fit(fisher)
    with pytest.raises(DataError):
        scores(model, fisher, 0)
    with pytest.raises(DataError):
        scores(model, fisher, 8)
    other = binary_pair()
    with pytest.raises(DataError):
        scores(model, other, 2)


def test_score_isometry(fisher):
    model = fit(fisher)
    table = scores(model, fisher, 7)
    emb = build_embeddings(fisher)
    centered = _lrsv_matrix(fisher, emb) - model.mean
    for a in range(0, 20, 3):
        for b in range(1, 20, 4):
            d_score = np.linalg.norm(table.values[a] - table.values[b])
            d_lrsv = np.linalg.norm(centered[a] - centered[b])
            assert abs(d_score - d_lrsv) <= 1e-9


def test_interpret_single_atom_component():
    ds = from_columns(["A"], [["x", "y"] * 3])
    model = fit(ds)
    result = interpret(model, 1)
    assert len(result.terms) == 1
    coef, atom = result.terms[0]
    assert atom.kind == "edge"
    assert abs(abs(coef) - 1.0) <= 1e-10
    assert result.residual_norm <= 1e-10


def test_interpret_fisher_dominant_atoms(fisher):
    model = fit(fisher)
    pc1 = interpret(model, 1)
    (c1, a1), (c2, a2) = pc1.terms[:2]
    assert a1.variable == "hair" and a1.kind == "edge"
    assert {a1.from_category, a1.to_category} == {0, 2}  # fair, medium
    assert abs(abs(c1) - 0.7640) <= 1e-3
    assert a2.variable == "eye" and a2.kind == "edge"
    assert {a2.from_category, a2.to_category} == {1, 2}  # light, medium
    assert abs(abs(c2) - 0.6322) <= 1e-3

    pc2 = interpret(model, 2)
    (c1, a1), (c2, a2) = pc2.terms[:2]
    assert a1.variable == "hair" and {a1.from_category, a1.to_category} == {2, 3}
    assert abs(abs(c1) - 0.6781) <= 1e-3
    assert a2.variable == "eye" and {a2.from_category, a2.to_category} == {1, 3}
    assert abs(abs(c2) - 0.6421) <= 1e-3


def test_interpret_terms_sorted(fisher):
    model = fit(fisher)
    result = interpret(model, 2)
    mags = [abs(c) for c, _ in result.terms]
    assert mags == sorted(mags, reverse=True)


def test_interpret_reconstruction(fisher):
    model = fit(fisher)
    layout = model.layout
    emb = build_embeddings(fisher)
    for m in range(1, 8):
        result = interpret(model, m, emb)
        recon = np.zeros(layout.dim)
        block_of = {name: layout.block(i) for i, name in enumerate(layout.names)}
        for coef, atom in result.terms:
            recon[block_of[atom.variable]] += coef * atom.vector
        resid = np.linalg.norm(model.eigenvectors[:, m - 1] - recon)
        assert abs(resid - result.residual_norm) <= 1e-12


def test_interpret_residual_monotone_in_max_terms(fisher):
    model = fit(fisher)
    residuals = [interpret(model, 2, max_terms=t).residual_norm for t in (1, 2, 3, 4)]
    for earlier, later in zip(residuals, residuals[1:]):
        assert later <= earlier + 1e-15


def test_interpret_reports_unreached_eps(fisher):
    model = fit(fisher)
    result = interpret(model, 1, max_terms=1, eps=1e-9)
    assert result.residual_norm > 1e-9


def test_interpret_validation(fisher):
    model = fit(fisher)
    with pytest.raises(DataError):
        interpret(model, 0)
    with pytest.raises(DataError):
        interpret(model, 8)
    with pytest.raises(DataError):
        interpret(model, 1, max_terms=0)


def test_scree_fisher(fisher):
    model = fit(fisher)
    pairs = scree(model)
    assert [m for m, _ in pairs] == list(range(1, 8))
    values = [v for _, v in pairs]
    assert values == sorted(values, reverse=True)


def test_scree_knee_with_planted_block():
    # 20 strongly inter-correlated variables against 47 independent ones:
    # exactly the leading 20 modes should stand clear of the noise bulk
    from rspca.synth import SyntheticSpec, generate

    spec = SyntheticSpec(rows=3000, n_vars=67, n_planted=20, classes=21,
                         categories=4, noise=0.05, seed=13)
    ds, _ = generate(spec)
    ev = fit(ds).eigenvalues
    assert ev[19] / ev[20] > 1.8
    assert np.all(ev[:20] > 0.35)
    assert np.all(ev[20:] < 0.19)


def test_variable_importance_single_variable():
    ds = from_columns(["A"], [["x", "y", "z", "x"]])
    model = fit(ds)
    ranked = variable_importance(model, 2)
    assert ranked[0][0] == "A"
    assert abs(ranked[0][1] - model.eigenvalues[:2].sum()) <= 1e-12


def test_variable_importance_constant_variable_scores_zero():
    ds = from_columns(["A", "B"], [["x", "y", "x", "y"], ["k", "k", "k", "k"]])
    model = fit(ds)
    ranked = dict(variable_importance(model, 1))
    assert ranked["B"] == 0.0
    assert ranked["A"] > 0.2


def test_variable_importance_planted_pair():
    rng = np.random.default_rng(99)
    n = 300
    latent = rng.integers(0, 2, size=n)
    cols, names = [], []
    for i in range(2):
        noisy = np.where(rng.random(n) < 0.05, 1 - latent, latent)
        cols.append([f"c{v}" for v in noisy])
        names.append(f"p{i}")
    for i in range(5):
        # low-variance independent columns: heavily skewed binary
        skew = (rng.random(n) < 0.06).astype(int)
        cols.append([f"c{v}" for v in skew])
        names.append(f"n{i}")
    ds = from_columns(names, cols)
    ranked = variable_importance(fit(ds), 2)
    assert {ranked[0][0], ranked[1][0]} == {"p0", "p1"}


def test_refit_subset_all_variables_matches_fit(fisher):
    full = fit(fisher)
    again = refit_subset(fisher, variables=["eye", "hair"])
    assert np.all(np.abs(full.eigenvalues - again.eigenvalues) <= 1e-10)


def test_refit_subset_single_variable_trace(fisher):
    model = refit_subset(fisher, variables=["hair"])
    assert abs(model.eigenvalues.sum() - gini_variance(fisher, "hair")) <= 1e-10


def test_refit_subset_component_range(fisher):
    full = fit(fisher)
    sliced = refit_subset(fisher, components=(2, 4))
    assert np.array_equal(sliced.eigenvalues, full.eigenvalues[1:4])
    table = scores(sliced, fisher, 3)
    expected = scores(full, fisher, 4).values[:, 1:4]
    assert np.all(np.abs(table.values - expected) <= 1e-12)


def test_refit_subset_validation(fisher):
    with pytest.raises(DataError):
        refit_subset(fisher)
    with pytest.raises(DataError):
        refit_subset(fisher, variables=["eye"], components=(1, 2))
    with pytest.raises(DataError):
        refit_subset(fisher, variables=[])
    with pytest.raises(DataError):
        refit_subset(fisher, components=(0, 2))
    with pytest.raises(DataError):
        refit_subset(fisher, components=(3, 2))
    with pytest.raises(DataError):
        refit_subset(fisher, components=(1, 99))


def match_instances(ds_a, ds_b):
    """Index mapping so that ds_b[j] has the same labels as ds_a[i]."""
    labels_b = {label: j for j, label in enumerate(ds_b.instance_labels())}
    return [labels_b[label] for label in ds_a.instance_labels()]


def test_relabel_equivariance(tmp_path):
    base = tmp_path / "base.csv"
    base.write_text(FISHER_CSV, encoding="utf-8")
    ds1 = load_contingency(base, "eye", "hair")
    permuted = tmp_path / "permuted.csv"
    permuted.write_text(permute_table_columns(FISHER_CSV, [3, 0, 4, 1, 2]), encoding="utf-8")
    ds2 = load_contingency(permuted, "eye", "hair")

    m1, m2 = fit(ds1), fit(ds2)
    assert np.all(np.abs(m1.eigenvalues - m2.eigenvalues) <= 1e-9)

    s1 = scores(m1, ds1, 7).values
    s2 = scores(m2, ds2, 7).values[match_instances(ds1, ds2)]
    d1 = np.linalg.norm(s1[:, None, :] - s1[None, :, :], axis=2)
    d2 = np.linalg.norm(s2[:, None, :] - s2[None, :, :], axis=2)
    assert np.all(np.abs(d1 - d2) <= 1e-9)


def test_degenerate_spectrum_eigenvalues_only():
    # two exchangeable balanced binaries: eigenvalues are (1/4 + c, 1/4 - c)
    ds = binary_pair()
    model = fit(ds)
    assert abs(model.eigenvalues.sum() - 0.5) <= 1e-12


@pytest.mark.parametrize("seed", range(4))
def test_random_dataset_model_invariants(seed):
    ds = random_dataset(np.random.default_rng(400 + seed), n_vars=3, max_rows=80)
    layout = make_layout(ds)
    if layout.dim < 1:
        return
    model = fit(ds)
    total = sum(gini_variance(ds, n) for n in ds.variable_names())
    assert abs(model.eigenvalues.sum() - total) <= 1e-8
    assert np.all(model.eigenvalues >= -1e-10)
    gram = model.eigenvectors.T @ model.eigenvectors
    assert np.all(np.abs(gram - np.eye(layout.dim)) <= 1e-10)
