"""Deterministic serialization of matrices, models, scores, and reports.

Numbers are emitted with 12 significant digits; JSON payloads round their
floats to the same precision first, so the CSV and JSON forms of one
matrix always agree digit for digit.
"""

import json

import numpy as np

from .pca import ComponentInterpretation, PcaModel, ScoreTable


def fmt(x: float) -> str:
    """12-significant-digit decimal without trailing noise; -0 normalizes to 0."""
    x = float(x)
    if x == 0.0:
        x = 0.0
    return f"{x:.12g}"


def round12(x: float) -> float:
    """The double nearest the 12-significant-digit decimal of x."""
    return float(fmt(x))


def _jsonify(obj):
    if isinstance(obj, float):
        return round12(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    return obj


def to_json(obj) -> str:
    return json.dumps(_jsonify(obj), indent=2) + "\n"


def matrix_csv(names: list[str], matrix: np.ndarray, defined: np.ndarray | None = None) -> str:
    """Square matrix as CSV with a variable-name header row and column.

    Undefined entries (per the mask) are left empty.
    """
    lines = ["," + ",".join(names)]
    for i, name in enumerate(names):
        cells = []
        for j in range(len(names)):
            if defined is not None and not defined[i, j]:
                cells.append("")
            else:
                cells.append(fmt(matrix[i, j]))
        lines.append(name + "," + ",".join(cells))
    return "\n".join(lines) + "\n"


def matrix_json(names: list[str], matrix: np.ndarray, defined: np.ndarray | None = None) -> str:
    """Same matrix as {"variables": [...], "matrix": [[...]]}; undefined -> null."""
    rows = []
    for i in range(len(names)):
        row = []
        for j in range(len(names)):
            if defined is not None and not defined[i, j]:
                row.append(None)
            else:
                row.append(float(matrix[i, j]))
        rows.append(row)
    return to_json({"variables": names, "matrix": rows})


def scores_csv(table: ScoreTable) -> str:
    n_comp = table.values.shape[1]
    header = "instance_id,weight,label," + ",".join(f"pc{m + 1}" for m in range(n_comp))
    lines = [header]
    for i in range(len(table.instance_ids)):
        cells = [str(int(table.instance_ids[i])), fmt(table.weights[i]), table.labels[i]]
        cells.extend(fmt(v) for v in table.values[i])
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def model_json(model: PcaModel) -> str:
    layout = model.layout
    return to_json(
        {
            "variables": [
                {"name": name, "categories": cats}
                for name, cats in zip(layout.names, layout.categories)
            ],
            "layout": [
                {"variable": name, "offset": off, "width": width}
                for name, off, width in zip(layout.names, layout.offsets, layout.widths)
            ],
            "eigenvalues": [float(v) for v in model.eigenvalues],
            "eigenvectors": [
                [float(v) for v in model.eigenvectors[:, m]]
                for m in range(model.n_components)
            ],
            "mean": [float(v) for v in model.mean],
        }
    )


def atom_name(atom, categories: dict[str, list[str]], flip: bool = False) -> str:
    """Human-readable atom name, e.g. d[eye](medium->light) or c[hair](fair)."""
    cats = categories[atom.variable]
    if atom.kind == "edge":
        a, b = atom.from_category, atom.to_category
        if flip:
            a, b = b, a
        return f"d[{atom.variable}]({cats[a]}->{cats[b]})"
    return f"c[{atom.variable}]({cats[atom.to_category]})"


def interpretation_text(
    interp: ComponentInterpretation,
    model: PcaModel,
    total_variance: float,
) -> str:
    """Paper-style signed expansion of one component.

    Edge atoms are printed oriented so their coefficient is positive (the
    stored orientation is low index to high; flipping it flips the sign).
    """
    cats = dict(zip(model.layout.names, model.layout.categories))
    lam = float(model.eigenvalues[interp.component - 1])
    share = 100.0 * lam / total_variance if total_variance > 0 else 0.0
    lines = [f"component {interp.component} (eigenvalue {fmt(lam)}, {share:.1f}% of variance)"]
    for coef, atom in interp.terms:
        flip = atom.kind == "edge" and coef < 0
        shown = -coef if flip else coef
        lines.append(f"  {shown:+.4f} {atom_name(atom, cats, flip=flip)}")
    lines.append(f"  residual norm {fmt(interp.residual_norm)}")
    return "\n".join(lines) + "\n"


def interpretation_json_obj(interp: ComponentInterpretation, model: PcaModel) -> dict:
    cats = dict(zip(model.layout.names, model.layout.categories))
    terms = []
    for coef, atom in interp.terms:
        terms.append(
            {
                "coefficient": float(coef),
                "kind": atom.kind,
                "variable": atom.variable,
                "from": cats[atom.variable][atom.from_category],
                "to": cats[atom.variable][atom.to_category],
                "name": atom_name(atom, cats),
            }
        )
    return {
        "component": interp.component,
        "eigenvalue": float(model.eigenvalues[interp.component - 1]),
        "terms": terms,
        "residual_norm": float(interp.residual_norm),
    }
