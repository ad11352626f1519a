"""JSON documents: tensors, decompositions, dimension reports, charts.

All indices in documents are 0-based.  Rank-4 entries are stored flat in
row-major (i, j, k, l) order; floats round-trip bit-exactly through the
shortest-representation formatting used by the json module.
"""
from __future__ import annotations

import json

import numpy as np

from .charts import PolyChart, TripleReport
from .decomp import DecompositionResult
from .errors import LengthMismatch, SchemaError
from .linalg import ScalarProduct, build_scalar_product, standard_scalar_product
from .poly import Poly
from .sampling import DimensionReport


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, no NaN/Infinity, trailing newline."""
    return json.dumps(obj, sort_keys=True, allow_nan=False) + "\n"


def _loads(data):
    if isinstance(data, (bytes, bytearray)):
        data = data.decode("utf-8")
    if isinstance(data, str):
        def _reject(name):
            raise SchemaError("$", f"non-finite constant {name} not allowed")
        try:
            return json.loads(data, parse_constant=_reject)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc}") from exc
    return data


def _require(doc, key, path="$"):
    if not isinstance(doc, dict):
        raise SchemaError(path, "expected an object")
    if key not in doc:
        raise SchemaError(f"{path}.{key}", "missing required field")
    return doc[key]


def _as_int(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, f"expected an integer, got {value!r}")
    return value


def _as_number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, f"expected a number, got {value!r}")
    return float(value)


def parse_tensor(data) -> tuple[np.ndarray, ScalarProduct]:
    """Read a tensor document into (rank-4 array, scalar product).

    A missing "g" defaults to the diagonal form of the declared signature.
    """
    doc = _loads(data)
    n = _as_int(_require(doc, "dim"), "$.dim")
    sig = _require(doc, "signature")
    if not isinstance(sig, list) or len(sig) != 2:
        raise SchemaError("$.signature", "expected [p, q]")
    p = _as_int(sig[0], "$.signature[0]")
    q = _as_int(sig[1], "$.signature[1]")
    if p < 0 or q < 0 or p + q != n:
        raise SchemaError("$.signature", f"signature ({p},{q}) inconsistent with dim {n}")
    flat = _require(doc, "R")
    if not isinstance(flat, list):
        raise SchemaError("$.R", "expected a flat array")
    if len(flat) != n**4:
        raise LengthMismatch("$.R", f"expected {n**4} entries, got {len(flat)}")
    values = [_as_number(v, f"$.R[{i}]") for i, v in enumerate(flat)]
    tensor = np.array(values).reshape(n, n, n, n)
    if "g" in doc:
        gm = doc["g"]
        if (
            not isinstance(gm, list)
            or len(gm) != n
            or any(not isinstance(row, list) or len(row) != n for row in gm)
        ):
            raise SchemaError("$.g", f"expected an {n}x{n} matrix")
        matrix = [[_as_number(v, f"$.g[{i}][{j}]") for j, v in enumerate(row)] for i, row in enumerate(gm)]
        g = build_scalar_product(matrix)
        if g.signature != (p, q):
            raise SchemaError(
                "$.signature", f"declared ({p},{q}) but g has signature {g.signature}"
            )
    else:
        g = standard_scalar_product(p, q)
    return tensor, g


def _is_standard(g: ScalarProduct) -> bool:
    return bool(np.array_equal(g.matrix, standard_scalar_product(*g.signature).matrix))


def tensor_document(tensor, g: ScalarProduct, include_g: bool | None = None) -> dict:
    tensor = np.asarray(tensor, dtype=float)
    doc = {
        "dim": g.dim,
        "signature": list(g.signature),
        "R": tensor.ravel().tolist(),
    }
    if include_g is None:
        include_g = not _is_standard(g)
    if include_g:
        doc["g"] = g.matrix.tolist()
    return doc


def decomposition_document(
    result: DecompositionResult, g: ScalarProduct, include_g: bool | None = None
) -> dict:
    return {
        "mode": result.mode,
        "dim": g.dim,
        "signature": list(g.signature),
        "components": [tensor_document(c, g, include_g) for c in result.components],
        "completeness_residual": result.completeness_residual,
        "orthogonality_matrix": result.orthogonality_matrix.tolist(),
    }


def dimension_document(report: DimensionReport) -> dict:
    gap = report.singular_value_gap
    return {
        "space": report.space,
        "empirical_dim": report.empirical_dim,
        "formula_dim": report.formula_dim,
        "samples_used": report.samples_used,
        "singular_value_gap": None if gap is None or not np.isfinite(gap) else gap,
        "inconclusive": report.inconclusive,
    }


def triple_report_document(rep: TripleReport) -> dict:
    return {
        "point": rep.point.tolist(),
        "R": rep.r.ravel().tolist(),
        "R_star": rep.r_star.ravel().tolist(),
        "R_g": rep.r_g.ravel().tolist(),
        "C": rep.c_op.ravel().tolist(),
        "C_tilde": rep.c_tilde.ravel().tolist(),
        "tchebychev_form": rep.tchebychev_form.tolist(),
        "tchebychev_vector": rep.tchebychev_vector.tolist(),
        "pick_invariant": rep.pick_invariant,
        "tau": rep.tau,
        "kappa": rep.kappa,
        "identity_residuals": dict(rep.identity_residuals),
    }


# -- charts -----------------------------------------------------------------


def _parse_indices(key, arity, n, path):
    parts = key.split(",")
    if len(parts) != arity:
        raise SchemaError(path, f"expected {arity} comma-separated indices")
    try:
        idx = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise SchemaError(path, f"non-integer index in {key!r}") from exc
    if any(i < 0 or i >= n for i in idx):
        raise SchemaError(path, f"index out of range in {key!r} for dim {n}")
    if list(idx) != sorted(idx):
        raise SchemaError(path, f"indices must be sorted (upper-triangular), got {key!r}")
    return idx


def _parse_poly(entry, n, path):
    if not isinstance(entry, dict):
        raise SchemaError(path, "expected a map of exponent keys to coefficients")
    terms = {}
    for ekey, coeff in entry.items():
        parts = ekey.split()
        if len(parts) != n:
            raise SchemaError(f"{path}[{ekey!r}]", f"expected {n} space-separated exponents")
        try:
            exps = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise SchemaError(f"{path}[{ekey!r}]", "non-integer exponent") from exc
        if any(e < 0 for e in exps):
            raise SchemaError(f"{path}[{ekey!r}]", "negative exponent")
        terms[exps] = _as_number(coeff, f"{path}[{ekey!r}]")
    return Poly(n, terms)


def parse_chart(data) -> PolyChart:
    """Read a chart document: symmetric entries stored with sorted indices only."""
    doc = _loads(data)
    n = _as_int(_require(doc, "dim"), "$.dim")
    metric_doc = _require(doc, "metric")
    if not isinstance(metric_doc, dict):
        raise SchemaError("$.metric", "expected an object")
    zero = Poly(n)
    metric = [[zero for _ in range(n)] for _ in range(n)]
    for key, entry in metric_doc.items():
        i, j = _parse_indices(key, 2, n, f"$.metric[{key!r}]")
        p = _parse_poly(entry, n, f"$.metric[{key!r}]")
        metric[i][j] = p
        metric[j][i] = p
    cubic = None
    if "cubic" in doc:
        cubic_doc = doc["cubic"]
        if not isinstance(cubic_doc, dict):
            raise SchemaError("$.cubic", "expected an object")
        cubic = [[[zero for _ in range(n)] for _ in range(n)] for _ in range(n)]
        from itertools import permutations

        for key, entry in cubic_doc.items():
            idx = _parse_indices(key, 3, n, f"$.cubic[{key!r}]")
            p = _parse_poly(entry, n, f"$.cubic[{key!r}]")
            for perm in set(permutations(idx)):
                cubic[perm[0]][perm[1]][perm[2]] = p
    note = doc.get("domain_note", "")
    if not isinstance(note, str):
        raise SchemaError("$.domain_note", "expected a string")
    return PolyChart(n, metric, cubic, domain_note=note)


def _poly_entry(p: Poly) -> dict:
    return {" ".join(str(e) for e in exps): coeff for exps, coeff in sorted(p.terms.items())}


def chart_document(chart: PolyChart) -> dict:
    n = chart.dim
    metric = {}
    for i in range(n):
        for j in range(i, n):
            if not chart.metric[i][j].is_zero():
                metric[f"{i},{j}"] = _poly_entry(chart.metric[i][j])
    doc = {"dim": n, "metric": metric}
    cubic = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                if not chart.cubic[i][j][k].is_zero():
                    cubic[f"{i},{j},{k}"] = _poly_entry(chart.cubic[i][j][k])
    if cubic:
        doc["cubic"] = cubic
    if chart.domain_note:
        doc["domain_note"] = chart.domain_note
    return doc
