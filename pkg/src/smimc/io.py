"""JSON file formats for matrix series and decompositions.

Complex grids are stored as separate ``re``/``im`` nested lists; Python's
float repr round-trips doubles exactly, so write -> read is lossless.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .exceptions import ParseError
from .polymat import LaurentMatrix, reexpand
from .smithform import CompactDecomposition

SERIES_FORMAT = "smimc-series"
DECOMPOSITION_FORMAT = "smimc-decomposition"


def parse_complex(text):
    """Parse ``"a+bi"`` style numbers (``i`` or ``j``, either part optional)."""
    s = str(text).strip().replace(" ", "").replace("i", "j")
    if not s:
        raise ParseError("empty complex number")
    try:
        return complex(s)
    except ValueError as exc:
        raise ParseError(f"cannot parse complex number {text!r}") from exc


def format_complex(z):
    z = complex(z)
    return f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}i"


def _grid(A):
    A = np.asarray(A, dtype=complex)
    return {"re": A.real.tolist(), "im": A.imag.tolist()}


def _point(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _read_point(obj):
    if isinstance(obj, dict):
        return complex(float(obj.get("re", 0.0)), float(obj.get("im", 0.0)))
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, str):
        return parse_complex(obj)
    raise ParseError(f"bad point {obj!r}")


def series_to_dict(M, basis="shifted"):
    return {
        "format": SERIES_FORMAT,
        "rows": M.rows,
        "cols": M.cols,
        "point": _point(M.point),
        "lowest": M.lowest,
        "basis": basis,
        "exact": M.exact,
        "coeffs": [_grid(C) for C in M.coeffs],
    }


def series_from_dict(obj):
    """Build a :class:`LaurentMatrix`; monomial-basis input is re-expanded about ``point``."""
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        lowest = int(obj.get("lowest", 0))
        basis = obj.get("basis", "shifted")
        exact = bool(obj.get("exact", True))
        point = _read_point(obj.get("point", 0))
        grids = obj["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed series: {exc}") from exc
    if basis not in ("shifted", "monomial"):
        raise ParseError(f"unknown basis {basis!r}")
    if not grids:
        raise ParseError("coefficient list is empty")
    stack = np.empty((len(grids), rows, cols), dtype=complex)
    for t, g in enumerate(grids):
        try:
            re_ = np.asarray(g["re"], dtype=float)
            im_ = np.asarray(g.get("im", np.zeros_like(re_)), dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"coefficient {t}: {exc}") from exc
        if re_.shape != (rows, cols) or im_.shape != (rows, cols):
            raise ParseError(f"coefficient {t} is {re_.shape}/{im_.shape}, expected {(rows, cols)}")
        stack[t] = re_ + 1j * im_
    if basis == "monomial":
        if lowest < 0 or not exact:
            raise ParseError("monomial basis requires lowest >= 0 and exact == true")
        return reexpand(LaurentMatrix(stack, 0j, lowest, True), point)
    return LaurentMatrix(stack, point, lowest, exact)


def _load_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def _dump_json(obj, path):
    Path(path).write_text(json.dumps(obj, indent=1) + "\n", encoding="utf-8")


def read_series(path):
    return series_from_dict(_load_json(path))


def write_series(M, path, basis="shifted"):
    _dump_json(series_to_dict(M, basis), path)


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    return value


def decomposition_to_dict(D, include_full_N=True):
    return {
        "format": DECOMPOSITION_FORMAT,
        "point": _point(D.point),
        "rows": D.shape[0],
        "cols": D.shape[1],
        "pole_order": D.pole_order,
        "normal_rank": D.normal_rank,
        "sigma": list(D.indices),
        "e": [[s, c] for s, c in D.multiplicities.items()],
        "rho": list(D.rho),
        "stop_order": D.stop_order,
        "permutation": list(D.permutation),
        "Nr": series_to_dict(D.Nr) if D.Nr is not None else None,
        "Mr_hat": series_to_dict(D.Mr_hat) if D.Mr_hat is not None else None,
        "Mr_hat_valid_order": D.Mr_hat.valid_order if D.Mr_hat is not None else None,
        "N_full": series_to_dict(D.N_full) if include_full_N and D.N_full is not None else None,
        "diagnostics": _jsonable(D.diagnostics),
    }


def decomposition_from_dict(obj):
    if obj.get("format") != DECOMPOSITION_FORMAT:
        raise ParseError(f"not a decomposition file (format={obj.get('format')!r})")
    try:
        diag = dict(obj.get("diagnostics") or {})
        if "res_window" in diag and diag["res_window"] is not None:
            diag["res_window"] = tuple(diag["res_window"])
        return CompactDecomposition(
            point=_read_point(obj["point"]),
            normal_rank=int(obj["normal_rank"]),
            pole_order=int(obj["pole_order"]),
            indices=tuple(int(s) for s in obj["sigma"]),
            Nr=series_from_dict(obj["Nr"]) if obj.get("Nr") else None,
            Mr_hat=series_from_dict(obj["Mr_hat"]) if obj.get("Mr_hat") else None,
            N_full=series_from_dict(obj["N_full"]) if obj.get("N_full") else None,
            rho=tuple(int(x) for x in obj.get("rho", ())),
            permutation=tuple(int(x) for x in obj.get("permutation", ())),
            shape=(int(obj["rows"]), int(obj["cols"])),
            diagnostics=diag,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed decomposition: {exc}") from exc


def read_decomposition(path):
    return decomposition_from_dict(_load_json(path))


def write_decomposition(D, path, include_full_N=True):
    _dump_json(decomposition_to_dict(D, include_full_N), path)
