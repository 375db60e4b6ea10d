"""Model/report persistence (JSON) and plain-text ideal export.

Files are deterministic: the same model serializes to the same bytes, and
the model digest is a sha256 over the canonical JSON encoding.  Timings
never enter digests so reruns of identical analyses stay comparable.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from .errors import ModelInconsistencyError
from .linalg import Subspace, check_prime
from .models import CurveModel, SurfaceModel
from .ring import GradedRing

FORMAT_VERSION = 1

PathLike = Union[str, Path]


def _subspace_payload(space: Optional[Subspace]) -> Optional[dict]:
    if space is None:
        return None
    return {
        "ambient_dim": space.ambient_dim,
        "rows": [[int(x) for x in row] for row in space.basis],
    }


def _subspace_from_payload(payload: Optional[dict], prime: int) -> Optional[Subspace]:
    if payload is None:
        return None
    return Subspace.from_rows(
        np.array(payload["rows"], dtype=np.int64).reshape(-1, payload["ambient_dim"]),
        payload["ambient_dim"],
        prime,
    )


def model_to_dict(model: Union[CurveModel, SurfaceModel]) -> dict:
    base: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "genus": model.genus,
        "prime": model.prime,
        "seed": model.seed,
        "quadrics": _subspace_payload(model.quadrics),
        "sample_points": (
            None
            if model.sample_points is None
            else [[int(x) for x in row] for row in model.sample_points]
        ),
        "params": model.params,
    }
    if isinstance(model, CurveModel):
        base["type"] = "curve"
        base["family"] = model.family
        base["surface_quadrics"] = _subspace_payload(model.surface_quadrics)
    else:
        base["type"] = "surface"
        base["kind"] = model.kind
    return base


def model_from_dict(data: dict) -> Union[CurveModel, SurfaceModel]:
    if data.get("format_version") != FORMAT_VERSION:
        raise ModelInconsistencyError(
            f"unsupported format_version {data.get('format_version')!r}"
        )
    prime = check_prime(int(data["prime"]))
    quadrics = _subspace_from_payload(data["quadrics"], prime)
    if quadrics is None:
        raise ModelInconsistencyError("model file has no quadric space")
    pts = data.get("sample_points")
    sample_points = None if pts is None else np.array(pts, dtype=np.int64)
    common = dict(
        genus=int(data["genus"]),
        prime=prime,
        seed=int(data["seed"]),
        quadrics=quadrics,
        sample_points=sample_points,
        params=data.get("params", {}),
    )
    if data.get("type") == "curve":
        return CurveModel(
            family=data["family"],
            surface_quadrics=_subspace_from_payload(
                data.get("surface_quadrics"), prime
            ),
            **common,
        )
    if data.get("type") == "surface":
        return SurfaceModel(kind=data["kind"], **common)
    raise ModelInconsistencyError(f"unknown model type {data.get('type')!r}")


def canonical_json(data: dict) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def model_digest(model: Union[CurveModel, SurfaceModel]) -> str:
    return hashlib.sha256(canonical_json(model_to_dict(model)).encode()).hexdigest()


def save_model(model: Union[CurveModel, SurfaceModel], path: PathLike) -> None:
    Path(path).write_text(canonical_json(model_to_dict(model)) + "\n")


def load_model(path: PathLike) -> Union[CurveModel, SurfaceModel]:
    return model_from_dict(json.loads(Path(path).read_text()))


def save_report(report: dict, path: PathLike) -> None:
    Path(path).write_text(json.dumps(report, sort_keys=True, indent=1) + "\n")


def load_report(path: PathLike) -> dict:
    return json.loads(Path(path).read_text())


def strip_timings(report: dict) -> dict:
    """Copy of a report without its runtime measurements (for comparisons)."""
    return {k: v for k, v in report.items() if k != "timings"}


# -- plain-text polynomial export ---------------------------------------------


def _term_string(coeff: int, exponents, names: list[str]) -> str:
    factors = []
    for var, e in enumerate(exponents):
        if e == 1:
            factors.append(names[var])
        elif e > 1:
            factors.append(f"{names[var]}^{int(e)}")
    if not factors:
        return str(int(coeff))
    if int(coeff) == 1:
        return "*".join(factors)
    return "*".join([str(int(coeff))] + factors)


def polynomial_string(ring: GradedRing, degree: int, coeffs: np.ndarray) -> str:
    names = [f"Z{v + 1}" for v in range(ring.num_vars)]
    terms = [
        _term_string(c, e, names)
        for e, c in zip(ring.exponents(degree), coeffs)
        if c
    ]
    return " + ".join(terms) if terms else "0"


def export_ideal_text(model: Union[CurveModel, SurfaceModel]) -> str:
    """Generators of I_2 as one polynomial per line, with a reparseable header."""
    ring = GradedRing(model.genus, model.prime)
    lines = [f"# prime {model.prime}", f"# nvars {model.genus}"]
    if model.sample_points is not None:
        for row in model.sample_points:
            lines.append("# point " + " ".join(str(int(x)) for x in row))
    for row in model.quadrics.basis:
        lines.append(polynomial_string(ring, 2, row))
    return "\n".join(lines) + "\n"


def parse_ideal_text(text: str) -> tuple[int, int, np.ndarray, Optional[np.ndarray]]:
    """Inverse of export_ideal_text: (prime, nvars, quadric rows, points)."""
    prime = nvars = None
    points: list[list[int]] = []
    polys: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = line[1:].split()
            if fields[:1] == ["prime"]:
                prime = int(fields[1])
            elif fields[:1] == ["nvars"]:
                nvars = int(fields[1])
            elif fields[:1] == ["point"]:
                points.append([int(x) for x in fields[1:]])
            continue
        polys.append(line)
    if prime is None or nvars is None:
        raise ValueError("missing '# prime' or '# nvars' header")
    ring = GradedRing(nvars, prime)
    rows = np.zeros((len(polys), ring.dim(2)), dtype=np.int64)
    for i, poly in enumerate(polys):
        if poly == "0":
            continue
        for term in poly.split(" + "):
            coeff, exps = _parse_term(term, nvars)
            rows[i, ring.index_of(exps)] = (
                rows[i, ring.index_of(exps)] + coeff
            ) % prime
    pts = np.array(points, dtype=np.int64) if points else None
    return prime, nvars, rows, pts


def _parse_term(term: str, nvars: int) -> tuple[int, list[int]]:
    exps = [0] * nvars
    parts = term.split("*")
    try:
        coeff = int(parts[0])
        parts = parts[1:]
    except ValueError:
        coeff = 1  # unit coefficients are omitted on output
    for factor in parts:
        if "^" in factor:
            name, power = factor.split("^")
        else:
            name, power = factor, "1"
        if not name.startswith("Z"):
            raise ValueError(f"unrecognized variable {name!r}")
        var = int(name[1:]) - 1
        if not 0 <= var < nvars:
            raise ValueError(f"variable index out of range in {factor!r}")
        exps[var] += int(power)
    return coeff, exps
