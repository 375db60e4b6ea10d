"""Linear syzygies, syzygy-quadric spans, and Koszul cohomology dimensions.

A linear syzygy of a quadric space I_2 is a g-tuple of quadrics
(q_1, ..., q_g) from I_2 with sum Z_v * q_v = 0 in degree 3.  The span of
all quadrics occurring in all syzygies is the space W studied here; the
verdict compares W with I_2 and with a stored surface ideal.

General kappa_{p,q} values come from the usual three-term complex

    wedge^{p+1} V (x) B_{q-1}  ->  wedge^p V (x) B_q  ->  wedge^{p-1} V (x) B_{q+1}

with B_d the degree-d part of the coordinate ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidSyzygyError,
    ModelInconsistencyError,
    SizeLimitError,
    UnsupportedDegreeError,
)
from .linalg import Subspace, kernel_basis, rank
from .models import (
    BIELLIPTIC,
    DELPEZZO,
    FOURGONAL,
    GENUS5,
    VERONESE,
    CurveModel,
)
from .ring import GradedRing

VERDICT_CURVE = "EqualsCurve"
VERDICT_SURFACE = "ProperSurface"
VERDICT_WHOLE = "WholeSpace"

MAX_MATRIX_ENTRIES = 8_000_000


def kappa21_expected(genus: int) -> int:
    """Count of independent linear syzygies for a smooth non-trigonal,
    non-plane-quintic canonical curve: (g-1)(g-3)(g-5)/3."""
    return (genus - 1) * (genus - 3) * (genus - 5) // 3


def syzygy_kernel(ring: GradedRing, quadrics: Subspace) -> Subspace:
    """All linear syzygies, flattened to vectors of length g * dim(I_2).

    Coordinates are variable-major: entry v*m + r is the coefficient of
    basis quadric r in the v-th slot.
    """
    mat = ring.multiplication_matrix(quadrics)
    return kernel_basis(mat.T, ring.prime)


def linear_syzygies(ring: GradedRing, quadrics: Subspace) -> list[np.ndarray]:
    """Canonical basis of syzygies, each reshaped to (g, dim I_2)."""
    ker = syzygy_kernel(ring, quadrics)
    m = quadrics.dim
    return [row.reshape(ring.num_vars, m) for row in ker.basis]


def is_syzygy(ring: GradedRing, quadrics: Subspace, gamma) -> bool:
    """Does sum Z_v * (gamma[v] . basis) vanish identically in degree 3?"""
    arr = _check_gamma(ring, quadrics, gamma)
    mat = ring.multiplication_matrix(quadrics)
    return not (arr.reshape(-1) @ mat % ring.prime).any()


def _check_gamma(ring: GradedRing, quadrics: Subspace, gamma) -> np.ndarray:
    arr = np.asarray(gamma, dtype=np.int64) % ring.prime
    if arr.shape != (ring.num_vars, quadrics.dim):
        raise DimensionMismatchError(
            f"syzygy has shape {arr.shape}, expected "
            f"({ring.num_vars}, {quadrics.dim})"
        )
    return arr


def quadrics_involved(ring: GradedRing, quadrics: Subspace, gamma) -> Subspace:
    """Span of the g quadrics appearing in one syzygy."""
    arr = _check_gamma(ring, quadrics, gamma)
    if not is_syzygy(ring, quadrics, arr):
        raise InvalidSyzygyError("coefficient array is not a linear syzygy")
    rows = arr @ quadrics.basis % ring.prime
    return Subspace.from_rows(rows, quadrics.ambient_dim, ring.prime)


def syzygy_coordinates(quadrics: Subspace, rows: np.ndarray) -> np.ndarray:
    """Express quadric rows in the canonical basis of the given space.

    Valid only when every row lies in the space; rows get shape (g, dim).
    """
    arr = np.asarray(rows, dtype=np.int64) % quadrics.prime
    coords = arr[:, list(quadrics.pivot_cols)]
    back = coords @ quadrics.basis % quadrics.prime
    if not np.array_equal(back, arr):
        raise InvalidSyzygyError("rows do not lie in the given quadric space")
    return coords


@dataclass(frozen=True)
class Syz2Report:
    """Outcome of intersecting all quadrics involved in linear syzygies."""

    kappa21: int
    span: Subspace
    verdict: str
    surface_match: Optional[bool] = None

    @property
    def dim_span(self) -> int:
        return self.span.dim


def syz2_span(
    ring: GradedRing,
    quadrics: Subspace,
    surface: Optional[Subspace] = None,
) -> Syz2Report:
    """Span W of quadrics involved in every linear syzygy, with verdict.

    Running over a kernel basis suffices: quadrics_involved is linear in
    the syzygy slot-by-slot, so any combination's quadrics already lie in
    the span contributed by the basis elements.
    """
    ker = syzygy_kernel(ring, quadrics)
    g, m = ring.num_vars, quadrics.dim
    if ker.dim == 0:
        span = Subspace.zero(quadrics.ambient_dim, ring.prime)
        verdict = VERDICT_WHOLE
    else:
        stacked = ker.basis.reshape(ker.dim * g, m) @ quadrics.basis % ring.prime
        span = Subspace.from_rows(stacked, quadrics.ambient_dim, ring.prime)
        verdict = VERDICT_CURVE if span == quadrics else VERDICT_SURFACE
    match = None
    if surface is not None:
        match = span == surface
    return Syz2Report(kappa21=ker.dim, span=span, verdict=verdict, surface_match=match)


# -- general Koszul cohomology -------------------------------------------------


class _QuotientPiece:
    """Degree-d part of S/I with coordinates on the non-pivot monomials."""

    def __init__(self, ring: GradedRing, quadrics: Optional[Subspace], degree: int):
        self.ring = ring
        self.degree = degree
        amb = ring.dim(degree)
        if degree >= 2 and quadrics is not None and quadrics.dim > 0:
            ideal = ring.ideal_piece(quadrics, degree)
        else:
            ideal = Subspace.zero(amb, ring.prime)
        self.ideal = ideal
        pivots = set(ideal.pivot_cols)
        self.free = np.array(
            [c for c in range(amb) if c not in pivots], dtype=np.int64
        )
        self.dim = len(self.free)

    def reduce_rows(self, rows: np.ndarray) -> np.ndarray:
        p = self.ring.prime
        arr = rows % p
        if self.ideal.dim:
            arr = (arr - arr[:, list(self.ideal.pivot_cols)] @ self.ideal.basis) % p
        return arr[:, self.free]


def _action_matrices(
    ring: GradedRing, lower: _QuotientPiece, upper: _QuotientPiece
) -> list[np.ndarray]:
    """For each variable v, the (lower.dim, upper.dim) matrix of f -> Z_v f."""
    table = ring.product_table(1, lower.degree)
    out = []
    amb_up = ring.dim(lower.degree + 1)
    for v in range(ring.num_vars):
        elem = np.zeros((lower.dim, amb_up), dtype=np.int64)
        elem[np.arange(lower.dim), table[v, lower.free]] = 1
        out.append(upper.reduce_rows(elem))
    return out


def koszul_dimension(
    ring: GradedRing,
    quadrics: Subspace,
    p_idx: int,
    q_idx: int,
    max_entries: int = MAX_MATRIX_ENTRIES,
) -> int:
    """dim of the middle cohomology at (p, q) for the algebra S/(quadrics).

    Supports q in 0..3 (the incoming map at q = 3 needs the degree-4 part
    of the ideal, the highest this package expands).  Raises SizeLimitError
    before building any matrix with more than max_entries entries.
    """
    g = ring.num_vars
    if not 0 <= q_idx <= 3:
        raise UnsupportedDegreeError(
            f"column degree must be in 0..3, got {q_idx}"
        )
    if p_idx < 0 or p_idx > g:
        return 0
    pieces: dict[int, _QuotientPiece] = {}

    def piece(d: int) -> _QuotientPiece:
        if d not in pieces:
            pieces[d] = _QuotientPiece(ring, quadrics, d)
        return pieces[d]

    dom_rows = comb(g, p_idx) * piece(q_idx).dim
    if dom_rows == 0:
        return 0
    in_rows = comb(g, p_idx + 1) * piece(q_idx - 1).dim if q_idx >= 1 else 0
    out_cols = comb(g, p_idx - 1) * piece(q_idx + 1).dim if p_idx >= 1 else 0
    for rows_, cols_ in ((in_rows, dom_rows), (dom_rows, out_cols)):
        if rows_ * cols_ > max_entries:
            raise SizeLimitError(
                f"koszul matrix would have {rows_ * cols_} entries "
                f"(limit {max_entries})"
            )
    # outgoing differential: wedge^p (x) B_q  ->  wedge^{p-1} (x) B_{q+1}
    if p_idx == 0:
        ker_dim = dom_rows
    else:
        out_mat = _differential(ring, piece, p_idx, q_idx)
        ker_dim = dom_rows - rank(out_mat, ring.prime)
    # incoming differential: wedge^{p+1} (x) B_{q-1}  ->  wedge^p (x) B_q
    if q_idx == 0 or p_idx + 1 > g or piece(q_idx - 1).dim == 0:
        in_rank = 0
    else:
        in_mat = _differential(ring, piece, p_idx + 1, q_idx - 1)
        in_rank = rank(in_mat, ring.prime)
    return ker_dim - in_rank


def _differential(ring, piece, p_idx: int, q_idx: int) -> np.ndarray:
    """Matrix of the Koszul map out of wedge^p V (x) B_q, rows = domain."""
    g = ring.num_vars
    lower, upper = piece(q_idx), piece(q_idx + 1)
    acts = _action_matrices(ring, lower, upper)
    dom_sets = list(combinations(range(g), p_idx))
    cod_sets = {T: i for i, T in enumerate(combinations(range(g), p_idx - 1))}
    mat = np.zeros((len(dom_sets) * lower.dim, len(cod_sets) * upper.dim), dtype=np.int64)
    for i, T in enumerate(dom_sets):
        for s, v in enumerate(T):
            rest = T[:s] + T[s + 1 :]
            j = cod_sets[rest]
            block = acts[v] if s % 2 == 0 else (-acts[v]) % ring.prime
            rows = slice(i * lower.dim, (i + 1) * lower.dim)
            cols = slice(j * upper.dim, (j + 1) * upper.dim)
            mat[rows, cols] = (mat[rows, cols] + block) % ring.prime
    return mat


@dataclass
class BettiTable:
    """kappa_{p,q} grid; entries[q][p], with -1 marking skipped cells."""

    genus: int
    entries: np.ndarray
    truncated: bool = False

    def value(self, p_idx: int, q_idx: int) -> int:
        return int(self.entries[q_idx, p_idx])


def betti_table(
    ring: GradedRing,
    quadrics: Subspace,
    p_max: Optional[int] = None,
    expected_genus: Optional[int] = None,
    max_entries: int = MAX_MATRIX_ENTRIES,
) -> BettiTable:
    """Grid of kappa_{p,q} for q = 0..3 and p = 0..p_max.

    When expected_genus is given, the quotient-ring dimensions are first
    checked against the canonical-curve values dim B_q = (2q-1)(g-1); a
    mismatch means the quadrics do not cut a canonical curve and raises
    ModelInconsistencyError.
    """
    g = ring.num_vars
    if p_max is None:
        p_max = g - 2
    if expected_genus is not None:
        for d in (2, 3, 4):
            got = ring.dim(d) - ring.ideal_piece(quadrics, d).dim
            want = (2 * d - 1) * (expected_genus - 1)
            if got != want:
                raise ModelInconsistencyError(
                    f"degree-{d} quotient has dimension {got}, canonical "
                    f"genus-{expected_genus} needs {want}"
                )
    entries = np.full((4, p_max + 1), -1, dtype=np.int64)
    truncated = False
    for q_idx in range(4):
        for p_idx in range(p_max + 1):
            try:
                entries[q_idx, p_idx] = koszul_dimension(
                    ring, quadrics, p_idx, q_idx, max_entries=max_entries
                )
            except SizeLimitError:
                truncated = True
    return BettiTable(genus=g, entries=entries, truncated=truncated)


# -- theorem-level classification ---------------------------------------------

_SURFACE_FAMILIES = (BIELLIPTIC, DELPEZZO, VERONESE)


@dataclass(frozen=True)
class ClassificationRecord:
    """One curve's syzygy-span verdict against its predicted outcome."""

    family: str
    genus: int
    seed: int
    kappa11: int
    kappa21: int
    dim_span: int
    verdict: str
    expected_verdict: str
    surface_match: Optional[bool]
    passed: bool


def expected_verdict(model: CurveModel) -> str:
    if model.family == GENUS5:
        return VERDICT_WHOLE
    if model.family in _SURFACE_FAMILIES:
        return VERDICT_SURFACE
    if model.family == FOURGONAL:
        a, b = int(model.params["a"]), int(model.params["b"])
        return VERDICT_CURVE if min(a, b) >= 1 else VERDICT_SURFACE
    raise ModelInconsistencyError(f"unknown family {model.family!r}")


def classify_theorem(model: CurveModel) -> ClassificationRecord:
    """Compute the syzygy span of a stored curve and compare with the
    verdict its construction predicts.

    For surface-type verdicts the span must also coincide with the stored
    surface ideal and have the dimension of a degree-(g-1) surface ideal,
    binom(g-2, 2) - 1.
    """
    ring = GradedRing(model.genus, model.prime)
    report = syz2_span(ring, model.quadrics, surface=model.surface_quadrics)
    want = expected_verdict(model)
    ok = report.verdict == want
    if want == VERDICT_SURFACE and ok:
        ok = report.dim_span == comb(model.genus - 2, 2) - 1
        if model.surface_quadrics is not None:
            ok = ok and bool(report.surface_match)
    return ClassificationRecord(
        family=model.family,
        genus=model.genus,
        seed=model.seed,
        kappa11=model.quadrics.dim,
        kappa21=report.kappa21,
        dim_span=report.dim_span,
        verdict=report.verdict,
        expected_verdict=want,
        surface_match=report.surface_match,
        passed=ok,
    )
