"""Graded pieces of the polynomial ring GF(p)[Z_1..Z_g].

Coefficient vectors are indexed by a fixed monomial order shared by every
consumer (serialization included): graded reverse lexicographic with
Z_1 > Z_2 > ... > Z_g.  Within one degree, exponent vector a precedes b
iff the last nonzero entry of a - b is negative; equivalently the basis
is sorted by reversed exponent tuple.  For g = 3, degree 2 this gives

    Z1^2, Z1*Z2, Z2^2, Z1*Z3, Z2*Z3, Z3^2.

All product bookkeeping goes through cached index tables, so repeated
multiplications are fancy-indexed numpy scatters rather than dict walks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import DimensionMismatchError, UnsupportedDegreeError
from .linalg import DEFAULT_PRIME, Subspace, check_prime


@dataclass(frozen=True)
class GradedVector:
    """Homogeneous polynomial as a dense coefficient vector."""

    degree: int
    coeffs: np.ndarray

    def is_zero(self) -> bool:
        return not self.coeffs.any()


class GradedRing:
    """Monomial indexing and multiplication for one fixed (g, p)."""

    def __init__(self, num_vars: int, prime: int = DEFAULT_PRIME):
        if num_vars < 1:
            raise ValueError(f"need at least one variable, got {num_vars}")
        self.num_vars = int(num_vars)
        self.prime = check_prime(prime)
        self._exponents: dict[int, np.ndarray] = {}
        self._index: dict[int, dict[tuple[int, ...], int]] = {}
        self._tables: dict[tuple[int, int], np.ndarray] = {}

    # -- monomial bookkeeping -------------------------------------------------

    def dim(self, degree: int) -> int:
        """Dimension of the degree-d piece, C(g+d-1, d)."""
        if degree < 0:
            raise UnsupportedDegreeError(f"negative degree {degree}")
        return comb(self.num_vars + degree - 1, degree)

    def exponents(self, degree: int) -> np.ndarray:
        """(dim, g) array of exponent vectors in the fixed order."""
        if degree not in self._exponents:
            g = self.num_vars
            exps = []
            for combo in itertools.combinations_with_replacement(range(g), degree):
                e = [0] * g
                for v in combo:
                    e[v] += 1
                exps.append(tuple(e))
            exps.sort(key=lambda e: e[::-1])
            arr = np.array(exps, dtype=np.int64).reshape(len(exps), g)
            arr.setflags(write=False)
            self._exponents[degree] = arr
            self._index[degree] = {e: i for i, e in enumerate(exps)}
        return self._exponents[degree]

    def index_of(self, exponent) -> int:
        e = tuple(int(x) for x in exponent)
        d = sum(e)
        self.exponents(d)
        return self._index[d][e]

    def monomial(self, exponent) -> GradedVector:
        e = tuple(int(x) for x in exponent)
        d = sum(e)
        coeffs = np.zeros(self.dim(d), dtype=np.int64)
        coeffs[self.index_of(e)] = 1
        return GradedVector(d, coeffs)

    def variable(self, i: int) -> GradedVector:
        """The linear form Z_{i+1} (0-based index)."""
        e = [0] * self.num_vars
        e[i] = 1
        return self.monomial(e)

    def vector(self, degree: int, coeffs) -> GradedVector:
        arr = np.asarray(coeffs, dtype=np.int64) % self.prime
        if arr.shape != (self.dim(degree),):
            raise DimensionMismatchError(
                f"degree-{degree} piece has dimension {self.dim(degree)}, "
                f"got shape {arr.shape}"
            )
        return GradedVector(degree, arr)

    def zero(self, degree: int) -> GradedVector:
        return GradedVector(degree, np.zeros(self.dim(degree), dtype=np.int64))

    def product_table(self, d1: int, d2: int) -> np.ndarray:
        """table[i, j] = index of (monomial_i(d1) * monomial_j(d2)) in degree d1+d2."""
        key = (d1, d2)
        if key not in self._tables:
            e1 = self.exponents(d1)
            e2 = self.exponents(d2)
            self.exponents(d1 + d2)
            idx = self._index[d1 + d2]
            table = np.empty((len(e1), len(e2)), dtype=np.int64)
            for i, a in enumerate(e1):
                for j, b in enumerate(e2):
                    table[i, j] = idx[tuple(int(x) for x in a + b)]
            table.setflags(write=False)
            self._tables[key] = table
        return self._tables[key]

    # -- arithmetic -----------------------------------------------------------

    def multiply(self, f: GradedVector, h: GradedVector) -> GradedVector:
        p = self.prime
        table = self.product_table(f.degree, h.degree)
        out = np.zeros(self.dim(f.degree + h.degree), dtype=np.int64)
        for i in np.nonzero(f.coeffs)[0]:
            cols = table[i]
            out[cols] = (out[cols] + int(f.coeffs[i]) * h.coeffs) % p
        return GradedVector(f.degree + h.degree, out)

    def evaluate(self, f: GradedVector, points) -> np.ndarray:
        """Values of f at each point (rows of length g)."""
        vals = self.evaluate_monomials(f.degree, points)
        # dot length = dim(degree); fine for the supported prime bound
        return vals @ f.coeffs % self.prime

    def evaluate_monomials(self, degree: int, points) -> np.ndarray:
        """(npoints, dim) matrix of monomial values at the given points."""
        p = self.prime
        pts = np.asarray(points, dtype=np.int64) % p
        if pts.ndim == 1:
            pts = pts.reshape(1, -1)
        if pts.shape[1] != self.num_vars:
            raise DimensionMismatchError(
                f"points have {pts.shape[1]} coordinates, expected {self.num_vars}"
            )
        # powers[e][:, v] = (v-th coordinate) ** e
        powers = [np.ones_like(pts)]
        for _ in range(degree):
            powers.append(powers[-1] * pts % p)
        exps = self.exponents(degree)
        out = np.empty((pts.shape[0], len(exps)), dtype=np.int64)
        for m, e in enumerate(exps):
            acc = np.ones(pts.shape[0], dtype=np.int64)
            for v in np.nonzero(e)[0]:
                acc = acc * powers[int(e[v])][:, v] % p
            out[:, m] = acc
        return out

    # -- ideal pieces ---------------------------------------------------------

    def multiplication_matrix(self, quadrics: Subspace) -> np.ndarray:
        """Matrix of V (x) I_2 -> S^3, rows in variable-major order.

        Row v*m + j holds the coefficient vector of Z_{v+1} * Q_j where
        Q_0..Q_{m-1} is the canonical basis of ``quadrics``.
        """
        self._check_quadrics(quadrics)
        g, m = self.num_vars, quadrics.dim
        table = self.product_table(1, 2)
        mat = np.zeros((g * m, self.dim(3)), dtype=np.int64)
        for v in range(g):
            mat[v * m : (v + 1) * m, table[v]] = quadrics.basis
        return mat

    def ideal_piece(self, quadrics: Subspace, degree: int) -> Subspace:
        """Degree-d piece of the ideal generated by the given quadrics (2 <= d <= 4)."""
        self._check_quadrics(quadrics)
        if degree == 2:
            return quadrics
        if degree not in (3, 4):
            raise UnsupportedDegreeError(
                f"ideal pieces are materialized for degrees 2..4 only, got {degree}"
            )
        m = quadrics.dim
        dmon = self.dim(degree - 2)
        table = self.product_table(degree - 2, 2)
        rows = np.zeros((dmon * m, self.dim(degree)), dtype=np.int64)
        for mi in range(dmon):
            rows[mi * m : (mi + 1) * m, table[mi]] = quadrics.basis
        return Subspace.from_rows(rows, self.dim(degree), self.prime)

    def _check_quadrics(self, quadrics: Subspace) -> None:
        if quadrics.prime != self.prime or quadrics.ambient_dim != self.dim(2):
            raise DimensionMismatchError(
                f"expected quadrics in GF({self.prime})^{self.dim(2)}, got "
                f"GF({quadrics.prime})^{quadrics.ambient_dim}"
            )
