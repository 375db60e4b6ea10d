"""Exact dense linear algebra over a prime field GF(p).

Matrices are numpy int64 arrays whose entries are canonical residues in
[0, p).  The prime is always passed explicitly.  Every operation reduces
mod p after at most one product or one dot product of length < 2**13, so
with p < 2**25 nothing ever exceeds 2**63 and int64 arithmetic is exact.

Row reduction is deterministic: pivots are chosen in the leftmost nonzero
column, ties broken by smallest row index, so identical input bytes give
identical output bytes on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError

DEFAULT_PRIME = 1000003

# Exclusive upper bound for the modulus; see overflow analysis above.
PRIME_BOUND = 2**25

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for every n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    """Validate a field modulus; returns p for chaining."""
    if not isinstance(p, (int, np.integer)):
        raise TypeError(f"prime must be an integer, got {type(p).__name__}")
    p = int(p)
    if p == 2 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    if p >= PRIME_BOUND:
        raise ValueError(f"modulus {p} must be below {PRIME_BOUND} (int64 safety)")
    return p


def inverse_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a nonzero residue (Fermat)."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(a, p - 2, p)


def _as_matrix(mat, p: int) -> np.ndarray:
    a = np.asarray(mat, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D array, got ndim={a.ndim}")
    return a % p


def rref(mat, p: int) -> tuple[int, np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p).

    Returns (rank, reduced, pivot_cols).  ``reduced`` has unit pivots with
    zeros above and below; rows below ``rank`` are zero.  Deterministic
    pivoting: leftmost column first, smallest row index on ties.
    """
    a = _as_matrix(mat, p).copy()
    nrows, ncols = a.shape
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = a[r] * inverse_mod(piv, p) % p
        col = a[:, c]
        rows = np.nonzero(col)[0]
        rows = rows[rows != r]
        if rows.size:
            # rank-1 update; entries stay within int64 (see module docstring)
            a[rows] -= np.outer(col[rows], a[r])
            a[rows] %= p
        pivot_cols.append(c)
        r += 1
    return r, a, pivot_cols


def rank(mat, p: int) -> int:
    return rref(mat, p)[0]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of GF(p)^n in canonical form.

    ``basis`` is the unique reduced-echelon basis (one row per dimension),
    so two Subspace objects represent the same space iff their arrays are
    bit-identical; ``__eq__`` checks exactly that.
    """

    ambient_dim: int
    prime: int
    basis: np.ndarray
    pivot_cols: tuple[int, ...]

    @classmethod
    def from_rows(cls, rows, ambient_dim: int, prime: int) -> "Subspace":
        """Span of the given row vectors (any iterable of length-n rows)."""
        arr = np.asarray(rows, dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, ambient_dim)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.shape[1] != ambient_dim:
            raise DimensionMismatchError(
                f"rows have length {arr.shape[1]}, ambient dimension is {ambient_dim}"
            )
        rk, red, piv = rref(arr, prime)
        basis = red[:rk].copy()
        basis.setflags(write=False)
        return cls(ambient_dim, prime, basis, tuple(piv))

    @classmethod
    def zero(cls, ambient_dim: int, prime: int) -> "Subspace":
        basis = np.zeros((0, ambient_dim), dtype=np.int64)
        basis.setflags(write=False)
        return cls(ambient_dim, prime, basis, ())

    @classmethod
    def full(cls, ambient_dim: int, prime: int) -> "Subspace":
        basis = np.eye(ambient_dim, dtype=np.int64)
        basis.setflags(write=False)
        return cls(ambient_dim, prime, basis, tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check_compatible(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim or self.prime != other.prime:
            raise DimensionMismatchError(
                f"subspaces live in GF({self.prime})^{self.ambient_dim} vs "
                f"GF({other.prime})^{other.ambient_dim}"
            )

    def reduce(self, vec) -> np.ndarray:
        """Normal form of vec modulo this subspace (zero iff contained)."""
        v = np.asarray(vec, dtype=np.int64) % self.prime
        if v.shape[-1] != self.ambient_dim:
            raise DimensionMismatchError(
                f"vector length {v.shape[-1]} != ambient {self.ambient_dim}"
            )
        if self.dim == 0:
            return v
        coeffs = v[..., list(self.pivot_cols)]
        return (v - coeffs @ self.basis) % self.prime

    def contains(self, vec) -> bool:
        return not self.reduce(vec).any()

    def contains_space(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        if other.dim == 0:
            return True
        return not self.reduce(other.basis).any()

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        rows = np.vstack([self.basis, other.basis])
        return Subspace.from_rows(rows, self.ambient_dim, self.prime)

    def complement(self) -> "Subspace":
        """Annihilator under the standard dot product."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim, self.prime)
        return kernel_basis(self.basis, self.prime)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return self.complement().sum(other.complement()).complement()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.prime == other.prime
            and self.basis.shape == other.basis.shape
            and bool(np.array_equal(self.basis, other.basis))
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.prime, self.basis.tobytes()))

    def __repr__(self) -> str:
        return (
            f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, "
            f"p={self.prime})"
        )


def kernel_basis(mat, p: int) -> Subspace:
    """Right kernel {v : mat @ v == 0} as a canonical Subspace."""
    a = _as_matrix(mat, p)
    ncols = a.shape[1]
    rk, red, piv = rref(a, p)
    free = [c for c in range(ncols) if c not in set(piv)]
    vecs = np.zeros((len(free), ncols), dtype=np.int64)
    for row, c in enumerate(free):
        vecs[row, c] = 1
        if rk:
            vecs[row, piv] = (-red[:rk, c]) % p
    return Subspace.from_rows(vecs, ncols, p)


def solve(mat, rhs, p: int) -> np.ndarray | None:
    """One solution of mat @ x = rhs, or None if inconsistent."""
    a = _as_matrix(mat, p)
    b = np.asarray(rhs, dtype=np.int64) % p
    if b.ndim != 1 or b.shape[0] != a.shape[0]:
        raise DimensionMismatchError("rhs length must match row count")
    aug = np.hstack([a, b.reshape(-1, 1)])
    rk, red, piv = rref(aug, p)
    ncols = a.shape[1]
    if ncols in piv:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = red[r, ncols]
    return x
