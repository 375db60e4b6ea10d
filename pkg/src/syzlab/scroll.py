"""Three-dimensional rational normal scrolls and 4-gonal canonical curves.

A frame (k1, k2, k3) with 0 <= k1 <= k2 <= k3 and k1+k2+k3 = g-3 describes
the scroll X swept out by the planes spanned by three rational normal
curves; parametrically

    Z_{var(i, a)} = x_i * s^a * t^(k_i - a),      0 <= a <= k_i,

where (s:t) is the base coordinate and (x1:x2:x3) the fibre coordinate.
Ambient variables are grouped block by block, each block listing its
s-powers in descending order, so block i occupies the k_i + 1 consecutive
variables starting at offset_i and the two rows of the determinantal
matrix are simply (block shifted by 0) over (block shifted by 1).

Sections of 2H - lambda*F are stored per variable pair (i, j), i <= j, as
dense binary-form coefficient arrays indexed by ascending s-degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import (
    DegenerateScrollError,
    DimensionMismatchError,
    EmptyLinearSystemError,
    GenericityExhaustedError,
    ModelInconsistencyError,
    RollingFactorsInputError,
    SampleExhaustedError,
    TwistedSectionError,
)
from .gfpoly import pmul, roots, sqrt_mod, trim
from .linalg import (
    DEFAULT_PRIME,
    Subspace,
    check_prime,
    inverse_mod,
    kernel_basis,
    rank,
)
from .models import FOURGONAL, CurveModel
from .ring import GradedRing, GradedVector

# fixed enumeration of unordered ruling pairs (i <= j)
PAIRS: tuple[tuple[int, int], ...] = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))

# unordered ruling triples for cubic sections, same enumeration style
TRIPLES: tuple[tuple[int, int, int], ...] = tuple(
    itertools.combinations_with_replacement(range(3), 3)
)


@dataclass(frozen=True)
class ScrollFrame:
    """Splitting type of the scroll; validates on construction."""

    k: tuple[int, int, int]

    def __post_init__(self) -> None:
        k = tuple(int(x) for x in self.k)
        object.__setattr__(self, "k", k)
        if len(k) != 3 or any(x < 0 for x in k):
            raise ValueError(f"frame must be three non-negative integers, got {k}")
        if not (k[0] <= k[1] <= k[2]):
            raise ValueError(f"frame must be sorted ascending, got {k}")
        if k[1] == 0:
            raise DegenerateScrollError(
                f"frame {k} has fewer than two nonzero blocks; no 2-row matrix exists"
            )

    @classmethod
    def balanced(cls, genus: int) -> "ScrollFrame":
        """The most balanced frame for the given genus."""
        if genus < 6:
            raise ValueError(f"scroll frames need genus >= 6, got {genus}")
        q, r = divmod(genus - 3, 3)
        ks = sorted(q + (1 if i < r else 0) for i in range(3))
        return cls(tuple(ks))

    @classmethod
    def hosting(cls, genus: int, twist: int) -> "ScrollFrame":
        """Most balanced frame still carrying sections of 2H - twist*F.

        Such sections need a block pair with k_i + k_j >= twist, so degree
        is shifted from the smallest block to the largest until the two top
        blocks clear the bound.
        """
        k1, k2, k3 = cls.balanced(genus).k
        while k2 + k3 < twist and k1 > 0:
            k1, k2, k3 = sorted((k1 - 1, k2, k3 + 1))
        if k2 + k3 < twist:
            raise EmptyLinearSystemError(
                f"no genus-{genus} frame hosts sections of 2H - {twist}F"
            )
        return cls((k1, k2, k3))

    @property
    def genus(self) -> int:
        return sum(self.k) + 3

    @property
    def num_vars(self) -> int:
        return self.genus

    @property
    def offsets(self) -> tuple[int, int, int]:
        k1, k2, _ = self.k
        return (0, k1 + 1, k1 + k2 + 2)

    def var_index(self, ruling: int, s_power: int) -> int:
        """0-based ambient index of x_ruling * s^s_power * t^(k-s_power)."""
        k = self.k[ruling]
        if not 0 <= s_power <= k:
            raise ValueError(f"s-power {s_power} outside [0, {k}] for ruling {ruling}")
        return self.offsets[ruling] + (k - s_power)

    def ruling_of(self, var: int) -> tuple[int, int]:
        """Inverse of var_index: (ruling, s_power) for an ambient variable."""
        offs = self.offsets
        for i in (2, 1, 0):
            if var >= offs[i]:
                return i, self.k[i] - (var - offs[i])
        raise ValueError(f"variable index {var} out of range")

    def columns(self) -> list[tuple[int, int]]:
        """(top, bottom) ambient index pairs of the determinantal matrix."""
        cols = []
        for i in range(3):
            off = self.offsets[i]
            for c in range(self.k[i]):
                cols.append((off + c, off + c + 1))
        return cols


def scroll_matrix(frame: ScrollFrame) -> np.ndarray:
    """2 x (g-3) array of 0-based ambient variable indices."""
    cols = frame.columns()
    return np.array([[y for y, _ in cols], [w for _, w in cols]], dtype=np.int64)


def scroll_minors(frame: ScrollFrame, ring: GradedRing) -> Subspace:
    """Span of the 2x2 minors Y_j W_k - Y_k W_j; dimension C(g-3, 2)."""
    _check_ring(frame, ring)
    cols = frame.columns()
    rows = []
    for (y1, w1), (y2, w2) in itertools.combinations(cols, 2):
        vec = np.zeros(ring.dim(2), dtype=np.int64)
        vec[ring.index_of(_pair_exponent(ring.num_vars, y1, w2))] += 1
        vec[ring.index_of(_pair_exponent(ring.num_vars, y2, w1))] -= 1
        rows.append(vec % ring.prime)
    if not rows:
        return Subspace.zero(ring.dim(2), ring.prime)
    return Subspace.from_rows(np.array(rows), ring.dim(2), ring.prime)


def _pair_exponent(g: int, u: int, v: int) -> list[int]:
    e = [0] * g
    e[u] += 1
    e[v] += 1
    return e


def _check_ring(frame: ScrollFrame, ring: GradedRing) -> None:
    if ring.num_vars != frame.num_vars:
        raise DimensionMismatchError(
            f"frame needs {frame.num_vars} variables, ring has {ring.num_vars}"
        )


# -- sections of 2H - lambda*F ------------------------------------------------


@dataclass(frozen=True)
class Section2H:
    """Section of 2H - twist*F: one binary form per ruling pair.

    blocks[n] collects the coefficients of x_i x_j s^alpha t^(deg-alpha)
    for (i, j) = PAIRS[n], indexed by ascending s-degree alpha; the block
    is empty when k_i + k_j < twist.
    """

    frame: ScrollFrame
    twist: int
    blocks: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.blocks) != len(PAIRS):
            raise ValueError("a section needs one block per ruling pair")
        for (i, j), block in zip(PAIRS, self.blocks):
            want = max(0, self.frame.k[i] + self.frame.k[j] - self.twist + 1)
            if len(block) != want:
                raise DimensionMismatchError(
                    f"block {(i, j)} must hold {want} coefficients, got {len(block)}"
                )

    def is_zero(self) -> bool:
        return not any(b.any() for b in self.blocks)


def block_length(frame: ScrollFrame, i: int, j: int, twist: int) -> int:
    return max(0, frame.k[i] + frame.k[j] - twist + 1)


def section_dims(frame: ScrollFrame, twist: int) -> list[int]:
    return [block_length(frame, i, j, twist) for i, j in PAIRS]


def section_dim(frame: ScrollFrame, twist: int) -> int:
    """h^0 of 2H - twist*F; equals 4g-6 at twist 0."""
    if twist < 0:
        raise ValueError(f"twist must be non-negative, got {twist}")
    return sum(section_dims(frame, twist))


def section_space(frame: ScrollFrame, twist: int) -> list[Section2H]:
    """Monomial basis x_i x_j s^alpha t^(deg-alpha), pair-major, alpha ascending."""
    if twist < 0:
        raise ValueError(f"twist must be non-negative, got {twist}")
    dims = section_dims(frame, twist)
    basis = []
    for n, length in enumerate(dims):
        for alpha in range(length):
            blocks = [np.zeros(d, dtype=np.int64) for d in dims]
            blocks[n][alpha] = 1
            basis.append(Section2H(frame, twist, tuple(b for b in blocks)))
    return basis


def section_from_coords(frame: ScrollFrame, twist: int, coords) -> Section2H:
    dims = section_dims(frame, twist)
    vec = np.asarray(coords, dtype=np.int64)
    if vec.shape != (sum(dims),):
        raise DimensionMismatchError(
            f"expected {sum(dims)} coordinates for twist {twist}, got {vec.shape}"
        )
    blocks, pos = [], 0
    for d in dims:
        blocks.append(vec[pos : pos + d].copy())
        pos += d
    return Section2H(frame, twist, tuple(blocks))


def section_coords(sec: Section2H) -> np.ndarray:
    if not sec.blocks:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate([b for b in sec.blocks] or [np.zeros(0, dtype=np.int64)])


def random_section(
    frame: ScrollFrame, twist: int, prime: int, rng: np.random.Generator
) -> Section2H:
    """Uniformly random section; raises if the linear system is empty."""
    total = section_dim(frame, twist)
    if total == 0:
        raise EmptyLinearSystemError(
            f"no sections of 2H - {twist}F on frame {frame.k}"
        )
    coords = rng.integers(0, prime, size=total, dtype=np.int64)
    return section_from_coords(frame, twist, coords)


def binary_monomial(s_degree: int, degree: int) -> np.ndarray:
    """Coefficients of s^s_degree * t^(degree - s_degree)."""
    if not 0 <= s_degree <= degree:
        raise ValueError(f"s-degree {s_degree} outside [0, {degree}]")
    out = np.zeros(degree + 1, dtype=np.int64)
    out[s_degree] = 1
    return out


def twist_down(sec: Section2H, form, prime: int) -> Section2H:
    """Multiply by a binary form in (s, t), lowering the twist by its degree."""
    form = np.asarray(form, dtype=np.int64) % prime
    mu = len(form) - 1
    if mu < 0:
        raise ValueError("binary form must have at least one coefficient")
    if sec.twist - mu < 0:
        raise ValueError(f"cannot lower twist {sec.twist} by degree {mu}")
    new_blocks = []
    for n, (i, j) in enumerate(PAIRS):
        new_len = block_length(sec.frame, i, j, sec.twist - mu)
        if len(sec.blocks[n]) == 0:
            new_blocks.append(np.zeros(new_len, dtype=np.int64))
            continue
        conv = np.convolve(sec.blocks[n], form) % prime
        out = np.zeros(new_len, dtype=np.int64)
        out[: len(conv)] = conv
        new_blocks.append(out)
    return Section2H(sec.frame, sec.twist - mu, tuple(new_blocks))


def evaluate_section(sec: Section2H, st, x, prime: int) -> int:
    """Value of the section at base point (s:t) and fibre point (x1:x2:x3)."""
    s, t = int(st[0]) % prime, int(st[1]) % prime
    xs = [int(c) % prime for c in x]
    total = 0
    for n, (i, j) in enumerate(PAIRS):
        block = sec.blocks[n]
        if len(block) == 0:
            continue
        deg = len(block) - 1
        val = 0
        for alpha, c in enumerate(block):
            if c:
                val = (val + int(c) * pow(s, alpha, prime) % prime * pow(t, deg - alpha, prime)) % prime
        total = (total + xs[i] * xs[j] % prime * val) % prime
    return total


def lift_section(ring: GradedRing, sec: Section2H) -> GradedVector:
    """Quadric in the ambient space restricting to a twist-0 section.

    Each bidegree monomial x_i x_j s^alpha t^(...) is realized as a product
    of two ambient variables by the deterministic split a = min(alpha, k_i)
    of the total s-degree; different splits differ by scroll minors.
    """
    frame = sec.frame
    _check_ring(frame, ring)
    if sec.twist != 0:
        raise TwistedSectionError(
            f"only twist-0 sections lift; got twist {sec.twist}"
        )
    g = ring.num_vars
    out = np.zeros(ring.dim(2), dtype=np.int64)
    for n, (i, j) in enumerate(PAIRS):
        for alpha, c in enumerate(sec.blocks[n]):
            if not c:
                continue
            a = min(alpha, frame.k[i])
            u = frame.var_index(i, a)
            v = frame.var_index(j, alpha - a)
            out[ring.index_of(_pair_exponent(g, u, v))] += int(c)
    return GradedVector(2, out % ring.prime)


# -- restriction to the scroll ------------------------------------------------


def restriction_targets(frame: ScrollFrame, ring: GradedRing) -> np.ndarray:
    """For each quadric monomial, its coordinate in the twist-0 section space."""
    _check_ring(frame, ring)
    dims = section_dims(frame, 0)
    offsets = np.concatenate([[0], np.cumsum(dims)[:-1]])
    pair_pos = {pair: n for n, pair in enumerate(PAIRS)}
    exps = ring.exponents(2)
    targets = np.empty(len(exps), dtype=np.int64)
    for m, e in enumerate(exps):
        support = np.nonzero(e)[0]
        if len(support) == 1:
            u = v = int(support[0])
        else:
            u, v = int(support[0]), int(support[1])
        i, sa = frame.ruling_of(u)
        j, sb = frame.ruling_of(v)
        if i > j:
            i, j = j, i
        targets[m] = offsets[pair_pos[(i, j)]] + sa + sb
    return targets


def restrict_quadrics(frame: ScrollFrame, ring: GradedRing, rows) -> np.ndarray:
    """Images of ambient quadrics in the twist-0 section coordinates."""
    rows = np.atleast_2d(np.asarray(rows, dtype=np.int64)) % ring.prime
    targets = restriction_targets(frame, ring)
    out = np.zeros((section_dim(frame, 0), rows.shape[0]), dtype=np.int64)
    np.add.at(out, targets, rows.T)
    return out.T % ring.prime


def restriction_image(frame: ScrollFrame, ring: GradedRing, quadrics: Subspace) -> Subspace:
    img = restrict_quadrics(frame, ring, quadrics.basis)
    return Subspace.from_rows(img, section_dim(frame, 0), ring.prime)


def _twist_multiplication(frame: ScrollFrame, twist: int, s_power: int) -> np.ndarray:
    """Matrix of multiplication by s^s_power t^(twist - s_power).

    Maps twist-`twist` section coordinates into twist-0 ones; within each
    block the ascending-s coefficients just shift up by s_power.
    """
    src_dims = section_dims(frame, twist)
    dst_dims = section_dims(frame, 0)
    src_off = np.concatenate([[0], np.cumsum(src_dims)[:-1]])
    dst_off = np.concatenate([[0], np.cumsum(dst_dims)[:-1]])
    mat = np.zeros((int(np.sum(dst_dims)), int(np.sum(src_dims))), dtype=np.int64)
    for n in range(len(PAIRS)):
        for alpha in range(src_dims[n]):
            mat[int(dst_off[n]) + alpha + s_power, int(src_off[n]) + alpha] = 1
    return mat


def scrollar_bidegrees(frame: ScrollFrame, restricted: Subspace) -> tuple[int, int]:
    """Recover (lambda0, lambda1) from the restricted quadrics of a curve.

    lambda0 is the largest twist j admitting a nonzero section v of 2H - jF
    all of whose binary-monomial multiples s^i t^(j-i) v land in the given
    (g-3)-dimensional space; by construction that space is spanned by the
    monomial multiples of two sections of twists lambda0 and
    lambda1 = g - 5 - lambda0.
    """
    g = frame.genus
    p = restricted.prime
    if restricted.ambient_dim != section_dim(frame, 0):
        raise DimensionMismatchError(
            f"expected vectors in the twist-0 section space of dim {section_dim(frame, 0)}"
        )
    if restricted.dim != g - 3:
        raise ModelInconsistencyError(
            f"restricted quadrics span dim {restricted.dim}, expected g-3 = {g - 3}"
        )
    annihilator = restricted.complement().basis
    lam0 = 0
    for j in range(1, frame.k[1] + frame.k[2] + 1):
        if section_dim(frame, j) == 0:
            break
        conditions = np.vstack(
            [
                annihilator @ _twist_multiplication(frame, j, i) % p
                for i in range(j + 1)
            ]
        )
        # divisibility is monotone (s*v divides whenever v does), so the
        # first empty twist ends the search
        if section_dim(frame, j) - rank(conditions, p) == 0:
            break
        lam0 = j
    if lam0 > g - 5:
        raise ModelInconsistencyError(
            f"recovered lambda0 = {lam0} exceeds the bound g-5 = {g - 5}"
        )
    return lam0, g - 5 - lam0


# -- point sampling -----------------------------------------------------------


def scroll_points(frame: ScrollFrame, n: int, seed, prime: int = DEFAULT_PRIME) -> np.ndarray:
    """n random points on the scroll (rows of length g)."""
    p = check_prime(prime)
    rng = np.random.default_rng(seed)
    g = frame.num_vars
    out = np.zeros((n, g), dtype=np.int64)
    for row in range(n):
        while True:
            x = rng.integers(0, p, size=3, dtype=np.int64)
            s, t = int(rng.integers(0, p)), int(rng.integers(0, p))
            if x.any() and (s or t):
                break
        out[row] = _embed_point(frame, (s, t), x, p)
    return out


def _embed_point(frame: ScrollFrame, st, x, p: int) -> np.ndarray:
    s, t = int(st[0]) % p, int(st[1]) % p
    pt = np.zeros(frame.num_vars, dtype=np.int64)
    for i in range(3):
        for a in range(frame.k[i] + 1):
            val = int(x[i]) % p * pow(s, a, p) % p * pow(t, frame.k[i] - a, p) % p
            pt[frame.var_index(i, a)] = val
    return pt


def _conic_matrix(sec: Section2H, st, p: int) -> np.ndarray:
    """Symmetric 3x3 matrix of the fibre conic of a section at (s:t)."""
    s, t = int(st[0]) % p, int(st[1]) % p
    inv2 = inverse_mod(2, p)
    mat = np.zeros((3, 3), dtype=np.int64)
    for n, (i, j) in enumerate(PAIRS):
        block = sec.blocks[n]
        if len(block) == 0:
            continue
        deg = len(block) - 1
        val = 0
        for alpha, c in enumerate(block):
            if c:
                val = (val + int(c) * pow(s, alpha, p) % p * pow(t, deg - alpha, p)) % p
        if i == j:
            mat[i, i] = val
        else:
            mat[i, j] = mat[j, i] = val * inv2 % p
    return mat


def _qform(mat: np.ndarray, x, p: int) -> int:
    x = np.asarray(x, dtype=np.int64) % p
    return int(x @ (mat @ x % p) % p)


def _bform(mat: np.ndarray, x, y, p: int) -> int:
    x = np.asarray(x, dtype=np.int64) % p
    y = np.asarray(y, dtype=np.int64) % p
    return int(x @ (mat @ y % p) % p)


def _conic_point(mat: np.ndarray, p: int, rng: np.random.Generator) -> np.ndarray | None:
    """A GF(p)-point of x^T mat x = 0 in P^2, or None.

    Solves the quadratic in one coordinate with the other two random; the
    solved coordinate rotates across attempts so conics missing a variable
    (rank <= 2 fibre conics of highly twisted sections) are still hit.
    """
    for attempt in range(90):
        axis = attempt % 3
        u, v = [i for i in range(3) if i != axis]
        y = int(rng.integers(0, p))
        z = int(rng.integers(0, p))
        if y == 0 and z == 0:
            continue
        out = np.zeros(3, dtype=np.int64)
        out[u], out[v] = y, z
        a = int(mat[axis, axis])
        b = 2 * (int(mat[axis, u]) * y + int(mat[axis, v]) * z) % p
        c = _qform(mat, out, p)
        if a == 0:
            if b != 0:
                out[axis] = (-c) * inverse_mod(b, p) % p
                return out
            if c == 0:
                return out
            continue
        disc = (b * b - 4 * a * c) % p
        root = sqrt_mod(disc, p)
        if root is None:
            continue
        out[axis] = (-b + root) * inverse_mod(2 * a, p) % p
        return out
    return None


def _conic_fibre_points(
    m1: np.ndarray, m2: np.ndarray, p: int, rng: np.random.Generator
) -> list[np.ndarray]:
    """Common zeros of two conics in P^2 (possibly empty)."""
    base = _conic_point(m1, p, rng)
    if base is None:
        return []
    pivot = int(np.nonzero(base)[0][0])
    dirs = [np.eye(3, dtype=np.int64)[i] for i in range(3) if i != pivot]

    def second_point(d: np.ndarray) -> np.ndarray:
        lam = _qform(m1, d, p)
        mu = 2 * _bform(m1, base, d, p) % p
        return (lam * base - mu * d) % p

    found: list[np.ndarray] = []

    def push(pt: np.ndarray) -> None:
        pt = pt % p
        if not pt.any():
            return
        if _qform(m1, pt, p) or _qform(m2, pt, p):
            return
        lead = int(np.nonzero(pt)[0][0])
        pt = pt * inverse_mod(int(pt[lead]), p) % p
        if not any(np.array_equal(pt, q) for q in found):
            found.append(pt)

    push(base)
    # pencil of lines through base: direction d(u) = dirs[0] + u * dirs[1];
    # the residual intersection pt(u) = lam(u)*base - mu(u)*d(u) has
    # coordinates quadratic in u
    d0, d1 = dirs
    lam_poly = [
        _qform(m1, d0, p),
        2 * _bform(m1, d0, d1, p) % p,
        _qform(m1, d1, p),
    ]
    mu_poly = [
        2 * _bform(m1, base, d0, p) % p,
        2 * _bform(m1, base, d1, p) % p,
    ]
    coord_polys = []
    for coord in range(3):
        poly = [lam_poly[k] * int(base[coord]) % p for k in range(3)]
        d_poly = [int(d0[coord]) % p, int(d1[coord]) % p]
        sub = pmul(mu_poly, d_poly, p)
        padded = poly + [0] * (max(0, len(sub) - len(poly)))
        for k, c in enumerate(sub):
            padded[k] = (padded[k] - c) % p
        coord_polys.append(trim(padded) or [0])
    quartic = [0]
    for i in range(3):
        for j in range(3):
            if m2[i, j]:
                term = pmul(coord_polys[i], coord_polys[j], p)
                term = [int(m2[i, j]) * c % p for c in term]
                padded = quartic + [0] * max(0, len(term) - len(quartic))
                for k, c in enumerate(term):
                    padded[k] = (padded[k] + c) % p
                quartic = padded
    for u in roots(quartic, p, rng):
        pt = np.array(
            [_eval_poly(coord_polys[c], u, p) for c in range(3)], dtype=np.int64
        )
        push(pt)
    push(second_point(d1))  # direction "u = infinity"
    return found


def _eval_poly(poly: list[int], u: int, p: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = (acc * u + c) % p
    return acc


def fourgonal_point_sample(
    frame: ScrollFrame,
    q1: Section2H,
    q2: Section2H,
    count: int,
    prime: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Points of the curve cut by q1, q2 on the scroll, fibre by fibre.

    May return fewer than count points (even none): over GF(p) a curve
    whose fibre conic is a fixed irreducible binary form meets almost
    every rational fibre in conjugate, irrational point pairs.
    """
    p = check_prime(prime)
    pts: list[np.ndarray] = []
    for _ in range(4 * count + 40):
        if len(pts) >= count:
            break
        s, t = int(rng.integers(0, p)), int(rng.integers(0, p))
        if s == 0 and t == 0:
            continue
        m1 = _conic_matrix(q1, (s, t), p)
        m2 = _conic_matrix(q2, (s, t), p)
        if not m1.any() or not m2.any():
            continue
        for x in _conic_fibre_points(m1, m2, p, rng):
            pts.append(_embed_point(frame, (s, t), x, p))
    return np.array(pts[:count], dtype=np.int64).reshape(-1, frame.genus)


# -- rolling factors ----------------------------------------------------------


@dataclass(frozen=True)
class RollingWitness:
    """The pieces of one rolling-factors linear syzygy.

    With Y/W the two rows of the scroll matrix, q1 = sum_j A_j Y_j and
    q2 = sum_j A_j W_j, the linear forms h_top = sum_k alpha_k Y_k and
    h_bot = sum_k alpha_k W_k satisfy the exact polynomial identity

        h_bot * q1 - h_top * q2 = sum_{j<k} Delta_jk * M_jk,

    with Delta_jk = alpha_k A_j - alpha_j A_k.  (Both sides pick up the
    cross terms Y_j W_k; pairing h_top with q1 instead would leave
    uncancelled Y_j Y_k terms, so this orientation is the only one that
    closes.)
    """

    q1: GradedVector
    q2: GradedVector
    h_top: GradedVector
    h_bot: GradedVector
    delta: dict[tuple[int, int], GradedVector]


def row_decomposition(
    frame: ScrollFrame, ring: GradedRing, quad: GradedVector, row: str
) -> np.ndarray:
    """Write a quadric as sum_j A_j * (row entry j); returns A as (g-3, g).

    row='top' uses the Y entries, row='bottom' the W entries.  Raises when
    some monomial involves no variable of the requested row.
    """
    _check_ring(frame, ring)
    if row not in ("top", "bottom"):
        raise ValueError("row must be 'top' or 'bottom'")
    cols = frame.columns()
    which = 0 if row == "top" else 1
    col_of_var = {pair[which]: j for j, pair in enumerate(cols)}
    g = ring.num_vars
    a_forms = np.zeros((len(cols), g), dtype=np.int64)
    for m in np.nonzero(quad.coeffs)[0]:
        e = ring.exponents(2)[m]
        support = np.nonzero(e)[0]
        if len(support) == 1:
            u = v = int(support[0])
        else:
            u, v = int(support[0]), int(support[1])
        if u in col_of_var:
            a_forms[col_of_var[u], v] = (a_forms[col_of_var[u], v] + int(quad.coeffs[m])) % ring.prime
        elif v in col_of_var:
            a_forms[col_of_var[v], u] = (a_forms[col_of_var[v], u] + int(quad.coeffs[m])) % ring.prime
        else:
            raise RollingFactorsInputError(
                f"monomial {tuple(int(x) for x in e)} involves no {row}-row variable"
            )
    return a_forms


def rolling_factors(
    frame: ScrollFrame, ring: GradedRing, q1: GradedVector, a_forms, alpha
) -> RollingWitness:
    """Roll a quadric q1 = sum A_j Y_j to its partner q2 = sum A_j W_j."""
    _check_ring(frame, ring)
    p = ring.prime
    cols = frame.columns()
    a_forms = np.asarray(a_forms, dtype=np.int64) % p
    alpha = np.asarray(alpha, dtype=np.int64) % p
    if a_forms.shape != (len(cols), ring.num_vars) or alpha.shape != (len(cols),):
        raise RollingFactorsInputError(
            f"need {len(cols)} linear forms and {len(cols)} scalars for frame {frame.k}"
        )
    rebuilt = ring.zero(2)
    for j, (y, _) in enumerate(cols):
        rebuilt = _add(ring, rebuilt, ring.multiply(ring.vector(1, a_forms[j]), ring.variable(y)))
    if not np.array_equal(rebuilt.coeffs, q1.coeffs % p):
        raise RollingFactorsInputError(
            "q1 does not match sum_j A_j * Y_j for the given linear forms"
        )
    q2 = ring.zero(2)
    for j, (_, w) in enumerate(cols):
        q2 = _add(ring, q2, ring.multiply(ring.vector(1, a_forms[j]), ring.variable(w)))
    h_top = np.zeros(ring.num_vars, dtype=np.int64)
    h_bot = np.zeros(ring.num_vars, dtype=np.int64)
    for k, (y, w) in enumerate(cols):
        h_top[y] = (h_top[y] + alpha[k]) % p
        h_bot[w] = (h_bot[w] + alpha[k]) % p
    delta = {}
    for j in range(len(cols)):
        for k in range(j + 1, len(cols)):
            form = (alpha[k] * a_forms[j] - alpha[j] * a_forms[k]) % p
            delta[(j, k)] = ring.vector(1, form)
    return RollingWitness(
        q1=ring.vector(2, q1.coeffs),
        q2=q2,
        h_top=ring.vector(1, h_top),
        h_bot=ring.vector(1, h_bot),
        delta=delta,
    )


def _add(ring: GradedRing, f: GradedVector, h: GradedVector) -> GradedVector:
    return GradedVector(f.degree, (f.coeffs + h.coeffs) % ring.prime)


def rolling_identity_residual(
    frame: ScrollFrame, ring: GradedRing, witness: RollingWitness
) -> GradedVector:
    """h_bot*q1 - h_top*q2 - sum Delta_jk M_jk; zero iff the identity holds."""
    cols = frame.columns()
    lhs = ring.multiply(witness.h_bot, witness.q1)
    lhs = GradedVector(3, (lhs.coeffs - ring.multiply(witness.h_top, witness.q2).coeffs) % ring.prime)
    acc = lhs.coeffs.copy()
    for (j, k), form in witness.delta.items():
        y1, w1 = cols[j]
        y2, w2 = cols[k]
        minor = np.zeros(ring.dim(2), dtype=np.int64)
        minor[ring.index_of(_pair_exponent(ring.num_vars, y1, w2))] += 1
        minor[ring.index_of(_pair_exponent(ring.num_vars, y2, w1))] -= 1
        prod = ring.multiply(form, GradedVector(2, minor % ring.prime))
        acc = (acc - prod.coeffs) % ring.prime
    return GradedVector(3, acc)


def rolling_syzygy(
    frame: ScrollFrame, ring: GradedRing, witness: RollingWitness
) -> np.ndarray:
    """The witness as a (g, dim S^2) linear syzygy among ambient quadrics."""
    cols = frame.columns()
    p = ring.prime
    g = ring.num_vars
    gamma = np.zeros((g, ring.dim(2)), dtype=np.int64)
    for v in range(g):
        row = witness.h_bot.coeffs[v] * witness.q1.coeffs % p
        row = (row - witness.h_top.coeffs[v] * witness.q2.coeffs) % p
        gamma[v] = row
    for (j, k), form in witness.delta.items():
        y1, w1 = cols[j]
        y2, w2 = cols[k]
        minor = np.zeros(ring.dim(2), dtype=np.int64)
        minor[ring.index_of(_pair_exponent(g, y1, w2))] += 1
        minor[ring.index_of(_pair_exponent(g, y2, w1))] -= 1
        minor %= p
        for v in np.nonzero(form.coeffs)[0]:
            gamma[v] = (gamma[v] - int(form.coeffs[v]) * minor) % p
    return gamma


# -- syzygies inside the scroll coordinate ring -------------------------------


def scroll_ring_syzygies(
    frame: ScrollFrame, ring: GradedRing, sections: list[Section2H]
) -> Subspace:
    """Linear syzygies sum_{v,r} c_{v,r} Z_v * sec_r = 0 inside the scroll ring.

    Sections must have twist 0.  The ambient of the result is g * len(sections)
    with variable-major layout, matching the ambient-space syzygy convention.
    """
    _check_ring(frame, ring)
    p = ring.prime
    g = ring.num_vars
    dims3 = [frame.k[a] + frame.k[b] + frame.k[c] + 1 for a, b, c in TRIPLES]
    offsets = {}
    pos = 0
    for triple, d in zip(TRIPLES, dims3):
        offsets[triple] = pos
        pos += d
    total3 = pos  # equals 10g - 20
    n = len(sections)
    mat = np.zeros((g * n, total3), dtype=np.int64)
    for r, sec in enumerate(sections):
        if sec.twist != 0:
            raise TwistedSectionError("scroll-ring syzygies need twist-0 sections")
        for v in range(g):
            i, sa = frame.ruling_of(v)
            for nblk, (j, l) in enumerate(PAIRS):
                block = sec.blocks[nblk]
                if len(block) == 0:
                    continue
                triple = tuple(sorted((i, j, l)))
                off = offsets[triple] + sa
                mat[v * n + r, off : off + len(block)] += block
    mat %= p
    return kernel_basis(mat.T, p)


def embed_section_syzygies(
    sub: Subspace, g: int, n_total: int, col_offset: int
) -> Subspace:
    """Re-index syzygies on a sub-list of sections into the full list."""
    n_part = sub.ambient_dim // g
    rows = np.zeros((sub.dim, g * n_total), dtype=np.int64)
    for r in range(sub.dim):
        part = sub.basis[r].reshape(g, n_part)
        full = np.zeros((g, n_total), dtype=np.int64)
        full[:, col_offset : col_offset + n_part] = part
        rows[r] = full.reshape(-1)
    return Subspace.from_rows(rows, g * n_total, sub.prime)


# -- the 4-gonal curve constructor -------------------------------------------


MAX_REDRAWS = 8


def fourgonal_curve(
    frame: ScrollFrame, a: int, b: int, seed: int, prime: int = DEFAULT_PRIME
) -> CurveModel:
    """Canonical 4-gonal curve cut on the scroll by sections of twists a, b.

    The quadric ideal piece is the scroll minors plus ambient lifts of the
    binary-form multiples of the two sections; its dimension C(g-2, 2) is
    certified by rank, redrawing the sections on failure.
    """
    g = frame.genus
    p = check_prime(prime)
    if a < 0 or b < 0 or a + b != g - 5:
        raise ValueError(f"need a, b >= 0 with a + b = g - 5 = {g - 5}, got ({a}, {b})")
    if frame.k[2] > (g - 1) // 2:
        raise ValueError(
            f"frame {frame.k} cannot host a curve: k3 > floor((g-1)/2) = {(g - 1) // 2}"
        )
    for twist in (a, b):
        if section_dim(frame, twist) == 0:
            raise EmptyLinearSystemError(
                f"frame {frame.k} has no sections of 2H - {twist}F"
            )
    ring = GradedRing(g, p)
    minors = scroll_minors(frame, ring)
    target = comb(g - 2, 2)
    rng = np.random.default_rng(seed)
    for _ in range(MAX_REDRAWS):
        q1 = random_section(frame, a, p, rng)
        q2 = random_section(frame, b, p, rng)
        if q1.is_zero() or q2.is_zero():
            continue
        side_a = [twist_down(q1, binary_monomial(i, a), p) for i in range(a + 1)]
        side_b = [twist_down(q2, binary_monomial(i, b), p) for i in range(b + 1)]
        lifts = [lift_section(ring, sec).coeffs for sec in side_a + side_b]
        quadrics = Subspace.from_rows(
            np.vstack([minors.basis, np.array(lifts)]), ring.dim(2), p
        )
        if quadrics.dim == target:
            break
    else:
        raise GenericityExhaustedError(
            f"no generic section pair after {MAX_REDRAWS} draws (frame {frame.k}, a={a}, b={b})"
        )
    surface = None
    if min(a, b) == 0:
        # the curve is a quadric section of the degree-(g-1) surface cut by
        # the positive-twist section; store that surface's quadrics
        big = side_a if a >= b else side_b
        surf_rows = np.vstack([minors.basis, np.array([lift_section(ring, s).coeffs for s in big])])
        surface = Subspace.from_rows(surf_rows, ring.dim(2), p)
    points = fourgonal_point_sample(frame, q1, q2, 24, p, rng)
    return CurveModel(
        family=FOURGONAL,
        genus=g,
        prime=p,
        seed=int(seed),
        quadrics=quadrics,
        surface_quadrics=surface,
        sample_points=points if len(points) else None,
        params={
            "frame": list(frame.k),
            "a": int(a),
            "b": int(b),
            "q1_blocks": [[int(c) for c in blk] for blk in q1.blocks],
            "q2_blocks": [[int(c) for c in blk] for blk in q2.blocks],
        },
    )


def fourgonal_sections(model: CurveModel) -> tuple[Section2H, Section2H]:
    """Rebuild the two defining sections stored in a 4-gonal model."""
    if model.family != FOURGONAL:
        raise ValueError(f"model family is {model.family!r}, not {FOURGONAL!r}")
    frame = ScrollFrame(tuple(model.params["frame"]))
    q1 = Section2H(
        frame,
        int(model.params["a"]),
        tuple(np.array(blk, dtype=np.int64) for blk in model.params["q1_blocks"]),
    )
    q2 = Section2H(
        frame,
        int(model.params["b"]),
        tuple(np.array(blk, dtype=np.int64) for blk in model.params["q2_blocks"]),
    )
    return q1, q2
