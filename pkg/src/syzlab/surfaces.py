"""Degree-(g-1) surfaces and the special curves cut on them by one quadric.

Three families: cones over elliptic normal curves (with the bielliptic
curves they carry), Del Pezzo surfaces from plane cubics through 10-g
base points, and the cubic Veronese at g = 10.  All ideals are obtained
by exact interpolation: evaluate every degree-2 monomial at sampled
points of the variety and take the kernel, growing the sample until the
kernel stops moving.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Optional

import numpy as np

from .errors import (
    GenericityExhaustedError,
    ModelInconsistencyError,
    SampleExhaustedError,
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
from .models import (
    BIELLIPTIC,
    DELPEZZO,
    GENUS5,
    VERONESE,
    CurveModel,
    SurfaceModel,
)
from .ring import GradedRing

KIND_ELLIPTIC_CONE = "EllipticCone"
KIND_DELPEZZO = "DelPezzo"
KIND_VERONESE = "Veronese"

MAX_REDRAWS = 8
MAX_GROWTH_ROUNDS = 8


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 = x^3 + a4*x + a6 over GF(p); must be nonsingular."""

    a4: int
    a6: int
    prime: int

    def __post_init__(self) -> None:
        p = check_prime(self.prime)
        object.__setattr__(self, "a4", int(self.a4) % p)
        object.__setattr__(self, "a6", int(self.a6) % p)
        if self.discriminant == 0:
            raise ValueError(
                f"singular cubic: 4*a4^3 + 27*a6^2 = 0 mod {p} for (a4, a6) = "
                f"({self.a4}, {self.a6})"
            )

    @property
    def discriminant(self) -> int:
        p = self.prime
        return (4 * pow(self.a4, 3, p) + 27 * self.a6 * self.a6) % p

    @classmethod
    def random(cls, prime: int, rng: np.random.Generator) -> "WeierstrassCurve":
        p = check_prime(prime)
        for _ in range(MAX_REDRAWS):
            a4 = int(rng.integers(0, p))
            a6 = int(rng.integers(0, p))
            if (4 * pow(a4, 3, p) + 27 * a6 * a6) % p != 0:
                return cls(a4, a6, p)
        raise GenericityExhaustedError("could not draw a nonsingular cubic")


def weierstrass_points(
    curve: WeierstrassCurve, count: int, rng: np.random.Generator
) -> np.ndarray:
    """count distinct affine points (x, y), deterministic given the rng state."""
    p = curve.prime
    pts: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    attempts = 0
    while len(pts) < count:
        attempts += 1
        if attempts > 64 * count + 256:
            raise SampleExhaustedError(
                f"found only {len(pts)} of {count} requested curve points"
            )
        x = int(rng.integers(0, p))
        rhs = (pow(x, 3, p) + curve.a4 * x + curve.a6) % p
        y = sqrt_mod(rhs, p)
        if y is None:
            continue
        for cand in ((x, y), (x, (-y) % p)):
            if cand not in seen and len(pts) < count:
                seen.add(cand)
                pts.append(cand)
    return np.array(pts, dtype=np.int64)


def pole_order_basis(n: int) -> list[tuple[int, int]]:
    """Exponents (i, j) of the functions x^i y^j with pole order 2i+3j <= n.

    Sorted by pole order, giving the classical ladder 1, x, y, x^2, xy, ...
    For n >= 3 there are exactly n of them.
    """
    if n < 3:
        raise ValueError(f"need pole order >= 3, got {n}")
    basis = [(i, 0) for i in range(n // 2 + 1)]
    basis += [(j, 1) for j in range((n - 3) // 2 + 1)]
    basis.sort(key=lambda e: 2 * e[0] + 3 * e[1])
    return basis


def embed_points(curve: WeierstrassCurve, n: int, affine_pts: np.ndarray) -> np.ndarray:
    """Images of affine curve points under the degree-n embedding."""
    p = curve.prime
    out = np.empty((len(affine_pts), n), dtype=np.int64)
    for col, (i, j) in enumerate(pole_order_basis(n)):
        x = affine_pts[:, 0]
        y = affine_pts[:, 1]
        val = np.ones(len(affine_pts), dtype=np.int64)
        for _ in range(i):
            val = val * x % p
        if j:
            val = val * y % p
        out[:, col] = val
    return out


def interpolation_kernel(
    point_gen: Callable[[int], np.ndarray],
    evaluate: Callable[[np.ndarray], np.ndarray],
    ambient_dim: int,
    prime: int,
) -> tuple[Subspace, np.ndarray]:
    """Kernel of the evaluation matrix, grown until stable.

    Starts with 3x the monomial count and adds 25% batches until the kernel
    is unchanged by the last batch; callers' tests additionally verify that
    a full doubling leaves it fixed.
    """
    pts = point_gen(3 * ambient_dim)
    rows = evaluate(pts)
    ker = kernel_basis(rows, prime)
    for _ in range(MAX_GROWTH_ROUNDS):
        extra = point_gen(max(1, (len(pts) + 3) // 4))
        pts = np.vstack([pts, extra])
        rows = np.vstack([rows, evaluate(extra)])
        grown = kernel_basis(rows, prime)
        if grown == ker:
            return ker, pts
        ker = grown
    raise SampleExhaustedError(
        f"interpolation kernel failed to stabilize after {MAX_GROWTH_ROUNDS} growth rounds"
    )


# -- elliptic normal curves and cones ----------------------------------------


def elliptic_normal_ideal(
    n: int, curve: WeierstrassCurve, seed
) -> tuple[Subspace, np.ndarray]:
    """Quadrics through the degree-n elliptic normal curve in P^{n-1}.

    Returns (quadrics, embedded sample points); the quadric count is
    n(n-3)/2, zero for the plane cubic n = 3.
    """
    if n < 3:
        raise ValueError(f"degree must be >= 3, got {n}")
    rng = np.random.default_rng(seed)
    p = curve.prime
    ring = GradedRing(n, p)
    seen: set[tuple[int, int]] = set()

    def fresh_points(count: int) -> np.ndarray:
        batch: list[tuple[int, int]] = []
        attempts = 0
        while len(batch) < count:
            attempts += 1
            if attempts > 64 * count + 256:
                raise SampleExhaustedError(
                    "ran out of fresh curve points during interpolation"
                )
            x = int(rng.integers(0, p))
            rhs = (pow(x, 3, p) + curve.a4 * x + curve.a6) % p
            y = sqrt_mod(rhs, p)
            if y is None:
                continue
            for cand in ((x, y), (x, (-y) % p)):
                if cand not in seen and len(batch) < count:
                    seen.add(cand)
                    batch.append(cand)
        return embed_points(curve, n, np.array(batch, dtype=np.int64))

    quadrics, pts = interpolation_kernel(
        fresh_points,
        lambda q: ring.evaluate_monomials(2, q),
        ring.dim(2),
        p,
    )
    expected = n * (n - 3) // 2
    if quadrics.dim != expected:
        raise ModelInconsistencyError(
            f"degree-{n} elliptic embedding gave {quadrics.dim} quadrics, expected {expected}"
        )
    return quadrics, pts


def _reindex_to_cone(quadrics: Subspace, small: GradedRing, big: GradedRing) -> Subspace:
    """Quadrics in variables Z_1..Z_n become quadrics in Z_2..Z_{n+1}."""
    col_map = np.array(
        [big.index_of([0] + [int(x) for x in e]) for e in small.exponents(2)],
        dtype=np.int64,
    )
    rows = np.zeros((quadrics.dim, big.dim(2)), dtype=np.int64)
    rows[:, col_map] = quadrics.basis
    return Subspace.from_rows(rows, big.dim(2), big.prime)


def _cone_points(
    embedded: np.ndarray, count: int, prime: int, rng: np.random.Generator
) -> np.ndarray:
    """Points lam*(vertex) + mu*(0, curve point); the vertex comes first."""
    g = embedded.shape[1] + 1
    out = np.zeros((count, g), dtype=np.int64)
    out[0, 0] = 1  # the vertex itself
    for row in range(1, count):
        base = embedded[int(rng.integers(0, len(embedded)))]
        lam = int(rng.integers(0, prime))
        mu = int(rng.integers(1, prime))
        out[row, 0] = lam
        out[row, 1:] = mu * base % prime
    return out


def _elliptic_cone_rng(
    genus: int, curve: WeierstrassCurve, seed, rng: np.random.Generator
) -> SurfaceModel:
    if genus < 6:
        raise ValueError(f"cone surfaces need genus >= 6, got {genus}")
    p = curve.prime
    quadrics_small, embedded = elliptic_normal_ideal(genus - 1, curve, rng)
    small = GradedRing(genus - 1, p)
    big = GradedRing(genus, p)
    quadrics = _reindex_to_cone(quadrics_small, small, big)
    if quadrics.dim != comb(genus - 2, 2) - 1:
        raise ModelInconsistencyError(
            f"cone ideal has dim {quadrics.dim}, expected {comb(genus - 2, 2) - 1}"
        )
    points = _cone_points(embedded, 120, p, rng)
    return SurfaceModel(
        kind=KIND_ELLIPTIC_CONE,
        genus=genus,
        prime=p,
        seed=int(seed) if isinstance(seed, (int, np.integer)) else -1,
        quadrics=quadrics,
        sample_points=points,
        params={"a4": curve.a4, "a6": curve.a6},
    )


def elliptic_cone(
    genus: int,
    seed: int,
    curve: Optional[WeierstrassCurve] = None,
    prime: int = DEFAULT_PRIME,
) -> SurfaceModel:
    """Cone in P^{g-1} over an elliptic normal curve of degree g-1."""
    p = check_prime(prime)
    rng = np.random.default_rng(seed)
    if curve is None:
        curve = WeierstrassCurve.random(p, rng)
    elif curve.prime != p:
        raise ValueError(f"curve is over GF({curve.prime}), requested prime {p}")
    return _elliptic_cone_rng(genus, curve, seed, rng)


def bielliptic_curve(
    genus: int,
    seed: int,
    curve: Optional[WeierstrassCurve] = None,
    prime: int = DEFAULT_PRIME,
) -> CurveModel:
    """Bielliptic canonical curve: quadric section of an elliptic cone.

    The extra quadric is drawn with nonzero vertex value, so the curve
    misses the vertex and the double cover onto the elliptic curve is the
    cone's ruling.
    """
    p = check_prime(prime)
    rng = np.random.default_rng(seed)
    if curve is None:
        curve = WeierstrassCurve.random(p, rng)
    elif curve.prime != p:
        raise ValueError(f"curve is over GF({curve.prime}), requested prime {p}")
    surface = _elliptic_cone_rng(genus, curve, seed, rng)
    ring = GradedRing(genus, p)
    vertex_sq = ring.index_of([2] + [0] * (genus - 1))
    for _ in range(MAX_REDRAWS):
        quad = rng.integers(0, p, size=ring.dim(2), dtype=np.int64)
        if quad[vertex_sq] != 0:
            break
    else:
        raise GenericityExhaustedError(
            "every drawn quadric vanished at the cone vertex"
        )
    quadrics = surface.quadrics.sum(
        Subspace.from_rows(quad, ring.dim(2), p)
    )
    if quadrics.dim != comb(genus - 2, 2):
        raise ModelInconsistencyError(
            f"bielliptic ideal has dim {quadrics.dim}, expected {comb(genus - 2, 2)}"
        )
    points = _bielliptic_points(surface, quad, ring, 24, rng)
    return CurveModel(
        family=BIELLIPTIC,
        genus=genus,
        prime=p,
        seed=int(seed),
        quadrics=quadrics,
        surface_quadrics=surface.quadrics,
        sample_points=points,
        params={"a4": curve.a4, "a6": curve.a6},
    )


def _bielliptic_points(
    surface: SurfaceModel,
    quad: np.ndarray,
    ring: GradedRing,
    count: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Points of S cap {Q = 0}: solve Q quadratically along each cone ruling."""
    p = ring.prime
    g = ring.num_vars
    assert surface.sample_points is not None
    curve_pts = surface.sample_points[1:]  # skip the vertex
    pts: list[np.ndarray] = []
    for _ in range(8 * count):
        if len(pts) >= count:
            break
        base = curve_pts[int(rng.integers(0, len(curve_pts)))]
        # restrict Q to the line lam*vertex + base
        line = np.zeros((2, g), dtype=np.int64)
        line[0, 0] = 1
        line[1] = base
        line[1, 0] = 0
        a = int(ring.evaluate(ring.vector(2, quad), line[0])[0])
        c = int(ring.evaluate(ring.vector(2, quad), line[1])[0])
        both = int(ring.evaluate(ring.vector(2, quad), (line[0] + line[1]) % p)[0])
        b = (both - a - c) % p
        disc = (b * b - 4 * a * c) % p
        root = sqrt_mod(disc, p)
        if root is None or a == 0:
            continue
        inv2a = inverse_mod(2 * a, p)
        for lam in ((-b + root) * inv2a % p, (-b - root) * inv2a % p):
            pt = (lam * line[0] + line[1]) % p
            if len(pts) < count and not any(np.array_equal(pt, q) for q in pts):
                pts.append(pt)
    if not pts:
        raise SampleExhaustedError("no GF(p)-points found on the bielliptic curve")
    return np.array(pts, dtype=np.int64)


# -- Del Pezzo and Veronese surfaces ------------------------------------------


def _plane_cubic_basis(
    base_points: np.ndarray, ring3: GradedRing
) -> Optional[Subspace]:
    """Cubics through the base points, or None when conditions are dependent."""
    if len(base_points) == 0:
        return Subspace.full(ring3.dim(3), ring3.prime)
    rows = ring3.evaluate_monomials(3, base_points)
    if rank(rows, ring3.prime) != len(base_points):
        return None
    return kernel_basis(rows, ring3.prime)


def _delpezzo_surface_rng(
    genus: int, seed, prime: int, rng: np.random.Generator
) -> SurfaceModel:
    if not 6 <= genus <= 10:
        raise ValueError(f"plane-cubic surfaces exist for genus 6..10, got {genus}")
    p = check_prime(prime)
    ring3 = GradedRing(3, p)
    ring_g = GradedRing(genus, p)
    n_base = 10 - genus
    cubics: Optional[Subspace] = None
    base = np.zeros((0, 3), dtype=np.int64)
    for _ in range(MAX_REDRAWS):
        base = np.hstack(
            [
                rng.integers(0, p, size=(n_base, 2), dtype=np.int64),
                np.ones((n_base, 1), dtype=np.int64),
            ]
        )
        cubics = _plane_cubic_basis(base, ring3)
        if cubics is not None:
            break
    if cubics is None:
        raise GenericityExhaustedError(
            f"no general position after {MAX_REDRAWS} draws of {n_base} plane points"
        )
    assert cubics.dim == genus

    def image_points(count: int) -> np.ndarray:
        out = np.empty((count, genus), dtype=np.int64)
        got = 0
        attempts = 0
        while got < count:
            attempts += 1
            if attempts > 64 * count + 256:
                raise SampleExhaustedError("ran out of plane points to map")
            q = np.array(
                [int(rng.integers(0, p)), int(rng.integers(0, p)), 1], dtype=np.int64
            )
            vals = ring3.evaluate_monomials(3, q)[0] @ cubics.basis.T % p
            if vals.any():
                out[got] = vals
                got += 1
        return out

    quadrics, pts = interpolation_kernel(
        image_points,
        lambda q: ring_g.evaluate_monomials(2, q),
        ring_g.dim(2),
        p,
    )
    if quadrics.dim != comb(genus - 2, 2) - 1:
        raise ModelInconsistencyError(
            f"surface ideal has dim {quadrics.dim}, expected {comb(genus - 2, 2) - 1}"
        )
    return SurfaceModel(
        kind=KIND_VERONESE if genus == 10 else KIND_DELPEZZO,
        genus=genus,
        prime=p,
        seed=int(seed) if isinstance(seed, (int, np.integer)) else -1,
        quadrics=quadrics,
        sample_points=pts[: 4 * genus],
        params={"base_points": [[int(c) for c in row] for row in base]},
    )


def delpezzo_surface(genus: int, seed: int, prime: int = DEFAULT_PRIME) -> SurfaceModel:
    """Image of the plane under cubics through 10-g general points.

    Degree g-1 in P^{g-1}: an honest Del Pezzo for g in 6..9 and the cubic
    Veronese embedding of the whole plane at g = 10.
    """
    return _delpezzo_surface_rng(genus, seed, prime, np.random.default_rng(seed))


def delpezzo_curve(genus: int, seed: int, prime: int = DEFAULT_PRIME) -> CurveModel:
    """Canonical curve cut on a plane-cubic surface by one extra quadric."""
    p = check_prime(prime)
    rng = np.random.default_rng(seed)
    surface = _delpezzo_surface_rng(genus, seed, p, rng)
    ring_g = GradedRing(genus, p)
    for _ in range(MAX_REDRAWS):
        quad = rng.integers(0, p, size=ring_g.dim(2), dtype=np.int64)
        if not surface.quadrics.contains(quad):
            break
    else:
        raise GenericityExhaustedError("drawn quadrics all contained the surface ideal")
    quadrics = surface.quadrics.sum(Subspace.from_rows(quad, ring_g.dim(2), p))
    if quadrics.dim != comb(genus - 2, 2):
        raise ModelInconsistencyError(
            f"curve ideal has dim {quadrics.dim}, expected {comb(genus - 2, 2)}"
        )
    points = _delpezzo_curve_points(surface, quad, ring_g, 24, rng)
    family = VERONESE if genus == 10 else DELPEZZO
    return CurveModel(
        family=family,
        genus=genus,
        prime=p,
        seed=int(seed),
        quadrics=quadrics,
        surface_quadrics=surface.quadrics,
        sample_points=points,
        params={"base_points": surface.params["base_points"]},
    )


def _delpezzo_curve_points(
    surface: SurfaceModel,
    quad: np.ndarray,
    ring_g: GradedRing,
    count: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Points of S cap {Q = 0} by solving along pencils of plane lines.

    Restricting Q to the image of the line {x = u} gives a degree-6
    polynomial in the remaining coordinate; its GF(p) roots map to points
    of the curve.
    """
    p = ring_g.prime
    genus = surface.genus
    ring3 = GradedRing(3, p)
    cubics = _plane_cubic_basis(
        np.array(surface.params["base_points"], dtype=np.int64).reshape(-1, 3), ring3
    )
    assert cubics is not None
    pts: list[np.ndarray] = []
    for _ in range(12 * count):
        if len(pts) >= count:
            break
        u = int(rng.integers(0, p))
        # coordinate functions of the image as polynomials in v
        coord_polys = []
        for row in cubics.basis:
            poly = [0, 0, 0, 0]
            for m, c in zip(ring3.exponents(3), row):
                if c:
                    alpha, beta, _ = (int(m[0]), int(m[1]), int(m[2]))
                    poly[beta] = (poly[beta] + int(c) * pow(u, alpha, p)) % p
            coord_polys.append(trim(poly) or [0])
        sextic = [0]
        for m, c in zip(ring_g.exponents(2), ring_g.vector(2, quad).coeffs):
            if not c:
                continue
            support = np.nonzero(m)[0]
            if len(support) == 1:
                i = j = int(support[0])
            else:
                i, j = int(support[0]), int(support[1])
            term = pmul(coord_polys[i], coord_polys[j], p)
            term = [int(c) * t % p for t in term]
            sextic = sextic + [0] * max(0, len(term) - len(sextic))
            for k, t in enumerate(term):
                sextic[k] = (sextic[k] + t) % p
        for v in roots(sextic, p, rng):
            img = np.array(
                [_eval_list(poly, v, p) for poly in coord_polys], dtype=np.int64
            )
            if img.any() and len(pts) < count:
                if not any(np.array_equal(img, q) for q in pts):
                    pts.append(img)
    if not pts:
        raise SampleExhaustedError("no GF(p)-points found on the curve")
    return np.array(pts, dtype=np.int64)


def _eval_list(poly: list[int], u: int, p: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = (acc * u + c) % p
    return acc


# -- genus 5 ------------------------------------------------------------------


def genus5_intersection(seed: int, prime: int = DEFAULT_PRIME) -> CurveModel:
    """General genus-5 canonical curve: three random quadrics in P^4."""
    p = check_prime(prime)
    rng = np.random.default_rng(seed)
    ring = GradedRing(5, p)
    for _ in range(MAX_REDRAWS):
        rows = rng.integers(0, p, size=(3, ring.dim(2)), dtype=np.int64)
        quadrics = Subspace.from_rows(rows, ring.dim(2), p)
        if quadrics.dim == 3:
            return CurveModel(
                family=GENUS5,
                genus=5,
                prime=p,
                seed=int(seed),
                quadrics=quadrics,
                surface_quadrics=None,
                sample_points=None,
                params={},
            )
    raise GenericityExhaustedError("three random quadrics were dependent repeatedly")
