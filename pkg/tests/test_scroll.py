from __future__ import annotations

from math import comb

import numpy as np
import pytest

from syzlab.errors import (
    DegenerateScrollError,
    ModelInconsistencyError,
    RollingFactorsInputError,
    TwistedSectionError,
)
from syzlab.linalg import DEFAULT_PRIME, Subspace, kernel_basis
from syzlab.ring import GradedRing
from syzlab.scroll import (
    PAIRS,
    ScrollFrame,
    binary_monomial,
    evaluate_section,
    fourgonal_curve,
    fourgonal_point_sample,
    fourgonal_sections,
    lift_section,
    random_section,
    restrict_quadrics,
    restriction_image,
    rolling_factors,
    rolling_identity_residual,
    rolling_syzygy,
    row_decomposition,
    scroll_matrix,
    scroll_minors,
    scroll_points,
    scroll_ring_syzygies,
    embed_section_syzygies,
    scrollar_bidegrees,
    section_dim,
    section_from_coords,
    twist_down,
)

P = DEFAULT_PRIME


def test_frame_validation():
    with pytest.raises(ValueError):
        ScrollFrame((2, 1, 3))  # not sorted
    with pytest.raises(DegenerateScrollError):
        ScrollFrame((0, 0, 3))  # one block cannot make a 2-row matrix
    assert ScrollFrame((0, 1, 2)).genus == 6  # cone frames are fine
    assert ScrollFrame.balanced(9).k == (2, 2, 2)
    assert ScrollFrame.balanced(12).k == (3, 3, 3)
    assert ScrollFrame.hosting(12, 7).k == (2, 3, 4)
    assert ScrollFrame.hosting(9, 4).k == (2, 2, 2)


def test_var_index_layout():
    # blocks list descending s-powers: Z1 = x1 s, Z2 = x1 t, ...
    frame = ScrollFrame((1, 1, 1))
    assert [frame.var_index(i, a) for i in range(3) for a in (1, 0)] == list(range(6))
    frame2 = ScrollFrame((2, 3, 3))
    assert frame2.var_index(0, 2) == 0
    assert frame2.var_index(0, 0) == 2
    assert frame2.var_index(1, 3) == 3
    assert frame2.var_index(2, 0) == 10
    for v in range(frame2.genus):
        i, a = frame2.ruling_of(v)
        assert frame2.var_index(i, a) == v


def test_minor_count_across_genus_range():
    for g in range(6, 16):
        frame = ScrollFrame.balanced(g)
        ring = GradedRing(g, P)
        assert scroll_minors(frame, ring).dim == comb(g - 3, 2)


def test_scroll_points_annihilate_minors():
    frame = ScrollFrame((2, 2, 2))
    ring = GradedRing(9, P)
    pts = scroll_points(frame, 60, seed=31)
    minors = scroll_minors(frame, ring)
    vals = ring.evaluate_monomials(2, pts) @ minors.basis.T % P
    assert not vals.any()
    assert len(scroll_points(frame, 0, seed=31)) == 0


def test_point_interpolation_recovers_exactly_the_minors():
    # 500 points: the kernel of the evaluation matrix is the minor space
    frame = ScrollFrame((2, 2, 2))
    ring = GradedRing(9, P)
    pts = scroll_points(frame, 500, seed=32)
    ker = kernel_basis(ring.evaluate_monomials(2, pts), P)
    assert ker.dim == comb(6, 2)
    assert ker == scroll_minors(frame, ring)


def test_section_dimension_lower_bound():
    # h^0(2H - lam*F) >= 4g - 6(lam+1) in the stated twist range
    for k in [(1, 1, 1), (2, 2, 2), (1, 2, 4), (0, 2, 3), (3, 3, 3)]:
        frame = ScrollFrame(k)
        g = frame.genus
        for lam in range(0, (2 * g - 4) // 3 + 1):
            assert section_dim(frame, lam) >= 4 * g - 6 * (lam + 1)


def test_lift_of_a_pure_monomial_section():
    # x1^2 s^2 at twist 0 on frame (1,1,1) lifts to Z1^2
    frame = ScrollFrame((1, 1, 1))
    ring = GradedRing(6, P)
    dims = [frame.k[i] + frame.k[j] + 1 for i, j in PAIRS]
    coords = np.zeros(sum(dims), dtype=np.int64)
    coords[2] = 1  # block (x1,x1), alpha = 2
    sec = section_from_coords(frame, 0, coords)
    quad = lift_section(ring, sec)
    want = np.zeros(ring.dim(2), dtype=np.int64)
    want[ring.index_of((2, 0, 0, 0, 0, 0))] = 1
    assert np.array_equal(quad.coeffs, want)


def test_lift_then_restrict_is_identity():
    rng = np.random.default_rng(33)
    for k in [(1, 1, 1), (2, 2, 2), (1, 2, 3)]:
        frame = ScrollFrame(k)
        ring = GradedRing(frame.genus, P)
        for _ in range(5):
            sec = random_section(frame, 0, P, rng)
            quad = lift_section(ring, sec)
            back = restrict_quadrics(frame, ring, quad.coeffs)[0]
            assert np.array_equal(back, np.concatenate(sec.blocks) % P)


def test_lift_of_twisted_section_is_refused():
    frame = ScrollFrame((2, 2, 2))
    ring = GradedRing(9, P)
    rng = np.random.default_rng(34)
    sec = random_section(frame, 2, P, rng)
    with pytest.raises(TwistedSectionError):
        lift_section(ring, sec)


def test_alternative_split_lift_differs_by_a_minor():
    # realizing x1 x2 s^2 t^2 on frame (2,2,2) as Z1*Z5 or Z2*Z4 differ by
    # exactly the minor Z1 Z5 - Z2 Z4 of the scroll matrix
    frame = ScrollFrame((2, 2, 2))
    ring = GradedRing(9, P)
    minors = scroll_minors(frame, ring)
    greedy = np.zeros(ring.dim(2), dtype=np.int64)
    u, v = frame.var_index(0, 2), frame.var_index(1, 0)
    e = [0] * 9
    e[u] += 1
    e[v] += 1
    greedy[ring.index_of(e)] = 1
    other = np.zeros(ring.dim(2), dtype=np.int64)
    u2, v2 = frame.var_index(0, 1), frame.var_index(1, 1)
    e2 = [0] * 9
    e2[u2] += 1
    e2[v2] += 1
    other[ring.index_of(e2)] = 1
    assert minors.contains((greedy - other) % P)
    assert not minors.contains(greedy)


def test_lift_evaluates_like_the_section_on_scroll_points():
    frame = ScrollFrame((1, 2, 3))
    g = frame.genus
    ring = GradedRing(g, P)
    rng = np.random.default_rng(35)
    sec = random_section(frame, 0, P, rng)
    quad = lift_section(ring, sec)
    for _ in range(20):
        s, t = int(rng.integers(0, P)), int(rng.integers(1, P))
        x = [int(c) for c in rng.integers(0, P, size=3)]
        pt = np.array(
            [x[i] * pow(s, a, P) * pow(t, frame.k[i] - a, P) % P
             for v in range(g) for i, a in [frame.ruling_of(v)]],
            dtype=np.int64,
        )
        assert int(ring.evaluate(quad, pt)[0]) == evaluate_section(sec, (s, t), x, P)


# -- rolling factors ----------------------------------------------------------


@pytest.mark.parametrize("k", [(1, 1, 1), (2, 2, 2), (2, 3, 3)])
def test_rolling_identity_holds_on_random_instances(k):
    frame = ScrollFrame(k)
    g = frame.genus
    ring = GradedRing(g, P)
    rng = np.random.default_rng(sum(k))
    cols = frame.columns()
    for _ in range(25):
        a_forms = rng.integers(0, P, size=(len(cols), g))
        alpha = rng.integers(0, P, size=len(cols))
        q1 = ring.zero(2)
        for j, (y, _) in enumerate(cols):
            prod = ring.multiply(ring.vector(1, a_forms[j]), ring.variable(y))
            q1 = ring.vector(2, (q1.coeffs + prod.coeffs) % P)
        wit = rolling_factors(frame, ring, q1, a_forms, alpha)
        assert rolling_identity_residual(frame, ring, wit).is_zero()


def test_rolling_respects_row_decomposition():
    frame = ScrollFrame((2, 2, 2))
    g = frame.genus
    ring = GradedRing(g, P)
    rng = np.random.default_rng(36)
    sec = random_section(frame, 1, P, rng)
    s_mult = twist_down(sec, binary_monomial(1, 1), P)  # s * sec: top row
    quad = lift_section(ring, s_mult)
    a_forms = row_decomposition(frame, ring, quad, "top")
    alpha = rng.integers(0, P, size=g - 3)
    wit = rolling_factors(frame, ring, quad, a_forms, alpha)
    assert rolling_identity_residual(frame, ring, wit).is_zero()
    t_mult = twist_down(sec, binary_monomial(0, 1), P)  # t * sec: bottom row
    quad_b = lift_section(ring, t_mult)
    row_decomposition(frame, ring, quad_b, "bottom")
    with pytest.raises(RollingFactorsInputError):
        # generic bottom-row quadrics have monomials with no top-row factor
        row_decomposition(frame, ring, quad_b, "top")


def test_rolling_syzygy_is_a_syzygy_involving_both_quadrics():
    from syzlab.koszul import is_syzygy, quadrics_involved, syzygy_coordinates

    frame = ScrollFrame((2, 2, 2))
    g = frame.genus
    ring = GradedRing(g, P)
    rng = np.random.default_rng(37)
    model = fourgonal_curve(frame, 2, 2, seed=37)
    quadrics = model.quadrics
    sec = random_section(frame, 1, P, rng)
    quad = lift_section(ring, twist_down(sec, binary_monomial(1, 1), P))
    a_forms = row_decomposition(frame, ring, quad, "top")
    alpha = rng.integers(0, P, size=g - 3)
    wit = rolling_factors(frame, ring, quad, a_forms, alpha)
    gamma_rows = rolling_syzygy(frame, ring, wit)
    full = scroll_minors(frame, ring).sum(
        Subspace.from_rows(
            np.vstack([wit.q1.coeffs, wit.q2.coeffs]), ring.dim(2), P
        )
    )
    coords = syzygy_coordinates(full, gamma_rows)
    assert is_syzygy(ring, full, coords)
    span = quadrics_involved(ring, full, coords)
    assert span.dim >= 2
    assert span.contains(wit.q1.coeffs) and span.contains(wit.q2.coeffs)


# -- 4-gonal models -----------------------------------------------------------


def test_fourgonal_dimension_and_vanishing():
    frame = ScrollFrame((2, 2, 2))
    g = frame.genus
    ring = GradedRing(g, P)
    model = fourgonal_curve(frame, 2, 2, seed=40)
    assert model.quadrics.dim == comb(g - 2, 2)
    assert model.quadrics.contains_space(scroll_minors(frame, ring))
    assert model.sample_points is not None
    vals = ring.evaluate_monomials(2, model.sample_points) @ model.quadrics.basis.T % P
    assert not vals.any()


def test_fourgonal_requires_matching_twists():
    with pytest.raises(ValueError):
        fourgonal_curve(ScrollFrame((2, 2, 2)), 3, 3, seed=0)  # 3+3 != 4


def test_fourgonal_point_sample_lies_on_the_curve():
    frame = ScrollFrame((1, 2, 2))
    ring = GradedRing(frame.genus, P)
    model = fourgonal_curve(frame, 1, 2, seed=41)
    q1, q2 = fourgonal_sections(model)
    rng = np.random.default_rng(42)
    pts = fourgonal_point_sample(frame, q1, q2, 10, P, rng)
    assert 0 < len(pts) <= 10
    vals = ring.evaluate_monomials(2, pts) @ model.quadrics.basis.T % P
    assert not vals.any()


def test_bidegree_recovery_matches_construction():
    for g, k, a, b in [
        (9, (2, 2, 2), 2, 2),
        (9, (2, 2, 2), 4, 0),
        (8, (1, 2, 2), 1, 2),
        (12, (3, 3, 3), 4, 3),
        (11, (2, 3, 3), 6, 0),
    ]:
        frame = ScrollFrame(k)
        ring = GradedRing(g, P)
        model = fourgonal_curve(frame, a, b, seed=43)
        restricted = restriction_image(frame, ring, model.quadrics)
        assert scrollar_bidegrees(frame, restricted) == (max(a, b), min(a, b))


def test_bidegrees_of_divisible_span_bound_below():
    # a space spanned by multiples of a twist-lam section recovers >= lam,
    # here exactly (2, 2) since the pencil construction uses two of them
    frame = ScrollFrame((2, 2, 2))
    ring = GradedRing(9, P)
    model = fourgonal_curve(frame, 2, 2, seed=44)
    restricted = restriction_image(frame, ring, model.quadrics)
    lam0, lam1 = scrollar_bidegrees(frame, restricted)
    assert lam0 >= 2 and lam0 + lam1 == 9 - 5


def test_bidegrees_reject_wrong_dimension():
    frame = ScrollFrame((2, 2, 2))
    with pytest.raises(ModelInconsistencyError):
        scrollar_bidegrees(frame, Subspace.zero(section_dim(frame, 0), P))


def test_scroll_matrix_entries_parametrize_consistently():
    frame = ScrollFrame((1, 2, 3))
    mat = scroll_matrix(frame)
    assert mat.shape == (2, frame.genus - 3)
    for col in range(mat.shape[1]):
        top, bottom = int(mat[0, col]), int(mat[1, col])
        (ti, ta), (bi, ba) = frame.ruling_of(top), frame.ruling_of(bottom)
        assert ti == bi and ta == ba + 1  # same ruling, s-power drops by one


def test_quotient_syzygies_split_by_side():
    for g, a, b in [(8, 2, 1), (10, 3, 2)]:
        frame = ScrollFrame.balanced(g)
        ring = GradedRing(g, P)
        model = fourgonal_curve(frame, a, b, seed=45)
        q1, q2 = fourgonal_sections(model)
        side1 = [twist_down(q1, binary_monomial(i, a), P) for i in range(a + 1)]
        side2 = [twist_down(q2, binary_monomial(i, b), P) for i in range(b + 1)]
        full = scroll_ring_syzygies(frame, ring, side1 + side2)
        s1 = scroll_ring_syzygies(frame, ring, side1)
        s2 = scroll_ring_syzygies(frame, ring, side2)
        assert full.dim == (g - 5) * (g - 3)
        assert (s1.dim, s2.dim) == (a * (g - 3), b * (g - 3))
        e1 = embed_section_syzygies(s1, g, g - 3, 0)
        e2 = embed_section_syzygies(s2, g, g - 3, a + 1)
        assert e1.sum(e2) == full
        assert e1.intersect(e2).dim == 0
