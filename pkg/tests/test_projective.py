import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pblab import (
    INF,
    LINE_AT_INFINITY,
    SQRT3,
    ProjLine,
    ProjPoint,
    Sqrt3,
    cross_ratio_lines,
    cross_ratio_points,
    harmonic_conjugate_line,
    harmonic_conjugate_point,
    incident,
    join,
    meet,
    triple_residual,
)
from pblab.errors import (
    BadTransversal,
    DegenerateJoin,
    DegenerateMeet,
    InfinitePoint,
    NotCollinear,
    NotConcurrent,
)
from pblab.projective import residual_is_zero

from helpers import (
    apply_map_line,
    apply_map_point,
    oracle_conjugate,
    oracle_cross_ratio,
    rand_point,
    rand_projective_map,
)


fracs = st.fractions(min_value=-4, max_value=4, max_denominator=12)


def xaxis_point(t):
    return ProjPoint.affine(t, 0)


# ---------------------------------------------------------------------------
# representatives and equality
# ---------------------------------------------------------------------------

def test_exact_canonical_form_clears_content_and_sign():
    assert ProjPoint(2, 4, 6).coords == (1, 2, 3)
    assert ProjPoint(-2, 4, 6).coords == (1, -2, -3)
    assert ProjPoint(Fraction(1, 2), Fraction(1, 3), 0).coords == (3, 2, 0)


def test_same_ignores_scale_including_irrational():
    p = ProjPoint(1, SQRT3, 2)
    q = ProjPoint(SQRT3, 3, 2 * SQRT3)
    assert p.same(q)
    assert not p.same(ProjPoint(1, SQRT3, 3))


def test_mixed_input_demotes_to_float():
    p = ProjPoint(1, 0.5, 1)
    assert not p.is_exact
    q = ProjPoint(2, 1.0, 2)
    assert p.same(q)


def test_zero_triple_rejected():
    with pytest.raises(ValueError):
        ProjPoint(0, 0, 0)
    with pytest.raises(ValueError):
        ProjLine(0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        ProjPoint(float("nan"), 1.0, 1.0)


def test_affine_roundtrip_and_infinity():
    p = ProjPoint.affine(Fraction(3, 4), Fraction(-2))
    assert p.to_affine() == (Fraction(3, 4), Fraction(-2))
    inf = ProjPoint(1, 1, 0)
    assert inf.is_infinite()
    with pytest.raises(InfinitePoint):
        inf.to_affine()
    assert incident(inf, LINE_AT_INFINITY)


# ---------------------------------------------------------------------------
# join / meet / incidence
# ---------------------------------------------------------------------------

def test_meet_of_axes_is_origin():
    assert meet(ProjLine(0, 1, 0), ProjLine(1, 0, 0)).same(ProjPoint(0, 0, 1))


def test_parallel_verticals_meet_at_infinity():
    assert meet(ProjLine(2, 0, -1), ProjLine(1, 0, 0)).same(ProjPoint(0, 1, 0))


def test_meet_same_line_degenerate():
    with pytest.raises(DegenerateMeet):
        meet(ProjLine(0, 1, 0), ProjLine(0, 2, 0))


def test_join_same_point_degenerate():
    with pytest.raises(DegenerateJoin):
        join(ProjPoint.affine(1, 2), ProjPoint(2, 4, 2))


def test_incident_examples():
    assert incident(ProjPoint(1, 1, 1), ProjLine(1, 1, -2))
    assert incident(ProjPoint(1, 0, 0), ProjLine(0, 0, 1))
    assert not incident(ProjPoint(1, 1, 1), ProjLine(1, 0, 0))


@given(st.tuples(fracs, fracs), st.tuples(fracs, fracs))
def test_join_meet_duality(p1, p2):
    p = ProjPoint.affine(*p1)
    q = ProjPoint.affine(*p2)
    if p.same(q):
        return
    l = join(p, q)
    assert incident(p, l) and incident(q, l)


@given(st.tuples(fracs, fracs, fracs), st.tuples(fracs, fracs, fracs))
def test_meet_incident_both(l1, l2):
    try:
        a = ProjLine(*l1)
        b = ProjLine(*l2)
    except ValueError:
        return
    if a.same(b):
        return
    p = meet(a, b)
    assert incident(p, a) and incident(p, b)


# ---------------------------------------------------------------------------
# cross-ratio of collinear points
# ---------------------------------------------------------------------------

def test_cross_ratio_0123_is_four_thirds():
    got = cross_ratio_points(*[xaxis_point(t) for t in (0, 1, 2, 3)])
    assert got == Fraction(4, 3)
    assert got == oracle_cross_ratio(*map(Fraction, (0, 1, 2, 3)))


def test_cross_ratio_with_infinite_second_point():
    a = xaxis_point(0)
    b = ProjPoint(1, 0, 0)
    c = xaxis_point(1)
    d = xaxis_point(-1)
    assert cross_ratio_points(a, b, c, d) == -1


def test_cross_ratio_collision_gives_infinity():
    a, b, c, d = (xaxis_point(t) for t in (0, 1, 1, 3))
    assert cross_ratio_points(a, b, c, d) is INF


def test_cross_ratio_not_collinear():
    with pytest.raises(NotCollinear):
        cross_ratio_points(xaxis_point(0), xaxis_point(1), xaxis_point(2),
                           ProjPoint.affine(0, 1))


@given(fracs, fracs, fracs, fracs)
def test_cross_ratio_matches_affine_oracle(a, b, c, d):
    pts = [xaxis_point(t) for t in (a, b, c, d)]
    if a == b or c == d or a == d or b == c:
        return  # outside the documented domain
    got = cross_ratio_points(*pts)
    want = oracle_cross_ratio(a, b, c, d)
    if want is None:
        assert got is INF
    else:
        assert got == want


@given(fracs, fracs, fracs, fracs)
def test_cross_ratio_swap_symmetries(a, b, c, d):
    if len({a, b, c, d}) < 4:
        return
    pts = [xaxis_point(t) for t in (a, b, c, d)]
    cr = cross_ratio_points(pts[0], pts[1], pts[2], pts[3])
    assert cross_ratio_points(pts[1], pts[0], pts[3], pts[2]) == cr
    flipped = cross_ratio_points(pts[1], pts[0], pts[2], pts[3])
    if cr is not INF and cr != 0:
        assert flipped == 1 / cr


def test_cross_ratio_on_arbitrary_line():
    # same parameters transported onto a slanted line
    base = ProjPoint.affine(Fraction(1), Fraction(2))
    direction = (Fraction(3), Fraction(-1))
    pts = [ProjPoint.affine(base.to_affine()[0] + t * direction[0],
                            base.to_affine()[1] + t * direction[1])
           for t in (0, 1, 2, 3)]
    assert cross_ratio_points(*pts) == Fraction(4, 3)


def test_cross_ratio_float_mode():
    pts = [ProjPoint.affine(float(t), 0.0) for t in (0, 1, 2, 3)]
    assert abs(cross_ratio_points(*pts) - 4 / 3) < 1e-12


# ---------------------------------------------------------------------------
# cross-ratio of concurrent lines
# ---------------------------------------------------------------------------

def pencil_through_origin(*slopes):
    out = []
    for s in slopes:
        if s is None:
            out.append(ProjLine(1, 0, 0))     # vertical
        else:
            out.append(ProjLine(s, -1, 0))    # y = s x
    return out


def test_symmetric_pencil_is_harmonic():
    l1, l2, l3, l4 = pencil_through_origin(1, -1, None, 0)
    assert cross_ratio_lines(l1, l2, l3, l4) == -1


def test_pencil_slopes_0123_with_transversal():
    l1, l2, l3, l4 = pencil_through_origin(0, 1, 2, 3)
    tr = ProjLine(1, 0, -1)   # x = 1
    assert cross_ratio_lines(l1, l2, l3, l4, transversal=tr) == Fraction(4, 3)


def test_transversal_independence():
    rng = random.Random(7)
    l1, l2, l3, l4 = pencil_through_origin(Fraction(1, 2), Fraction(-3), 2, 5)
    vals = set()
    for _ in range(3):
        while True:
            a, b = rand_point(rng), rand_point(rng)
            if a.same(b):
                continue
            tr = join(a, b)
            if not incident(ProjPoint(0, 0, 1), tr):
                break
        vals.add(cross_ratio_lines(l1, l2, l3, l4, transversal=tr))
    assert len(vals) == 1
    assert cross_ratio_lines(l1, l2, l3, l4) in vals


def test_bad_transversal_through_vertex():
    l1, l2, l3, l4 = pencil_through_origin(0, 1, 2, 3)
    with pytest.raises(BadTransversal):
        cross_ratio_lines(l1, l2, l3, l4, transversal=ProjLine(1, 1, 0))


def test_not_concurrent_lines():
    with pytest.raises(NotConcurrent):
        cross_ratio_lines(ProjLine(1, 0, 0), ProjLine(0, 1, 0),
                          ProjLine(1, 1, -1), ProjLine(1, -1, -1))


# ---------------------------------------------------------------------------
# harmonic conjugates
# ---------------------------------------------------------------------------

def test_conjugate_of_midpoint_is_at_infinity():
    b = harmonic_conjugate_point(xaxis_point(0), xaxis_point(1), xaxis_point(-1))
    assert b.same(ProjPoint(1, 0, 0))


def test_conjugate_quarter_point():
    b = harmonic_conjugate_point(xaxis_point(Fraction(1, 4)),
                                 xaxis_point(0), xaxis_point(1))
    assert b.to_affine() == (Fraction(-1, 2), Fraction(0))
    assert cross_ratio_points(xaxis_point(Fraction(1, 4)), b,
                              xaxis_point(0), xaxis_point(1)) == -1


@given(fracs, fracs, fracs)
def test_conjugate_point_involution_and_oracle(a, c, d):
    if c == d or a in (c, d):
        return
    pa, pc, pd = (xaxis_point(t) for t in (a, c, d))
    b = harmonic_conjugate_point(pa, pc, pd)
    want = oracle_conjugate(a, c, d)
    if want is None:
        assert b.same(ProjPoint(1, 0, 0))
    else:
        assert b.to_affine() == (want, 0)
    back = harmonic_conjugate_point(b, pc, pd)
    assert back.same(pa)


def test_conjugate_point_fixes_the_pair():
    pc, pd = xaxis_point(2), xaxis_point(5)
    assert harmonic_conjugate_point(pc, pc, pd).same(pc)
    assert harmonic_conjugate_point(pd, pc, pd).same(pd)


def test_conjugate_point_errors():
    with pytest.raises(DegenerateJoin):
        harmonic_conjugate_point(xaxis_point(0), xaxis_point(1), xaxis_point(1))
    with pytest.raises(NotCollinear):
        harmonic_conjugate_point(ProjPoint.affine(0, 1), xaxis_point(1),
                                 xaxis_point(2))


def test_conjugate_line_mirror_example():
    l = harmonic_conjugate_line(ProjLine(1, -1, 0),   # y = x
                                ProjLine(1, 0, 0),    # y-axis
                                ProjLine(0, 1, 0))    # x-axis
    assert l.same(ProjLine(1, 1, 0))                  # y = -x


def test_conjugate_line_fixed_lines():
    L, T = ProjLine(1, 0, 0), ProjLine(0, 1, 0)
    assert harmonic_conjugate_line(L, L, T).same(L)
    assert harmonic_conjugate_line(T, L, T).same(T)


@given(fracs, fracs, fracs)
def test_conjugate_line_involution(s1, s2, s3):
    if len({s1, s2, s3}) < 3:
        return
    l, L, T = pencil_through_origin(s1, s2, s3)
    out = harmonic_conjugate_line(l, L, T)
    assert harmonic_conjugate_line(out, L, T).same(l)
    assert cross_ratio_lines(l, out, L, T) == -1


def test_conjugate_line_not_concurrent():
    with pytest.raises(NotConcurrent):
        harmonic_conjugate_line(ProjLine(1, 0, -1), ProjLine(1, 0, 0),
                                ProjLine(0, 1, 0))


# ---------------------------------------------------------------------------
# projective invariance
# ---------------------------------------------------------------------------

def test_cross_ratio_invariant_under_projective_maps():
    rng = random.Random(20260818)
    pts = [xaxis_point(t) for t in (0, 1, 2, 3)]
    for _ in range(25):
        m = rand_projective_map(rng)
        imgs = [apply_map_point(m, p) for p in pts]
        if any(True for i in range(4) for j in range(i + 1, 4)
               if imgs[i].same(imgs[j])):
            continue
        assert cross_ratio_points(*imgs) == Fraction(4, 3)


def test_line_pencil_invariant_under_projective_maps():
    rng = random.Random(99)
    lines = pencil_through_origin(0, 1, 2, 3)
    for _ in range(25):
        m = rand_projective_map(rng)
        imgs = [apply_map_line(m, l) for l in lines]
        assert cross_ratio_lines(*imgs) == Fraction(4, 3)


# ---------------------------------------------------------------------------
# residuals
# ---------------------------------------------------------------------------

def test_residual_zero_iff_same_exact():
    p = ProjPoint(1, 2, 3)
    assert triple_residual(p, ProjPoint(2, 4, 6)) == 0
    r = triple_residual(p, ProjPoint(1, 2, 4))
    assert r > 0 and not residual_is_zero(r)


def test_residual_float_sign_flip():
    p = ProjPoint(0.6, 0.8, 0.0)
    q = ProjPoint(-0.6, -0.8, 0.0)
    assert triple_residual(p, q) < 1e-15
