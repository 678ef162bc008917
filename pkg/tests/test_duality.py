import random
from fractions import Fraction

import pytest

from pblab import (
    DualSystem,
    LINE_AT_INFINITY,
    ProjLine,
    ProjPoint,
    centrally_projective,
    check_periodic,
    dual_orbit,
    dual_polygon,
    harmonic_conjugate_line,
    incident,
    join,
    orbit,
    orbit_from_points,
    outer_orbit,
    outer_step,
    polar_line,
    polar_point,
    regular_polygon_vertices,
    right_spherical,
)
from pblab.errors import (
    IndexOutOfRange,
    InfinitePoint,
    StartsAtVertex,
    WrongFamily,
)

from helpers import origin_off_edges, rand_frac, rand_polygon


def aff(x, y):
    return ProjPoint.affine(x, y)


O = aff(0, 0)
CORNER_SQUARE = [aff(-1, -1), aff(-1, 1), aff(1, 1), aff(1, -1)]
DIAMOND = [aff(-1, 0), aff(0, 1), aff(1, 0), aff(0, -1)]


# ---------------------------------------------------------------------------
# the polarity map
# ---------------------------------------------------------------------------

def test_polar_of_center_is_line_at_infinity():
    assert polar_point(O, O).same(LINE_AT_INFINITY)
    assert polar_line(LINE_AT_INFINITY, O).same(O)


def test_polar_frozen_examples():
    assert polar_point(aff(2, 0), O).same(ProjLine(2, 0, -1))
    assert polar_line(ProjLine(1, 1, -1), O).same(aff(1, 1))


def test_polar_line_through_center_is_infinite():
    pole = polar_line(ProjLine(1, -2, 0), O)
    assert pole.is_infinite()


def test_circle_point_lies_on_own_polar():
    # the polar of a point of the unit circle is its tangent line
    c = aff(3, -2)
    p = aff(3, -1)
    tangent = polar_point(p, c)
    assert tangent.same(ProjLine(0, 1, 1))
    assert incident(p, tangent)


def test_polarity_is_an_involution():
    rng = random.Random(11)
    for _ in range(40):
        c = aff(rand_frac(rng), rand_frac(rng))
        p = aff(rand_frac(rng), rand_frac(rng))
        if p.same(c):
            continue
        assert polar_line(polar_point(p, c), c).same(p)
        l = join(p, aff(rand_frac(rng) + 7, rand_frac(rng)))
        assert polar_point(polar_line(l, c), c).same(l)


def test_polarity_transports_incidence():
    rng = random.Random(13)
    kept = 0
    while kept < 30:
        c = aff(rand_frac(rng), rand_frac(rng))
        p = aff(rand_frac(rng), rand_frac(rng))
        q = aff(rand_frac(rng), rand_frac(rng))
        if p.same(c) or q.same(c) or p.same(q):
            continue
        assert incident(q, polar_point(p, c)) == incident(p, polar_point(q, c))
        kept += 1


def test_polarity_rejects_infinite_center():
    with pytest.raises(InfinitePoint):
        polar_point(O, ProjPoint(1, 1, 0))


# ---------------------------------------------------------------------------
# dual polygons
# ---------------------------------------------------------------------------

def test_dual_of_corner_square_is_diamond():
    sys = dual_polygon(centrally_projective(O, CORNER_SQUARE))
    got = [q.to_affine() for q in sys.dual_vertices]
    assert got == [(-1, 0), (0, 1), (1, 0), (0, -1)]


def test_dual_of_diamond_is_corner_square():
    sys = dual_polygon(centrally_projective(O, DIAMOND))
    got = [q.to_affine() for q in sys.dual_vertices]
    assert got == [(-1, 1), (1, 1), (1, -1), (-1, -1)]


def test_dual_polygon_needs_central_table():
    t = right_spherical(aff(0, 0), aff(1, 0), aff(0, 1))
    with pytest.raises(WrongFamily):
        dual_polygon(t)


def test_dual_vertices_are_poles_of_supports():
    rng = random.Random(17)
    verts = rand_polygon(rng, 5)
    o = origin_off_edges(rng, verts)
    t = centrally_projective(aff(*o), [aff(*v) for v in verts])
    sys = dual_polygon(t)
    assert sys.n == 5
    for e, q in zip(t.edges, sys.dual_vertices):
        assert q.same(polar_line(e.support, sys.center))
        assert not q.is_infinite()


# ---------------------------------------------------------------------------
# the outer step and fresh outer orbits
# ---------------------------------------------------------------------------

def test_outer_step_frozen_examples():
    assert outer_step(aff(1, 1), O).to_affine() == (2, 2)
    assert outer_step(aff(1, 0), aff(-3, -1)).to_affine() == (5, 1)


def test_outer_step_fixes_its_vertex():
    q = aff(Fraction(2, 3), -5)
    assert outer_step(q, q).same(q)


def test_outer_step_rejects_infinite_input():
    with pytest.raises(InfinitePoint):
        outer_step(ProjPoint(1, 0, 0), O)
    with pytest.raises(InfinitePoint):
        outer_step(O, ProjPoint(1, 0, 0))


def test_hand_outer_orbit_six_periodic():
    sys = DualSystem(center=O, dual_vertices=(aff(0, 0), aff(1, 0), aff(0, 1)))
    orb = outer_orbit(sys, aff(3, 1), 6)
    got = [p.to_affine() for p in orb.points]
    assert got == [(3, 1), (-3, -1), (5, 1), (-5, 1), (5, -1), (-3, 1), (3, 1)]
    assert orb.is_periodic(6)
    assert not orb.is_periodic(3)
    assert orb.period_residual(6) == 0


def test_outer_orbit_rejects_vertex_start():
    sys = dual_polygon(centrally_projective(O, CORNER_SQUARE))
    with pytest.raises(StartsAtVertex):
        outer_orbit(sys, aff(0, 1), 4)


def test_outer_orbit_period_index_bounds():
    sys = dual_polygon(centrally_projective(O, CORNER_SQUARE))
    orb = outer_orbit(sys, aff(3, 5), 4)
    with pytest.raises(IndexOutOfRange):
        orb.period_residual(0)
    with pytest.raises(IndexOutOfRange):
        orb.period_residual(5)


def test_odd_dual_polygon_always_2n_periodic():
    """n point reflections compose to one point reflection when n is odd,
    so every start returns after 2n steps."""
    rng = random.Random(23)
    for n in (3, 5, 7):
        for _ in range(10):
            qs = tuple(aff(rand_frac(rng), rand_frac(rng)) for _ in range(n))
            start = aff(rand_frac(rng) + 11, rand_frac(rng))
            sys = DualSystem(center=O, dual_vertices=qs)
            orb = outer_orbit(sys, start, 2 * n)
            assert orb.is_periodic(2 * n)
            assert orb.period_residual(2 * n) == 0


def test_even_dual_polygon_generic_start_not_periodic():
    rng = random.Random(29)
    qs = tuple(aff(rand_frac(rng), rand_frac(rng)) for _ in range(4))
    sys = DualSystem(center=O, dual_vertices=qs)
    orb = outer_orbit(sys, aff(17, Fraction(13, 3)), 8)
    # two double steps translate by 2(Q1-Q0)+2(Q3-Q2), generically nonzero
    assert not orb.is_periodic(8)


def test_double_step_translation_identity():
    # N_{k+2} - N_k = 2 (Q_{k+1} - Q_k), the parallelogram of two reflections
    rng = random.Random(31)
    qs = tuple(aff(rand_frac(rng), rand_frac(rng)) for _ in range(5))
    sys = DualSystem(center=O, dual_vertices=qs)
    orb = outer_orbit(sys, aff(-9, 4), 10)
    for k in range(8):
        nk = orb.points[k].to_affine()
        nk2 = orb.points[k + 2].to_affine()
        qa = qs[k % 5].to_affine()
        qb = qs[(k + 1) % 5].to_affine()
        assert nk2[0] - nk[0] == 2 * (qb[0] - qa[0])
        assert nk2[1] - nk[1] == 2 * (qb[1] - qa[1])


def test_odd_alternating_sum_telescopes_to_zero():
    # for odd n the strides 2j and 2j+1 each sweep every vertex once, so the
    # total translation after 2n steps vanishes identically
    rng = random.Random(37)
    for n in (3, 5, 7):
        qs = [(rand_frac(rng), rand_frac(rng)) for _ in range(n)]
        sx = sum(qs[(2 * j + 1) % n][0] - qs[(2 * j) % n][0] for j in range(n))
        sy = sum(qs[(2 * j + 1) % n][1] - qs[(2 * j) % n][1] for j in range(n))
        assert sx == 0 and sy == 0


# ---------------------------------------------------------------------------
# dualised billiard orbits
# ---------------------------------------------------------------------------

def test_square_cycle_dualises_to_point_reflections():
    t = centrally_projective(O, CORNER_SQUARE)
    orb = orbit_from_points(t, aff(-1, 0), aff(0, 1), 5)
    dorb = dual_orbit(t, orb)
    got = [p.to_affine() for p in dorb.points]
    assert got == [(-1, 1), (1, 1), (1, -1), (-1, -1), (-1, 1)]
    assert dorb.start_index == 1
    assert dorb.infinite_at == []
    assert dorb.is_periodic(4)
    assert not dorb.is_periodic(2)


def test_dual_orbit_satisfies_reflection_recurrence():
    rng = random.Random(41)
    for _ in range(15):
        verts = rand_polygon(rng, 4)
        o = origin_off_edges(rng, verts)
        t = centrally_projective(aff(*o), [aff(*v) for v in verts])
        orb = orbit(t, _rand_chord(rng), 7)
        if orb.collapsed:
            continue
        dorb = dual_orbit(t, orb)
        qs = dorb.dual.dual_vertices
        for i in range(len(dorb.points) - 1):
            a, b = dorb.points[i], dorb.points[i + 1]
            if a is None or b is None or a.is_infinite():
                continue
            assert b.same(outer_step(qs[(1 + i) % 4], a))


def _rand_chord(rng):
    from pblab import ChordParam
    return ChordParam(Fraction(rng.randint(1, 19), 20),
                      Fraction(rng.randint(1, 19), 20))


def test_chord_through_center_dualises_to_infinity():
    # a chord through the field origin is fixed by every reflection, so all
    # its dual points are flagged infinite
    t = centrally_projective(O, CORNER_SQUARE)
    orb = orbit_from_points(t, aff(-1, Fraction(1, 2)), aff(-2, 1), 3)
    dorb = dual_orbit(t, orb)
    assert dorb.infinite_at == [0, 1, 2]
    assert all(p is None for p in dorb.points)
    assert dorb.period_residual(2) is None
    assert not dorb.is_periodic(2)


def test_dual_and_primal_period_verdicts_agree():
    rng = random.Random(43)
    checked = 0
    while checked < 10:
        n = rng.choice((3, 5))
        verts = rand_polygon(rng, n)
        o = origin_off_edges(rng, verts)
        t = centrally_projective(aff(*o), [aff(*v) for v in verts])
        chord = _rand_chord(rng)
        primal = check_periodic(t, chord, 2 * n)
        orb = orbit(t, chord, 2 * n + 1)
        if orb.collapsed:
            continue
        dorb = dual_orbit(t, orb)
        if any(p is None for p in dorb.points):
            continue
        assert dorb.is_periodic(2 * n) == primal.is_periodic
        assert primal.is_periodic   # odd central tables close after 2n
        # and both sides refuse the single lap
        half = check_periodic(t, chord, n)
        assert dorb.is_periodic(n) == half.is_periodic
        checked += 1


# ---------------------------------------------------------------------------
# the midpoint form of the reflection law
# ---------------------------------------------------------------------------

def test_harmonic_pencil_with_central_line_dualises_to_midpoint():
    """If the fixed pair of a harmonic pencil contains the line through the
    polarity centre, the poles of the moving pair average to the pole of the
    other fixed line."""
    rng = random.Random(47)
    done = 0
    while done < 25:
        c = aff(rand_frac(rng), rand_frac(rng))
        m = aff(rand_frac(rng) + 5, rand_frac(rng))
        r1 = aff(rand_frac(rng), rand_frac(rng) + 6)
        r2 = aff(rand_frac(rng) + 9, rand_frac(rng) - 7)
        if m.same(c) or m.same(r1) or m.same(r2):
            continue
        central = join(m, c)
        t_line = join(m, r1)
        ell = join(m, r2)
        if t_line.same(central) or ell.same(central) or ell.same(t_line):
            continue
        ell2 = harmonic_conjugate_line(ell, central, t_line)
        poles = [polar_line(l, c) for l in (ell, ell2, t_line)]
        if any(p.is_infinite() for p in poles):
            continue
        (ax, ay), (bx, by), (tx, ty) = (p.to_affine() for p in poles)
        assert tx == (ax + bx) / 2
        assert ty == (ay + by) / 2
        done += 1


def test_square_reflection_midpoints_are_dual_vertices():
    t = centrally_projective(O, CORNER_SQUARE)
    orb = orbit_from_points(t, aff(-1, 0), aff(0, 1), 5)
    dorb = dual_orbit(t, orb)
    qs = [q.to_affine() for q in dorb.dual.dual_vertices]
    pts = [p.to_affine() for p in dorb.points]
    for i in range(len(pts) - 1):
        mid = ((pts[i][0] + pts[i + 1][0]) / 2, (pts[i][1] + pts[i + 1][1]) / 2)
        assert mid == qs[(1 + i) % 4]
