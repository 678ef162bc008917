"""Shared test utilities: seeded rational generators, an independent
affine-chart oracle for the reflection step, and projective transforms.

The oracle never touches the package's homogeneous kernel: lines are affine
(A, B, C) triples with Ax + By + C = 0 over Fractions, pencils are read off
against an auxiliary vertical line, and the harmonic partner is solved from
the cross-ratio equation directly.
"""

from contextlib import contextmanager
from fractions import Fraction
import random

from pblab import ProjPoint


# ---------------------------------------------------------------------------
# acceptance criterion registry (reported by conftest at session end)
# ---------------------------------------------------------------------------

CRITERIA = []


@contextmanager
def criterion(label):
    """Run one acceptance criterion's checks, recording pass/fail by label."""
    ok = False
    try:
        yield
        ok = True
    finally:
        CRITERIA.append((label, ok))


# ---------------------------------------------------------------------------
# random rational data
# ---------------------------------------------------------------------------

def rand_frac(rng: random.Random, span: int = 3, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-span * den, span * den), den)


def rand_affine_pair(rng, span=3, den=12):
    return rand_frac(rng, span, den), rand_frac(rng, span, den)


def rand_point(rng, span=3, den=12) -> ProjPoint:
    return ProjPoint.affine(*rand_affine_pair(rng, span, den))


def _area2(p, q, r):
    # twice the signed triangle area, Fractions in and out
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def rand_triangle(rng, span=3, den=12):
    """Three affine Fraction pairs in general position."""
    while True:
        pts = [rand_affine_pair(rng, span, den) for _ in range(3)]
        if _area2(*pts) != 0:
            return pts


def rand_convex_quad(rng, span=4, den=8):
    """Four affine pairs forming a strictly convex quadrilateral in order."""
    while True:
        pts = [rand_affine_pair(rng, span, den) for _ in range(4)]
        cx = sum(p[0] for p in pts) / 4
        cy = sum(p[1] for p in pts) / 4
        pts.sort(key=lambda p: _pseudo_angle(p[0] - cx, p[1] - cy))
        signs = []
        for i in range(4):
            signs.append(_area2(pts[i], pts[(i + 1) % 4], pts[(i + 2) % 4]))
        if all(s > 0 for s in signs) or all(s < 0 for s in signs):
            return pts


def _pseudo_angle(dx, dy):
    # monotone in angle without trig, exact over Fractions
    if dx == dy == 0:
        return Fraction(0)
    if dy >= 0:
        return Fraction(dx - dy, abs(dx) + abs(dy)) - 2
    return 2 - Fraction(dx - dy, abs(dx) + abs(dy))


def rand_polygon(rng, n, span=5, den=4):
    """n affine pairs with distinct consecutive points, no three consecutive
    collinear; not necessarily convex."""
    while True:
        pts = []
        ok = True
        for k in range(n):
            # spread the points around a circle-ish ring so consecutive
            # points rarely collide, then randomise within the cell
            base = _ring_point(k, n, span)
            pts.append((base[0] + rand_frac(rng, 1, den),
                        base[1] + rand_frac(rng, 1, den)))
        for k in range(n):
            if pts[k] == pts[(k + 1) % n]:
                ok = False
                break
            if _area2(pts[k], pts[(k + 1) % n], pts[(k + 2) % n]) == 0:
                ok = False
                break
        if ok:
            return pts


_RING = {}


def _ring_point(k, n, span):
    # fixed rational ring positions, cached per (n, span)
    key = (n, span)
    if key not in _RING:
        import math
        pts = []
        for i in range(n):
            ang = 2 * math.pi * i / n
            pts.append((Fraction(round(span * math.cos(ang) * 16), 16),
                        Fraction(round(span * math.sin(ang) * 16), 16)))
        _RING[key] = pts
    return _RING[key][k]


def origin_off_edges(rng, pts, span=1, den=16):
    """A Fraction pair lying on none of the cyclic edge support lines."""
    n = len(pts)
    while True:
        o = (rand_frac(rng, span, den), rand_frac(rng, span, den))
        if all(_area2(pts[k], pts[(k + 1) % n], o) != 0 for k in range(n)):
            return o


# ---------------------------------------------------------------------------
# affine line algebra (oracle side, no package code)
# ---------------------------------------------------------------------------

def oline(p, q):
    """Line A x + B y + C = 0 through two affine pairs."""
    a = q[1] - p[1]
    b = p[0] - q[0]
    c = -(a * p[0] + b * p[1])
    if a == 0 and b == 0:
        raise ValueError("coincident points")
    return (a, b, c)


def ointersect(l1, l2):
    """Affine intersection point or None when parallel."""
    det = l1[0] * l2[1] - l1[1] * l2[0]
    if det == 0:
        return None
    x = (l1[1] * l2[2] - l1[2] * l2[1]) / det
    y = (l1[2] * l2[0] - l1[0] * l2[2]) / det
    return (x, y)


def on_oline(p, l):
    return l[0] * p[0] + l[1] * p[1] + l[2] == 0


def oracle_cross_ratio(a, b, c, d):
    """((a-c)(b-d)) / ((a-d)(b-c)) on scalars; None encodes infinity."""
    num = (a - c) * (b - d)
    den = (a - d) * (b - c)
    if den == 0:
        return None
    return num / den


def oracle_conjugate(a, c, d):
    """Solve oracle_cross_ratio(a, b, c, d) == -1 for b; None = infinity."""
    den = 2 * a - c - d
    if den == 0:
        return None
    return ((a - c) * d + (a - d) * c) / den


_AUX_OFF = [Fraction(101), Fraction(103), Fraction(107), Fraction(109),
            Fraction(113), Fraction(127)]


def _aux_lines():
    # far-away lines in four directions; at most three can be parallel to
    # the pencil lines, so some candidate always cuts all of them
    for off in _AUX_OFF:
        yield (Fraction(1), Fraction(0), -off)    # x = off
        yield (Fraction(0), Fraction(1), -off)    # y = off
        yield (Fraction(1), Fraction(-1), -off)   # x - y = off
        yield (Fraction(1), Fraction(2), -off)    # x + 2y = off


def oracle_reflect(m_cur, incoming, transverse, support):
    """Harmonic partner of `incoming` w.r.t. {transverse, support} in the
    pencil at m_cur, via a linear coordinate on a far-away auxiliary line."""
    for aux in _aux_lines():
        if on_oline(m_cur, aux):
            continue
        pa = ointersect(incoming, aux)
        pc = ointersect(transverse, aux)
        pd = ointersect(support, aux)
        if pa is None or pc is None or pd is None:
            continue
        # x is injective on aux unless aux is vertical; then use y
        axis = 1 if aux[1] == 0 else 0
        b = oracle_conjugate(pa[axis], pc[axis], pd[axis])
        if b is None:
            continue
        if axis == 1:
            pb = (-aux[2] / aux[0], b)
        else:
            pb = (b, (-aux[2] - aux[0] * b) / aux[1])
        return oline(m_cur, pb)
    raise RuntimeError("no usable auxiliary line among the candidates")


def oracle_step(vertices, pivots, k, m_prev, m_cur):
    """Next orbit point, all-affine: reflect the chord at m_cur on edge k
    (support = vertex k to k+1, transverse through pivots[k]) and cut the
    outgoing line with edge k+1's support.  Returns an affine pair or None
    when the configuration degenerates.
    """
    n = len(vertices)
    support = oline(vertices[k % n], vertices[(k + 1) % n])
    if not on_oline(m_cur, support):
        raise AssertionError("oracle fed a point off its edge")
    transverse = oline(m_cur, pivots[k % n])
    incoming = oline(m_prev, m_cur)
    outgoing = oracle_reflect(m_cur, incoming, transverse, support)
    nxt_support = oline(vertices[(k + 1) % n], vertices[(k + 2) % n])
    return ointersect(outgoing, nxt_support)


def oracle_orbit(vertices, pivots, m0, m1, steps):
    """Iterate oracle_step; stops early on degeneracy."""
    pts = [m0, m1]
    for k in range(1, steps):
        nxt = oracle_step(vertices, pivots, k, pts[k - 1], pts[k])
        if nxt is None:
            break
        pts.append(nxt)
    return pts


def edge_point(vertices, k, t):
    """(1-t) * V_k + t * V_{k+1} as an affine pair."""
    n = len(vertices)
    p, q = vertices[k % n], vertices[(k + 1) % n]
    return ((1 - t) * p[0] + t * q[0], (1 - t) * p[1] + t * q[1])


# ---------------------------------------------------------------------------
# projective transformations (kept test-side on purpose)
# ---------------------------------------------------------------------------

def rand_projective_map(rng, span=3):
    """Nonsingular 3x3 Fraction matrix."""
    while True:
        m = [[Fraction(rng.randint(-span, span)) for _ in range(3)]
             for _ in range(3)]
        if _det3(m) != 0:
            return m


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def adjugate3(m):
    c = [[Fraction(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            sub = [[m[r][s] for s in range(3) if s != i]
                   for r in range(3) if r != j]
            c[i][j] = (-1) ** (i + j) * (sub[0][0] * sub[1][1]
                                         - sub[0][1] * sub[1][0])
    return c


def apply_map_point(m, p: ProjPoint) -> ProjPoint:
    x, y, z = p.coords
    return ProjPoint(m[0][0] * x + m[0][1] * y + m[0][2] * z,
                     m[1][0] * x + m[1][1] * y + m[1][2] * z,
                     m[2][0] * x + m[2][1] * y + m[2][2] * z)


def apply_map_line(m, l):
    # lines transform by the inverse transpose, i.e. adj(M)^T up to scale
    from pblab import ProjLine
    adj = adjugate3(m)
    a, b, c = l.coords
    return ProjLine(adj[0][0] * a + adj[1][0] * b + adj[2][0] * c,
                    adj[0][1] * a + adj[1][1] * b + adj[2][1] * c,
                    adj[0][2] * a + adj[1][2] * b + adj[2][2] * c)
