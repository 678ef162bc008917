"""Homogeneous points and lines of the real projective plane.

Provides join/meet/incidence, cross-ratios of collinear points and of
concurrent lines, and harmonic conjugates.  All operations work over exact
rational (optionally Q(sqrt 3)) scalars or over floats; equality of
projective objects is equality up to a nonzero scale factor.

Cross-ratios follow the convention

    cr(a, b; c, d) = ((a - c)(b - d)) / ((a - d)(b - c))

evaluated projectively, so the harmonic configurations used by the
reflection law satisfy cr = -1.  A vanishing denominator yields the tagged
value ``INF`` rather than a float overflow.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .errors import (
    BadTransversal,
    DegenerateJoin,
    DegenerateMeet,
    DegeneratePencil,
    IllConditioned,
    InfinitePoint,
    NotCollinear,
    NotConcurrent,
)
from .scalars import (
    CONDITION_FLOOR,
    EPS,
    Scalar,
    Sqrt3,
    is_exact_scalar,
    rational_parts,
    scalar_sign,
)


class Infinity:
    """Tagged cross-ratio value for a vanishing denominator."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


INF = Infinity()

CrossRatio = Union[Scalar, Infinity]

_Triple = Tuple[Scalar, Scalar, Scalar]


# ---------------------------------------------------------------------------
# triple arithmetic
# ---------------------------------------------------------------------------

def _cross(u: _Triple, v: _Triple) -> _Triple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def _dot(u: _Triple, v: _Triple):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _is_zero_triple(t: _Triple, exact: bool) -> bool:
    if exact:
        return all(v == 0 for v in t)
    return max(abs(v) for v in t) < EPS


def _reduce_exact(t: _Triple) -> _Triple:
    """Scale an exact triple to integer content 1, first nonzero coordinate positive."""
    parts = [f for v in t for f in rational_parts(v)]
    den = 1
    for f in parts:
        den = math.lcm(den, f.denominator)
    g = 0
    for f in parts:
        g = math.gcd(g, f.numerator * (den // f.denominator))
    if g == 0:
        raise ValueError("zero homogeneous triple")
    scale = Fraction(den, g)
    out = tuple(v * scale for v in t)
    for v in out:
        s = scalar_sign(v)
        if s == 0:
            continue
        if s < 0:
            out = tuple(-u for u in out)
        break
    return out


def _normalize_float(t: Tuple[float, float, float]) -> Tuple[float, float, float]:
    """Unit Euclidean norm, first clearly-nonzero coordinate positive."""
    norm = math.sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2])
    if norm == 0.0:
        raise ValueError("zero homogeneous triple")
    out = (t[0] / norm, t[1] / norm, t[2] / norm)
    for v in out:
        if abs(v) < CONDITION_FLOOR:
            continue
        if v < 0:
            out = (-out[0], -out[1], -out[2])
        break
    return out


def _coerce_triple(coords: Sequence) -> Tuple[_Triple, bool]:
    """Validate and canonicalize a coordinate triple.  Returns (triple, is_exact)."""
    xs = tuple(coords)
    if len(xs) != 3:
        raise ValueError("homogeneous coordinates need exactly three entries")
    if any(isinstance(v, float) for v in xs):
        fs = tuple(float(v) for v in xs)
        if any(math.isnan(v) or math.isinf(v) for v in fs):
            raise ValueError("coordinates must be finite numbers")
        return _normalize_float(fs), False
    out = []
    for v in xs:
        if isinstance(v, bool) or not is_exact_scalar(v):
            raise TypeError(f"unsupported coordinate type {type(v).__name__}")
        out.append(Fraction(v) if isinstance(v, int) else v)
    return _reduce_exact(tuple(out)), True


class _Homogeneous:
    """Shared behaviour of points and lines: a triple modulo nonzero scale."""

    __slots__ = ("coords", "is_exact")

    def __init__(self, x, y=None, z=None):
        coords = x if y is None else (x, y, z)
        triple, exact = _coerce_triple(coords)
        object.__setattr__(self, "coords", triple)
        object.__setattr__(self, "is_exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def same(self, other) -> bool:
        """Projective equality: the cross product of representatives vanishes."""
        if type(other) is not type(self):
            return NotImplemented
        exact = self.is_exact and other.is_exact
        return _is_zero_triple(_cross(self.coords, other.coords), exact)

    def __eq__(self, other):
        return self.same(other)

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}{self.coords!r}"


class ProjPoint(_Homogeneous):
    """Point of RP^2 as a homogeneous triple (x, y, z), z = 0 at infinity."""

    @classmethod
    def affine(cls, x, y) -> "ProjPoint":
        one = 1.0 if isinstance(x, float) or isinstance(y, float) else 1
        return cls(x, y, one)

    def is_infinite(self) -> bool:
        z = self.coords[2]
        return z == 0 if self.is_exact else abs(z) < EPS

    def to_affine(self):
        """(x/z, y/z); raises InfinitePoint when z vanishes."""
        if self.is_infinite():
            raise InfinitePoint(f"point at infinity has no affine chart: {self!r}")
        x, y, z = self.coords
        return (x / z, y / z)


class ProjLine(_Homogeneous):
    """Line of RP^2 as coefficients (a, b, c) of a x + b y + c z = 0."""

    @classmethod
    def through(cls, p: ProjPoint, q: ProjPoint) -> "ProjLine":
        return join(p, q)


LINE_AT_INFINITY = ProjLine(0, 0, 1)


def join(p: ProjPoint, q: ProjPoint) -> ProjLine:
    """Line through two distinct points."""
    exact = p.is_exact and q.is_exact
    c = _cross(p.coords, q.coords)
    if _is_zero_triple(c, exact):
        raise DegenerateJoin(f"coincident points {p!r} and {q!r} span no line")
    return ProjLine(c)


def meet(l: ProjLine, m: ProjLine) -> ProjPoint:
    """Intersection point of two distinct lines."""
    exact = l.is_exact and m.is_exact
    c = _cross(l.coords, m.coords)
    if _is_zero_triple(c, exact):
        raise DegenerateMeet(f"coincident lines {l!r} and {m!r} meet everywhere")
    return ProjPoint(c)


def incident(p: ProjPoint, l: ProjLine) -> bool:
    """Whether the point lies on the line (within EPS in float mode)."""
    s = _dot(p.coords, l.coords)
    if p.is_exact and l.is_exact:
        return s == 0
    return abs(s) < EPS


# ---------------------------------------------------------------------------
# cross-ratios
# ---------------------------------------------------------------------------

def _span_component_exact(reps: Sequence[_Triple]):
    """Common line direction of an exact collinear family, plus the index used
    to read off scalar multiples of it."""
    base = None
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            c = _cross(reps[i], reps[j])
            if any(v != 0 for v in c):
                base = c
                break
        if base is not None:
            break
    if base is None:
        raise IllConditioned("all four elements coincide; cross-ratio undefined")
    k = next(i for i, v in enumerate(base) if v != 0)
    return base, k


def _span_direction_float(reps: Sequence[_Triple]):
    """Best-conditioned common direction for a float collinear family."""
    best, best_norm = None, 0.0
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            c = _cross(reps[i], reps[j])
            n = math.sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2])
            if n > best_norm:
                best, best_norm = c, n
    if best is None or best_norm < CONDITION_FLOOR:
        raise IllConditioned("configuration too degenerate for a float cross-ratio")
    return tuple(v / best_norm for v in best)


def _cross_ratio_of_triples(reps: Sequence[_Triple], exact: bool, complaint) -> CrossRatio:
    a, b, c, d = reps
    if exact:
        base, k = _span_component_exact(reps)
        for r in reps:
            if _dot(r, base) != 0:
                raise complaint("element off the common span")
        mu_ac = _cross(a, c)[k]
        mu_bd = _cross(b, d)[k]
        mu_ad = _cross(a, d)[k]
        mu_bc = _cross(b, c)[k]
        num = mu_ac * mu_bd
        den = mu_ad * mu_bc
        if den == 0:
            if num == 0:
                raise IllConditioned("cross-ratio is 0/0 for this quadruple")
            return INF
        return num / den
    base = _span_direction_float(reps)
    for r in reps:
        if abs(_dot(r, base)) >= EPS:
            raise complaint("element off the common span")

    def mu(u, v):
        m = _dot(_cross(u, v), base)
        return 0.0 if abs(m) < EPS else m

    num = mu(a, c) * mu(b, d)
    den = mu(a, d) * mu(b, c)
    if den == 0.0:
        if num == 0.0:
            raise IllConditioned("cross-ratio is 0/0 for this quadruple")
        return INF
    return num / den


def cross_ratio_points(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint) -> CrossRatio:
    """Cross-ratio cr(a, b; c, d) of four collinear points.

    Of the six point pairs only {a,c}, {a,d}, {b,c}, {b,d} may coincide;
    those produce the values 0 or INF.
    """
    pts = (a, b, c, d)
    exact = all(p.is_exact for p in pts)
    reps = [p.coords for p in pts]

    def complaint(msg):
        return NotCollinear(f"cross-ratio needs collinear points: {msg}")

    return _cross_ratio_of_triples(reps, exact, complaint)


def _pencil_vertex(lines: Sequence[ProjLine]) -> ProjPoint:
    exact = all(l.is_exact for l in lines)
    reps = [l.coords for l in lines]
    if exact:
        base, _ = _span_component_exact(reps)
    else:
        base = _span_direction_float(reps)
    vertex = ProjPoint(base)
    for l in lines:
        if not incident(vertex, l):
            raise NotConcurrent("cross-ratio needs concurrent lines")
    return vertex


def synthesize_transversal(vertex: ProjPoint) -> ProjLine:
    """Deterministic line avoiding a given point.

    The polar of the vertex in the unit conic x^2 + y^2 - z^2 = 0, falling
    back to a coordinate axis when the vertex lies on that conic.
    """
    x, y, z = vertex.coords
    polar = ProjLine(x, y, -z)
    if not incident(vertex, polar):
        return polar
    for axis in (ProjLine(1, 0, 0), ProjLine(0, 1, 0), ProjLine(0, 0, 1)):
        if not incident(vertex, axis):
            return axis
    raise IllConditioned("no coordinate axis avoids the pencil vertex")


def cross_ratio_lines(
    l1: ProjLine,
    l2: ProjLine,
    l3: ProjLine,
    l4: ProjLine,
    transversal: Optional[ProjLine] = None,
) -> CrossRatio:
    """Cross-ratio of four concurrent lines.

    Equal to the cross-ratio of the four intersection points with any line
    missing the pencil vertex; the value does not depend on that choice.
    """
    lines = (l1, l2, l3, l4)
    vertex = _pencil_vertex(lines)
    if transversal is None:
        transversal = synthesize_transversal(vertex)
    elif incident(vertex, transversal):
        raise BadTransversal("transversal passes through the pencil vertex")
    pts = [meet(l, transversal) for l in lines]
    return cross_ratio_points(*pts)


# ---------------------------------------------------------------------------
# harmonic conjugates
# ---------------------------------------------------------------------------

def _solve_span(a: _Triple, c: _Triple, d: _Triple, exact: bool):
    """Coefficients (s, t) with a ~ s*c + t*d, or None when a is off the span."""
    n = _cross(c, d)
    if exact:
        if all(v == 0 for v in n):
            return None
        k = max(range(3), key=lambda i: 1 if n[i] != 0 else 0)
    else:
        norm = math.sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2])
        if norm < CONDITION_FLOOR:
            return None
        k = max(range(3), key=lambda i: abs(n[i]))
    i, j = [idx for idx in range(3) if idx != k]
    det = c[i] * d[j] - c[j] * d[i]
    s = (a[i] * d[j] - a[j] * d[i]) / det
    t = (c[i] * a[j] - c[j] * a[i]) / det
    resid = a[k] - (s * c[k] + t * d[k])
    if exact:
        if resid != 0:
            return None
    else:
        bound = EPS * max(1.0, abs(s), abs(t))
        if abs(resid) > bound:
            return None
    return s, t


def harmonic_conjugate_point(a: ProjPoint, c: ProjPoint, d: ProjPoint) -> ProjPoint:
    """The point b on line cd with cr(a, b; c, d) = -1.

    Writing a = s*c + t*d in the span of the pair, the conjugate is
    s*c - t*d.  This extends continuously to the fixed points b = c (at
    a = c) and b = d (at a = d).
    """
    if c.same(d):
        raise DegenerateJoin("reference points of a harmonic conjugate must differ")
    exact = a.is_exact and c.is_exact and d.is_exact
    st = _solve_span(a.coords, c.coords, d.coords, exact)
    if st is None:
        raise NotCollinear("point is not on the line of the reference pair")
    s, t = st
    return ProjPoint(tuple(s * cv - t * dv for cv, dv in zip(c.coords, d.coords)))


def harmonic_conjugate_line(l: ProjLine, big_l: ProjLine, t_line: ProjLine) -> ProjLine:
    """The line l' through the common point with cr(l, l'; L, T) = -1.

    Same span formula as for points, applied to coefficient triples; the
    reflection law of projective billiards is this map with L the transverse
    line and T the edge's supporting line.
    """
    if big_l.same(t_line):
        raise DegeneratePencil("reference lines of a harmonic conjugate must differ")
    exact = l.is_exact and big_l.is_exact and t_line.is_exact
    st = _solve_span(l.coords, big_l.coords, t_line.coords, exact)
    if st is None:
        raise NotConcurrent("line misses the vertex of the reference pencil")
    s, t = st
    return ProjLine(tuple(s * lv - t * tv for lv, tv in zip(big_l.coords, t_line.coords)))


# ---------------------------------------------------------------------------
# residuals
# ---------------------------------------------------------------------------

def _leading_one(t: _Triple) -> _Triple:
    lead = next(v for v in t if v != 0)
    return tuple(v / lead for v in t)


def triple_residual(u: _Homogeneous, v: _Homogeneous) -> Scalar:
    """Scale-invariant distance between two projective objects.

    Exact mode: L-infinity distance of leading-one canonical forms, exactly 0
    iff the objects are projectively equal.  Float mode: sign-free
    L-infinity distance of unit-norm representatives.
    """
    if u.is_exact and v.is_exact:
        cu = _leading_one(u.coords)
        cv = _leading_one(v.coords)
        return max(abs(a - b) for a, b in zip(cu, cv))
    uu = _normalize_float(tuple(float(x) for x in u.coords))
    vv = _normalize_float(tuple(float(x) for x in v.coords))
    diff = max(abs(a - b) for a, b in zip(uu, vv))
    summ = max(abs(a + b) for a, b in zip(uu, vv))
    return min(diff, summ)


def residual_is_zero(res: Scalar) -> bool:
    """Interpret a residual under the ambient numeric policy."""
    if isinstance(res, float):
        return abs(res) < EPS
    return res == 0
