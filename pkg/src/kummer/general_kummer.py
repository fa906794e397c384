"""The classical quartic model of the Kummer surface and its apparatus.

For a genus-2 curve y^2 = f6 x^6 + ... + f0, the surface lives in P^3 with
coordinates (k1, k2, k3, k4); a divisor {(x1,y1), (x2,y2)} maps to
(1, x1+x2, x1x2, k4).  The defining equation is quadratic in k4:

    F1(k1,k2,k3) k4^2 + F2(k1,k2,k3) k4 + F3(k1,k2,k3) = 0.

This module builds that quartic, maps divisors onto it, realises
two-torsion translations as explicit 4x4 matrices, constructs the dual curve
of a Richelot (2,2)-isogeny, derives the special quintic curve whose Kummer
is linearly isomorphic to the fast four-constant model (with the explicit
change of basis), recovers sparse models from factored curves by simultaneous
diagonalization, expands the coordinates as truncated power series in the
local parameters at the identity, and hosts the biquadratic-form table that
drives pseudo-arithmetic on this model.
"""

from __future__ import annotations

import json
import random as _random
from importlib import resources as _resources

from . import unipoly
from .errors import (
    ContractError,
    DegenerateParametersError,
    InternalConsistencyError,
    PrecisionUnavailableError,
    RationalityError,
    SingularCurveError,
)
from .field import Field, FieldElement
from .forms import BivariateSeries, HomogeneousForm
from .linalg import Matrix, determinant, simultaneous_diagonalizer


class Genus2Curve:
    """y^2 = f6 x^6 + ... + f1 x + f0 with distinct roots (genus 2)."""

    __slots__ = ("field", "f")

    def __init__(self, field: Field, coefficients):
        f = tuple(field(c) for c in coefficients)
        if len(f) != 7:
            raise ContractError("a genus-2 curve needs coefficients f0..f6")
        self.field = field
        self.f = f
        self._check_nonsingular()

    def _check_nonsingular(self):
        poly = unipoly.trim(list(self.f))
        if len(poly) - 1 not in (5, 6):
            raise SingularCurveError("the right-hand side must have degree 5 or 6")
        if not unipoly.is_squarefree(poly):
            raise SingularCurveError("the right-hand side has a repeated root")

    def poly(self) -> list:
        return unipoly.trim(list(self.f))

    def rhs(self, x: FieldElement) -> FieldElement:
        return unipoly.evaluate(self.poly(), x)

    def is_on_curve(self, x: FieldElement, y: FieldElement) -> bool:
        return y.square() == self.rhs(x)

    def __eq__(self, other):
        return isinstance(other, Genus2Curve) and self.f == other.f

    def __repr__(self):
        return f"Genus2Curve(f={[c.c0 for c in self.f]!r})"

    def to_json(self):
        return {"f": [c.to_json() for c in self.f]}


class GeneralKummerSurface:
    __slots__ = ("curve", "field", "F1", "F2", "F3", "quartic")

    def __init__(self, curve: Genus2Curve, F1, F2, F3, quartic):
        self.curve = curve
        self.field = curve.field
        self.F1 = F1
        self.F2 = F2
        self.F3 = F3
        self.quartic = quartic

    def identity_point(self):
        z = self.field.zero()
        return (z, z, z, self.field.one())

    def on_surface(self, pt) -> bool:
        return self.quartic.evaluate(tuple(pt)).is_zero()

    def __repr__(self):
        return f"GeneralKummer({self.curve!r})"


def surface_from_curve(curve: Genus2Curve) -> GeneralKummerSurface:
    """The defining quartic F1 k4^2 + F2 k4 + F3 of the curve's Kummer surface."""
    field = curve.field
    f0, f1, f2, f3, f4, f5, f6 = curve.f
    one = field.one()

    def form(items, degree):
        return HomogeneousForm.from_terms(field, degree, [(e, c) for e, c in items if not c.is_zero()])

    two = field(2)
    four = field(4)
    F1 = form(
        [((0, 2, 0, 0), one), ((1, 0, 1, 0), -four)],
        2,
    )
    F2 = form(
        [
            ((3, 0, 0, 0), -four * f0),
            ((2, 1, 0, 0), -two * f1),
            ((2, 0, 1, 0), -four * f2),
            ((1, 1, 1, 0), -two * f3),
            ((1, 0, 2, 0), -four * f4),
            ((0, 1, 2, 0), -two * f5),
            ((0, 0, 3, 0), -four * f6),
        ],
        3,
    )
    F3 = form(
        [
            ((4, 0, 0, 0), -four * f0 * f2 + f1.square()),
            ((3, 1, 0, 0), -four * f0 * f3),
            ((3, 0, 1, 0), -two * f1 * f3),
            ((2, 2, 0, 0), -four * f0 * f4),
            ((2, 1, 1, 0), four * f0 * f5 - four * f1 * f4),
            ((2, 0, 2, 0), -four * f0 * f6 + two * f1 * f5 - four * f2 * f4 + f3.square()),
            ((1, 3, 0, 0), -four * f0 * f5),
            ((1, 2, 1, 0), field(8) * f0 * f6 - four * f1 * f5),
            ((0, 4, 0, 0), -four * f0 * f6),
            ((1, 1, 2, 0), four * f1 * f6 - four * f2 * f5),
            ((1, 0, 3, 0), -two * f3 * f5),
            ((0, 3, 1, 0), -four * f1 * f6),
            ((0, 2, 2, 0), -four * f2 * f6),
            ((0, 1, 3, 0), -four * f3 * f6),
            ((0, 0, 4, 0), -four * f4 * f6 + f5.square()),
        ],
        4,
    )
    quartic = F1.mul_variable_power(3, 2) + F2.mul_variable_power(3, 1) + F3
    return GeneralKummerSurface(curve, F1, F2, F3, quartic)


def f0_pairing(curve: Genus2Curve, x1: FieldElement, x2: FieldElement) -> FieldElement:
    """The symmetric polynomial pairing the two x-coordinates of a divisor."""
    f0, f1, f2, f3, f4, f5, f6 = curve.f
    two = curve.field(2)
    s = x1 + x2
    p = x1 * x2
    return (
        two * f0
        + f1 * s
        + two * f2 * p
        + f3 * p * s
        + two * f4 * p.square()
        + f5 * p.square() * s
        + two * f6 * p.square() * p
    )


def divisor_to_kummer(curve: Genus2Curve, pt1, pt2):
    """Image (1, x1+x2, x1 x2, k4) of the divisor {(x1,y1), (x2,y2)}."""
    x1, y1 = pt1
    x2, y2 = pt2
    if not curve.is_on_curve(x1, y1) or not curve.is_on_curve(x2, y2):
        raise ContractError("divisor support is not on the curve")
    if x1 == x2:
        raise ContractError("divisors with repeated x-coordinate are not supported")
    field = curve.field
    num = f0_pairing(curve, x1, x2) - (y1 * y2 + y1 * y2)
    k4 = num * (x1 - x2).square().inverse()
    return (field.one(), x1 + x2, x1 * x2, k4)


def two_torsion_matrix(field: Field, g, h) -> Matrix:
    """Translation matrix for the two-torsion class of the quadratic factor g.

    The curve is y^2 = g(x) h(x) with deg g <= 2 and deg h <= 4; the returned
    4x4 matrix W acts on column vectors (k1, k2, k3, k4).  W^2 is scalar and
    the eigenvalues square to the resultant of g and h.
    """
    g = list(g) + [field.zero()] * (3 - len(g))
    h = list(h) + [field.zero()] * (5 - len(h))
    g0, g1, g2 = g[0], g[1], g[2]
    h0, h1, h2, h3, h4 = h[0], h[1], h[2], h[3], h[4]
    two = field(2)
    four = field(4)
    w41 = (
        -g1 * g2 * g2 * h0 * h1
        + g1 * g1 * g2 * h0 * h2
        + g0 * g2 * g2 * h1 * h1
        - four * g0 * g2 * g2 * h0 * h2
        - g0 * g1 * g2 * h1 * h2
        + g0 * g1 * g2 * h0 * h3
        - g0 * g0 * g2 * h1 * h3
    )
    w42 = (
        g1 * g1 * g2 * h0 * h3
        - g1 * g1 * g1 * h0 * h4
        - two * g0 * g2 * g2 * h0 * h3
        - g0 * g1 * g2 * h1 * h3
        + four * g0 * g1 * g2 * h0 * h4
        + g0 * g1 * g1 * h1 * h4
        - two * g0 * g0 * g2 * h1 * h4
    )
    w43 = (
        -g0 * g2 * g2 * h1 * h3
        - g0 * g1 * g2 * h2 * h3
        + g0 * g1 * g2 * h1 * h4
        + g0 * g1 * g1 * h2 * h4
        + g0 * g0 * g2 * h3 * h3
        - four * g0 * g0 * g2 * h2 * h4
        - g0 * g0 * g1 * h3 * h4
    )
    w44 = -(g2 * g2 * h0) - g0 * g2 * h2 - g0 * g0 * h4
    rows = [
        [
            g2 * g2 * h0 + g0 * g2 * h2 - g0 * g0 * h4,
            g0 * g2 * h3 - g0 * g1 * h4,
            g1 * g2 * h3 - g1 * g1 * h4 + two * g0 * g2 * h4,
            g2,
        ],
        [
            -(g0 * g2 * h1) - g0 * g1 * h2 + g0 * g0 * h3,
            g2 * g2 * h0 - g0 * g2 * h2 + g0 * g0 * h4,
            g2 * g2 * h1 - g1 * g2 * h2 - g0 * g2 * h3,
            -g1,
        ],
        [
            -(g1 * g1 * h0) + two * g0 * g2 * h0 + g0 * g1 * h1,
            -(g1 * g2 * h0) + g0 * g2 * h1,
            -(g2 * g2 * h0) + g0 * g2 * h2 + g0 * g0 * h4,
            g0,
        ],
        [w41, w42, w43, w44],
    ]
    return Matrix(field, rows)


def quadratic_twist(surface: GeneralKummerSurface, c: FieldElement):
    """Twisted surface for c y^2 = f(x), with the induced point map.

    The twisted curve is y^2 = c f(x); points map by (k1,k2,k3,k4) ->
    (k1,k2,k3,c k4).
    """
    if c.is_zero():
        raise ContractError("twist by zero")
    curve = Genus2Curve(surface.field, [c * fi for fi in surface.curve.f])
    twisted = surface_from_curve(curve)

    def point_map(pt):
        k1, k2, k3, k4 = pt
        return (k1, k2, k3, c * k4)

    return twisted, point_map


def richelot_codomain(field: Field, H1, H2, H3) -> Genus2Curve:
    """Dual curve of the (2,2)-isogeny determined by y^2 = H1 H2 H3."""
    qs = [list(H) + [field.zero()] * (3 - len(H)) for H in (H1, H2, H3)]
    delta = determinant(Matrix(field, [[q[2], q[1], q[0]] for q in qs]))
    if delta.is_zero():
        raise DegenerateParametersError("factorization determinant vanishes", vanishing="det")
    d1, d2, d3 = (unipoly.derivative(unipoly.trim(list(q))) for q in qs)
    q1, q2, q3 = (unipoly.trim(list(q)) for q in qs)
    b1 = unipoly.sub(unipoly.mul(d2, q3), unipoly.mul(q2, d3))
    b2 = unipoly.sub(unipoly.mul(d3, q1), unipoly.mul(q3, d1))
    b3 = unipoly.sub(unipoly.mul(d1, q2), unipoly.mul(q1, d2))
    rhs = unipoly.scale(unipoly.mul(unipoly.mul(b1, b2), b3), delta)
    coeffs = rhs + [field.zero()] * (7 - len(rhs))
    return Genus2Curve(field, coeffs[:7])


def _theta_core(field: Field, a, b, c, d):
    thetas = tuple(field(x) for x in (a, b, c, d))
    a, b, c, d = thetas
    sq = tuple(x.square() for x in thetas)
    u, v = sq[0] + sq[1], sq[2] + sq[3]
    w, s = sq[0] - sq[1], sq[2] - sq[3]
    A, B, C, D = u + v, u - v, w + s, w - s
    return thetas, sq, (A, B, C, D)


def curve_d(field: Field, a, b, c, d) -> Genus2Curve:
    """The quintic curve whose Kummer is linearly isomorphic to the fast model."""
    (a, b, c, d), _, (A, B, C, D) = _theta_core(field, a, b, c, d)
    n1 = a * c - b * d
    n2 = a * c + b * d
    for name, v in (("AB", A * B), ("ac-bd", n1)):
        if v.is_zero():
            raise DegenerateParametersError(f"{name} vanishes", vanishing=name)
    rho = C * D * (A * B).inverse()
    sigma_ = n2 * C * (n1 * A).inverse()
    tau = n2 * D * (n1 * B).inverse()
    pts = [field.zero(), field.one(), rho, sigma_, tau]
    if len({(x.c0, x.c1) for x in pts}) != 5:
        raise DegenerateParametersError("branch points collide", vanishing="0,1,rho,sigma,tau")
    quintic = unipoly.from_roots(field, pts)
    return Genus2Curve(field, [quintic[i] if i < len(quintic) else field.zero() for i in range(7)])


def rosenhain_curve(field: Field, a, b, c, d) -> Genus2Curve | None:
    """Rosenhain curve attached to the theta constants; None when the square
    root of CD/(AB) is missing from the field."""
    (a, b, c, d), sq, (A, B, C, D) = _theta_core(field, a, b, c, d)
    ab = A * B
    if ab.is_zero():
        raise DegenerateParametersError("AB vanishes", vanishing="AB")
    gamma = (C * D * ab.inverse()).sqrt()
    if gamma is None:
        return None
    a2, b2, c2, d2 = sq
    one = field.one()
    denom_lam = b2 * d2
    denom_mu = d2 * (one - gamma)
    denom_nu = b2 * (one - gamma)
    if denom_lam.is_zero() or denom_mu.is_zero() or denom_nu.is_zero():
        raise DegenerateParametersError("Rosenhain denominator vanishes", vanishing="denominator")
    lam = a2 * c2 * denom_lam.inverse()
    mu = c2 * (one + gamma) * denom_mu.inverse()
    nu = a2 * (one + gamma) * denom_nu.inverse()
    pts = [field.zero(), one, lam, mu, nu]
    if len({(x.c0, x.c1) for x in pts}) != 5:
        raise DegenerateParametersError("Rosenhain branch points collide", vanishing="0,1,l,m,n")
    quintic = unipoly.from_roots(field, pts)
    return Genus2Curve(field, [quintic[i] if i < len(quintic) else field.zero() for i in range(7)])


def rosenhain_values(field: Field, a, b, c, d):
    """(lambda, mu, nu) when rational, else None."""
    curve = rosenhain_curve(field, a, b, c, d)
    if curve is None:
        return None
    rts = [r for r in unipoly.roots(curve.poly(), _random.Random(0))]
    return rts


def matrix_m(field: Field, a, b, c, d) -> Matrix:
    """Change of basis from the Rosenhain curve's Kummer to the squared model."""
    (a, b, c, d), sq, (A, B, C, D) = _theta_core(field, a, b, c, d)
    gamma = (C * D * (A * B).inverse()).sqrt()
    if gamma is None:
        raise RationalityError("CD/(AB) is not a square; the Rosenhain map needs it")
    a2, b2, c2, d2 = sq
    one = field.one()
    lam = a2 * c2 * (b2 * d2).inverse()
    mu = c2 * (one + gamma) * (d2 * (one - gamma)).inverse()
    nu = a2 * (one + gamma) * (b2 * (one - gamma)).inverse()
    rows = [
        [a2 * mu * (lam + nu), -(a2 * mu), a2 * (mu + one), -a2],
        [b2 * lam * nu * (one + mu), -(b2 * lam * nu), b2 * (lam + nu), -b2],
        [c2 * nu * (lam + mu), -(c2 * nu), c2 * (nu + one), -c2],
        [d2 * lam * mu * (one + nu), -(d2 * lam * mu), d2 * (lam + mu), -d2],
    ]
    m = Matrix(field, rows)
    if determinant(m).is_zero():
        raise DegenerateParametersError("change-of-basis matrix M is singular", vanishing="det M")
    return m


def matrix_p(field: Field, a, b, c, d) -> Matrix:
    """Columns are common eigenvectors of the two-torsion translations of the
    special quintic curve; k = P (X, Y, Z, T) maps its Kummer to the fast model."""
    (a, b, c, d), sq, (A, B, C, D) = _theta_core(field, a, b, c, d)
    a2, b2, c2, d2 = sq
    a4, b4, c4, d4 = (x.square() for x in sq)
    two = field(2)
    m1 = c2 * (a4 + b4 - c4 + d4) - two * a2 * b2 * d2
    m2 = d2 * (a4 + b4 + c4 - d4) - two * a2 * b2 * c2
    m3 = a2 * (a4 - b4 - c4 - d4) + two * b2 * c2 * d2
    m4 = b2 * (a4 - b4 + c4 + d4) - two * a2 * c2 * d2
    n1 = a * c - b * d
    n2 = a * c + b * d
    AB = A * B
    CD = C * D
    n1sq = n1.square()
    r1 = n1sq * AB.square()
    r2 = two * n1 * AB
    r3 = n1 * n2 * AB * CD
    r4 = two * n2 * CD
    rows = [
        [c * r1, -(d * r1), -(a * r1), b * r1],
        [a * r2 * m1, b * r2 * m2, -(c * r2 * m3), d * r2 * m4],
        [c * r3, d * r3, -(a * r3), -(b * r3)],
        [a * r4 * m1, -(b * r4 * m2), -(c * r4 * m3), -(d * r4 * m4)],
    ]
    p = Matrix(field, rows)
    if determinant(p).is_zero():
        raise DegenerateParametersError("change-of-basis matrix is singular", vanishing="det P")
    return p


def verify_fast_map(field: Field, a, b, c, d) -> bool:
    """Check that k = P (X,Y,Z,T) carries the quintic curve's Kummer quartic
    to a scalar multiple of the fast quartic of (a, b, c, d)."""
    from . import fast_kummer as fk

    try:
        curve = curve_d(field, a, b, c, d)
        surface = surface_from_curve(curve)
        p = matrix_p(field, a, b, c, d)
        fast = fk.new_fast_surface(field, a, b, c, d)
    except DegenerateParametersError:
        return False
    composed = surface.quartic.compose_linear(p.entries)
    target = fast.quartic()
    lead = composed.coefficient((4, 0, 0, 0))
    if lead.is_zero():
        return False
    return composed == target.scale(lead)


def sparse_model_from_factored_curve(field: Field, H1, H2, H3, eig_pairs=None):
    """Diagonalise the two-torsion translations of y^2 = H1 H2 H3.

    Requires res(H1, H2 H3) and res(H2, H1 H3) to be squares.  Returns the
    change-of-basis matrix P (columns normalised to leading coordinate 1) and
    the transformed quartic, supported on the eleven even/diagonal monomials.
    eig_pairs optionally fixes the eigenvalue ordering (two pairs).
    """
    H1 = unipoly.trim([field(c) for c in H1])
    H2 = unipoly.trim([field(c) for c in H2])
    H3 = unipoly.trim([field(c) for c in H3])
    sextic = unipoly.mul(unipoly.mul(H1, H2), H3)
    coeffs = sextic + [field.zero()] * (7 - len(sextic))
    curve = Genus2Curve(field, coeffs[:7])
    surface = surface_from_curve(curve)
    r1 = unipoly.resultant(H1, unipoly.mul(H2, H3))
    r2 = unipoly.resultant(H2, unipoly.mul(H1, H3))
    e1 = r1.sqrt()
    e2 = r2.sqrt()
    if e1 is None or e2 is None:
        raise RationalityError("two-torsion eigenvalues are not rational (non-square resultant)")
    w1 = two_torsion_matrix(field, H1, unipoly.mul(H2, H3))
    w2 = two_torsion_matrix(field, H2, unipoly.mul(H1, H3))
    if eig_pairs is None:
        eig_pairs = ((e1, -e1), (e2, -e2))
    p = simultaneous_diagonalizer(w1, w2, eig_pairs[0], eig_pairs[1])
    transformed = surface.quartic.compose_linear(p.entries)
    allowed = {
        (4, 0, 0, 0), (0, 4, 0, 0), (0, 0, 4, 0), (0, 0, 0, 4),
        (2, 2, 0, 0), (0, 0, 2, 2), (2, 0, 2, 0), (0, 2, 0, 2),
        (2, 0, 0, 2), (0, 2, 2, 0), (1, 1, 1, 1),
    }
    if not set(transformed.terms) <= allowed:
        raise InternalConsistencyError("transformed quartic is not in sparse shape")
    return p, transformed


# -- power series at the identity ---------------------------------------------------


def power_series_coordinates(curve: Genus2Curve, truncation: int = 8):
    """(k1, k2, k3, k4) as truncated series in the local parameters s1, s2.

    Stored terms go up to total degree 6; the expansion beyond that is not
    available, so truncation > 8 is refused.
    """
    if truncation > 8:
        raise PrecisionUnavailableError("series coordinates are stored to degree 6 (O(8))")
    field = curve.field
    f0, f1, f2, f3, f4, f5, f6 = curve.f
    one = field.one()
    two = field(2)

    def S(items):
        terms = {}
        for (d1, d2), c in items:
            if not c.is_zero() and d1 + d2 < truncation:
                terms[(d1, d2)] = terms.get((d1, d2), field.zero()) + c
        return BivariateSeries(field, truncation, terms)

    k1 = S([
        ((0, 2), one),
        ((0, 4), -f2),
        ((4, 0), -f6),
        ((0, 6), field(4) * f0 * f4),
        ((1, 5), field(8) * f0 * f5),
        ((2, 4), field(18) * f0 * f6),
        ((0, 6), -(f1 * f3)),
        ((2, 4), f1 * f5),
        ((3, 3), field(4) * f1 * f6),
        ((0, 6), two * f2.square()),
        ((4, 2), two * f2 * f6),
        ((6, 0), two * f4 * f6),
    ])
    k2 = S([
        ((1, 1), two),
        ((0, 4), f1),
        ((2, 2), f3),
        ((4, 0), f5),
        ((0, 6), f0 * f3),
        ((1, 5), field(8) * f0 * f4),
        ((2, 4), field(16) * f0 * f5),
        ((3, 3), field(40) * f0 * f6),
        ((0, 6), -two * f1 * f2),
        ((2, 4), two * f1 * f4),
        ((3, 3), field(6) * f1 * f5),
        ((4, 2), field(16) * f1 * f6),
        ((2, 4), -(f2 * f3)),
        ((4, 2), two * f2 * f5),
        ((5, 1), field(8) * f2 * f6),
        ((4, 2), -(f3 * f4)),
        ((6, 0), f3 * f6),
        ((6, 0), -two * f4 * f5),
    ])
    k3 = S([
        ((2, 0), one),
        ((0, 4), -f0),
        ((4, 0), -f4),
        ((0, 6), two * f0 * f2),
        ((2, 4), two * f0 * f4),
        ((3, 3), field(4) * f0 * f5),
        ((4, 2), field(18) * f0 * f6),
        ((4, 2), f1 * f5),
        ((5, 1), field(8) * f1 * f6),
        ((6, 0), field(4) * f2 * f6),
        ((6, 0), -(f3 * f5)),
        ((6, 0), two * f4.square()),
    ])
    k4 = BivariateSeries(field, truncation, {(0, 0): one})
    return (k1, k2, k3, k4)


# -- biquadratic table + pseudo-arithmetic -------------------------------------------


def reduce_general_representative(surface: GeneralKummerSurface, f: HomogeneousForm) -> HomogeneousForm:
    """Canonical representative of f modulo the general Kummer quartic.

    The quartic is monic in the monomial k2^2 k4^2 (the head of F1 k4^2), so
    rewriting every multiple of that monomial is a terminating, confluent
    normal form; each rewrite strictly lowers the (k4-degree, k2-degree) of
    the touched term.
    """
    quartic = surface.quartic
    cur = f
    while True:
        hits = [(e, c) for e, c in cur.terms.items() if e[1] >= 2 and e[3] >= 2]
        if not hits:
            return cur
        q = HomogeneousForm(
            cur.field,
            cur.degree - 4,
            {(e[0], e[1] - 2, e[2], e[3] - 2): c for e, c in hits},
        )
        cur = cur - q * quartic


_BUNDLED_TABLE = None


def _bundled_table_data():
    global _BUNDLED_TABLE
    if _BUNDLED_TABLE is None:
        with _resources.files("kummer.data").joinpath("general_biquadratics.json").open() as fh:
            _BUNDLED_TABLE = json.load(fh)
    return _BUNDLED_TABLE


_KEYS = ["B11", "B12", "B13", "B14", "B22", "B23", "B24", "B33", "B34", "B44"]


class BiquadraticTable:
    """The ten symmetric biquadratic forms of a general Kummer surface.

    Entry (i, j) satisfies, projectively in (P, Q),
        B_ij(k(P), k(Q)) = k_i(P+Q) k_j(P-Q) + k_i(P-Q) k_j(P+Q).
    Specialised at a fixed curve; evaluation and one-sided symbolic forms are
    provided, plus pseudo-arithmetic (doubling, differential addition) built
    on the rank-2 structure of the matrix.
    """

    __slots__ = ("surface", "entries")

    def __init__(self, surface: GeneralKummerSurface, entries):
        self.surface = surface
        self.entries = entries

    def eval_matrix(self, P, Q):
        field = self.surface.field
        p_pows = _monomial_values(P)
        q_pows = _monomial_values(Q)
        mat = [[field.zero()] * 4 for _ in range(4)]
        for (i, j), terms in self.entries.items():
            acc = field.zero()
            for ep, eq, c in terms:
                acc = acc + c * p_pows[ep] * q_pows[eq]
            mat[i][j] = acc
            mat[j][i] = acc
        return mat

    def symbolic_matrix(self, Q):
        """R_ij(k1..k4) = B_ij((k1..k4), Q) as quadratic forms."""
        field = self.surface.field
        q_pows = _monomial_values(Q)
        mat = [[None] * 4 for _ in range(4)]
        for (i, j), terms in self.entries.items():
            acc: dict = {}
            for ep, eq, c in terms:
                v = c * q_pows[eq]
                if v.is_zero():
                    continue
                cur = acc.get(ep)
                s = v if cur is None else cur + v
                if s.is_zero():
                    acc.pop(ep, None)
                else:
                    acc[ep] = s
            form = HomogeneousForm(field, 2, acc)
            mat[i][j] = form
            mat[j][i] = form
        return mat

    # -- pseudo-arithmetic ------------------------------------------------------

    def double(self, P):
        """k(2P) from the column of B(P, P) against the identity (0,0,0,1)."""
        B = self.eval_matrix(P, P)
        two = self.surface.field(2)
        out = (two * B[0][3], two * B[1][3], two * B[2][3], B[3][3])
        if all(c.is_zero() for c in out):
            raise InternalConsistencyError("doubling produced the zero vector")
        return out

    def diff_add(self, P, Q, PmQ):
        """k(P+Q) given k(P-Q), by rank-2 recovery from B(P, Q)."""
        B = self.eval_matrix(P, Q)
        z = tuple(PmQ)
        j = next((k for k in range(4) if not z[k].is_zero()), None)
        if j is None:
            raise ContractError("difference point is zero")
        zj2 = z[j] + z[j]
        out = tuple(zj2 * B[i][j] - z[i] * B[j][j] for i in range(4))
        if all(c.is_zero() for c in out):
            raise InternalConsistencyError("rank-2 recovery failed")
        return out

    def multiples(self, P, upto: int) -> list:
        out = [tuple(P)]
        if upto >= 2:
            out.append(self.double(P))
        for m in range(3, upto + 1):
            out.append(self.diff_add(out[m - 2], P, out[m - 3]))
        return out

    def scalar_mul(self, n: int, P):
        n = abs(n)
        if n == 0:
            return self.surface.identity_point()
        ms = self.multiples(P, n)
        return ms[n - 1]

    def is_N_torsion(self, P, N: int) -> bool:
        from .fast_kummer import projective_eq, _prime_divisors

        ident = self.surface.identity_point()
        if not projective_eq(self.scalar_mul(N, P), ident):
            return False
        for q in _prime_divisors(N):
            if projective_eq(self.scalar_mul(N // q, P), ident):
                return False
        return True


def _monomial_values(P):
    """Values of all ten degree-2 monomials at a 4-tuple, keyed by exponents."""
    P = tuple(P)
    out = {}
    for i in range(4):
        for j in range(i, 4):
            e = [0, 0, 0, 0]
            e[i] += 1
            e[j] += 1
            out[tuple(e)] = P[i] * P[j]
    return out


def load_general_biquadratics(curve: Genus2Curve, table_data=None) -> BiquadraticTable:
    """Specialise the bundled generic biquadratic table at a curve."""
    if table_data is None:
        table_data = _bundled_table_data()
    surface = surface_from_curve(curve)
    field = curve.field

    def coeff_value(poly_terms):
        acc = field.zero()
        for term in poly_terms:
            v = field(int(term["integer"]))
            for idx, e in enumerate(term["exponents"]):
                for _ in range(e):
                    v = v * curve.f[idx]
            acc = acc + v
        return acc

    entries = {}
    for key in _KEYS:
        i, j = int(key[1]) - 1, int(key[2]) - 1
        terms = []
        for entry in table_data[key]:
            c = coeff_value(entry["coeff"])
            if c.is_zero():
                continue
            terms.append((tuple(entry["exp_p"]), tuple(entry["exp_q"]), c))
        entries[(i, j)] = terms
    return BiquadraticTable(surface, entries)


def two_torsion_divisors(curve: Genus2Curve, rng: _random.Random):
    """Finite-support two-torsion data: (g, h, W, k(E)) per quadratic split.

    Scans products of the curve's irreducible factors of total degree 2 with
    rational, distinct roots handled via the resultant machinery; classes with
    support at infinity are skipped.
    """
    field = curve.field
    poly = curve.poly()
    lead = poly[-1]
    factors = unipoly.irreducible_factors(poly, rng)
    out = []
    n = len(factors)
    seen = set()
    for mask in range(1, 1 << n):
        deg = sum(unipoly.degree(factors[k]) for k in range(n) if mask & (1 << k))
        if deg != 2:
            continue
        if mask in seen:
            continue
        seen.add(mask)
        g = [field.one()]
        h = [lead]
        for k in range(n):
            if mask & (1 << k):
                g = unipoly.mul(g, factors[k])
            else:
                h = unipoly.mul(h, factors[k])
        w = two_torsion_matrix(field, g, h)
        # image of the divisor {(r1,0),(r2,0)}: k = (1, r1+r2, r1 r2, F0/(r1-r2)^2)
        s = -g[1]
        pr = g[0]
        disc = g[1].square() - field(4) * g[0]
        if disc.is_zero():
            continue
        f0p = _f0_sym(curve, s, pr)
        k4 = f0p * disc.inverse()
        ke = (field.one(), s, pr, k4)
        out.append((g, h, w, ke))
    return out


def _f0_sym(curve: Genus2Curve, s: FieldElement, p: FieldElement) -> FieldElement:
    """f0_pairing expressed through x1+x2 = s and x1 x2 = p."""
    f0, f1, f2, f3, f4, f5, f6 = curve.f
    two = curve.field(2)
    return (
        two * f0
        + f1 * s
        + two * f2 * p
        + f3 * p * s
        + two * f4 * p.square()
        + f5 * p.square() * s
        + two * f6 * p.square() * p
    )


def validate_biquadratics(table: BiquadraticTable, rng: _random.Random, trials: int = 3) -> bool:
    """Oracle for the table: at every finite two-torsion class E with matrix W,
    B(k(P), k(E)) must be projectively the rank-1 matrix (W k(P)) (W k(P))^t."""
    surface = table.surface
    curve = surface.curve
    classes = two_torsion_divisors(curve, rng)
    if not classes:
        return True
    for _ in range(trials):
        P = sample_general_point(surface, rng)
        for g, h, w, ke in classes:
            if not surface.on_surface(ke):
                return False
            img = w.mul_vector(list(P))
            B = table.eval_matrix(P, ke)
            flatB = [B[i][j] for i in range(4) for j in range(4)]
            flatR = [img[i] * img[j] for i in range(4) for j in range(4)]
            k = next((t for t, v in enumerate(flatR) if not v.is_zero()), None)
            if k is None or flatB[k].is_zero():
                return False
            if not all(flatB[t] * flatR[k] == flatR[t] * flatB[k] for t in range(16)):
                return False
    return True


def sample_general_point(surface: GeneralKummerSurface, rng: _random.Random, budget: int = 200):
    """Random point: k1 = 1, random k2, k3, solve the quadratic in k4."""
    field = surface.field
    one = field.one()
    for _ in range(budget):
        k2 = field.random(rng)
        k3 = field.random(rng)
        part = (one, k2, k3, field.zero())
        a_ = surface.F1.evaluate(part)
        b_ = surface.F2.evaluate(part)
        c_ = surface.F3.evaluate(part)
        if a_.is_zero():
            if b_.is_zero():
                continue
            k4 = -c_ * b_.inverse()
            return (one, k2, k3, k4)
        disc = b_.square() - field(4) * a_ * c_
        r = disc.sqrt()
        if r is None:
            continue
        k4 = (-b_ + r) * (field(2) * a_).inverse()
        pt = (one, k2, k3, k4)
        if surface.on_surface(pt):
            return pt
    raise DegenerateParametersError("could not sample a surface point")
