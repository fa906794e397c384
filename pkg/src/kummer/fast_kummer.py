"""The fast four-constant model of the Kummer surface.

A surface is parameterised by theta constants (a, b, c, d); the defining
quartic is

    X^4 + Y^4 + Z^4 + T^4 - F(X^2T^2 + Y^2Z^2) - G(X^2Z^2 + Y^2T^2)
        - H(X^2Y^2 + Z^2T^2) + 2E XYZT = 0,

with E, F, G, H derived from the theta constants.  The identity point is
(a, b, c, d) itself.  This module provides point arithmetic (biquadratic
pairs, pseudo-doubling, differential addition, a Montgomery-style ladder),
the sixteen two-torsion translations, the Hadamard map, division polynomials,
and point sampling utilities.

All denominators appearing in the biquadratic forms are inverted once at
surface construction with a single batched inversion, so the per-call
arithmetic is division free.  Points lazily cache their squares, the Hadamard
transform of their squares and their pairwise coordinate products, which the
ladder and the biquadratics share.
"""

from __future__ import annotations

import random as _random

from . import unipoly
from .errors import (
    ContractError,
    DegenerateParametersError,
    InternalConsistencyError,
    SamplingFailureError,
)
from .field import Field, FieldElement, batch_invert
from .forms import HomogeneousForm, SignedPermutation, partition_class

# The sixteen two-torsion translations, identity first: row-major order of
# sign patterns within each coordinate permutation block.
_SIGMA_SPECS = [
    ((0, 1, 2, 3), (1, 1, 1, 1)),
    ((0, 1, 2, 3), (1, 1, -1, -1)),
    ((0, 1, 2, 3), (1, -1, 1, -1)),
    ((0, 1, 2, 3), (1, -1, -1, 1)),
    ((1, 0, 3, 2), (1, 1, 1, 1)),
    ((1, 0, 3, 2), (1, 1, -1, -1)),
    ((1, 0, 3, 2), (1, -1, 1, -1)),
    ((1, 0, 3, 2), (1, -1, -1, 1)),
    ((2, 3, 0, 1), (1, 1, 1, 1)),
    ((2, 3, 0, 1), (1, 1, -1, -1)),
    ((2, 3, 0, 1), (1, -1, 1, -1)),
    ((2, 3, 0, 1), (1, -1, -1, 1)),
    ((3, 2, 1, 0), (1, 1, 1, 1)),
    ((3, 2, 1, 0), (1, 1, -1, -1)),
    ((3, 2, 1, 0), (1, -1, 1, -1)),
    ((3, 2, 1, 0), (1, -1, -1, 1)),
]

SIGMAS = [SignedPermutation(p, s) for p, s in _SIGMA_SPECS]

# off-diagonal biquadratic layout: (i, j) -> (index of first pair product,
# index of second pair product) into the point's pair-product tuple
# (XY, ZT, XZ, YT, XT, YZ)
_OFFDIAG_PRODUCTS = {
    (0, 1): (0, 1),
    (2, 3): (0, 1),
    (0, 2): (2, 3),
    (1, 3): (2, 3),
    (0, 3): (4, 5),
    (1, 2): (4, 5),
}

_OFFDIAG_MONOMIALS = {
    (0, 1): ((1, 1, 0, 0), (0, 0, 1, 1)),
    (2, 3): ((1, 1, 0, 0), (0, 0, 1, 1)),
    (0, 2): ((1, 0, 1, 0), (0, 1, 0, 1)),
    (1, 3): ((1, 0, 1, 0), (0, 1, 0, 1)),
    (0, 3): ((1, 0, 0, 1), (0, 1, 1, 0)),
    (1, 2): ((1, 0, 0, 1), (0, 1, 1, 0)),
}

_COMPLEMENT = {(0, 1): (2, 3), (0, 2): (1, 3), (0, 3): (1, 2)}

_DIAG_MONOMIALS = ((2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2))


def _hadamard4(x, y, z, t):
    u, v = x + y, z + t
    w, s = x - y, z - t
    return (u + v, u - v, w + s, w - s)


class KummerPoint:
    """Projective point on a fast Kummer surface, with lazy cached transforms."""

    __slots__ = ("coords", "_squares", "_had_squares", "_prods", "_weighted")

    def __init__(self, coords):
        coords = tuple(coords)
        if len(coords) != 4:
            raise ContractError("a Kummer point has four coordinates")
        if all(c.is_zero() for c in coords):
            raise ContractError("(0:0:0:0) is not a projective point")
        self.coords = coords
        self._squares = None
        self._had_squares = None
        self._prods = None
        self._weighted = None

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    @property
    def field(self):
        return self.coords[0].field

    def squares(self):
        if self._squares is None:
            self._squares = tuple(c.square() for c in self.coords)
        return self._squares

    def had_squares(self):
        if self._had_squares is None:
            self._had_squares = _hadamard4(*self.squares())
        return self._had_squares

    def pair_products(self):
        if self._prods is None:
            x, y, z, t = self.coords
            self._prods = (x * y, z * t, x * z, y * t, x * t, y * z)
        return self._prods

    def weighted_had_squares(self, params: FastKummerParams):
        """Hadamard of squares scaled by the inverted diagonal denominators."""
        if self._weighted is None or self._weighted[0] is not params:
            h = self.had_squares()
            self._weighted = (params, tuple(h[w] * params.inv4[w] for w in range(4)))
        return self._weighted[1]

    def to_json(self):
        return [c.to_json() for c in self.coords]

    def __repr__(self):
        return "(" + " : ".join(repr(c) for c in self.coords) + ")"


def projective_eq(P, Q) -> bool:
    """Whether two coordinate 4-tuples agree projectively."""
    pc = P.coords if isinstance(P, KummerPoint) else tuple(P)
    qc = Q.coords if isinstance(Q, KummerPoint) else tuple(Q)
    k = next((i for i, v in enumerate(pc) if not v.is_zero()), None)
    if k is None or qc[k].is_zero():
        return False
    return all(pc[i] * qc[k] == qc[i] * pc[k] for i in range(4))


class FastKummerParams:
    """Theta constants and every derived constant of a fast Kummer surface."""

    __slots__ = (
        "field",
        "thetas",
        "duals",
        "E",
        "F",
        "G",
        "H",
        "inv4",
        "inv_thetas",
        "offdiag",
        "_divpolys",
        "_quartic",
    )

    def __init__(self, field: Field, thetas, duals, efgh, inv4, inv_thetas, offdiag):
        self.field = field
        self.thetas = thetas
        self.duals = duals
        self.E, self.F, self.G, self.H = efgh
        self.inv4 = inv4
        self.inv_thetas = inv_thetas
        self.offdiag = offdiag
        self._divpolys = {}
        self._quartic = None

    # -- helpers --------------------------------------------------------------

    def identity_point(self) -> KummerPoint:
        return KummerPoint(self.thetas)

    def point(self, coords) -> KummerPoint:
        return KummerPoint(tuple(self.field(c) for c in coords))

    def quartic(self) -> HomogeneousForm:
        """The defining quartic as a sparse form (monic in X^4)."""
        if self._quartic is None:
            field = self.field
            one = field.one()
            items = [
                ((4, 0, 0, 0), one),
                ((0, 4, 0, 0), one),
                ((0, 0, 4, 0), one),
                ((0, 0, 0, 4), one),
                ((2, 0, 0, 2), -self.F),
                ((0, 2, 2, 0), -self.F),
                ((2, 0, 2, 0), -self.G),
                ((0, 2, 0, 2), -self.G),
                ((2, 2, 0, 0), -self.H),
                ((0, 0, 2, 2), -self.H),
                ((1, 1, 1, 1), self.E + self.E),
            ]
            self._quartic = HomogeneousForm.from_terms(field, 4, items)
        return self._quartic

    def to_json(self):
        return {
            "p": str(self.field.p),
            "extension_degree": self.field.extension_degree,
            "theta": [t.to_json() for t in self.thetas],
        }

    def __repr__(self):
        return f"FastKummer(theta={self.thetas!r})"


def new_fast_surface(field: Field, a, b, c, d) -> FastKummerParams:
    """Build a surface from theta constants, validating every invariant.

    Derived constants are always recomputed here; serialized surfaces carry
    only (p, extension degree, theta).
    """
    thetas = tuple(field(x) for x in (a, b, c, d))
    a, b, c, d = thetas
    for name, v in zip("abcd", thetas):
        if v.is_zero():
            raise DegenerateParametersError(f"theta constant {name} vanishes", vanishing=name)
    sq = tuple(x.square() for x in thetas)
    duals = _hadamard4(*sq)
    for name, v in zip(("A", "B", "C", "D"), duals):
        if v.is_zero():
            raise DegenerateParametersError(f"dual constant {name} vanishes", vanishing=name)
    a2, b2, c2, d2 = sq
    e1 = a2 * d2 - b2 * c2
    e2 = a2 * c2 - b2 * d2
    e3 = a2 * b2 - c2 * d2
    for name, v in (("a^2d^2-b^2c^2", e1), ("a^2c^2-b^2d^2", e2), ("a^2b^2-c^2d^2", e3)):
        if v.is_zero():
            raise DegenerateParametersError(f"denominator {name} vanishes", vanishing=name)
    A, B, C, D = duals
    ABCD = A * B * C * D
    four = field(4)
    to_invert = [four * A, four * B, four * C, four * D, e1, e2, e3, a, b, c, d]
    inv = batch_invert(to_invert)
    inv4 = tuple(inv[0:4])
    inv_e1, inv_e2, inv_e3 = inv[4:7]
    inv_thetas = tuple(inv[7:11])
    E = a * b * c * d * ABCD * inv_e1 * inv_e2 * inv_e3
    a4, b4, c4, d4 = (x.square() for x in sq)
    F = (a4 - b4 - c4 + d4) * inv_e1
    G = (a4 - b4 + c4 - d4) * inv_e2
    H = (a4 + b4 - c4 - d4) * inv_e3
    # off-diagonal biquadratic coefficients 4*uv/g_ij with g = 4*e fixed above:
    # 4ab/(4 e3) = ab/e3 and so on; the sign of g_ij for the complementary
    # index pair is folded in here.
    ab, cd = a * b, c * d
    ac, bd = a * c, b * d
    ad, bc = a * d, b * c
    offdiag = {
        (0, 1): (ab * inv_e3, cd * inv_e3),
        (2, 3): (-(cd * inv_e3), -(ab * inv_e3)),
        (0, 2): (ac * inv_e2, bd * inv_e2),
        (1, 3): (-(bd * inv_e2), -(ac * inv_e2)),
        (0, 3): (ad * inv_e1, bc * inv_e1),
        (1, 2): (-(bc * inv_e1), -(ad * inv_e1)),
    }
    params = FastKummerParams(field, thetas, duals, (E, F, G, H), inv4, inv_thetas, offdiag)
    if not on_surface(params, params.identity_point()):
        raise InternalConsistencyError("theta point does not satisfy its own quartic")
    return params


def on_surface(params: FastKummerParams, P) -> bool:
    x, y, z, t = P.coords if isinstance(P, KummerPoint) else tuple(P)
    x2, y2, z2, t2 = x.square(), y.square(), z.square(), t.square()
    lhs = x2.square() + y2.square() + z2.square() + t2.square()
    lhs = lhs - params.F * (x2 * t2 + y2 * z2)
    lhs = lhs - params.G * (x2 * z2 + y2 * t2)
    lhs = lhs - params.H * (x2 * y2 + z2 * t2)
    lhs = lhs + (params.E + params.E) * (x * y * z * t)
    return lhs.is_zero()


def sigma(i: int, P: KummerPoint) -> KummerPoint:
    """Translation of P by the i-th two-torsion point (a signed permutation)."""
    if not 0 <= i <= 15:
        raise ContractError("two-torsion index out of range")
    return KummerPoint(SIGMAS[i].apply_point(P.coords))


def two_torsion(params: FastKummerParams) -> list[KummerPoint]:
    ident = params.identity_point()
    return [sigma(i, ident) for i in range(16)]


def hadamard(P: KummerPoint) -> KummerPoint:
    return KummerPoint(_hadamard4(*P.coords))


def hadamard_surface(params: FastKummerParams) -> FastKummerParams:
    """Surface whose theta constants are the Hadamard image of this one's."""
    a, b, c, d = _hadamard4(*params.thetas)
    return new_fast_surface(params.field, a, b, c, d)


# -- biquadratic forms ---------------------------------------------------------


def biquadratics_eval(params: FastKummerParams, P, Q) -> list[list[FieldElement]]:
    """The symmetric 4x4 matrix B(P, Q).

    Projectively, B(P, Q) = xi zeta^t + zeta xi^t where xi and zeta are the
    images of P+Q and P-Q.  Off-diagonal entries come in pairs sharing their
    four cross products, and the transforms of P and Q are cached on the
    points, so repeated calls on ladder points stay within the per-call
    operation budget.
    """
    P = P if isinstance(P, KummerPoint) else KummerPoint(P)
    Q = Q if isinstance(Q, KummerPoint) else KummerPoint(Q)
    cw = Q.weighted_had_squares(params)
    hp = P.had_squares()
    t = tuple(hp[w] * cw[w] for w in range(4))
    diag = _hadamard4(*t)
    pp = P.pair_products()
    qp = Q.pair_products()
    mat = [[None] * 4 for _ in range(4)]
    for i in range(4):
        mat[i][i] = diag[i]
    for (e1, e2), (k1, k2) in (((0, 1), (0, 1)), ((0, 2), (2, 3)), ((0, 3), (4, 5))):
        m1 = pp[k1] * qp[k1]
        m2 = pp[k2] * qp[k2]
        m3 = pp[k1] * qp[k2]
        m4 = pp[k2] * qp[k1]
        s = m1 + m2
        d = m3 + m4
        q_c, r_c = params.offdiag[(e1, e2)]
        val = q_c * s - r_c * d
        mat[e1][e2] = val
        mat[e2][e1] = val
        i2, j2 = _COMPLEMENT[(e1, e2)]
        q_c, r_c = params.offdiag[(i2, j2)]
        val = q_c * s - r_c * d
        mat[i2][j2] = val
        mat[j2][i2] = val
    return mat


def biquadratics_symbolic(params: FastKummerParams, Q) -> list[list[HomogeneousForm]]:
    """B((X, Y, Z, T), Q) with the first argument left symbolic.

    Each entry is a quadratic form; evaluating entry (i, j) at a point P gives
    biquadratics_eval(P, Q)[i][j].
    """
    Q = Q if isinstance(Q, KummerPoint) else KummerPoint(Q)
    field = params.field
    cw = Q.weighted_had_squares(params)
    hc = _hadamard4(*cw)
    # diagonal coefficient vectors in the monomial order X^2, Y^2, Z^2, T^2
    perms = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))
    mat = [[None] * 4 for _ in range(4)]
    for i in range(4):
        terms = {}
        for slot in range(4):
            coeff = hc[perms[i][slot]]
            if not coeff.is_zero():
                terms[_DIAG_MONOMIALS[slot]] = coeff
        mat[i][i] = HomogeneousForm(field, 2, terms)
    qp = Q.pair_products()
    for (i, j), (k1, k2) in _OFFDIAG_PRODUCTS.items():
        q_c, r_c = params.offdiag[(i, j)]
        m1, m2 = qp[k1], qp[k2]
        u = q_c * m1 - r_c * m2
        v = q_c * m2 - r_c * m1
        mono1, mono2 = _OFFDIAG_MONOMIALS[(i, j)]
        terms = {}
        if not u.is_zero():
            terms[mono1] = u
        if not v.is_zero():
            terms[mono2] = v
        f = HomogeneousForm(field, 2, terms)
        mat[i][j] = f
        mat[j][i] = f
    return mat


# -- pseudo-group arithmetic ----------------------------------------------------


def double(params: FastKummerParams, P: KummerPoint) -> KummerPoint:
    hp = P.had_squares()
    t = tuple(hp[w].square() * params.inv4[w] for w in range(4))
    diag = _hadamard4(*t)
    return KummerPoint(tuple(diag[i] * params.inv_thetas[i] for i in range(4)))


def diff_add(params: FastKummerParams, P: KummerPoint, Q: KummerPoint, PmQ) -> KummerPoint:
    """k(P+Q) from P, Q and the difference k(P-Q)."""
    PmQ = PmQ if isinstance(PmQ, KummerPoint) else KummerPoint(PmQ)
    d = PmQ.coords
    if any(c.is_zero() for c in d):
        return _diff_add_fallback(params, P, Q, PmQ)
    hp = P.had_squares()
    hq = Q.weighted_had_squares(params)
    t = tuple(hp[w] * hq[w] for w in range(4))
    diag = _hadamard4(*t)
    p12 = d[0] * d[1]
    p34 = d[2] * d[3]
    weights = (d[1] * p34, d[0] * p34, d[3] * p12, d[2] * p12)
    return KummerPoint(tuple(diag[i] * weights[i] for i in range(4)))


def _diff_add_fallback(params, P, Q, PmQ) -> KummerPoint:
    """Recover k(P+Q) from the full biquadratic matrix when the difference
    has a zero coordinate: with zeta = k(P-Q) and any j with zeta_j != 0,
    2 zeta_j B[i][j] - zeta_i B[j][j] is proportional to xi_i."""
    B = biquadratics_eval(params, P, Q)
    z = PmQ.coords
    j = next((k for k in range(4) if not z[k].is_zero()), None)
    if j is None:
        raise ContractError("difference point is identically zero")
    zj2 = z[j] + z[j]
    out = tuple(zj2 * B[i][j] - z[i] * B[j][j] for i in range(4))
    if all(c.is_zero() for c in out):
        raise InternalConsistencyError("rank-2 recovery failed in differential addition")
    return KummerPoint(out)


def scalar_mul(params: FastKummerParams, n: int, P: KummerPoint) -> KummerPoint:
    """k(nP) by a left-to-right binary ladder over (double, diff_add)."""
    n = abs(n)
    if n == 0:
        return params.identity_point()
    if n == 1:
        return P
    r0, r1 = P, double(params, P)
    for bit in bin(n)[3:]:
        if bit == "0":
            r0, r1 = double(params, r0), diff_add(params, r0, r1, P)
        else:
            r0, r1 = diff_add(params, r0, r1, P), double(params, r1)
    return r0


def multiples(params: FastKummerParams, P: KummerPoint, upto: int) -> list[KummerPoint]:
    """[P, 2P, ..., upto*P] via a differential-addition chain."""
    if upto < 1:
        return []
    out = [P]
    if upto >= 2:
        out.append(double(params, P))
    for m in range(3, upto + 1):
        out.append(diff_add(params, out[m - 2], P, out[m - 3]))
    return out


def is_N_torsion(params: FastKummerParams, P: KummerPoint, N: int) -> bool:
    """Order exactly N on the Kummer (order N up to sign on the Jacobian)."""
    ident = params.identity_point()
    if N == 1:
        return projective_eq(P, ident)
    if not projective_eq(scalar_mul(params, N, P), ident):
        return False
    for q in _prime_divisors(N):
        if projective_eq(scalar_mul(params, N // q, P), ident):
            return False
    return True


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- division polynomials --------------------------------------------------------


def _diag_biquadratic_forms(params: FastKummerParams, F4, G4):
    """(B11, B22, B33, B44) applied to two symbolic coordinate 4-tuples."""
    field = params.field
    sf = [f * f for f in F4]
    sg = [g * g for g in G4]
    hf = _hadamard4(*sf)
    hg = _hadamard4(*sg)
    t = [hf[w] * hg[w] for w in range(4)]
    t = [tw.scale(params.inv4[w]) for w, tw in enumerate(t)]
    return _hadamard4(*t)


def _divide_by_variable_mod_quartic(params, f: HomogeneousForm, var: int) -> HomogeneousForm:
    """g with var * g = f modulo the surface quartic, exact."""
    f0 = f.substitute_zero(var)
    if f0.is_zero():
        return f.divide_by_variable(var)
    K = params.quartic()
    K0 = K.substitute_zero(var)
    quotient = _exact_division(f0, K0)
    corrected = f - quotient * K
    return corrected.divide_by_variable(var)


def _exact_division(f: HomogeneousForm, g: HomogeneousForm) -> HomogeneousForm:
    """Exact multivariate division f / g by leading-term reduction."""
    field = f.field
    if g.is_zero():
        raise ZeroDivisionError("division by the zero form")
    g_lead = max(g.terms)
    g_lc_inv = g.terms[g_lead].inverse()
    quotient = HomogeneousForm.zero(field, f.degree - g.degree)
    current = f
    while not current.is_zero():
        lead = max(current.terms)
        diff = tuple(lead[i] - g_lead[i] for i in range(4))
        if any(e < 0 for e in diff):
            raise InternalConsistencyError("non-exact division in division-polynomial recursion")
        qc = current.terms[lead] * g_lc_inv
        qterm = HomogeneousForm.monomial(field, diff, qc)
        quotient = quotient + qterm
        current = current - qterm * g
    return quotient


def division_polynomials(params: FastKummerParams, N: int):
    """The 4-tuple of degree-N^2 forms computing multiplication by N.

    The first form contains only parity-class-1 monomials, the second only
    class 2, and so on; cached per surface.
    """
    if N < 0:
        raise ContractError("division polynomial index must be nonnegative")
    cache = params._divpolys
    if N in cache:
        return cache[N]
    field = params.field
    if N == 0:
        out = tuple(HomogeneousForm.constant(field, t) for t in params.thetas)
    elif N == 1:
        out = tuple(HomogeneousForm.variable(field, i) for i in range(4))
    elif N % 2 == 0:
        half = division_polynomials(params, N // 2)
        diag = _diag_biquadratic_forms(params, half, half)
        out = tuple(diag[i].scale(params.inv_thetas[i]) for i in range(4))
    else:
        m = (N - 1) // 2
        upper = division_polynomials(params, m + 1)
        lower = division_polynomials(params, m)
        diag = _diag_biquadratic_forms(params, upper, lower)
        out = tuple(_divide_by_variable_mod_quartic(params, diag[i], i) for i in range(4))
    # odd N preserves the two-torsion action coordinate-wise, so coordinate i
    # is pure of class i+1; even N commutes with every translation, so all
    # four coordinates are class 1.
    for i, f in enumerate(out):
        want = i + 1 if N % 2 == 1 else 1
        for exps in f.terms:
            if partition_class(exps) != want:
                raise InternalConsistencyError(
                    f"division polynomial {N} coordinate {i} left its parity class"
                )
    cache[N] = out
    return out


def evaluate_map(forms4, P) -> KummerPoint:
    coords = tuple(f.evaluate(P.coords if isinstance(P, KummerPoint) else P) for f in forms4)
    return KummerPoint(coords)


# -- point sampling ----------------------------------------------------------------


def sample_point(params: FastKummerParams, rng: _random.Random, budget: int = 200) -> KummerPoint:
    """Random surface point: fix X, Y, Z and solve the quartic in T."""
    field = params.field
    for _ in range(budget):
        x, y, z = (field.random(rng) for _ in range(3))
        x2, y2, z2 = x.square(), y.square(), z.square()
        c4 = field.one()
        c2 = -(params.F * x2 + params.G * y2 + params.H * z2)
        c1 = (params.E + params.E) * (x * y * z)
        c0 = (
            x2.square()
            + y2.square()
            + z2.square()
            - params.F * (y2 * z2)
            - params.G * (x2 * z2)
            - params.H * (x2 * y2)
        )
        rts = unipoly.roots([c0, c1, c2, field.zero(), c4], rng)
        if not rts:
            continue
        t = rts[rng.randrange(len(rts))]
        P = KummerPoint((x, y, z, t))
        if on_surface(params, P):
            return P
    raise SamplingFailureError("could not sample a surface point within budget")


def sample_torsion(
    params: FastKummerParams,
    N: int,
    cofactor: int,
    rng: _random.Random,
    budget: int = 200,
) -> KummerPoint:
    """Point of order exactly N, via cofactor multiplication of random points.

    cofactor * N must annihilate the surface's point group (for the
    superspecial setting over F_p^2 the group exponent is p + 1).
    """
    for _ in range(budget):
        P = sample_point(params, rng)
        Q = scalar_mul(params, cofactor, P)
        ident = params.identity_point()
        if projective_eq(Q, ident):
            continue
        if is_N_torsion(params, Q, N):
            return Q
    raise SamplingFailureError(f"could not sample a point of order {N} within budget")


def pseudo_add_pair(params: FastKummerParams, P: KummerPoint, Q: KummerPoint):
    """The unordered pair {k(P+Q), k(P-Q)}, via square roots.

    From B = xi zeta^t + zeta xi^t one has
    (xi_i zeta_j - xi_j zeta_i)^2 = B_ij^2 - B_ii B_jj, which determines the
    pair up to the xi <-> zeta swap.  Returns None when the pair is not
    rational over the working field.
    """
    B = biquadratics_eval(params, P, Q)
    i0 = next((i for i in range(4) if not B[i][i].is_zero()), None)
    if i0 is None:
        return None
    others = [j for j in range(4) if j != i0]
    deltas = []
    for j in others:
        d2 = B[i0][j].square() - B[i0][i0] * B[j][j]
        d = d2.sqrt()
        if d is None:
            return None
        deltas.append(d)
    two_inv = params.field(2).inverse()
    base = B[i0][i0] * two_inv  # xi_{i0} * zeta_{i0} with xi_{i0} scaled to 1
    inv_b = B[i0][i0].inverse()
    for signs in range(8):
        ds = [deltas[k] if (signs >> k) & 1 == 0 else -deltas[k] for k in range(3)]
        xi = [None] * 4
        zeta = [None] * 4
        xi[i0] = params.field.one()
        zeta[i0] = base
        ok = True
        for k, j in enumerate(others):
            xi[j] = (B[i0][j] - ds[k]) * inv_b
            zeta[j] = (B[i0][j] + ds[k]) * two_inv
        for a_ in range(4):
            for b_ in range(a_, 4):
                if not (xi[a_] * zeta[b_] + zeta[a_] * xi[b_] == B[a_][b_]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            S, D = KummerPoint(xi), KummerPoint(zeta)
            if on_surface(params, S) and on_surface(params, D):
                return S, D
    return None
