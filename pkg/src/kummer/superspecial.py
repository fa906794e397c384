"""Superspecial fast Kummer surfaces over F_p^2 and kernel generation.

Experiments and property tests need surfaces whose point group has exponent
p + 1 with rational N-torsion (p chosen with 16 N | p + 1).  Such surfaces
are reached by a random walk of (2,2)-steps on theta constants: each step
replaces (a, b, c, d) by square roots of a permuted Hadamard transform of
(a^2, b^2, c^2, d^2), with random sign and permutation choices.  The walk
starts at a product theta null built from a supersingular elliptic theta
null, so every vertex of the walk is superspecial; degenerate vertices
(products) fail the surface invariants and are simply stepped past.

Everything here is randomised test/benchmark plumbing, certified after the
fact: sampled points are checked to have order dividing p + 1 and kernel
pairs are certified by the isogeny pipeline's dimension checks.
"""

from __future__ import annotations

import random as _random

from . import fast_kummer as fk
from .errors import DegenerateParametersError, SamplingFailureError
from .field import Field
from .isogeny import IsogenyKernel, compute_psi_fast


def find_superspecial_prime(bits: int, N: int) -> int:
    """Smallest prime p >= 2^(bits-1) with 16 N | p + 1 (hence p = 3 mod 4)."""
    from .field import _is_probable_prime

    step = 16 * N
    m = (1 << (bits - 1)) // step + 1
    while True:
        p = m * step - 1
        if _is_probable_prime(p):
            return p
        m += 1


def _glued_sextic(field: Field, a_roots, b_roots):
    """Genus-2 curve glueing two elliptic curves along their 2-torsion.

    Inputs are the 2-torsion x-coordinates (a1, a2, a3) and (b1, b2, b3); the
    output is the sextic s1 (x^2 - A1)(x^2 - A2)(x^2 - A3) whose Jacobian is
    (2,2)-isogenous to the product, or None for a degenerate pairing.
    """
    from .linalg import Matrix, determinant, matrix_inverse

    a1, a2, a3 = a_roots
    b1, b2, b3 = b_roots
    m = Matrix(field, [[a1 * b1, a1, b1], [a2 * b2, a2, b2], [a3 * b3, a3, b3]])
    det = determinant(m)
    if det.is_zero():
        return None
    rst = matrix_inverse(m).mul_vector([field.one()] * 3)
    r_, s_, t_ = rst
    if r_.is_zero():
        return None
    rd = r_ * det
    da = (a1 - a2) * (a2 - a3) * (a3 - a1)
    s1 = -da * rd.inverse()
    s2 = -t_ * r_.inverse()
    if s1.is_zero():
        return None
    inv_s1 = s1.inverse()
    return s1, tuple((ai - s2) * inv_s1 for ai in (a1, a2, a3))


def _thetas_from_rosenhain(field: Field, lam, mu, nu, rng: _random.Random):
    """Theta constants (a, b, c, d) whose Rosenhain invariants are (lam, mu, nu).

    Inverts the relations lam = a^2c^2/(b^2d^2), mu = c^2(1+g)/(d^2(1-g)),
    nu = a^2(1+g)/(b^2(1-g)) with g^2 = CD/(AB): writing s = (1-g)/(1+g),
    s^2 = lam/(mu nu), the squared thetas are (nu s, 1, mu s T, T) where T^2
    is a ratio fixed by the definition of g.  Returns None when a needed
    square root is missing (caller retries with another root ordering).
    """
    one = field.one()
    denom = mu * nu
    if denom.is_zero():
        return None
    s2val = lam * denom.inverse()
    s = s2val.sqrt()
    if s is None:
        return None
    for s_choice in (s, -s):
        if s_choice == -one or s_choice.is_zero():
            continue
        gamma = (one - s_choice) * (one + s_choice).inverse()
        x = nu * s_choice
        zc = mu * s_choice  # z / T
        g2 = gamma.square()
        den = g2 * (zc + one).square() - (zc - one).square()
        if den.is_zero():
            continue
        t2 = (g2 * (x + one).square() - (x - one).square()) * den.inverse()
        t = t2.sqrt()
        if t is None:
            continue
        for t_choice in (t, -t):
            if t_choice.is_zero():
                continue
            sq = (x, one, zc * t_choice, t_choice)
            roots = []
            for vsq in sq:
                r = vsq.sqrt()
                if r is None or r.is_zero():
                    roots = None
                    break
                roots.append(r if rng.randrange(2) == 0 else -r)
            if roots is not None:
                return tuple(roots)
    return None


def _theta_step(field: Field, thetas, rng: _random.Random, tries: int = 24):
    """One (2,2)-step: permuted dual of squares with random root signs.

    Some sign/permutation choices land outside the theta locus and show up as
    missing square roots at this or the next step; they are simply retried.
    """
    sq = tuple(t.square() for t in thetas)
    u, v = sq[0] + sq[1], sq[2] + sq[3]
    w, s = sq[0] - sq[1], sq[2] - sq[3]
    duals = [u + v, u - v, w + s, w - s]
    for _ in range(tries):
        perm = list(range(4))
        rng.shuffle(perm)
        roots = []
        for k in perm:
            r = duals[k].sqrt()
            if r is None or r.is_zero():
                roots = None
                break
            roots.append(r if rng.randrange(2) == 0 else -r)
        if roots is not None:
            return tuple(roots)
    return None


def _certify(field: Field, params, rng: _random.Random) -> bool:
    exponent = field.p + 1
    try:
        P = fk.sample_point(params, rng)
    except SamplingFailureError:
        return False
    return fk.projective_eq(fk.scalar_mul(params, exponent, P), params.identity_point())


def _glued_start_surface(field: Field, rng: _random.Random, budget: int = 400):
    """Superspecial theta constants from a glued product of supersingular
    elliptic curves (j = 1728 and a random isomorphic copy)."""
    i = field((0, 1))
    zero, one = field.zero(), field.one()
    for _ in range(budget):
        u = field.random(rng)
        v = field.random(rng)
        if u.is_zero():
            continue
        u2 = u.square()
        a_roots = [zero, i, -i]
        b_roots = [v, u2 * i + v, -(u2 * i) + v]
        rng.shuffle(a_roots)
        rng.shuffle(b_roots)
        glued = _glued_sextic(field, a_roots, b_roots)
        if glued is None:
            continue
        _, (A1, A2, A3) = glued
        roots = []
        for Ai in (A1, A2, A3):
            r = Ai.sqrt()
            if r is None or r.is_zero():
                roots = None
                break
            roots.extend([r, -r])
        if roots is None or len({(c.c0, c.c1) for c in roots}) != 6:
            continue
        rng.shuffle(roots)
        r1, r2, r3, r4, r5, r6 = roots
        # Moebius sending (r4, r5, r6) -> (0, 1, infinity)
        den_check = (r5 - r4) * (r5 - r6)
        if den_check.is_zero():
            continue
        scale = (r5 - r6) * (r5 - r4).inverse()

        def moeb(x):
            return (x - r4) * (x - r6).inverse() * scale

        lam, mu, nu = moeb(r1), moeb(r2), moeb(r3)
        if len({(x.c0, x.c1) for x in (zero, one, lam, mu, nu)}) != 5:
            continue
        thetas = _thetas_from_rosenhain(field, lam, mu, nu, rng)
        if thetas is None:
            continue
        try:
            params = fk.new_fast_surface(field, *thetas)
        except (DegenerateParametersError, ZeroDivisionError):
            continue
        if _certify(field, params, rng):
            return params
    raise SamplingFailureError("gluing did not reach a certified superspecial surface")


def random_superspecial_surface(field: Field, rng: _random.Random, walk_length: int = 8,
                                budget: int = 200) -> fk.FastKummerParams:
    """Random certified superspecial surface over F_p^2.

    Starts from a glued product of supersingular elliptic curves and then
    mixes with a random walk of theta duplication steps (which stay inside
    the non-degenerate locus).  Every returned surface is certified: the
    invariants hold and a sampled point is annihilated by p + 1.
    """
    start = _glued_start_surface(field, rng)
    thetas = start.thetas
    best = start
    steps = 0
    for _ in range(budget):
        if steps >= walk_length:
            return best
        nxt = _theta_step(field, thetas, rng)
        if nxt is None:
            return best
        thetas = nxt
        steps += 1
        try:
            cand = fk.new_fast_surface(field, *thetas)
        except (DegenerateParametersError, ZeroDivisionError):
            continue
        if _certify(field, cand, rng):
            best = cand
    return best


def sample_kernel_pair(params: fk.FastKummerParams, N: int, rng: _random.Random,
                       budget: int = 60):
    """An order-N pair (R, S) generating a valid isogeny kernel.

    Candidate pairs are drawn by cofactor multiplication and certified by the
    class-1 intersection dimension (the cheap slice of the pipeline's full
    certificate); on success the full kernel object is returned.
    """
    from .isogeny import find_basis_fast, find_intersection, InvalidKernelError

    p = params.field.p
    exponent = p + 1
    if exponent % N:
        raise DegenerateParametersError("N does not divide the group exponent p+1")
    cofactor = exponent // N
    field = params.field
    R = None
    for _ in range(budget):
        cand = fk.sample_torsion(params, N, cofactor, rng)
        if R is None:
            R = cand
            basis_r = find_basis_fast(params, R, fk.multiples(params, R, (N - 1) // 2), N)
            continue
        S = cand
        if fk.projective_eq(R, S):
            continue
        basis_s = find_basis_fast(params, S, fk.multiples(params, S, (N - 1) // 2), N)
        try:
            find_intersection(field, basis_r[0], basis_s[0], expected=1)
        except InvalidKernelError:
            continue
        kernel = IsogenyKernel.fast(params, N, R, S, validate=False)
        try:
            compute_psi_fast(params, kernel)
        except InvalidKernelError:
            continue
        return kernel
    raise SamplingFailureError(f"no valid order-{N} kernel pair found within budget")
