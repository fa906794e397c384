"""Univariate polynomial helpers over a finite field.

Polynomials are little-endian coefficient lists of FieldElement with no
trailing zeros.  Used for curve factorization, resultants and root-finding
(Frobenius kernel plus equal-degree splitting); nothing here is performance
critical.
"""

from __future__ import annotations

import random as _random

from .errors import ContractError
from .field import Field, FieldElement


def trim(f: list) -> list:
    while f and f[-1].is_zero():
        f.pop()
    return f


def degree(f: list) -> int:
    return len(f) - 1


def add(f: list, g: list) -> list:
    n = max(len(f), len(g))
    field = (f or g)[0].field
    zero = field.zero()
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else zero
        b = g[i] if i < len(g) else zero
        out.append(a + b)
    return trim(out)


def neg(f: list) -> list:
    return [-c for c in f]


def sub(f: list, g: list) -> list:
    return add(f, neg(g))


def scale(f: list, c: FieldElement) -> list:
    if c.is_zero():
        return []
    return [c * x for x in f]


def mul(f: list, g: list) -> list:
    if not f or not g:
        return []
    field = f[0].field
    out = [field.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a.is_zero():
            continue
        for j, b in enumerate(g):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_poly(f: list, g: list) -> tuple[list, list]:
    g = trim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    field = g[0].field
    r = trim(list(f))
    q = [field.zero()] * max(0, len(r) - len(g) + 1)
    inv_lead = g[-1].inverse()
    while len(r) >= len(g):
        if r[-1].is_zero():
            r.pop()
            continue
        shift = len(r) - len(g)
        c = r[-1] * inv_lead
        q[shift] = c
        for i in range(len(g) - 1):
            r[shift + i] = r[shift + i] - c * g[i]
        r.pop()
    return trim(q), trim(r)


def mod(f: list, g: list) -> list:
    return divmod_poly(f, g)[1]


def monic(f: list) -> list:
    if not f:
        return f
    return scale(f, f[-1].inverse())


def gcd(f: list, g: list) -> list:
    a, b = list(f), list(g)
    while b:
        a, b = b, mod(a, b)
    return monic(a)


def derivative(f: list) -> list:
    if len(f) <= 1:
        return []
    out = []
    for i in range(1, len(f)):
        out.append(f[i].mul_int(i))
    return trim(out)


def evaluate(f: list, x: FieldElement) -> FieldElement:
    if not f:
        return x.field.zero()
    acc = f[-1]
    for c in reversed(f[:-1]):
        acc = acc * x + c
    return acc


def is_squarefree(f: list) -> bool:
    if not f:
        return False
    return degree(gcd(f, derivative(f))) == 0


def resultant(f: list, g: list) -> FieldElement:
    """Resultant via the Euclidean algorithm."""
    if not f or not g:
        raise ContractError("resultant of the zero polynomial")
    field = f[0].field
    a, b = list(f), list(g)
    res = field.one()
    while True:
        da, db = degree(a), degree(b)
        if db == 0:
            return res * b[0] ** da
        r = mod(a, b)
        if not r:
            return field.zero()
        dr = degree(r)
        sign = field.one() if (da * db) % 2 == 0 else -field.one()
        res = res * sign * b[-1] ** (da - dr)
        a, b = b, r


def pow_mod(base: list, e: int, modulus: list) -> list:
    field = modulus[0].field
    result = [field.one()]
    b = mod(base, modulus)
    while e:
        if e & 1:
            result = mod(mul(result, b), modulus)
        b = mod(mul(b, b), modulus)
        e >>= 1
    return result


def roots(f: list, rng: _random.Random) -> list[FieldElement]:
    """Distinct roots of f in its coefficient field."""
    f = trim(list(f))
    if not f:
        raise ContractError("root-finding on the zero polynomial")
    field = f[0].field
    q = field.order
    out = []
    if f[0].is_zero():
        out.append(field.zero())
        while f and f[0].is_zero():
            f = f[1:]
    f = monic(f)
    if degree(f) >= 1:
        x = [field.zero(), field.one()]
        xq = pow_mod(x, q, f)
        lin = gcd(sub(xq, x), f)
        out.extend(_split_linears(lin, rng, q))
    return sorted(set(out), key=lambda c: (c.c0, c.c1))


def _split_linears(g: list, rng: _random.Random, q: int) -> list[FieldElement]:
    d = degree(g)
    if d <= 0:
        return []
    field = g[0].field
    if d == 1:
        return [-g[0] * g[1].inverse()]
    while True:
        delta = field.random(rng)
        probe = pow_mod([delta, field.one()], (q - 1) // 2, g)
        probe = sub(probe, [field.one()])
        h = gcd(probe, g)
        if 0 < degree(h) < d:
            other, rem = divmod_poly(g, h)
            assert not rem
            return _split_linears(h, rng, q) + _split_linears(other, rng, q)


def from_roots(field: Field, rts) -> list:
    f = [field.one()]
    for r in rts:
        f = mul(f, [-r, field.one()])
    return f


def irreducible_factors(f: list, rng: _random.Random) -> list[list]:
    """Monic irreducible factors with multiplicity.

    Distinct-degree splitting followed by Cantor-Zassenhaus equal-degree
    splitting.  Assumes the characteristic exceeds the degree (true for every
    curve this library handles), so derivatives of nonconstant factors do not
    vanish.
    """
    f = monic(trim(list(f)))
    field = f[0].field
    q = field.order
    out: list[list] = []

    def factor_squarefree(g: list):
        d = 1
        x = [field.zero(), field.one()]
        frob = list(x)
        while degree(g) >= 2 * d:
            frob = pow_mod(frob, q, g)
            prod = gcd(sub(frob, x), g)
            if degree(prod) > 0:
                equal_degree(prod, d)
                g, rem = divmod_poly(g, prod)
                if rem:
                    raise ContractError("distinct-degree splitting failed")
                g = monic(g)
                frob = mod(frob, g) if degree(g) > 0 else frob
            d += 1
        if degree(g) > 0:
            out.append(g)

    def equal_degree(g: list, d: int):
        if degree(g) == d:
            out.append(monic(g))
            return
        while True:
            cand = [field.random(rng) for _ in range(degree(g))] + [field.one()]
            probe = sub(pow_mod(cand, (q**d - 1) // 2, g), [field.one()])
            h = gcd(probe, g)
            if 0 < degree(h) < degree(g):
                equal_degree(monic(h), d)
                rest, rem = divmod_poly(g, h)
                if rem:
                    raise ContractError("equal-degree splitting failed")
                equal_degree(monic(rest), d)
                return

    g = f
    while degree(g) > 0:
        common = gcd(g, derivative(g))
        sf = monic(divmod_poly(g, common)[0]) if degree(common) > 0 else g
        factor_squarefree(sf)
        g, rem = divmod_poly(g, sf)
        if rem:
            raise ContractError("squarefree decomposition failed")
        g = monic(g)
    return out
