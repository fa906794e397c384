"""Exact arithmetic in F_p (p an odd prime) and F_p^2 = F_p(i) with i^2 = -1.

Moduli are arbitrary-precision Python integers.  The quadratic extension is
fixed as F_p(i), which requires p = 3 (mod 4).  Elements are immutable plain
values; all operations are exact and feed the per-context operation counters.

Square roots are canonicalised: of the two roots r and -r we return the one
whose coefficient tuple (c0, c1) is lexicographically smaller, so outputs are
deterministic and usable in golden tests.
"""

from __future__ import annotations

import random as _random

from . import counters
from .errors import ContractError, DegenerateParametersError


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _sqrt_mod_p(a: int, p: int) -> int | None:
    """Tonelli-Shanks square root mod p; None if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # p = 1 (mod 4): general Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tmp = 0, t
        while tmp != 1:
            tmp = tmp * tmp % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


class Field:
    """Context object for F_p or F_p(i).

    Use ``Field(p)`` for the prime field and ``Field(p, 2)`` for the quadratic
    extension (p = 3 mod 4 required).  The context is the element factory:
    ``K(7)`` reduces an integer, ``K((c0, c1))`` builds an extension element.
    """

    __slots__ = ("p", "extension_degree")

    def __init__(self, p: int, extension_degree: int = 1):
        if p <= 2 or not _is_probable_prime(p):
            raise DegenerateParametersError(f"modulus {p} is not an odd prime", vanishing="p")
        if extension_degree not in (1, 2):
            raise ContractError("extension degree must be 1 or 2")
        if extension_degree == 2 and p % 4 != 3:
            raise DegenerateParametersError(
                f"p = {p} = {p % 4} (mod 4); F_p(i) needs p = 3 (mod 4)", vanishing="p mod 4"
            )
        self.p = p
        self.extension_degree = extension_degree

    # -- construction -------------------------------------------------------

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field is self or (
                value.field.p == self.p and value.field.extension_degree == self.extension_degree
            ):
                return value
            raise ContractError("element belongs to a different field")
        if isinstance(value, int):
            if self.extension_degree == 1:
                return FieldElement(self, value % self.p, 0)
            return FieldElement(self, value % self.p, 0)
        if isinstance(value, (tuple, list)) and len(value) == 2:
            if self.extension_degree != 2 and int(value[1]) % self.p != 0:
                raise ContractError("nonzero imaginary part in a prime field")
            return FieldElement(self, int(value[0]) % self.p, int(value[1]) % self.p)
        if isinstance(value, str):
            return FieldElement(self, int(value) % self.p, 0)
        raise ContractError(f"cannot build a field element from {value!r}")

    def zero(self) -> FieldElement:
        return FieldElement(self, 0, 0)

    def one(self) -> FieldElement:
        return FieldElement(self, 1, 0)

    def random(self, rng: _random.Random) -> FieldElement:
        if self.extension_degree == 1:
            return FieldElement(self, rng.randrange(self.p), 0)
        return FieldElement(self, rng.randrange(self.p), rng.randrange(self.p))

    def base_field(self) -> Field:
        return self if self.extension_degree == 1 else Field(self.p)

    def extension(self) -> Field:
        return self if self.extension_degree == 2 else Field(self.p, 2)

    def embed(self, x: FieldElement) -> FieldElement:
        """Embed an element of the base prime field into this field."""
        if x.field.p != self.p:
            raise ContractError("cannot embed: different characteristic")
        return FieldElement(self, x.c0, x.c1)

    @property
    def order(self) -> int:
        return self.p**self.extension_degree

    # -- housekeeping -------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and other.p == self.p
            and other.extension_degree == self.extension_degree
        )

    def __hash__(self):
        return hash((self.p, self.extension_degree))

    def __repr__(self):
        if self.extension_degree == 1:
            return f"Field(p={self.p})"
        return f"Field(p={self.p}, i^2=-1)"

    def to_json(self):
        return {"p": str(self.p), "extension_degree": self.extension_degree}

    @classmethod
    def from_json(cls, obj) -> Field:
        return cls(int(obj["p"]), int(obj.get("extension_degree", 1)))


class FieldElement:
    """Element c0 + c1*i of F_p or F_p(i); c1 = 0 in the prime field."""

    __slots__ = ("field", "c0", "c1")

    def __init__(self, field: Field, c0: int, c1: int):
        self.field = field
        self.c0 = c0
        self.c1 = c1

    # -- ring operations (counted) -----------------------------------------

    def __add__(self, other: FieldElement) -> FieldElement:
        counters.tick_add()
        p = self.field.p
        return FieldElement(self.field, (self.c0 + other.c0) % p, (self.c1 + other.c1) % p)

    def __sub__(self, other: FieldElement) -> FieldElement:
        counters.tick_add()
        p = self.field.p
        return FieldElement(self.field, (self.c0 - other.c0) % p, (self.c1 - other.c1) % p)

    def __neg__(self) -> FieldElement:
        p = self.field.p
        return FieldElement(self.field, -self.c0 % p, -self.c1 % p)

    def __mul__(self, other: FieldElement) -> FieldElement:
        counters.tick_mul()
        p = self.field.p
        a0, a1, b0, b1 = self.c0, self.c1, other.c0, other.c1
        if a1 == 0 and b1 == 0:
            return FieldElement(self.field, a0 * b0 % p, 0)
        # (a0 + a1 i)(b0 + b1 i) with i^2 = -1, Karatsuba
        m0 = a0 * b0
        m1 = a1 * b1
        m2 = (a0 + a1) * (b0 + b1)
        return FieldElement(self.field, (m0 - m1) % p, (m2 - m0 - m1) % p)

    def square(self) -> FieldElement:
        counters.tick_sq()
        p = self.field.p
        a0, a1 = self.c0, self.c1
        if a1 == 0:
            return FieldElement(self.field, a0 * a0 % p, 0)
        # (a0 + a1 i)^2 = (a0-a1)(a0+a1) + 2 a0 a1 i
        return FieldElement(self.field, (a0 - a1) * (a0 + a1) % p, 2 * a0 * a1 % p)

    def inverse(self) -> FieldElement:
        counters.tick_inv()
        p = self.field.p
        if self.c0 == 0 and self.c1 == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self.c1 == 0:
            return FieldElement(self.field, pow(self.c0, p - 2, p), 0)
        # (c0 + c1 i)^-1 = (c0 - c1 i) / (c0^2 + c1^2)
        n = (self.c0 * self.c0 + self.c1 * self.c1) % p
        ninv = pow(n, p - 2, p)
        return FieldElement(self.field, self.c0 * ninv % p, -self.c1 * ninv % p)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return self * other.inverse()

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        with counters.suspend_counting():
            result = self.field.one()
            base = self
            while e:
                if e & 1:
                    result = result * base
                base = base.square()
                e >>= 1
        return result

    def mul_int(self, n: int) -> FieldElement:
        """Multiply by a small integer (treated as repeated addition: one a)."""
        counters.tick_add()
        p = self.field.p
        return FieldElement(self.field, self.c0 * n % p, self.c1 * n % p)

    # -- square roots --------------------------------------------------------

    def sqrt(self) -> FieldElement | None:
        """Canonical square root, or None for a non-residue.

        Counts one Sq; the internal exponentiations are unit cost.
        """
        counters.tick_sqrt()
        with counters.suspend_counting():
            r = self._sqrt_impl()
        return r

    def _sqrt_impl(self) -> FieldElement | None:
        p = self.field.p
        if self.field.extension_degree == 1:
            r = _sqrt_mod_p(self.c0, p)
            return None if r is None else self._canonical(FieldElement(self.field, r, 0))
        if self.is_zero():
            return self
        if self.c1 == 0:
            r = _sqrt_mod_p(self.c0, p)
            if r is not None:
                return self._canonical(FieldElement(self.field, r, 0))
            # p = 3 (mod 4): -1 is a non-residue, so -c0 is a residue here
            r = _sqrt_mod_p(-self.c0 % p, p)
            if r is None:
                return None
            return self._canonical(FieldElement(self.field, 0, r))
        # c1 != 0: want (x + y i)^2 = c0 + c1 i, i.e. x^2 - y^2 = c0, 2xy = c1.
        n = _sqrt_mod_p((self.c0 * self.c0 + self.c1 * self.c1) % p, p)
        if n is None:
            return None
        inv2 = (p + 1) // 2
        for s in (n, -n % p):
            x2 = (self.c0 + s) * inv2 % p
            x = _sqrt_mod_p(x2, p)
            if x is None or x == 0:
                continue
            y = self.c1 * pow(2 * x, p - 2, p) % p
            if (x * x - y * y) % p == self.c0 and 2 * x * y % p == self.c1:
                return self._canonical(FieldElement(self.field, x, y))
        return None

    @staticmethod
    def _canonical(r: FieldElement) -> FieldElement:
        neg = -r
        return r if (r.c0, r.c1) <= (neg.c0, neg.c1) else neg

    def is_square(self) -> bool:
        with counters.suspend_counting():
            return self._sqrt_impl() is not None

    # -- predicates / hashing -------------------------------------------------

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.c0 == other.c0 and self.c1 == other.c1 and self.field.p == other.field.p
        if isinstance(other, int):
            return self.c1 == 0 and self.c0 == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.c0, self.c1, self.field.p))

    def __repr__(self):
        if self.c1 == 0:
            return str(self.c0)
        return f"({self.c0} + {self.c1}*i)"

    # -- serialization --------------------------------------------------------

    def to_json(self):
        if self.field.extension_degree == 1:
            return str(self.c0)
        return [str(self.c0), str(self.c1)]

    def in_base_field(self) -> bool:
        return self.c1 == 0


def batch_invert(xs: list[FieldElement]) -> list[FieldElement]:
    """Invert a list elementwise with one I and 3(n-1) M (Montgomery trick)."""
    n = len(xs)
    if n == 0:
        return []
    for i, x in enumerate(xs):
        if x.is_zero():
            raise ZeroDivisionError(f"batch_invert: zero element at index {i}")
    if n == 1:
        return [xs[0].inverse()]
    prefix = [xs[0]]
    for i in range(1, n):
        prefix.append(prefix[-1] * xs[i])
    inv_total = prefix[-1].inverse()
    out = [None] * n
    for i in range(n - 1, 0, -1):
        out[i] = inv_total * prefix[i - 1]
        inv_total = inv_total * xs[i]
    out[0] = inv_total
    return out
