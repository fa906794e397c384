"""Sparse homogeneous polynomial arithmetic in four variables.

Forms are maps from exponent 4-tuples to nonzero field coefficients.  The
canonical term order is graded lexicographic on (e1, e2, e3, e4), largest
tuple first.  The module also provides signed-permutation actions, the
monomial parity partition used by the fast surface model, reduction modulo a
quartic that is monic in the first variable, and truncated bivariate power
series.
"""

from __future__ import annotations

from . import counters
from .errors import ContractError, InternalConsistencyError
from .field import Field, FieldElement

Exps = tuple  # (e1, e2, e3, e4)


class HomogeneousForm:
    __slots__ = ("field", "degree", "terms")

    def __init__(self, field: Field, degree: int, terms: dict):
        self.field = field
        self.degree = degree
        self.terms = terms

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, degree: int) -> HomogeneousForm:
        return cls(field, degree, {})

    @classmethod
    def from_terms(cls, field: Field, degree: int, items) -> HomogeneousForm:
        terms = {}
        for exps, c in items:
            exps = tuple(exps)
            if sum(exps) != degree:
                raise ContractError(f"exponents {exps} do not sum to degree {degree}")
            if exps in terms:
                c = terms[exps] + c
            if c.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = c
        return cls(field, degree, terms)

    @classmethod
    def monomial(cls, field: Field, exps, coeff: FieldElement) -> HomogeneousForm:
        exps = tuple(exps)
        if coeff.is_zero():
            return cls(field, sum(exps), {})
        return cls(field, sum(exps), {exps: coeff})

    @classmethod
    def variable(cls, field: Field, i: int) -> HomogeneousForm:
        exps = tuple(1 if j == i else 0 for j in range(4))
        return cls(field, 1, {exps: field.one()})

    @classmethod
    def constant(cls, field: Field, c: FieldElement) -> HomogeneousForm:
        if c.is_zero():
            return cls(field, 0, {})
        return cls(field, 0, {(0, 0, 0, 0): c})

    # -- basic queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps) -> FieldElement:
        return self.terms.get(tuple(exps), self.field.zero())

    def sorted_terms(self):
        """Terms in graded-lex order, leading monomial first."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def leading_coefficient(self) -> FieldElement:
        if not self.terms:
            return self.field.zero()
        return self.terms[max(self.terms)]

    def monomials(self):
        return set(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousForm):
            return NotImplemented
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        names = ("X", "Y", "Z", "T")
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(exps) if e
            )
            parts.append(f"{c!r}*{mono}" if mono else f"{c!r}")
        return " + ".join(parts)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: HomogeneousForm) -> HomogeneousForm:
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ContractError(
                f"cannot add forms of degrees {self.degree} and {other.degree}"
            )
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            cur = terms.get(exps)
            s = c if cur is None else cur + c
            if s.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = s
        return HomogeneousForm(self.field, self.degree, terms)

    def __neg__(self) -> HomogeneousForm:
        return HomogeneousForm(self.field, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: HomogeneousForm) -> HomogeneousForm:
        return self + (-other)

    def scale(self, c: FieldElement) -> HomogeneousForm:
        if c.is_zero():
            return HomogeneousForm.zero(self.field, self.degree)
        return HomogeneousForm(self.field, self.degree, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: HomogeneousForm) -> HomogeneousForm:
        if self.is_zero() or other.is_zero():
            return HomogeneousForm.zero(self.field, self.degree + other.degree)
        # iterate over the smaller operand's terms in the outer loop
        a, b = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        field = self.field
        degree = self.degree + other.degree
        n_mul = len(a.terms) * len(b.terms)
        if field.extension_degree == 1:
            # unboxed residue arithmetic; coefficients are rebuilt once at the end
            p = field.p
            acc_i: dict = {}
            b_items = [(e, c.c0) for e, c in b.terms.items()]
            for (a1, a2, a3, a4), ca in a.terms.items():
                cai = ca.c0
                for (b1, b2, b3, b4), cbi in b_items:
                    key = (a1 + b1, a2 + b2, a3 + b3, a4 + b4)
                    acc_i[key] = acc_i.get(key, 0) + cai * cbi
            counters.tick_mul(n_mul)
            counters.tick_add(max(0, n_mul - len(acc_i)))
            out = {}
            for key, v in acc_i.items():
                v %= p
                if v:
                    out[key] = FieldElement(field, v, 0)
            return HomogeneousForm(field, degree, out)
        if field.extension_degree == 2:
            p = field.p
            acc_2: dict = {}
            b_items2 = [(e, c.c0, c.c1) for e, c in b.terms.items()]
            for (a1, a2, a3, a4), ca in a.terms.items():
                x0, x1 = ca.c0, ca.c1
                xs = x0 + x1
                for (b1, b2, b3, b4), y0, y1 in b_items2:
                    key = (a1 + b1, a2 + b2, a3 + b3, a4 + b4)
                    m0 = x0 * y0
                    m1 = x1 * y1
                    m2 = xs * (y0 + y1)
                    cur = acc_2.get(key)
                    if cur is None:
                        acc_2[key] = [m0 - m1, m2 - m0 - m1]
                    else:
                        cur[0] += m0 - m1
                        cur[1] += m2 - m0 - m1
            counters.tick_mul(n_mul)
            counters.tick_add(max(0, n_mul - len(acc_2)))
            out = {}
            for key, (re, im) in acc_2.items():
                re %= p
                im %= p
                if re or im:
                    out[key] = FieldElement(field, re, im)
            return HomogeneousForm(field, degree, out)
        acc: dict = {}
        b_items = list(b.terms.items())
        for (a1, a2, a3, a4), ca in a.terms.items():
            for (b1, b2, b3, b4), cb in b_items:
                key = (a1 + b1, a2 + b2, a3 + b3, a4 + b4)
                prod = ca * cb
                cur = acc.get(key)
                if cur is None:
                    acc[key] = prod
                else:
                    s = cur + prod
                    if s.is_zero():
                        del acc[key]
                    else:
                        acc[key] = s
        return HomogeneousForm(self.field, degree, acc)

    def mul_variable_power(self, i: int, e: int) -> HomogeneousForm:
        """Multiply by variable i to the power e (pure bookkeeping)."""
        if e == 0:
            return self
        terms = {}
        for exps, c in self.terms.items():
            new = list(exps)
            new[i] += e
            terms[tuple(new)] = c
        return HomogeneousForm(self.field, self.degree + e, terms)

    def evaluate(self, point) -> FieldElement:
        """Evaluate at a 4-tuple of field elements (powers are cached)."""
        if not self.terms:
            return self.field.zero()
        maxes = [0, 0, 0, 0]
        for exps in self.terms:
            for i in range(4):
                if exps[i] > maxes[i]:
                    maxes[i] = exps[i]
        powers = []
        for i in range(4):
            row = [self.field.one()]
            for _ in range(maxes[i]):
                row.append(row[-1] * point[i])
            powers.append(row)
        acc = self.field.zero()
        for exps, c in self.terms.items():
            v = c
            for i in range(4):
                if exps[i]:
                    v = v * powers[i][exps[i]]
            acc = acc + v
        return acc

    def map_coefficients(self, func, new_field: Field) -> HomogeneousForm:
        terms = {}
        for exps, c in self.terms.items():
            nc = func(c)
            if not nc.is_zero():
                terms[exps] = nc
        return HomogeneousForm(new_field, self.degree, terms)

    def embed(self, big: Field) -> HomogeneousForm:
        return self.map_coefficients(big.embed, big)

    def normalized(self) -> HomogeneousForm:
        """Scale so the leading graded-lex coefficient is 1."""
        if not self.terms:
            return self
        lead = self.terms[max(self.terms)]
        return self.scale(lead.inverse())

    # -- substitutions ----------------------------------------------------------

    def substitute_zero(self, i: int) -> HomogeneousForm:
        """Set variable i to zero."""
        return HomogeneousForm(
            self.field, self.degree, {e: c for e, c in self.terms.items() if e[i] == 0}
        )

    def divide_by_variable(self, i: int) -> HomogeneousForm:
        """Exact division by variable i; raises if any term lacks it."""
        terms = {}
        for exps, c in self.terms.items():
            if exps[i] == 0:
                raise InternalConsistencyError(
                    f"form is not divisible by variable {i}: term {exps}"
                )
            new = list(exps)
            new[i] -= 1
            terms[tuple(new)] = c
        return HomogeneousForm(self.field, self.degree - 1, terms)

    def compose_linear(self, rows) -> HomogeneousForm:
        """Substitute variable i by the linear form with coefficients rows[i].

        rows is a 4x4 grid of field elements: var_i -> sum_j rows[i][j] var_j.
        """
        lins = []
        for i in range(4):
            lespace = {}
            for j in range(4):
                c = rows[i][j]
                if not c.is_zero():
                    exps = tuple(1 if k == j else 0 for k in range(4))
                    lespace[exps] = c
            lins.append(HomogeneousForm(self.field, 1, lespace))
        maxes = [0, 0, 0, 0]
        for exps in self.terms:
            for i in range(4):
                maxes[i] = max(maxes[i], exps[i])
        pows = []
        for i in range(4):
            row = [HomogeneousForm.constant(self.field, self.field.one())]
            for _ in range(maxes[i]):
                row.append(row[-1] * lins[i])
            pows.append(row)
        acc = HomogeneousForm.zero(self.field, self.degree)
        for exps, c in self.terms.items():
            term = HomogeneousForm.constant(self.field, c)
            for i in range(4):
                if exps[i]:
                    term = term * pows[i][exps[i]]
            acc = acc + term
        return acc

    # -- serialization -----------------------------------------------------------

    def to_json(self):
        return [
            {"exponents": list(exps), "coefficient": c.to_json()}
            for exps, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, field: Field, degree: int, data) -> HomogeneousForm:
        items = []
        for entry in data:
            c = entry["coefficient"]
            items.append((tuple(entry["exponents"]), field(tuple(c) if isinstance(c, list) else c)))
        return cls.from_terms(field, degree, items)


class SignedPermutation:
    """Variable substitution var_i -> signs[i] * var_{perm[i]}."""

    __slots__ = ("perm", "signs")

    def __init__(self, perm, signs):
        if sorted(perm) != [0, 1, 2, 3]:
            raise ContractError("perm must be a permutation of 0..3")
        if any(s not in (1, -1) for s in signs):
            raise ContractError("signs must be +-1")
        self.perm = tuple(perm)
        self.signs = tuple(signs)

    def apply_point(self, point):
        """Image of a coordinate tuple under the substitution."""
        out = []
        for i in range(4):
            v = point[self.perm[i]]
            out.append(v if self.signs[i] == 1 else -v)
        return tuple(out)

    def compose(self, other: SignedPermutation) -> SignedPermutation:
        """self after other: first apply other, then self."""
        perm = tuple(other.perm[self.perm[i]] for i in range(4))
        signs = tuple(self.signs[i] * other.signs[self.perm[i]] for i in range(4))
        return SignedPermutation(perm, signs)

    def __eq__(self, other):
        return (
            isinstance(other, SignedPermutation)
            and self.perm == other.perm
            and self.signs == other.signs
        )

    def __repr__(self):
        names = ("X", "Y", "Z", "T")
        imgs = [("-" if self.signs[i] == -1 else "") + names[self.perm[i]] for i in range(4)]
        return f"(X,Y,Z,T) -> ({', '.join(imgs)})"


def apply_signed_permutation(f: HomogeneousForm, sp: SignedPermutation) -> HomogeneousForm:
    """The form f(sp(X, Y, Z, T))."""
    terms = {}
    for exps, c in f.terms.items():
        new = [0, 0, 0, 0]
        sign = 1
        for i in range(4):
            e = exps[i]
            if e:
                new[sp.perm[i]] += e
                if sp.signs[i] == -1 and e % 2 == 1:
                    sign = -sign
        key = tuple(new)
        val = c if sign == 1 else -c
        cur = terms.get(key)
        if cur is None:
            terms[key] = val
        else:
            s = cur + val
            if s.is_zero():
                del terms[key]
            else:
                terms[key] = s
    return HomogeneousForm(f.field, f.degree, terms)


def partition_class(exps) -> int:
    """Parity class of a monomial under the three diagonal sign involutions.

    The involutions negate (Z,T), (Y,T) and (Y,Z) respectively.  Class 1 is
    fixed by all three; classes 2, 3, 4 are fixed by exactly one (the first,
    second, third respectively) and negated by the other two.
    """
    _, e2, e3, e4 = exps
    s1 = (e3 + e4) % 2
    s2 = (e2 + e4) % 2
    s3 = (e2 + e3) % 2
    if s1 == 0 and s2 == 0 and s3 == 0:
        return 1
    if s1 == 0 and s2 == 1 and s3 == 1:
        return 2
    if s1 == 1 and s2 == 0 and s3 == 1:
        return 3
    if s1 == 1 and s2 == 1 and s3 == 0:
        return 4
    raise InternalConsistencyError(f"monomial {exps} matches no parity class")


def form_partition_class(f: HomogeneousForm) -> int | None:
    """Common class of all monomials of f, or None if mixed/zero."""
    cls = None
    for exps in f.terms:
        c = partition_class(exps)
        if cls is None:
            cls = c
        elif cls != c:
            return None
    return cls


def monomials_of_degree(degree: int):
    """All exponent 4-tuples of the given total degree, graded-lex descending."""
    out = []
    for e1 in range(degree, -1, -1):
        for e2 in range(degree - e1, -1, -1):
            for e3 in range(degree - e1 - e2, -1, -1):
                out.append((e1, e2, e3, degree - e1 - e2 - e3))
    return out


def monomials_in_class(degree: int, cls: int):
    return [e for e in monomials_of_degree(degree) if partition_class(e) == cls]


def reduce_mod_quartic(f: HomogeneousForm, quartic: HomogeneousForm) -> HomogeneousForm:
    return reduce_mod_quartic_with_quotient(f, quartic)[0]


def reduce_mod_quartic_with_quotient(
    f: HomogeneousForm, quartic: HomogeneousForm
) -> tuple[HomogeneousForm, HomogeneousForm]:
    """Canonical representative of f modulo a quartic monic in the first variable.

    Rewrites every occurrence of X^4 using X^4 = X^4 - K until all exponents of
    the first variable are at most 3.  Returns (reduced, quotient) with
    f = reduced + quotient * K.
    """
    if quartic.degree != 4 or not quartic.coefficient((4, 0, 0, 0)) == quartic.field.one():
        raise ContractError("reduction quartic must be monic in the first variable")
    quotient = HomogeneousForm.zero(f.field, f.degree - 4 if f.degree >= 4 else 0)
    current = f
    while True:
        high = [(e, c) for e, c in current.terms.items() if e[0] >= 4]
        if not high:
            return current, quotient
        q_step = HomogeneousForm(
            f.field,
            current.degree - 4,
            {(e[0] - 4, e[1], e[2], e[3]): c for e, c in high},
        )
        quotient = quotient + q_step
        current = current - q_step * quartic


def pseudo_divisible(f: HomogeneousForm, quartic: HomogeneousForm) -> bool:
    """Whether the (irreducible) quartic divides f.

    The quartic is treated as a degree-2 polynomial in the fourth variable; f
    is pseudo-reduced by the leading coefficient, so no field inversions are
    needed.  Correctness relies on the quartic being irreducible, which holds
    for the Kummer equation of a nonsingular curve.
    """
    lead2 = {}
    lead1 = {}
    lead0 = {}
    for e, c in quartic.terms.items():
        if e[3] == 2:
            lead2[(e[0], e[1], e[2], 0)] = c
        elif e[3] == 1:
            lead1[e] = c
        else:
            lead0[e] = c
    f1 = HomogeneousForm(quartic.field, 2, lead2)
    if f1.is_zero():
        raise ContractError("quartic is not quadratic in the fourth variable")
    current = f
    while not current.is_zero():
        d = max(e[3] for e in current.terms)
        if d < 2:
            return current.is_zero()
        # leading k4-coefficient of f, as a form with the k4-power stripped
        lead = HomogeneousForm(
            f.field,
            current.degree - d,
            {(e[0], e[1], e[2], 0): c for e, c in current.terms.items() if e[3] == d},
        )
        shifted = quartic.mul_variable_power(3, d - 2)
        current = f1 * current - lead * shifted
        if not current.is_zero() and max(e[3] for e in current.terms) >= d:
            raise InternalConsistencyError("pseudo-division failed to decrease degree")
    return True


class BivariateSeries:
    """Truncated power series in two local parameters s1, s2.

    Terms at total degree >= truncation are discarded.
    """

    __slots__ = ("field", "truncation", "terms")

    def __init__(self, field: Field, truncation: int, terms: dict | None = None):
        self.field = field
        self.truncation = truncation
        self.terms = {}
        if terms:
            for (d1, d2), c in terms.items():
                if d1 + d2 < truncation and not c.is_zero():
                    self.terms[(d1, d2)] = c

    @classmethod
    def zero(cls, field: Field, truncation: int) -> BivariateSeries:
        return cls(field, truncation, {})

    @classmethod
    def one(cls, field: Field, truncation: int) -> BivariateSeries:
        return cls(field, truncation, {(0, 0): field.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, d1: int, d2: int) -> FieldElement:
        return self.terms.get((d1, d2), self.field.zero())

    def _check(self, other: BivariateSeries):
        if self.truncation != other.truncation:
            raise ContractError("truncation mismatch in series arithmetic")

    def __add__(self, other: BivariateSeries) -> BivariateSeries:
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            cur = terms.get(k)
            s = c if cur is None else cur + c
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = s
        return BivariateSeries(self.field, self.truncation, terms)

    def __neg__(self) -> BivariateSeries:
        return BivariateSeries(self.field, self.truncation, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: BivariateSeries) -> BivariateSeries:
        return self + (-other)

    def scale(self, c: FieldElement) -> BivariateSeries:
        if c.is_zero():
            return BivariateSeries.zero(self.field, self.truncation)
        return BivariateSeries(self.field, self.truncation, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: BivariateSeries) -> BivariateSeries:
        self._check(other)
        acc = {}
        tr = self.truncation
        for (a1, a2), ca in self.terms.items():
            for (b1, b2), cb in other.terms.items():
                d1, d2 = a1 + b1, a2 + b2
                if d1 + d2 >= tr:
                    continue
                key = (d1, d2)
                prod = ca * cb
                cur = acc.get(key)
                if cur is None:
                    acc[key] = prod
                else:
                    s = cur + prod
                    if s.is_zero():
                        del acc[key]
                    else:
                        acc[key] = s
        return BivariateSeries(self.field, self.truncation, acc)

    def __eq__(self, other):
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return self.truncation == other.truncation and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (d1, d2), c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            parts.append(f"{c!r}*s1^{d1}*s2^{d2}")
        return " + ".join(parts) + f" + O({self.truncation})"


def evaluate_form_at_series(f: HomogeneousForm, series4) -> BivariateSeries:
    """Substitute a 4-tuple of series for the variables of a form."""
    tr = series4[0].truncation
    field = f.field
    maxes = [0, 0, 0, 0]
    for exps in f.terms:
        for i in range(4):
            maxes[i] = max(maxes[i], exps[i])
    pows = []
    for i in range(4):
        row = [BivariateSeries.one(field, tr)]
        for _ in range(maxes[i]):
            row.append(row[-1] * series4[i])
        pows.append(row)
    acc = BivariateSeries.zero(field, tr)
    for exps, c in f.terms.items():
        term = BivariateSeries(field, tr, {(0, 0): c})
        for i in range(4):
            if exps[i]:
                term = term * pows[i][exps[i]]
        acc = acc + term
    return acc
