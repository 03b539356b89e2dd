"""Univariate polynomials and reduced rational functions over a Field.

Coefficients are stored lowest degree first with no trailing zeros, so the
zero polynomial has an empty coefficient tuple and degree -inf.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

import sympy

from .fields import DomainError, Field, GaussianRational

NEG_INF = float("-inf")

_SYMPY_S = sympy.symbols("s")


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        cs = [field.coerce(c) for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero(field: Field) -> "Poly":
        return Poly(field, ())

    @staticmethod
    def one(field: Field) -> "Poly":
        return Poly(field, (1,))

    @staticmethod
    def monomial(field: Field, k: int, c=1) -> "Poly":
        return Poly(field, (0,) * k + (c,))

    @staticmethod
    def s(field: Field) -> "Poly":
        """The indeterminate."""
        return Poly.monomial(field, 1)

    # -- basic queries ----------------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs == (self.field.one(),) or (
            len(self.coeffs) == 1 and self.coeffs[0] == self.field.one()
        )

    @property
    def lead(self):
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one()

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.field.zero()

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def sort_key(self):
        """Deterministic total order: by degree, then coefficients from the top."""
        f = self.field
        return (len(self.coeffs), tuple(f.sort_key(c) for c in reversed(self.coeffs)))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.field != other.field:
            raise DomainError("mixed-field polynomial arithmetic")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        p = self.field.p
        if p is not None:
            out = list(a)
            for i, c in enumerate(b):
                out[i] = (out[i] + c) % p
        else:
            out = list(a)
            for i, c in enumerate(b):
                out[i] = out[i] + c
        return Poly(self.field, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        p = self.field.p
        if p is not None:
            return Poly(self.field, [(-c) % p for c in self.coeffs])
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.field)
        p = self.field.p
        out = [self.field.zero()] * (len(a) + len(b) - 1)
        if p is not None:
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] = (out[i + j] + ai * bj) % p
        else:
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        out[i + j] = out[i + j] + ai * bj
        return Poly(self.field, out)

    def scale(self, c) -> "Poly":
        c = self.field.coerce(c)
        p = self.field.p
        if p is not None:
            return Poly(self.field, [(a * c) % p for a in self.coeffs])
        return Poly(self.field, [a * c for a in self.coeffs])

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise DomainError("negative polynomial power")
        out = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other: "Poly"):
        self._check(other)
        if not other:
            raise DomainError("polynomial division by zero")
        f = self.field
        p = f.p
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(rem) - 1 < db:
            return Poly.zero(f), self
        quo = [f.zero()] * (len(rem) - db)
        inv_lead = f.inv(other.coeffs[-1])
        b = other.coeffs
        if p is not None:
            for i in range(len(rem) - 1, db - 1, -1):
                c = rem[i] % p
                if c:
                    q = (c * inv_lead) % p
                    quo[i - db] = q
                    for j in range(db + 1):
                        rem[i - db + j] = (rem[i - db + j] - q * b[j]) % p
        else:
            for i in range(len(rem) - 1, db - 1, -1):
                c = rem[i]
                if c:
                    q = c * inv_lead
                    quo[i - db] = q
                    for j in range(db + 1):
                        rem[i - db + j] = rem[i - db + j] - q * b[j]
        return Poly(f, quo), Poly(f, rem[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        """Scale to leading coefficient 1; the zero polynomial stays zero."""
        if not self.coeffs:
            return self
        if self.is_monic():
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def evaluate(self, x):
        x = self.field.coerce(x)
        acc = self.field.zero()
        p = self.field.p
        if p is not None:
            for c in reversed(self.coeffs):
                acc = (acc * x + c) % p
        else:
            for c in reversed(self.coeffs):
                acc = acc * x + c
        return acc

    def reverse(self, n: int) -> "Poly":
        """t^n * self(1/t): the coefficient list reversed within length n+1."""
        if len(self.coeffs) - 1 > n:
            raise DomainError("reversal length below degree")
        padded = list(self.coeffs) + [self.field.zero()] * (n + 1 - len(self.coeffs))
        return Poly(self.field, padded[::-1])

    def valuation(self) -> int:
        """Multiplicity of the root 0 (number of trailing zero coefficients)."""
        if not self.coeffs:
            raise DomainError("zero polynomial has infinite valuation")
        v = 0
        while self.field.is_zero(self.coeffs[v]):
            v += 1
        return v

    def __repr__(self):
        if not self.coeffs:
            return "0"
        f = self.field
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if f.is_zero(c):
                continue
            if k == 0:
                terms.append(f.element_repr(c))
            else:
                sk = "s" if k == 1 else f"s^{k}"
                terms.append(sk if c == f.one() else f"{f.element_repr(c)}*{sk}")
        return " + ".join(terms)

    def to_json(self):
        return [self.field.element_to_json(c) for c in self.coeffs]

    @staticmethod
    def from_json(field: Field, obj) -> "Poly":
        return Poly(field, [field.element_from_json(c) for c in obj])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor; gcd(0, 0) is a domain error."""
    if a.field != b.field:
        raise DomainError("mixed-field gcd")
    if not a and not b:
        raise DomainError("gcd(0, 0) is undefined")
    while b:
        a, b = b, a % b
    return a.monic()


def poly_gcd_many(polys) -> Poly:
    return reduce(poly_gcd, polys)


def poly_lcm(a: Poly, b: Poly) -> Poly:
    """Monic least common multiple of two nonzero polynomials."""
    if not a or not b:
        raise DomainError("lcm requires nonzero polynomials")
    return ((a * b) // poly_gcd(a, b)).monic()


def poly_lcm_many(polys) -> Poly:
    return reduce(poly_lcm, polys)


def divides(a: Poly, b: Poly) -> bool:
    """Whether a | b, with the convention 0 | 0 and p | 0 for every p."""
    if a.field != b.field:
        raise DomainError("mixed-field divisibility")
    if not a:
        return not b
    if not b:
        return True
    return not (b % a)


# -- factorization (sympy-backed) ---------------------------------------------


def _to_sympy(a: Poly):
    f = a.field
    if f.p is not None:
        dom = sympy.GF(f.p)
        coeffs = [int(c) for c in reversed(a.coeffs)]
    elif f.kind == Field.RATIONALS:
        dom = sympy.QQ
        coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(a.coeffs)]
    else:
        dom = sympy.polys.domains.QQ_I
        coeffs = [
            sympy.Rational(c.re.numerator, c.re.denominator)
            + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)
            for c in reversed(a.coeffs)
        ]
    return sympy.Poly(coeffs, _SYMPY_S, domain=dom)


def _from_sympy(field: Field, sp) -> Poly:
    coeffs = list(reversed(sp.all_coeffs()))
    if field.p is not None:
        return Poly(field, [int(c) % field.p for c in coeffs])
    if field.kind == Field.RATIONALS:
        return Poly(field, [Fraction(c.p, c.q) for c in map(sympy.Rational, coeffs)])
    out = []
    for c in coeffs:
        cre, cim = sympy.re(c), sympy.im(c)
        cre, cim = sympy.Rational(cre), sympy.Rational(cim)
        out.append(GaussianRational(Fraction(cre.p, cre.q), Fraction(cim.p, cim.q)))
    return Poly(field, out)


def factorize(a: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, in a deterministic order.

    The product of the factors times the leading coefficient of ``a`` equals
    ``a``.  Ordering: by degree, then by the coefficient sort key.
    """
    if not a:
        raise DomainError("cannot factor the zero polynomial")
    if a.degree == 0:
        return []
    _, factors = _to_sympy(a.monic()).factor_list()
    out = [(_from_sympy(a.field, f).monic(), int(m)) for f, m in factors]
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


def divisor_of_degree(a: Poly, lo: Poly, w: int) -> Poly | None:
    """A monic tau with lo | tau | a and deg(tau) = w, or None if none exists.

    Preconditions: lo | a and deg(lo) <= w <= deg(a).  Absence is meaningful:
    over a field that is not algebraically closed the degree w may be
    unreachable by any divisor.  Ties are broken by taking factors greedily in
    the order produced by :func:`factorize`.
    """
    if not a or not lo:
        raise DomainError("divisor_of_degree requires nonzero polynomials")
    if not divides(lo, a):
        raise DomainError("lo must divide a")
    if not (lo.degree <= w <= a.degree):
        raise DomainError(f"degree target {w} outside [{lo.degree}, {a.degree}]")
    need = w - lo.degree
    factors = factorize(a // lo)
    degs = [f.degree for f, _ in factors]
    mults = [m for _, m in factors]

    # reachable[i] = set of degree totals attainable using factors i..end
    reachable = [set() for _ in range(len(factors) + 1)]
    reachable[-1].add(0)
    for i in range(len(factors) - 1, -1, -1):
        for t in reachable[i + 1]:
            for k in range(mults[i] + 1):
                reachable[i].add(t + k * degs[i])

    if need not in reachable[0]:
        return None
    tau = lo.monic()
    remaining = need
    for i, (f, m) in enumerate(factors):
        k = min(m, remaining // degs[i]) if degs[i] else 0
        while k > 0 and (remaining - k * degs[i]) not in reachable[i + 1]:
            k -= 1
        if k:
            tau = tau * f**k
            remaining -= k * degs[i]
    assert remaining == 0
    return tau.monic()


class RationalFunction:
    """An irreducible fraction of polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.field)
        if num.field != den.field:
            raise DomainError("mixed-field rational function")
        if not den:
            raise DomainError("zero denominator")
        if num:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead_inv = num.field.inv(den.lead)
            num, den = num.scale(lead_inv), den.monic()
        else:
            den = Poly.one(num.field)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def from_poly(p: Poly) -> "RationalFunction":
        return RationalFunction(p, Poly.one(p.field))

    @staticmethod
    def zero(field: Field) -> "RationalFunction":
        return RationalFunction(Poly.zero(field))

    @staticmethod
    def one(field: Field) -> "RationalFunction":
        return RationalFunction(Poly.one(field))

    @property
    def field(self) -> Field:
        return self.num.field

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> Poly:
        if not self.is_poly():
            raise DomainError(f"{self!r} is not a polynomial")
        return self.num

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def sort_key(self):
        return (self.num.sort_key(), self.den.sort_key())

    def rel_degree(self) -> int:
        """deg(num) - deg(den); requires a nonzero fraction."""
        if not self.num:
            raise DomainError("relative degree of zero")
        return self.num.degree - self.den.degree

    def __repr__(self):
        if self.is_poly():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(field: Field, obj) -> "RationalFunction":
        if isinstance(obj, list):
            return RationalFunction.from_poly(Poly.from_json(field, obj))
        return RationalFunction(
            Poly.from_json(field, obj["num"]), Poly.from_json(field, obj["den"])
        )
