"""Exact base fields: rationals, Gaussian rationals and prime fields.

Elements are plain Python values: ``fractions.Fraction`` for the rationals,
:class:`GaussianRational` for Q(i), and ``int`` in ``[0, p)`` for prime
fields.  All arithmetic is exact; nothing in this package ever rounds.
"""

from __future__ import annotations

from fractions import Fraction


class DomainError(ValueError):
    """Raised when an operation's mathematical precondition is violated."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class GaussianRational:
    """An element a + b*i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __add__(self, other):
        other = _as_gaussian(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gaussian(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_gaussian(other) - self

    def __mul__(self, other):
        other = _as_gaussian(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __truediv__(self, other):
        other = _as_gaussian(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        return _as_gaussian(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"


def _as_gaussian(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    raise TypeError(f"cannot coerce {x!r} to GaussianRational")


def _fraction_to_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _fraction_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


class Field:
    """Descriptor of one of the supported coefficient fields.

    ``p`` is None for characteristic zero and the (prime) modulus for prime
    fields; polynomial kernels branch on it for fast modular loops.
    """

    RATIONALS = "rationals"
    GAUSSIAN = "gaussian-rationals"
    PRIME = "prime-field"

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind == Field.PRIME:
            if p is None or not _is_prime(p):
                raise DomainError(f"prime-field modulus must be prime, got {p}")
        elif kind in (Field.RATIONALS, Field.GAUSSIAN):
            if p is not None:
                raise DomainError(f"{kind} takes no modulus")
        else:
            raise DomainError(f"unknown field kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    @staticmethod
    def rationals() -> "Field":
        return Field(Field.RATIONALS)

    @staticmethod
    def gaussian_rationals() -> "Field":
        return Field(Field.GAUSSIAN)

    @staticmethod
    def prime(p: int) -> "Field":
        return Field(Field.PRIME, p)

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.kind == other.kind
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        if self.kind == Field.PRIME:
            return f"Field(F_{self.p})"
        return f"Field({self.kind})"

    # -- element construction ------------------------------------------------

    def zero(self):
        if self.p is not None:
            return 0
        if self.kind == Field.RATIONALS:
            return Fraction(0)
        return GaussianRational(0)

    def one(self):
        if self.p is not None:
            return 1
        if self.kind == Field.RATIONALS:
            return Fraction(1)
        return GaussianRational(1)

    def coerce(self, x):
        """Coerce an int/Fraction/GaussianRational into this field."""
        if self.p is not None:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise DomainError(f"{x} has no image in F_{self.p}")
                return x.numerator * pow(x.denominator, self.p - 2, self.p) % self.p
            if isinstance(x, int):
                return x % self.p
            raise DomainError(f"cannot coerce {x!r} into F_{self.p}")
        if self.kind == Field.RATIONALS:
            if isinstance(x, GaussianRational):
                if x.im != 0:
                    raise DomainError(f"{x!r} is not rational")
                return x.re
            return Fraction(x)
        return _as_gaussian(x)

    def imaginary_unit(self) -> GaussianRational:
        if self.kind != Field.GAUSSIAN:
            raise DomainError("imaginary unit only exists in Q(i)")
        return GaussianRational(0, 1)

    # -- arithmetic (generic path; prime fields use plain ints mod p) --------

    def inv(self, a):
        if self.p is not None:
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, self.p - 2, self.p)
        return self.one() / a

    def is_zero(self, a) -> bool:
        if self.p is not None:
            return a % self.p == 0
        return not a

    # -- ordering & serialization --------------------------------------------

    def sort_key(self, a):
        """A total order on elements, used for deterministic tie-breaks."""
        if self.p is not None:
            return a
        if self.kind == Field.RATIONALS:
            return (a, Fraction(0))
        return (a.re, a.im)

    def element_to_json(self, a):
        if self.p is not None:
            return str(a)
        if self.kind == Field.RATIONALS:
            return _fraction_to_str(a)
        return {"re": _fraction_to_str(a.re), "im": _fraction_to_str(a.im)}

    def element_from_json(self, obj):
        if self.p is not None:
            return int(obj) % self.p
        if self.kind == Field.RATIONALS:
            return _fraction_from_str(obj)
        if isinstance(obj, dict):
            return GaussianRational(
                _fraction_from_str(obj["re"]), _fraction_from_str(obj.get("im", "0/1"))
            )
        return GaussianRational(_fraction_from_str(obj))

    def element_repr(self, a) -> str:
        return str(a)

    def to_json(self):
        if self.kind == Field.PRIME:
            return {"kind": self.kind, "p": self.p}
        return {"kind": self.kind}

    @staticmethod
    def from_json(obj) -> "Field":
        if isinstance(obj, str):
            return Field.from_flag(obj)
        kind = obj["kind"]
        if kind == Field.PRIME:
            return Field.prime(int(obj["p"]))
        return Field(kind)

    @staticmethod
    def from_flag(flag: str) -> "Field":
        """Parse the CLI shorthand: q, qi, or fp:<p>."""
        if flag == "q":
            return Field.rationals()
        if flag == "qi":
            return Field.gaussian_rationals()
        if flag.startswith("fp:"):
            return Field.prime(int(flag[3:]))
        raise DomainError(f"unknown field flag {flag!r}")

    def elements(self):
        """Iterate all field elements (prime fields only)."""
        if self.p is None:
            raise DomainError("cannot enumerate an infinite field")
        return range(self.p)
