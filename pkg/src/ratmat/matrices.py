"""Dense polynomial and rational matrices over an exact field."""

from __future__ import annotations

from .fields import DomainError, Field
from .poly import NEG_INF, Poly, RationalFunction, poly_lcm_many


class PolyMatrix:
    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries, cols: int | None = None):
        entries = tuple(tuple(e for e in row) for row in entries)
        for row in entries:
            for e in row:
                if not isinstance(e, Poly) or e.field != field:
                    raise DomainError("all entries must be Poly over the matrix field")
        if entries and any(len(row) != len(entries[0]) for row in entries):
            raise DomainError("ragged matrix")
        ncols = len(entries[0]) if entries else (cols or 0)
        if entries and cols is not None and cols != ncols:
            raise DomainError("cols disagrees with entries")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @staticmethod
    def from_coeff_lists(field: Field, rows) -> "PolyMatrix":
        return PolyMatrix(
            field, [[Poly(field, coeffs) for coeffs in row] for row in rows]
        )

    @staticmethod
    def zeros(field: Field, m: int, n: int) -> "PolyMatrix":
        z = Poly.zero(field)
        return PolyMatrix(field, [[z] * n for _ in range(m)], cols=n)

    @staticmethod
    def identity(field: Field, n: int) -> "PolyMatrix":
        one, zero = Poly.one(field), Poly.zero(field)
        return PolyMatrix(
            field, [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    @property
    def degree(self):
        """Highest entry degree; -inf for the zero matrix."""
        return max((e.degree for row in self.entries for e in row), default=NEG_INF)

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.field, list(zip(*self.entries))) if self.entries else self

    def stack(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.field != self.field or (other.rows and other.cols != self.cols):
            raise DomainError("stack requires matching widths and fields")
        return PolyMatrix(self.field, self.entries + other.entries, cols=self.cols)

    def scale(self, p: Poly) -> "PolyMatrix":
        return PolyMatrix(self.field, [[e * p for e in row] for row in self.entries])

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise DomainError("dimension mismatch in matrix product")
        z = Poly.zero(self.field)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.field, out)

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.field == other.field
            and self.entries == other.entries
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash((self.field, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in row) for row in self.entries)
        return f"PolyMatrix({self.rows}x{self.cols}: [{body}])"

    def to_rational(self) -> "RationalMatrix":
        return RationalMatrix(
            self.field,
            [[RationalFunction.from_poly(e) for e in row] for row in self.entries],
        )

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    @staticmethod
    def from_json(obj) -> "PolyMatrix":
        field = Field.from_json(obj["field"])
        m = PolyMatrix(
            field,
            [[Poly.from_json(field, e) for e in row] for row in obj["entries"]],
        )
        if m.rows != obj.get("rows", m.rows) or m.cols != obj.get("cols", m.cols):
            raise DomainError("matrix JSON shape disagrees with entries")
        return m


class RationalMatrix:
    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries, cols: int | None = None):
        entries = tuple(tuple(e for e in row) for row in entries)
        for row in entries:
            for e in row:
                if not isinstance(e, RationalFunction) or e.field != field:
                    raise DomainError(
                        "all entries must be RationalFunction over the matrix field"
                    )
        if entries and any(len(row) != len(entries[0]) for row in entries):
            raise DomainError("ragged matrix")
        ncols = len(entries[0]) if entries else (cols or 0)
        if entries and cols is not None and cols != ncols:
            raise DomainError("cols disagrees with entries")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @staticmethod
    def zeros(field: Field, m: int, n: int) -> "RationalMatrix":
        z = RationalFunction.zero(field)
        return RationalMatrix(field, [[z] * n for _ in range(m)], cols=n)

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def is_polynomial(self) -> bool:
        return all(e.is_poly() for row in self.entries for e in row)

    def as_poly_matrix(self) -> PolyMatrix:
        if not self.is_polynomial():
            raise DomainError("matrix has nontrivial denominators")
        return PolyMatrix(
            self.field, [[e.as_poly() for e in row] for row in self.entries]
        )

    def lcd(self) -> Poly:
        """Monic least common denominator of the entries."""
        dens = [e.den for row in self.entries for e in row if e]
        if not dens:
            return Poly.one(self.field)
        return poly_lcm_many(dens)

    def transpose(self) -> "RationalMatrix":
        return (
            RationalMatrix(self.field, list(zip(*self.entries))) if self.entries else self
        )

    def stack(self, other: "RationalMatrix") -> "RationalMatrix":
        if other.field != self.field or (other.rows and other.cols != self.cols):
            raise DomainError("stack requires matching widths and fields")
        return RationalMatrix(
            self.field, self.entries + other.entries, cols=self.cols
        )

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.field == other.field
            and self.entries == other.entries
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash((self.field, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(", ".join(repr(e) for e in row) for row in self.entries)
        return f"RationalMatrix({self.rows}x{self.cols}: [{body}])"

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    @staticmethod
    def from_json(obj) -> "RationalMatrix":
        field = Field.from_json(obj["field"])
        m = RationalMatrix(
            field,
            [
                [RationalFunction.from_json(field, e) for e in row]
                for row in obj["entries"]
            ],
        )
        if m.rows != obj.get("rows", m.rows) or m.cols != obj.get("cols", m.cols):
            raise DomainError("matrix JSON shape disagrees with entries")
        return m


def matrix_from_json(obj):
    """Parse either kind of matrix; plain-array entries mean polynomial."""
    entries = obj.get("entries", [])
    poly_like = all(isinstance(e, list) for row in entries for e in row)
    if poly_like:
        return PolyMatrix.from_json(obj)
    return RationalMatrix.from_json(obj)
