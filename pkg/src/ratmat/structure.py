"""Structural data extraction: Smith and Smith-McMillan forms, invariant
orders at infinity, minimal bases and indices, and the polynomial/rational
scaling bridge.

Everything here is exact.  The Smith reduction picks the minimal-degree
nonzero entry as pivot with a smallest-(row, col) tie-break, so results are
reproducible down to the transform matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import DomainError, Field
from .matrices import PolyMatrix, RationalMatrix
from .poly import Poly, RationalFunction, divides

# -- constant linear algebra over the coefficient field -----------------------


def _rank_rows(rows, width: int, field: Field) -> int:
    """Rank of a list of length-`width` coefficient rows."""
    if field.p == 2:
        table: dict[int, int] = {}
        rank = 0
        for row in rows:
            word = 0
            for j, v in enumerate(row):
                if v & 1:
                    word |= 1 << j
            while word:
                low = word & -word
                if low in table:
                    word ^= table[low]
                else:
                    table[low] = word
                    rank += 1
                    break
        return rank
    p = field.p
    work = [list(row) for row in rows]
    rank = 0
    col = 0
    nrows = len(work)
    while rank < nrows and col < width:
        pivot = None
        for i in range(rank, nrows):
            if not field.is_zero(work[i][col]):
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = field.inv(work[rank][col])
        if p is not None:
            work[rank] = [(v * inv) % p for v in work[rank]]
            for i in range(nrows):
                if i != rank and work[i][col]:
                    f = work[i][col]
                    work[i] = [(a - f * b) % p for a, b in zip(work[i], work[rank])]
        else:
            work[rank] = [v * inv for v in work[rank]]
            for i in range(nrows):
                if i != rank and not field.is_zero(work[i][col]):
                    f = work[i][col]
                    work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
        col += 1
    return rank


def _nullspace_rows(rows, width: int, field: Field):
    """Basis of {x : A x = 0} for A given by rows, in RREF-canonical order."""
    p = field.p
    work = [list(row) for row in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(width):
        pivot = None
        for i in range(rank, len(work)):
            if not field.is_zero(work[i][col]):
                pivot = i
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = field.inv(work[rank][col])
        if p is not None:
            work[rank] = [(v * inv) % p for v in work[rank]]
        else:
            work[rank] = [v * inv for v in work[rank]]
        for i in range(len(work)):
            if i != rank and not field.is_zero(work[i][col]):
                f = work[i][col]
                if p is not None:
                    work[i] = [(a - f * b) % p for a, b in zip(work[i], work[rank])]
                else:
                    work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    free = [c for c in range(width) if c not in pivots]
    basis = []
    one, zero = field.one(), field.zero()
    for fc in free:
        vec = [zero] * width
        vec[fc] = one
        for r_i, pc in enumerate(pivots):
            v = work[r_i][fc]
            if not field.is_zero(v):
                vec[pc] = (-v) % p if p is not None else -v
        basis.append(vec)
    return basis


# -- Smith normal form ---------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    invariant_factors: tuple[Poly, ...]
    left: PolyMatrix | None
    right: PolyMatrix | None


def smith_form(P: PolyMatrix, transforms: bool = False) -> SmithForm:
    """Smith normal form: monic invariant factors and optional unimodular
    transforms U1, U2 with U1 * P * U2 diagonal."""
    field = P.field
    m, n = P.rows, P.cols
    A = [list(row) for row in P.entries]
    U1 = [list(row) for row in PolyMatrix.identity(field, m).entries] if transforms else None
    U2 = [list(row) for row in PolyMatrix.identity(field, n).entries] if transforms else None

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            if U1 is not None:
                U1[i], U1[j] = U1[j], U1[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            if U2 is not None:
                for row in U2:
                    row[i], row[j] = row[j], row[i]

    def row_sub(i, t, q):
        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
        if U1 is not None:
            U1[i] = [a - q * b for a, b in zip(U1[i], U1[t])]

    def col_sub(j, t, q):
        for row in A:
            row[j] = row[j] - q * row[t]
        if U2 is not None:
            for row in U2:
                row[j] = row[j] - q * row[t]

    def row_add(i, j):
        A[i] = [a + b for a, b in zip(A[i], A[j])]
        if U1 is not None:
            U1[i] = [a + b for a, b in zip(U1[i], U1[j])]

    t = 0
    limit = min(m, n)
    while t < limit:
        best = None
        for i in range(t, m):
            for j in range(t, n):
                e = A[i][j]
                if e and (best is None or e.degree < A[best[0]][best[1]].degree):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    row_sub(i, t, q)
                    if A[i][t]:
                        swap_rows(i, t)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_sub(j, t, q)
                    if A[t][j]:
                        swap_cols(j, t)
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender)
        t += 1

    factors = []
    for k in range(t):
        d = A[k][k]
        if not d.is_monic():
            inv = field.inv(d.lead)
            A[k] = [e.scale(inv) for e in A[k]]
            if U1 is not None:
                U1[k] = [e.scale(inv) for e in U1[k]]
            d = A[k][k]
        factors.append(d)
    left = PolyMatrix(field, U1) if transforms else None
    right = PolyMatrix(field, U2) if transforms else None
    return SmithForm(tuple(factors), left, right)


def det(P: PolyMatrix) -> Poly:
    """Determinant by cofactor expansion (small matrices only)."""
    if P.rows != P.cols:
        raise DomainError("determinant of a non-square matrix")
    n = P.rows
    if n == 0:
        return Poly.one(P.field)
    ent = P.entries
    if n == 1:
        return ent[0][0]

    def rec(rows, cols):
        if len(cols) == 1:
            return ent[rows[0]][cols[0]]
        total = Poly.zero(P.field)
        r0 = rows[0]
        rest = rows[1:]
        for k, c in enumerate(cols):
            if not ent[r0][c]:
                continue
            sub = rec(rest, cols[:k] + cols[k + 1 :])
            term = ent[r0][c] * sub
            total = total + (term if k % 2 == 0 else -term)
        return total

    return rec(tuple(range(n)), tuple(range(n)))


def is_unimodular(U: PolyMatrix) -> bool:
    d = det(U)
    return d.degree == 0


# -- scaling bridge -------------------------------------------------------------


def scale_by_poly(R: RationalMatrix, p: Poly) -> PolyMatrix:
    """p * R as a polynomial matrix; p must be a monic multiple of the least
    common denominator of R's entries."""
    if not p or not p.is_monic():
        raise DomainError("scaling polynomial must be monic and nonzero")
    if not divides(R.lcd(), p):
        raise DomainError("scaling polynomial is not a common-denominator multiple")
    out = []
    for row in R.entries:
        out.append([e.num * (p // e.den) for e in row])
    return PolyMatrix(R.field, out)


def unscale(P: PolyMatrix, p: Poly) -> RationalMatrix:
    """(1/p) * P as a rational matrix."""
    if not p or not p.is_monic():
        raise DomainError("scaling polynomial must be monic and nonzero")
    return RationalMatrix(
        P.field, [[RationalFunction(e, p) for e in row] for row in P.entries]
    )


def _as_scaled_poly(R) -> tuple[PolyMatrix, Poly]:
    """(p*R, p) with p the monic lcd; identity for polynomial input."""
    if isinstance(R, PolyMatrix):
        return R, Poly.one(R.field)
    p = R.lcd()
    return scale_by_poly(R, p), p


# -- extractors -----------------------------------------------------------------


def rank(R) -> int:
    P, _ = _as_scaled_poly(R)
    return len(smith_form(P).invariant_factors)


def smith_mcmillan(R) -> tuple[RationalFunction, ...]:
    """Invariant rational functions eta_i/phi_i of R."""
    P, p = _as_scaled_poly(R)
    alphas = smith_form(P).invariant_factors
    return tuple(RationalFunction(a, p) for a in alphas)


def _infinite_orders_poly(P: PolyMatrix) -> tuple[int, ...]:
    if P.is_zero():
        return ()
    d = P.degree
    Q = PolyMatrix(P.field, [[e.reverse(d) for e in row] for row in P.entries])
    gammas = smith_form(Q).invariant_factors
    return tuple(g.valuation() - d for g in gammas)


def infinite_orders(R) -> tuple[int, ...]:
    """Invariant orders at infinity, nondecreasing.

    Computed through the substitution t = 1/s: the entries are reversed into
    a polynomial matrix in t and the orders are read off as the t-adic
    valuations of its invariant factors, shifted back by the degree.
    """
    P, p = _as_scaled_poly(R)
    shift = p.degree if p.degree > 0 else 0
    return tuple(o + shift for o in _infinite_orders_poly(P))


def _solution_space_dim(M: PolyMatrix, d: int) -> int:
    """dim over F of {x in F[s]^n : Mx = 0, deg x <= d}."""
    n = M.cols
    degM = M.degree
    if degM < 0:
        return n * (d + 1)
    degM = int(degM)
    field = M.field
    width = n * (d + 1)
    rows = []
    for i in range(M.rows):
        mrow = M.entries[i]
        if all(not e for e in mrow):
            continue
        for e_pow in range(degM + d + 1):
            row = [field.zero()] * width
            nonzero = False
            for j in range(n):
                entry = mrow[j]
                if not entry:
                    continue
                for k in range(d + 1):
                    c = entry.coeff(e_pow - k)
                    if not field.is_zero(c):
                        row[j * (d + 1) + k] = c
                        nonzero = True
            if nonzero:
                rows.append(row)
    return width - _rank_rows(rows, width, field)


def _right_indices_only(M: PolyMatrix, r: int) -> tuple[int, ...]:
    """Right minimal indices via solution-space dimension counting."""
    k = M.cols - r
    if k == 0:
        return ()
    found: list[int] = []
    prev_dim = 0
    d = 0
    cap = M.cols * (int(M.degree) + 1 if M.degree >= 0 else 1) + M.cols + 2
    while len(found) < k:
        dim = _solution_space_dim(M, d)
        cnt_le = dim - prev_dim
        found.extend([d] * (cnt_le - len(found)))
        prev_dim = dim
        d += 1
        if d > cap:
            raise AssertionError("minimal index scan exceeded its degree cap")
    return tuple(sorted(found, reverse=True))


def _poly_solutions(M: PolyMatrix, d: int) -> list[tuple[Poly, ...]]:
    """All degree <= d polynomial solutions of Mx = 0, as canonical vectors."""
    n = M.cols
    field = M.field
    degM = int(M.degree) if M.degree >= 0 else 0
    width = n * (d + 1)
    rows = []
    for i in range(M.rows):
        for e_pow in range(degM + d + 1):
            row = [field.zero()] * width
            for j in range(n):
                entry = M.entries[i][j]
                if not entry:
                    continue
                for k in range(d + 1):
                    row[j * (d + 1) + k] = entry.coeff(e_pow - k)
            rows.append(row)
    basis = _nullspace_rows(rows, width, field)
    out = []
    for vec in basis:
        polys = tuple(
            Poly(field, vec[j * (d + 1) : (j + 1) * (d + 1)]) for j in range(n)
        )
        out.append(polys)
    return out


class _Echelon:
    """Incremental row echelon over the coefficient field."""

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, list] = {}

    def reduce(self, vec: list) -> list:
        f = self.field
        p = f.p
        vec = list(vec)
        for piv, row in sorted(self.rows.items()):
            c = vec[piv]
            if not f.is_zero(c):
                if p is not None:
                    vec = [(a - c * b) % p for a, b in zip(vec, row)]
                else:
                    vec = [a - c * b for a, b in zip(vec, row)]
        return vec

    def insert(self, vec: list) -> bool:
        """Reduce and insert; returns True if vec added a new dimension."""
        f = self.field
        vec = self.reduce(vec)
        piv = next((i for i, c in enumerate(vec) if not f.is_zero(c)), None)
        if piv is None:
            return False
        inv = f.inv(vec[piv])
        if f.p is not None:
            vec = [(c * inv) % f.p for c in vec]
        else:
            vec = [c * inv for c in vec]
        self.rows[piv] = vec
        return True


def _flatten(vec: tuple[Poly, ...], d: int, field: Field) -> list:
    out = []
    for entry in vec:
        for k in range(d + 1):
            out.append(entry.coeff(k))
    return out


def _shift(vec: tuple[Poly, ...], t: int) -> tuple[Poly, ...]:
    if t == 0:
        return vec
    field = vec[0].field
    mono = Poly.monomial(field, t)
    return tuple(e * mono for e in vec)


def _right_minimal_basis(M: PolyMatrix, r: int) -> list[tuple[Poly, ...]]:
    """A minimal polynomial basis of the right nullspace (degrees ascending)."""
    k = M.cols - r
    if k == 0:
        return []
    field = M.field
    basis: list[tuple[Poly, ...]] = []
    d = 0
    cap = M.cols * (int(M.degree) + 1 if M.degree >= 0 else 1) + M.cols + 2
    while len(basis) < k:
        sols = _poly_solutions(M, d)
        ech = _Echelon(field)
        for b in basis:
            deg_b = max(int(e.degree) for e in b if e)
            for t in range(d - deg_b + 1):
                ech.insert(_flatten(_shift(b, t), d, field))
        for vec in sols:
            if ech.insert(_flatten(vec, d, field)):
                basis.append(vec)
                if len(basis) == k:
                    break
        d += 1
        if d > cap:
            raise AssertionError("minimal basis scan exceeded its degree cap")
    return basis


@dataclass(frozen=True)
class MinimalIndices:
    cmi: tuple[int, ...]
    rmi: tuple[int, ...]
    right_basis: tuple[tuple[Poly, ...], ...]
    left_basis: tuple[tuple[Poly, ...], ...]


def minimal_indices(R) -> MinimalIndices:
    """Column/row minimal indices with certified minimal bases.

    Indices come back nonincreasing; basis vectors are listed in the same
    order, so the i-th vector has degree cmi[i] (resp. rmi[i]).
    """
    P, _ = _as_scaled_poly(R)
    r = len(smith_form(P).invariant_factors)
    right = _right_minimal_basis(P, r)
    left = _right_minimal_basis(P.transpose(), r)
    right = list(reversed(right))
    left = list(reversed(left))
    cmi = tuple(max(int(e.degree) for e in v if e) if any(v) else 0 for v in right)
    rmi = tuple(max(int(e.degree) for e in v if e) if any(v) else 0 for v in left)
    return MinimalIndices(cmi, rmi, tuple(right), tuple(left))


def verify_minimal_basis(M: PolyMatrix, basis, side: str = "right") -> bool:
    """Forney certificates: annihilation, column-reducedness, irreducibility."""
    work = M if side == "right" else M.transpose()
    field = M.field
    if not basis:
        return True
    for vec in basis:
        for i in range(work.rows):
            acc = Poly.zero(field)
            for j in range(work.cols):
                acc = acc + work.entries[i][j] * vec[j]
            if acc:
                return False
    # column-reduced: the matrix of leading coefficient vectors has full rank
    lead_rows = []
    for vec in basis:
        deg = max(int(e.degree) for e in vec if e)
        lead_rows.append([e.coeff(deg) for e in vec])
    if _rank_rows(lead_rows, work.cols, field) != len(basis):
        return False
    # irreducible: the basis matrix has trivial invariant factors
    B = PolyMatrix(field, [list(vec) for vec in basis]).transpose()
    factors = smith_form(B).invariant_factors
    return len(factors) == len(basis) and all(f.is_one() for f in factors)


# -- the structural data bundle --------------------------------------------------


@dataclass(frozen=True)
class StructuralData:
    """Rank, invariant rational functions, orders at infinity and both
    families of minimal indices of one matrix (or a prescription target)."""

    rank: int
    irf: tuple[RationalFunction, ...]
    inf_orders: tuple[int, ...]
    cmi: tuple[int, ...]
    rmi: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.rank + len(self.rmi)

    @property
    def n(self) -> int:
        return self.rank + len(self.cmi)

    def finite_nums(self) -> tuple[Poly, ...]:
        return tuple(f.num for f in self.irf)

    def finite_dens(self) -> tuple[Poly, ...]:
        return tuple(f.den for f in self.irf)

    def is_polynomial(self) -> bool:
        return all(f.den.degree == 0 for f in self.irf)

    def index_sum(self) -> int:
        s = sum(self.cmi) + sum(self.rmi) + sum(self.inf_orders)
        for f in self.irf:
            s += int(f.num.degree) - int(f.den.degree)
        return s

    def validate(self) -> None:
        if self.rank != len(self.irf) or self.rank != len(self.inf_orders):
            raise DomainError("rank disagrees with chain lengths")
        for i in range(self.rank - 1):
            if not divides(self.irf[i].num, self.irf[i + 1].num):
                raise DomainError("numerator chain broken")
            if not divides(self.irf[i + 1].den, self.irf[i].den):
                raise DomainError("denominator chain broken")
            if self.inf_orders[i] > self.inf_orders[i + 1]:
                raise DomainError("orders at infinity not nondecreasing")
        for seq in (self.cmi, self.rmi):
            if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)) or (
                seq and seq[-1] < 0
            ):
                raise DomainError("minimal indices must form a partition")

    def transpose(self) -> "StructuralData":
        return StructuralData(self.rank, self.irf, self.inf_orders, self.rmi, self.cmi)

    def to_json(self):
        return {
            "rank": self.rank,
            "irf": [f.to_json() for f in self.irf],
            "inf_orders": list(self.inf_orders),
            "cmi": list(self.cmi),
            "rmi": list(self.rmi),
        }

    @staticmethod
    def from_json(field: Field, obj) -> "StructuralData":
        return StructuralData(
            int(obj["rank"]),
            tuple(RationalFunction.from_json(field, f) for f in obj["irf"]),
            tuple(int(v) for v in obj["inf_orders"]),
            tuple(int(v) for v in obj["cmi"]),
            tuple(int(v) for v in obj["rmi"]),
        )


def structural_data(R) -> StructuralData:
    """All four invariant families of a matrix in one bundle."""
    P, p = _as_scaled_poly(R)
    alphas = smith_form(P).invariant_factors
    r = len(alphas)
    irf = tuple(RationalFunction(a, p) for a in alphas)
    shift = int(p.degree)
    inf = tuple(o + shift for o in _infinite_orders_poly(P))
    cmi = _right_indices_only(P, r)
    rmi = _right_indices_only(P.transpose(), r)
    return StructuralData(r, irf, inf, cmi, rmi)
