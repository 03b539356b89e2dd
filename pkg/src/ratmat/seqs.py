"""Integer-sequence machinery: majorization, generalized majorization, unions.

Out-of-range indexing follows fixed conventions: a nonincreasing sequence is
+inf before its first entry and -inf after its last; a nondecreasing sequence
is the mirror image.  Sentinels are the float infinities, never large ints,
and every sum below guards against them.
"""

from __future__ import annotations

from .fields import DomainError
from .poly import RationalFunction

INF = float("inf")
NEG_INF = float("-inf")

NONINCREASING = "nonincreasing"
NONDECREASING = "nondecreasing"


class IntSeq:
    """A finite oriented integer sequence with sentinel indexing (1-based)."""

    __slots__ = ("values", "orientation")

    def __init__(self, values, orientation: str = NONINCREASING):
        values = tuple(int(v) for v in values)
        if orientation == NONINCREASING:
            if any(values[i] < values[i + 1] for i in range(len(values) - 1)):
                raise DomainError(f"{values} is not nonincreasing")
        elif orientation == NONDECREASING:
            if any(values[i] > values[i + 1] for i in range(len(values) - 1)):
                raise DomainError(f"{values} is not nondecreasing")
        else:
            raise DomainError(f"unknown orientation {orientation!r}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "orientation", orientation)

    def __setattr__(self, name, value):
        raise AttributeError("IntSeq is immutable")

    def at(self, i: int):
        if 1 <= i <= len(self.values):
            return self.values[i - 1]
        before = i < 1
        if self.orientation == NONINCREASING:
            return INF if before else NEG_INF
        return NEG_INF if before else INF

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return (
            isinstance(other, IntSeq)
            and self.values == other.values
            and self.orientation == other.orientation
        )

    def __hash__(self):
        return hash((self.values, self.orientation))

    def __repr__(self):
        return f"IntSeq({list(self.values)}, {self.orientation})"


def _values(seq) -> tuple[int, ...]:
    if isinstance(seq, IntSeq):
        return seq.values
    return tuple(int(v) for v in seq)


def at_noninc(seq, i: int):
    """1-based access into a nonincreasing sequence with +-inf sentinels."""
    vals = _values(seq)
    if 1 <= i <= len(vals):
        return vals[i - 1]
    return INF if i < 1 else NEG_INF


def at_nondec(seq, i: int):
    """1-based access into a nondecreasing sequence with -+inf sentinels."""
    vals = _values(seq)
    if 1 <= i <= len(vals):
        return vals[i - 1]
    return NEG_INF if i < 1 else INF


def sum_prefix(seq, k: int) -> int:
    """Sum of the first k entries; empty ranges sum to zero."""
    vals = _values(seq)
    if k > len(vals):
        raise DomainError(f"prefix length {k} exceeds sequence length {len(vals)}")
    return sum(vals[: max(0, k)])


def sum_range(value_at, lo: int, hi: int) -> int:
    """Sum of value_at(i) for lo <= i <= hi, zero when the range is empty."""
    if lo > hi:
        return 0
    return sum(value_at(i) for i in range(lo, hi + 1))


def is_partition(seq) -> bool:
    vals = _values(seq)
    return all(vals[i] >= vals[i + 1] for i in range(len(vals) - 1)) and (
        not vals or vals[-1] >= 0
    )


def majorizes(a, b) -> bool:
    """Whether a is majorized by b: prefix sums dominated, totals equal."""
    av, bv = _values(a), _values(b)
    if len(av) != len(bv):
        raise DomainError("majorization requires equal lengths")
    ta = tb = 0
    for i in range(len(av)):
        ta += av[i]
        tb += bv[i]
        if i < len(av) - 1 and ta > tb:
            return False
    return ta == tb


def h_index(d, g, j: int) -> int:
    """min{i : d_{i-j+1} < g_i} for nonincreasing d, g (d read with sentinels).

    Defined for 0 <= j <= len(g) - len(d); satisfies j <= h_j <= len(d) + j,
    and h_0 = 0.
    """
    dv, gv = _values(d), _values(g)
    if not 0 <= j <= len(gv) - len(dv):
        raise DomainError(f"h index {j} outside [0, {len(gv) - len(dv)}]")
    i = 0
    while True:
        if at_noninc(dv, i - j + 1) < at_noninc(gv, i):
            return i
        i += 1
        if i > len(dv) + j:  # unreachable by the sentinel conventions
            raise AssertionError("h_index scan failed to terminate")


def gen_majorizes(g, d, a) -> bool:
    """Generalized majorization g <' (d, a) for nonincreasing sequences."""
    av = _values(a)
    prefixes = [sum_prefix(av, j) for j in range(len(av) + 1)]
    ok, _ = gen_majorizes_prefix(g, d, prefixes)
    return ok


def gen_majorizes_prefix(g, d, a_prefix) -> tuple[bool, dict]:
    """Generalized majorization with the a-sequence given by prefix sums.

    ``a_prefix[j]`` must hold the sum of the first j entries (so
    ``a_prefix[0] == 0``).  This form is what the completion criteria
    produce directly; it does not require the a-entries to be sorted.
    Returns (holds, detail) where detail records the h_j table.
    """
    gv, dv = _values(g), _values(d)
    s = len(a_prefix) - 1
    if len(gv) != len(dv) + s:
        raise DomainError(
            f"length mismatch: len(g)={len(gv)}, len(d)={len(dv)}, s={s}"
        )
    detail: dict = {"h": []}
    for i in range(1, len(dv) + 1):
        if dv[i - 1] < at_noninc(gv, i + s):
            return False, detail
    for j in range(1, s + 1):
        hj = h_index(dv, gv, j)
        detail["h"].append(hj)
        if sum_prefix(gv, hj) - sum_prefix(dv, hj - j) > a_prefix[j]:
            return False, detail
    if sum(gv) != sum(dv) + a_prefix[s]:
        return False, detail
    return True, detail


def seq_union(u, b) -> tuple[int, ...]:
    """The nonincreasing merge of two sequences."""
    return tuple(sorted(list(_values(u)) + list(_values(b)), reverse=True))


def delta(
    f1: RationalFunction,
    f2: RationalFunction | None = None,
    p: int | None = None,
    q: int | None = None,
) -> int:
    """The degree expression combining finite structure and orders at infinity.

    Four arities:
      delta(eta/phi)                 = deg(eta) - deg(phi)
      delta(eta/phi, p)              = deg(eta) - deg(phi) + p
      delta(eta/phi, eps/psi)        = deg(lcm(eta, eps)) - deg(gcd(phi, psi))
      delta(eta/phi, eps/psi, p, q)  = deg(lcm(eta, eps)) - deg(gcd(phi, psi))
                                       + max(p, q)
    """
    from .poly import poly_gcd, poly_lcm

    if isinstance(f2, int) and p is None and q is None:
        f2, p = None, f2
    if f2 is None:
        if q is not None:
            raise DomainError("unsupported delta arity")
        base = f1.num.degree - f1.den.degree
        if not f1.num:
            raise DomainError("delta of the zero function")
        return base + (p if p is not None else 0)
    if (p is None) != (q is None):
        raise DomainError("unsupported delta arity")
    if not f1.num or not f2.num:
        raise DomainError("delta of the zero function")
    val = poly_lcm(f1.num, f2.num).degree - poly_gcd(f1.den, f2.den).degree
    if p is not None:
        val += max(p, q)
    return val


def check_lemma_hx(d, c, x: int) -> tuple[bool, int]:
    """Tail-equality test between partitions c and d with offset x.

    Returns (holds, h_x) where h_x = min{i : d_{i-x+1} < c_i} and *holds*
    states whether d_i = c_{i+x} for h_x - x + 1 <= i <= len(d).  For x = 0
    this degenerates to h_0 = 0 and d = c.
    """
    dv, cv = _values(d), _values(c)
    if len(cv) != len(dv) + x:
        raise DomainError(f"length mismatch: len(c)={len(cv)}, len(d)={len(dv)}, x={x}")
    if not (is_partition(dv) and is_partition(cv)):
        raise DomainError("check_lemma_hx requires partitions")
    hx = h_index(dv, cv, x)
    lo = max(1, hx - x + 1)
    holds = all(dv[i - 1] == cv[i + x - 1] for i in range(lo, len(dv) + 1))
    return holds, hx
