"""Decision procedures for row-completion prescriptions.

Each public ``decide_*`` function evaluates one necessary-and-sufficient
condition set against the structural data of a submatrix and a prescription,
and returns a condition-by-condition report.  Condition evaluators are
individually named and return (pass, lhs, rhs) so a failing instance can be
localized.

All index conventions (out-of-range chain entries, empty sums, sentinel
infinities) are centralized in helpers shared by every evaluator.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import DomainError, Field
from .poly import Poly, RationalFunction, divides, poly_gcd, poly_lcm
from .seqs import at_nondec, gen_majorizes_prefix, is_partition, sum_prefix
from .structure import StructuralData

# -- prescriptions ---------------------------------------------------------------


@dataclass(frozen=True)
class Prescription:
    """Targets for a completion: z rows appended, rank increased by x, plus
    whichever of the four invariant families is being prescribed."""

    z: int
    x: int
    kind: str = "rat"  # "poly" | "rat"
    finite: tuple[RationalFunction, ...] | None = None
    infinite: tuple[int, ...] | None = None
    cmi: tuple[int, ...] | None = None
    rmi: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("poly", "rat"):
            raise DomainError(f"unknown prescription kind {self.kind!r}")
        if self.finite is not None:
            object.__setattr__(self, "finite", tuple(self.finite))
        if self.infinite is not None:
            object.__setattr__(self, "infinite", tuple(int(v) for v in self.infinite))
        if self.cmi is not None:
            object.__setattr__(self, "cmi", tuple(int(v) for v in self.cmi))
        if self.rmi is not None:
            object.__setattr__(self, "rmi", tuple(int(v) for v in self.rmi))

    def validate_against(self, S: StructuralData) -> None:
        r, n, m = S.rank, S.n, S.m
        if self.z < 0:
            raise DomainError("z must be nonnegative")
        if not 0 <= self.x <= min(self.z, n - r):
            raise DomainError(f"x={self.x} outside [0, min(z={self.z}, n-r={n - r})]")
        k = r + self.x
        if self.finite is not None:
            if len(self.finite) != k:
                raise DomainError(f"finite chain must have length r+x={k}")
            for i in range(k - 1):
                if not divides(self.finite[i].num, self.finite[i + 1].num):
                    raise DomainError("prescribed numerator chain broken")
                if not divides(self.finite[i + 1].den, self.finite[i].den):
                    raise DomainError("prescribed denominator chain broken")
            if self.kind == "poly" and any(f.den.degree > 0 for f in self.finite):
                raise DomainError("polynomial prescriptions require denominators 1")
        if self.infinite is not None:
            if len(self.infinite) != k:
                raise DomainError(f"infinite orders must have length r+x={k}")
            if any(
                self.infinite[i] > self.infinite[i + 1] for i in range(k - 1)
            ):
                raise DomainError("prescribed orders must be nondecreasing")
        if self.cmi is not None:
            if len(self.cmi) != n - r - self.x:
                raise DomainError(f"cmi must have length n-r-x={n - r - self.x}")
            if not is_partition(self.cmi):
                raise DomainError("cmi must be a partition")
        if self.rmi is not None:
            if len(self.rmi) != m + self.z - r - self.x:
                raise DomainError(
                    f"rmi must have length m+z-r-x={m + self.z - r - self.x}"
                )
            if not is_partition(self.rmi):
                raise DomainError("rmi must be a partition")

    def to_json(self):
        out = {"z": self.z, "x": self.x, "kind": self.kind}
        if self.finite is not None:
            out["finite"] = {
                "num": [f.num.to_json() for f in self.finite],
                "den": [f.den.to_json() for f in self.finite],
            }
        if self.infinite is not None:
            out["infinite"] = list(self.infinite)
        if self.cmi is not None:
            out["cmi"] = list(self.cmi)
        if self.rmi is not None:
            out["rmi"] = list(self.rmi)
        return out

    @staticmethod
    def from_json(field: Field, obj) -> "Prescription":
        finite = None
        if "finite" in obj and obj["finite"] is not None:
            nums = [Poly.from_json(field, p) for p in obj["finite"]["num"]]
            dens = [Poly.from_json(field, p) for p in obj["finite"]["den"]]
            if len(nums) != len(dens):
                raise DomainError("finite chain num/den length mismatch")
            finite = tuple(RationalFunction(a, b) for a, b in zip(nums, dens))
        return Prescription(
            z=int(obj["z"]),
            x=int(obj["x"]),
            kind=obj.get("kind", "rat"),
            finite=finite,
            infinite=tuple(obj["infinite"]) if obj.get("infinite") is not None else None,
            cmi=tuple(obj["cmi"]) if obj.get("cmi") is not None else None,
            rmi=tuple(obj["rmi"]) if obj.get("rmi") is not None else None,
        )


# -- reports ----------------------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    tag: str  # stable equation tag used in JSON output
    name: str  # short human-readable label
    passed: bool
    lhs: object = None
    rhs: object = None
    gating: bool = True

    def to_json(self):
        return {
            "tag": self.tag,
            "name": self.name,
            "passed": self.passed,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gating": self.gating,
        }


FEASIBLE = "yes"
INFEASIBLE = "no"
FEASIBLE_AC_ONLY = "yes-over-algebraically-closed-only"


@dataclass(frozen=True)
class DecisionReport:
    case: str
    feasible: str
    conditions: tuple[Condition, ...]
    witnesses: dict = dc_field(default_factory=dict)
    flags: tuple[str, ...] = ()

    @property
    def conditions_pass(self) -> bool:
        return all(c.passed for c in self.conditions if c.gating)

    def condition(self, tag: str) -> Condition:
        for c in self.conditions:
            if c.tag == tag:
                return c
        raise KeyError(tag)

    def to_json(self):
        wit = {}
        for k, v in self.witnesses.items():
            if isinstance(v, (list, tuple)):
                wit[k] = list(v)
            else:
                wit[k] = v
        return {
            "case": self.case,
            "feasible": self.feasible,
            "conditions": [c.to_json() for c in self.conditions],
            "witnesses": wit,
            "flags": list(self.flags),
        }


# -- shared index conventions -------------------------------------------------------


def _chain_num_at(chain: tuple[Poly, ...], i: int, field: Field) -> Poly:
    """alpha_i with alpha_i = 1 for i < 1 and alpha_i = 0 for i > length."""
    if i < 1:
        return Poly.one(field)
    if i > len(chain):
        return Poly.zero(field)
    return chain[i - 1]


def _chain_den_at(chain: tuple[Poly, ...], i: int, field: Field) -> Poly:
    """phi_i with phi_i = 0 for i < 1 and phi_i = 1 for i > length."""
    if i < 1:
        return Poly.zero(field)
    if i > len(chain):
        return Poly.one(field)
    return chain[i - 1]


def _deg(p: Poly) -> int:
    if not p:
        raise DomainError("degree of the zero polynomial in a sum")
    return int(p.degree)


def _sum_range(f, lo: int, hi: int) -> int:
    if lo > hi:
        return 0
    return sum(f(i) for i in range(lo, hi + 1))


class _Ctx:
    """Unpacked instance data shared by the condition evaluators."""

    def __init__(self, S: StructuralData, pre: Prescription):
        S.validate()
        pre.validate_against(S)
        self.S = S
        self.pre = pre
        self.r = S.rank
        self.z = pre.z
        self.x = pre.x
        self.n = S.n
        self.m = S.m
        self.eta = S.finite_nums()
        self.phi = S.finite_dens()
        self.p = S.inf_orders
        self.c = S.cmi
        self.u = S.rmi
        self.eps = tuple(f.num for f in pre.finite) if pre.finite else None
        self.psi = tuple(f.den for f in pre.finite) if pre.finite else None
        self.q = pre.infinite
        self.d = pre.cmi
        self.v = pre.rmi
        self.field = S.irf[0].field if S.irf else (
            pre.finite[0].field if pre.finite else None
        )
        self.sum_c = sum(self.c)
        self.sum_u = sum(self.u)
        self.sum_d = sum(self.d) if self.d is not None else None
        self.sum_v = sum(self.v) if self.v is not None else None
        self.flags: list[str] = []
        if self.r == 0:
            self.flags.append("rank-zero-submatrix")
        if self.z == 0:
            self.flags.append("empty-completion")

    # sentinel accessors (1-based)
    def p_at(self, i):
        return at_nondec(self.p, i)

    def q_at(self, i):
        return at_nondec(self.q, i)

    def eta_at(self, i):
        return _chain_num_at(self.eta, i, self.field)

    def phi_at(self, i):
        return _chain_den_at(self.phi, i, self.field)

    def eps_at(self, i):
        return _chain_num_at(self.eps, i, self.field)

    def psi_at(self, i):
        return _chain_den_at(self.psi, i, self.field)

    def sum_v_minus_u(self) -> int:
        return self.sum_v - self.sum_u

    # degree expressions; all arguments are in-range chain entries
    def d2(self, num_i: int, q_i: int) -> int:
        """delta(eps_i/psi_i, q_i) = deg eps_i - deg psi_i + q_i."""
        return _deg(self.eps_at(num_i)) - _deg(self.psi_at(num_i)) + self.q[q_i - 1]

    def d2_S(self, i: int) -> int:
        """delta(eta_i/phi_i, p_i)."""
        return _deg(self.eta[i - 1]) - _deg(self.phi[i - 1]) + self.p[i - 1]

    def d1_pre(self, i: int) -> int:
        """delta(eps_i/psi_i)."""
        return _deg(self.eps_at(i)) - _deg(self.psi_at(i))

    def d2mix(self, i: int, j: int) -> int:
        """delta(eta_i/phi_i, eps_j/psi_j)."""
        return (
            _deg(poly_lcm(self.eta[i - 1], self.eps_at(j)))
            - _deg(poly_gcd(self.phi[i - 1], self.psi_at(j)))
        )

    def d4(self, i: int, j: int) -> int:
        """delta(eta_i/phi_i, eps_j/psi_j, p_i, q_j)."""
        return self.d2mix(i, j) + max(self.p[i - 1], self.q[j - 1])


# -- individual condition evaluators ---------------------------------------------


def cond_interlace_num(ctx: _Ctx, tag="eqinterratnum") -> Condition:
    """eps_i | eta_i | eps_{i+z} for 1 <= i <= r."""
    ok = all(
        divides(ctx.eps_at(i), ctx.eta[i - 1])
        and divides(ctx.eta[i - 1], ctx.eps_at(i + ctx.z))
        for i in range(1, ctx.r + 1)
    )
    return Condition(tag, "numerator interlacing", ok)


def cond_interlace_den(ctx: _Ctx, tag="eqinterratden") -> Condition:
    """psi_{i+z} | phi_i | psi_i for 1 <= i <= r."""
    ok = all(
        divides(ctx.psi_at(i + ctx.z), ctx.phi[i - 1])
        and divides(ctx.phi[i - 1], ctx.psi_at(i))
        for i in range(1, ctx.r + 1)
    )
    return Condition(tag, "denominator interlacing", ok)


def cond_interlace_orders(ctx: _Ctx, tag: str) -> Condition:
    """q_i <= p_i <= q_{i+z} for 1 <= i <= r."""
    ok = all(
        ctx.q[i - 1] <= ctx.p[i - 1] <= ctx.q_at(i + ctx.z)
        for i in range(1, ctx.r + 1)
    )
    return Condition(tag, "orders interlacing", ok)


def cond_tail_equality(ctx: _Ctx, tag="eqdc") -> Condition:
    """d_i = c_{i+x} from position h_x - x + 1 on."""
    from .seqs import check_lemma_hx

    holds, hx = check_lemma_hx(ctx.d, ctx.c, ctx.x)
    return Condition(tag, "cmi tail equality", holds, lhs=hx)


def _gmaj_condition(tag, name, g, dd, prefixes) -> Condition:
    ok, detail = gen_majorizes_prefix(g, dd, prefixes)
    return Condition(tag, name, ok, lhs=list(detail.get("h", ())), rhs=list(prefixes))


def _materialize(prefixes) -> tuple[int, ...]:
    return tuple(prefixes[j] - prefixes[j - 1] for j in range(1, len(prefixes)))


# -- decision verdicts -------------------------------------------------------------


def _verdict(conditions, caveat: bool = False) -> str:
    if not all(c.passed for c in conditions if c.gating):
        return INFEASIBLE
    return FEASIBLE_AC_ONLY if caveat else FEASIBLE


def _require(pre: Prescription, **need) -> None:
    for name, wanted in need.items():
        if wanted and getattr(pre, name) is None:
            raise DomainError(f"prescription is missing its {name} targets")


def _require_poly_data(S: StructuralData):
    if not S.is_polynomial():
        raise DomainError("polynomial decision on non-polynomial structural data")


# -- Theorem: existence with complete data -----------------------------------------


def existence_complete(target: StructuralData, m: int, n: int) -> bool:
    """Whether a rational matrix of shape m x n with the given complete
    structural data exists: the index sum must vanish."""
    target.validate()
    r = target.rank
    if not 1 <= r <= min(m, n):
        raise DomainError(f"rank {r} outside [1, min({m}, {n})]")
    if len(target.cmi) != n - r or len(target.rmi) != m - r:
        raise DomainError("minimal index counts disagree with the shape")
    return target.index_sum() == 0


# -- complete structural data, rational -------------------------------------------


def decide_complete_rational(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of all four invariant families of the completed rational
    matrix.  Also evaluates the equivalent alternate form of the degree-sum
    condition and the redundant row-count inequality (non-gating)."""
    _require(pre, finite=True, infinite=True, cmi=True, rmi=True)
    ctx = _Ctx(S, pre)
    r, x, z = ctx.r, ctx.x, ctx.z
    svu = ctx.sum_v_minus_u()

    conds = [
        cond_interlace_num(ctx),
        cond_interlace_den(ctx),
        cond_interlace_orders(ctx, "eqinterratioi"),
    ]

    def tilde_a_prefix(j: int) -> int:
        return (
            svu
            + _sum_range(lambda i: ctx.d2(i + x - j, i + x - j), 1, r + j)
            - _sum_range(lambda i: ctx.d4(i, i + x - j), 1, r)
        )

    def tilde_b_prefix(j: int) -> int:
        return (
            svu
            + _sum_range(lambda i: ctx.d2(i + x + j, i + x + j), 1, r - j)
            - _sum_range(lambda i: ctx.d4(i, i + x + j), 1, r - j)
        )

    a_pref = [0] + [tilde_a_prefix(j) for j in range(1, x + 1)]
    b_pref = [0] + [tilde_b_prefix(j) for j in range(1, z - x + 1)]
    conds.append(_gmaj_condition("eqcmimajrat", "cmi majorization", ctx.c, ctx.d, a_pref))
    conds.append(_gmaj_condition("eqrmimajrat", "rmi majorization", ctx.v, ctx.u, b_pref))

    lhs = _sum_range(lambda i: ctx.d4(i, i + x), 1, r) - _sum_range(
        lambda i: ctx.d2(i + x, i + x), 1, r
    )
    ok = lhs == svu if x == 0 else lhs <= svu
    conds.append(Condition("eqdegsumrat", "degree sum", ok, lhs=lhs, rhs=svu))

    # redundant count of positive row indices (informational only)
    eta_cnt = sum(1 for t in ctx.u if t > 0)
    bar_cnt = sum(1 for t in ctx.v if t > 0)
    conds.append(
        Condition(
            "eqetapol", "positive rmi count", bar_cnt >= eta_cnt,
            lhs=bar_cnt, rhs=eta_cnt, gating=False,
        )
    )

    # alternate, provably equivalent evaluation of the same criterion
    alt = _complete_rational_alternate(ctx)

    witnesses = {
        "tilde_a": _materialize(a_pref),
        "tilde_b": _materialize(b_pref),
        "alt_feasible": alt,
    }
    report = DecisionReport(
        "complete-rat", _verdict(conds), tuple(conds), witnesses, tuple(ctx.flags)
    )
    return report


def _complete_rational_alternate(ctx: _Ctx) -> bool:
    """The alternate form: degree-sum against the column side, with its own
    tilde sequences.  Must agree with the primary evaluation."""
    r, x, z = ctx.r, ctx.x, ctx.z
    base = (
        ctx.sum_c
        - ctx.sum_d
        + _sum_range(lambda i: ctx.d2_S(i), 1, r)
    )

    conds = [
        cond_interlace_num(ctx),
        cond_interlace_den(ctx),
        cond_interlace_orders(ctx, "eqinterratioi"),
    ]

    lhs = _sum_range(lambda i: ctx.d4(i, i + x), 1, r)
    rhs = base - _sum_range(lambda i: ctx.d2(i, i), 1, x)
    ok = lhs == rhs if x == z else lhs <= rhs
    conds.append(Condition("eqdegsumratcdioi", "degree sum (column form)", ok, lhs, rhs))

    def alt_a_prefix(j: int) -> int:
        return (
            base
            - _sum_range(lambda i: ctx.d2(i, i), 1, x - j)
            - _sum_range(lambda i: ctx.d4(i, i + x - j), 1, r)
        )

    def alt_b_prefix(j: int) -> int:
        return (
            base
            - _sum_range(lambda i: ctx.d2(i, i), 1, x + min(j, r))
            - _sum_range(lambda i: ctx.d4(i, i + x + j), 1, r - j)
        )

    a_pref = [0] + [alt_a_prefix(j) for j in range(1, x + 1)]
    b_pref = [0] + [alt_b_prefix(j) for j in range(1, z - x + 1)]
    conds.append(_gmaj_condition("eqcmimajrat", "cmi majorization", ctx.c, ctx.d, a_pref))
    conds.append(_gmaj_condition("eqrmimajrat", "rmi majorization", ctx.v, ctx.u, b_pref))
    return all(c.passed for c in conds)


# -- complete structural data, polynomial ------------------------------------------


def decide_complete_poly(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of invariant factors, orders at infinity and both minimal
    index families of the completed polynomial matrix."""
    _require(pre, finite=True, infinite=True, cmi=True, rmi=True)
    _require_poly_data(S)
    if pre.kind != "poly":
        raise DomainError("decide_complete_poly requires a polynomial prescription")
    ctx = _Ctx(S, pre)
    r, x, z = ctx.r, ctx.x, ctx.z
    svu = ctx.sum_v_minus_u()
    alpha, beta, p, q = ctx.eta, ctx.eps, ctx.p, ctx.q

    ok_if = all(
        divides(ctx.eps_at(i), alpha[i - 1]) and divides(alpha[i - 1], ctx.eps_at(i + z))
        for i in range(1, r + 1)
    )
    conds = [
        Condition("eqinterif", "invariant factor interlacing", ok_if),
        cond_interlace_orders(ctx, "eqinterpolioi"),
    ]

    def lcm_deg(i: int, j: int) -> int:
        return _deg(poly_lcm(alpha[i - 1], ctx.eps_at(j)))

    def a_prefix(j: int) -> int:
        return (
            svu
            + _sum_range(lambda i: _deg(ctx.eps_at(i + x - j)) + q[i + x - j - 1], 1, r + j)
            - _sum_range(lambda i: lcm_deg(i, i + x - j) + max(p[i - 1], q[i + x - j - 1]), 1, r)
        )

    def b_prefix(j: int) -> int:
        return (
            svu
            + _sum_range(lambda i: _deg(ctx.eps_at(i + x + j)) + q[i + x + j - 1], 1, r - j)
            - _sum_range(lambda i: lcm_deg(i, i + x + j) + max(p[i - 1], q[i + x + j - 1]), 1, r - j)
        )

    a_pref = [0] + [a_prefix(j) for j in range(1, x + 1)]
    b_pref = [0] + [b_prefix(j) for j in range(1, z - x + 1)]
    conds.append(_gmaj_condition("eqcmimajpol", "cmi majorization", ctx.c, ctx.d, a_pref))
    conds.append(_gmaj_condition("eqrmimajpol", "rmi majorization", ctx.v, ctx.u, b_pref))

    lhs = _sum_range(lambda i: lcm_deg(i, i + x) + max(p[i - 1], q[i + x - 1]), 1, r)
    rhs = svu + _sum_range(lambda i: _deg(ctx.eps_at(i + x)) + q[i + x - 1], 1, r)
    ok = lhs == rhs if x == 0 else lhs <= rhs
    conds.append(Condition("eqdegsumpolioi", "degree sum", ok, lhs=lhs, rhs=rhs))

    witnesses = {"a": _materialize(a_pref), "b": _materialize(b_pref)}
    return DecisionReport(
        "complete-poly", _verdict(conds), tuple(conds), witnesses, tuple(ctx.flags)
    )


# -- infinite + singular ---------------------------------------------------------


def _big_A(ctx: _Ctx) -> int:
    return (
        sum(ctx.q)
        - sum(ctx.p)
        + ctx.sum_d
        - ctx.sum_c
        + ctx.sum_v
        - ctx.sum_u
    )


def _alpha_tail_deg_sum(ctx: _Ctx, lo: int) -> int:
    """sum of deg(alpha_i) for lo <= i <= r, out-of-range entries contributing 0."""
    return _sum_range(lambda i: _deg(ctx.eta[i - 1]), max(1, lo), ctx.r)


def decide_inf_sing_poly(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of the infinite structure and both minimal index families
    for a polynomial completion.  When every condition passes but the degree
    surplus A is positive, sufficiency is only guaranteed over algebraically
    closed fields and the verdict carries that caveat."""
    _require(pre, infinite=True, cmi=True, rmi=True)
    _require_poly_data(S)
    ctx = _Ctx(S, pre)
    r, x, z = ctx.r, ctx.x, ctx.z
    p, q = ctx.p, ctx.q
    svu = ctx.sum_v_minus_u()
    A = _big_A(ctx)

    conds = [cond_interlace_orders(ctx, "eqinterpolioi")]
    alpha_budget = _alpha_tail_deg_sum(ctx, r + x - z + 1)
    conds.append(Condition("eqAleq", "degree surplus bound", A <= alpha_budget, A, alpha_budget))
    rhs = max(0, A) + _sum_range(lambda i: max(p[i - 1], q[i + x - 1]) - q[i + x - 1], 1, r)
    conds.append(Condition("eqvusAioi", "rmi budget", svu >= rhs, svu, rhs))

    def hat_a_prefix(j: int) -> int:
        return (
            svu
            + _sum_range(lambda i: q[i + x - j - 1], 1, r + j)
            - _sum_range(lambda i: max(p[i - 1], q[i + x - j - 1]), 1, r)
            - A
        )

    def hat_b_prefix(j: int) -> int:
        return (
            svu
            + min(0, _alpha_tail_deg_sum(ctx, r - j + 1) - A)
            + _sum_range(lambda i: q[i + x + j - 1] - max(p[i - 1], q[i + x + j - 1]), 1, r - j)
        )

    a_pref = [0] + [hat_a_prefix(j) for j in range(1, x + 1)]
    b_pref = [0] + [hat_b_prefix(j) for j in range(1, z - x + 1)]
    conds.append(
        _gmaj_condition("eqcmimajpolhatsAioi", "cmi majorization", ctx.c, ctx.d, a_pref)
    )
    conds.append(
        _gmaj_condition("eqrmimajpolhatsAioi", "rmi majorization", ctx.v, ctx.u, b_pref)
    )

    witnesses = {"A": A, "hat_a": _materialize(a_pref), "hat_b": _materialize(b_pref)}
    return DecisionReport(
        "inf-sing-poly",
        _verdict(conds, caveat=A > 0),
        tuple(conds),
        witnesses,
        tuple(ctx.flags),
    )


def _hat_tilde_b_prefixes(ctx: _Ctx) -> list[int]:
    """Prefix sums of the rational-case hat-b sequence (orders version)."""
    r, x, z = ctx.r, ctx.x, ctx.z
    svu = ctx.sum_v_minus_u()
    out = [0]
    for j in range(1, z - x + 1):
        out.append(
            svu
            + _sum_range(
                lambda i: ctx.q[i + x + j - 1] - max(ctx.p[i - 1], ctx.q[i + x + j - 1]),
                1,
                r - j,
            )
        )
    return out


def decide_inf_sing_rat(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of the infinite structure and both minimal index families
    for a rational completion; valid over every field."""
    _require(pre, infinite=True, cmi=True, rmi=True)
    ctx = _Ctx(S, pre)
    r, x = ctx.r, ctx.x
    svu = ctx.sum_v_minus_u()

    conds = [
        cond_tail_equality(ctx),
        cond_interlace_orders(ctx, "eqinterratioi"),
    ]
    rhs = _sum_range(
        lambda i: max(ctx.p[i - 1], ctx.q[i + x - 1]) - ctx.q[i + x - 1], 1, r
    )
    conds.append(Condition("eqvusAioirat", "rmi budget", svu >= rhs, svu, rhs))
    b_pref = _hat_tilde_b_prefixes(ctx)
    conds.append(
        _gmaj_condition("eqrmimajrathatsAioi", "rmi majorization", ctx.v, ctx.u, b_pref)
    )
    witnesses = {"hat_tilde_b": _materialize(b_pref)}
    return DecisionReport(
        "inf-sing-rat", _verdict(conds), tuple(conds), witnesses, tuple(ctx.flags)
    )


# -- infinite + cmi ----------------------------------------------------------------


def decide_inf_cmi_poly(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of the infinite structure and the column minimal indices
    for a polynomial completion."""
    _require(pre, infinite=True, cmi=True)
    _require_poly_data(S)
    ctx = _Ctx(S, pre)
    r, x = ctx.r, ctx.x
    p, q = ctx.p, ctx.q

    conds = [cond_interlace_orders(ctx, "eqinterpolioi")]
    lhs = ctx.sum_c - ctx.sum_d
    rhs = (
        _sum_range(lambda i: max(p[i - 1], q[i + x - 1]), 1, r)
        + _sum_range(lambda i: q[i - 1], 1, x)
        - sum(p)
    )
    conds.append(Condition("eqcdioicmi", "cmi budget", lhs >= rhs, lhs, rhs))

    def hat_a_prime_prefix(j: int) -> int:
        return (
            ctx.sum_c
            - ctx.sum_d
            + sum(p)
            - _sum_range(lambda i: q[i - 1], 1, x - j)
            - _sum_range(lambda i: max(p[i - 1], q[i + x - j - 1]), 1, r)
        )

    a_pref = [0] + [hat_a_prime_prefix(j) for j in range(1, x + 1)]
    conds.append(
        _gmaj_condition("eqcmimajhatap", "cmi majorization", ctx.c, ctx.d, a_pref)
    )
    witnesses = {"hat_a_prime": _materialize(a_pref)}
    return DecisionReport(
        "inf-cmi-poly", _verdict(conds), tuple(conds), witnesses, tuple(ctx.flags)
    )


def decide_inf_cmi_rat(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of the infinite structure and the column minimal indices
    for a rational completion."""
    _require(pre, infinite=True, cmi=True)
    ctx = _Ctx(S, pre)
    conds = [
        cond_tail_equality(ctx),
        cond_interlace_orders(ctx, "eqinterratioi"),
    ]
    return DecisionReport(
        "inf-cmi-rat", _verdict(conds), tuple(conds), {}, tuple(ctx.flags)
    )


# -- infinite + rmi ----------------------------------------------------------------


def decide_inf_rmi_poly(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of the infinite structure and the row minimal indices for
    a polynomial completion; caveated like the full singular case when the
    surplus A' is positive."""
    _require(pre, infinite=True, rmi=True)
    _require_poly_data(S)
    ctx = _Ctx(S, pre)
    r, x, z = ctx.r, ctx.x, ctx.z
    p, q = ctx.p, ctx.q
    svu = ctx.sum_v_minus_u()
    A_prime = (
        sum(q) - sum(p) - sum_prefix(ctx.c, x) + svu
    )

    conds = [cond_interlace_orders(ctx, "eqinterpolioi")]
    alpha_budget = _alpha_tail_deg_sum(ctx, r + x - z + 1)
    conds.append(
        Condition("eqApleq", "degree surplus bound", A_prime <= alpha_budget, A_prime, alpha_budget)
    )
    rhs = max(0, A_prime) + _sum_range(
        lambda i: max(p[i - 1], q[i + x - 1]) - q[i + x - 1], 1, r
    )
    conds.append(Condition("eqvusApioi", "rmi budget", svu >= rhs, svu, rhs))

    def hat_a_prime_prefix(j: int) -> int:
        return (
            svu
            + _sum_range(lambda i: q[i + x - j - 1], 1, r + j)
            - _sum_range(lambda i: max(p[i - 1], q[i + x - j - 1]), 1, r)
            - A_prime
        )

    a_pref = [0] + [hat_a_prime_prefix(j) for j in range(1, x + 1)]
    c_head = ctx.c[:x]
    ok_plain = all(
        sum_prefix(c_head, j) <= a_pref[j] for j in range(1, x)
    ) and sum_prefix(c_head, x) == a_pref[x]
    conds.append(
        Condition(
            "eqcmimajpolhatsAioirmi", "cmi head majorization", ok_plain,
            lhs=list(c_head), rhs=a_pref[1:],
        )
    )

    def hat_b_prime_prefix(j: int) -> int:
        return (
            svu
            + min(0, _alpha_tail_deg_sum(ctx, r - j + 1) - A_prime)
            + _sum_range(lambda i: q[i + x + j - 1] - max(p[i - 1], q[i + x + j - 1]), 1, r - j)
        )

    b_pref = [0] + [hat_b_prime_prefix(j) for j in range(1, z - x + 1)]
    conds.append(
        _gmaj_condition("eqrmimajpolhatsAioicmi", "rmi majorization", ctx.v, ctx.u, b_pref)
    )
    witnesses = {
        "A_prime": A_prime,
        "hat_a_prime": _materialize(a_pref),
        "hat_b_prime": _materialize(b_pref),
    }
    return DecisionReport(
        "inf-rmi-poly",
        _verdict(conds, caveat=A_prime > 0),
        tuple(conds),
        witnesses,
        tuple(ctx.flags),
    )


def decide_inf_rmi_rat(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of the infinite structure and the row minimal indices for
    a rational completion."""
    _require(pre, infinite=True, rmi=True)
    ctx = _Ctx(S, pre)
    r, x = ctx.r, ctx.x
    svu = ctx.sum_v_minus_u()
    conds = [cond_interlace_orders(ctx, "eqinterratioi")]
    rhs = _sum_range(
        lambda i: max(ctx.p[i - 1], ctx.q[i + x - 1]) - ctx.q[i + x - 1], 1, r
    )
    conds.append(Condition("eqvusAioirat", "rmi budget", svu >= rhs, svu, rhs))
    b_pref = _hat_tilde_b_prefixes(ctx)
    conds.append(
        _gmaj_condition("eqrmimajrathatsAioi", "rmi majorization", ctx.v, ctx.u, b_pref)
    )
    witnesses = {"hat_tilde_b": _materialize(b_pref)}
    return DecisionReport(
        "inf-rmi-rat", _verdict(conds), tuple(conds), witnesses, tuple(ctx.flags)
    )


# -- finite + singular --------------------------------------------------------------


def _fin_b_prefixes(ctx: _Ctx) -> list[int]:
    """Prefix sums of the finite-structure hat-b' sequence."""
    r, x, z = ctx.r, ctx.x, ctx.z
    svu = ctx.sum_v_minus_u()
    out = [0]
    for j in range(1, z - x + 1):
        out.append(
            svu
            + _sum_range(lambda i: ctx.d1_pre(i + x + j), 1, r - j)
            - _sum_range(lambda i: ctx.d2mix(i, i + x + j), 1, r - j)
        )
    return out


def decide_fin_sing(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of the finite structure and both minimal index families.
    With all denominators prescribed to 1 the completed matrix is polynomial,
    so the same operation serves the polynomial case."""
    _require(pre, finite=True, cmi=True, rmi=True)
    ctx = _Ctx(S, pre)
    r, x = ctx.r, ctx.x
    svu = ctx.sum_v_minus_u()
    conds = [
        cond_tail_equality(ctx),
        cond_interlace_num(ctx),
        cond_interlace_den(ctx),
    ]
    rhs = _sum_range(lambda i: ctx.d2mix(i, i + x) - ctx.d1_pre(i + x), 1, r)
    conds.append(Condition("eqvusifcmirmigrat", "rmi budget", svu >= rhs, svu, rhs))
    b_pref = _fin_b_prefixes(ctx)
    conds.append(
        _gmaj_condition("eqrmimajratif", "rmi majorization", ctx.v, ctx.u, b_pref)
    )
    witnesses = {"hat_tilde_b_prime": _materialize(b_pref)}
    return DecisionReport(
        "fin-sing", _verdict(conds), tuple(conds), witnesses, tuple(ctx.flags)
    )


def decide_fin_cmi(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of the finite structure and the column minimal indices."""
    _require(pre, finite=True, cmi=True)
    ctx = _Ctx(S, pre)
    conds = [
        cond_tail_equality(ctx),
        cond_interlace_num(ctx),
        cond_interlace_den(ctx),
    ]
    return DecisionReport(
        "fin-cmi", _verdict(conds), tuple(conds), {}, tuple(ctx.flags)
    )


def decide_fin_rmi(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of the finite structure and the row minimal indices."""
    _require(pre, finite=True, rmi=True)
    ctx = _Ctx(S, pre)
    r, x = ctx.r, ctx.x
    svu = ctx.sum_v_minus_u()
    conds = [
        cond_interlace_num(ctx),
        cond_interlace_den(ctx),
    ]
    rhs = _sum_range(lambda i: ctx.d2mix(i, i + x) - ctx.d1_pre(i + x), 1, r)
    conds.append(Condition("eqvusifcmirmigrat", "rmi budget", svu >= rhs, svu, rhs))
    b_pref = _fin_b_prefixes(ctx)
    conds.append(
        _gmaj_condition("eqrmimajratif", "rmi majorization", ctx.v, ctx.u, b_pref)
    )
    witnesses = {"hat_tilde_b_prime": _materialize(b_pref)}
    return DecisionReport(
        "fin-rmi", _verdict(conds), tuple(conds), witnesses, tuple(ctx.flags)
    )


# -- singular-only ------------------------------------------------------------------


def decide_sing(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of both minimal index families (rational or polynomial:
    the criterion is the same)."""
    _require(pre, cmi=True, rmi=True)
    ctx = _Ctx(S, pre)
    z, x = ctx.z, ctx.x
    svu = ctx.sum_v_minus_u()
    conds = [cond_tail_equality(ctx)]
    conds.append(Condition("equvgequ", "rmi budget", svu >= 0, svu, 0))
    b_pref = [0] + [svu] * (z - x)
    conds.append(
        _gmaj_condition("eqvmaydif", "rmi majorization", ctx.v, ctx.u, b_pref)
    )
    witnesses = {"hat_tilde_b_dprime": _materialize(b_pref)}
    return DecisionReport(
        "sing", _verdict(conds), tuple(conds), witnesses, tuple(ctx.flags)
    )


def decide_rmi(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of the row minimal indices alone."""
    _require(pre, rmi=True)
    ctx = _Ctx(S, pre)
    z, x = ctx.z, ctx.x
    svu = ctx.sum_v_minus_u()
    conds = [Condition("equvgequ", "rmi budget", svu >= 0, svu, 0)]
    b_pref = [0] + [svu] * (z - x)
    conds.append(
        _gmaj_condition("eqvmaydif", "rmi majorization", ctx.v, ctx.u, b_pref)
    )
    return DecisionReport("rmi", _verdict(conds), tuple(conds), {}, tuple(ctx.flags))


def decide_cmi(S: StructuralData, pre: Prescription) -> DecisionReport:
    """Prescription of the column minimal indices alone."""
    _require(pre, cmi=True)
    ctx = _Ctx(S, pre)
    conds = [cond_tail_equality(ctx)]
    return DecisionReport("cmi", _verdict(conds), tuple(conds), {}, tuple(ctx.flags))


# -- dispatch ------------------------------------------------------------------------

DECISION_CASES = {
    "complete-rat": decide_complete_rational,
    "complete-poly": decide_complete_poly,
    "inf-sing-poly": decide_inf_sing_poly,
    "inf-sing-rat": decide_inf_sing_rat,
    "inf-cmi-poly": decide_inf_cmi_poly,
    "inf-cmi-rat": decide_inf_cmi_rat,
    "inf-rmi-poly": decide_inf_rmi_poly,
    "inf-rmi-rat": decide_inf_rmi_rat,
    "fin-sing": decide_fin_sing,
    "fin-cmi": decide_fin_cmi,
    "fin-rmi": decide_fin_rmi,
    "sing": decide_sing,
    "rmi": decide_rmi,
    "cmi": decide_cmi,
}


def decide(case: str, S: StructuralData, pre: Prescription) -> DecisionReport:
    if case not in DECISION_CASES:
        raise DomainError(f"unknown decision case {case!r}")
    return DECISION_CASES[case](S, pre)
