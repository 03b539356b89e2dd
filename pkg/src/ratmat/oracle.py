"""Brute-force differential testing of the decision procedures.

Over a small prime field every completion block up to a degree bound can be
enumerated, so the decision procedures can be checked in both directions:

* necessity — the structural data of every stacked matrix, projected onto a
  decision's prescription, must satisfy that decision's conditions;
* sufficiency — every prescription that passes a decision and whose witness
  provably fits inside the enumerated space must actually be achieved (by
  membership for polynomial-kind prescriptions, whose completed degree is
  pinned by the prescribed orders, and constructively for rational-kind
  prescriptions).

Prescriptions that pass a polynomial-kind decision with positive degree
surplus carry the algebraically-closed caveat: absence over the prime field
is recorded, never counted as a counterexample.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .construct import (
    CompletionResult,
    SearchConfig,
    complete_rows,
    completed_degree_bound,
)
from .decide import (
    DECISION_CASES,
    FEASIBLE_AC_ONLY,
    INFEASIBLE,
    Prescription,
    decide,
    existence_complete,
)
from .fields import DomainError, Field
from .matrices import PolyMatrix
from .poly import Poly, RationalFunction, divides
from .structure import StructuralData, structural_data


class OracleCapError(RuntimeError):
    """The requested enumeration exceeds the configured cardinality cap."""


@dataclass(frozen=True)
class EnumerationSpace:
    field: Field
    m: int
    n: int
    z: int
    max_deg: int
    cap: int = 5_000_000

    def __post_init__(self):
        if self.field.p is None:
            raise DomainError("enumeration requires a prime field")

    def cardinality(self) -> int:
        return self.field.p ** ((self.max_deg + 1) * self.z * self.n)

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "m": self.m,
            "n": self.n,
            "z": self.z,
            "max_deg": self.max_deg,
            "cap": self.cap,
        }

    @staticmethod
    def from_json(obj) -> "EnumerationSpace":
        return EnumerationSpace(
            Field.from_json(obj["field"]),
            int(obj["m"]),
            int(obj["n"]),
            int(obj["z"]),
            int(obj["max_deg"]),
            int(obj.get("cap", 5_000_000)),
        )


def _all_polys(field: Field, max_deg: int) -> list[Poly]:
    out = []
    for d in range(max_deg + 1):
        for tup in itertools.product(field.elements(), repeat=d + 1):
            if d > 0 and tup[-1] == 0:
                continue
            out.append(Poly(field, tup))
    return out


def _all_rows(field: Field, n: int, max_deg: int) -> list[tuple[Poly, ...]]:
    pool = _all_polys(field, max_deg) + [Poly.zero(field)]
    return [tuple(row) for row in itertools.product(pool, repeat=n)]


def iter_blocks(space: EnumerationSpace):
    """All z x n completion blocks, one representative per row multiset
    (permuting rows never changes the structural data)."""
    rows = _all_rows(space.field, space.n, space.max_deg)
    for combo in itertools.combinations_with_replacement(range(len(rows)), space.z):
        yield PolyMatrix(space.field, [rows[i] for i in combo], cols=space.n)


def enumerate_achievable(P: PolyMatrix, space: EnumerationSpace) -> set[StructuralData]:
    """The exact set of structural data achievable by stacking a block from
    the space under P."""
    return set(achievable_with_witnesses(P, space).keys())


def achievable_with_witnesses(
    P: PolyMatrix, space: EnumerationSpace
) -> dict[StructuralData, PolyMatrix]:
    if P.rows != space.m or P.cols != space.n or P.field != space.field:
        raise DomainError("matrix does not fit the enumeration space")
    if space.cardinality() > space.cap:
        raise OracleCapError(
            f"space of {space.cardinality()} blocks exceeds the cap {space.cap}"
        )
    out: dict[StructuralData, PolyMatrix] = {}
    for W in iter_blocks(space):
        T = structural_data(P.stack(W))
        if T.index_sum() != 0:
            raise AssertionError("extracted data violates the index-sum identity")
        if T not in out:
            out[T] = W
    return out


# -- projections ------------------------------------------------------------------

_CASE_FIELDS = {
    "complete-rat": ("finite", "infinite", "cmi", "rmi"),
    "complete-poly": ("finite", "infinite", "cmi", "rmi"),
    "inf-sing-poly": ("infinite", "cmi", "rmi"),
    "inf-sing-rat": ("infinite", "cmi", "rmi"),
    "inf-cmi-poly": ("infinite", "cmi"),
    "inf-cmi-rat": ("infinite", "cmi"),
    "inf-rmi-poly": ("infinite", "rmi"),
    "inf-rmi-rat": ("infinite", "rmi"),
    "fin-sing": ("finite", "cmi", "rmi"),
    "fin-cmi": ("finite", "cmi"),
    "fin-rmi": ("finite", "rmi"),
    "sing": ("cmi", "rmi"),
    "rmi": ("rmi",),
    "cmi": ("cmi",),
}

_POLY_KIND_CASES = {
    "complete-poly", "inf-sing-poly", "inf-cmi-poly", "inf-rmi-poly",
}


def projection_of(case: str, T: StructuralData, x: int) -> tuple:
    parts: list = [x]
    fields = _CASE_FIELDS[case]
    if "finite" in fields:
        parts.append(T.irf)
    if "infinite" in fields:
        parts.append(T.inf_orders)
    if "cmi" in fields:
        parts.append(T.cmi)
    if "rmi" in fields:
        parts.append(T.rmi)
    return tuple(parts)


def prescription_from(case: str, T: StructuralData, x: int, z: int) -> Prescription:
    fields = _CASE_FIELDS[case]
    kind = "poly" if case in _POLY_KIND_CASES or case.endswith("-poly") else "rat"
    if case in ("fin-sing", "fin-cmi", "fin-rmi", "sing", "rmi", "cmi"):
        kind = "rat"
    return Prescription(
        z=z,
        x=x,
        kind=kind,
        finite=T.irf if "finite" in fields else None,
        infinite=T.inf_orders if "infinite" in fields else None,
        cmi=T.cmi if "cmi" in fields else None,
        rmi=T.rmi if "rmi" in fields else None,
    )


def projection_of_prescription(case: str, pre: Prescription) -> tuple:
    parts: list = [pre.x]
    fields = _CASE_FIELDS[case]
    if "finite" in fields:
        parts.append(pre.finite)
    if "infinite" in fields:
        parts.append(pre.infinite)
    if "cmi" in fields:
        parts.append(pre.cmi)
    if "rmi" in fields:
        parts.append(pre.rmi)
    return tuple(parts)


# -- candidate generation ------------------------------------------------------------


@dataclass(frozen=True)
class CandidateBox:
    """The documented candidate ranges for sufficiency testing."""

    q_lo: int
    q_hi: int
    d_max: int
    v_max: int
    v_sum_max: int
    chain_deg: int
    den_deg: int

    @staticmethod
    def for_space(space: EnumerationSpace, r_plus_x: int) -> "CandidateBox":
        md = space.max_deg
        return CandidateBox(
            q_lo=-md,
            q_hi=md,
            d_max=md,
            v_max=max(1, r_plus_x) * md,
            v_sum_max=max(1, r_plus_x) * md + 2,
            chain_deg=md,
            den_deg=max(1, md - 1),
        )


def _nondecreasing_tuples(length: int, lo: int, hi: int):
    if length == 0:
        yield ()
        return
    for combo in itertools.combinations_with_replacement(range(lo, hi + 1), length):
        yield combo


def _partitions(length: int, max_entry: int, max_sum: int):
    if length == 0:
        yield ()
        return

    def rec(prefix, remaining, cap):
        if remaining == 0:
            yield tuple(prefix)
            return
        for v in range(min(cap, max_sum - sum(prefix)), -1, -1):
            prefix.append(v)
            yield from rec(prefix, remaining - 1, v)
            prefix.pop()

    yield from rec([], length, max_entry)


def _orders_candidates(S: StructuralData, z: int, x: int, box: CandidateBox):
    p = S.inf_orders
    for q in _nondecreasing_tuples(S.rank + x, box.q_lo, box.q_hi):
        ok = True
        for i in range(1, S.rank + 1):
            upper = q[i + z - 1] if i + z <= len(q) else None
            if q[i - 1] > p[i - 1] or (upper is not None and p[i - 1] > upper):
                ok = False
                break
        if ok:
            yield q


def _chain_candidates(
    pool: list[Poly], length: int, lower: list[Poly | None], upper: list[Poly | None]
):
    """Monic divisibility chains from the pool with per-position divisibility
    constraints: lower[i] | chain[i] | upper[i] (None = unconstrained)."""

    def rec(i, prefix):
        if i == length:
            yield tuple(prefix)
            return
        for cand in pool:
            if prefix and not divides(prefix[-1], cand):
                continue
            if lower[i] is not None and not divides(lower[i], cand):
                continue
            if upper[i] is not None and not divides(cand, upper[i]):
                continue
            prefix.append(cand)
            yield from rec(i + 1, prefix)
            prefix.pop()

    yield from rec(0, [])


def _beta_candidates(S: StructuralData, z: int, x: int, box: CandidateBox, field: Field):
    """Invariant-factor chains compatible with the interlacing condition."""
    pool = [p for p in _all_polys(field, box.chain_deg) if p.is_monic()]
    alpha = S.finite_nums()
    r = S.rank
    length = r + x
    lower = [None] * length
    upper = [None] * length
    for i in range(1, r + 1):
        upper[i - 1] = alpha[i - 1]  # beta_i | alpha_i
        if i + z <= length:
            lower[i + z - 1] = alpha[i - 1]  # alpha_i | beta_{i+z}
    yield from _chain_candidates(pool, length, lower, upper)


def _finite_candidates(
    S: StructuralData, z: int, x: int, box: CandidateBox, field: Field, poly_only: bool
):
    """(eps, psi) chain pairs compatible with both interlacing conditions."""
    pool = [p for p in _all_polys(field, box.chain_deg) if p.is_monic()]
    eta, phi = S.finite_nums(), S.finite_dens()
    r = S.rank
    length = r + x
    lower = [None] * length
    upper = [None] * length
    for i in range(1, r + 1):
        upper[i - 1] = eta[i - 1]
        if i + z <= length:
            lower[i + z - 1] = eta[i - 1]
    if poly_only:
        psis = [tuple(Poly.one(field) for _ in range(length))]
    else:
        den_pool = [p for p in _all_polys(field, box.den_deg) if p.is_monic()]
        # psi chain decreases: psi_{i+1} | psi_i, with psi_{i+z} | phi_i | psi_i
        rev_lower = [None] * length
        rev_upper = [None] * length
        for i in range(1, r + 1):
            rev_lower[i - 1] = phi[i - 1]  # phi_i | psi_i
            if i + z <= length:
                rev_upper[i + z - 1] = phi[i - 1]  # psi_{i+z} | phi_i
        psis = [
            tuple(reversed(ch))
            for ch in _chain_candidates(
                den_pool,
                length,
                list(reversed(rev_upper)),
                list(reversed(rev_lower)),
            )
        ]
    for eps in _chain_candidates(pool, length, lower, upper):
        for psi in psis:
            try:
                chain = tuple(
                    RationalFunction(e, s) for e, s in zip(eps, psi)
                )
            except DomainError:
                continue
            if any(chain[i].num != eps[i] or chain[i].den != psi[i] for i in range(length)):
                continue  # not coprime, so not a valid irreducible chain
            yield chain


def sufficiency_candidates(
    case: str, S: StructuralData, z: int, x: int, box: CandidateBox, field: Field
):
    """Deterministic stream of candidate prescriptions for one case."""
    r, n, m = S.rank, S.n, S.m
    d_len = n - r - x
    v_len = m + z - r - x
    kind = "poly" if case in _POLY_KIND_CASES else "rat"

    def ds():
        return _partitions(d_len, box.d_max, box.d_max * max(1, d_len))

    def vs():
        return _partitions(v_len, box.v_max, box.v_sum_max)

    if case in ("complete-poly", "complete-rat"):
        poly_only = case == "complete-poly"
        for chain in _finite_candidates(S, z, x, box, field, poly_only):
            chain_deg = sum(int(f.num.degree) - int(f.den.degree) for f in chain)
            for q in _orders_candidates(S, z, x, box):
                for d in ds():
                    v_sum = -sum(q) - chain_deg - sum(d)
                    if not 0 <= v_sum <= box.v_sum_max:
                        continue
                    for v in _partitions(v_len, min(box.v_max, v_sum), v_sum):
                        if sum(v) != v_sum:
                            continue
                        yield Prescription(z, x, kind if not poly_only else "poly",
                                           finite=chain, infinite=q, cmi=d, rmi=v)
    elif case in ("inf-sing-poly", "inf-sing-rat"):
        for q in _orders_candidates(S, z, x, box):
            for d in ds():
                for v in vs():
                    yield Prescription(z, x, kind, infinite=q, cmi=d, rmi=v)
    elif case in ("inf-cmi-poly", "inf-cmi-rat"):
        for q in _orders_candidates(S, z, x, box):
            for d in ds():
                yield Prescription(z, x, kind, infinite=q, cmi=d)
    elif case in ("inf-rmi-poly", "inf-rmi-rat"):
        for q in _orders_candidates(S, z, x, box):
            for v in vs():
                yield Prescription(z, x, kind, infinite=q, rmi=v)
    elif case == "fin-sing":
        for chain in _finite_candidates(S, z, x, box, field, poly_only=False):
            for d in ds():
                for v in vs():
                    yield Prescription(z, x, "rat", finite=chain, cmi=d, rmi=v)
    elif case == "fin-cmi":
        for chain in _finite_candidates(S, z, x, box, field, poly_only=False):
            for d in ds():
                yield Prescription(z, x, "rat", finite=chain, cmi=d)
    elif case == "fin-rmi":
        for chain in _finite_candidates(S, z, x, box, field, poly_only=False):
            for v in vs():
                yield Prescription(z, x, "rat", finite=chain, rmi=v)
    elif case == "sing":
        for d in ds():
            for v in vs():
                yield Prescription(z, x, "rat", cmi=d, rmi=v)
    elif case == "rmi":
        for v in vs():
            yield Prescription(z, x, "rat", rmi=v)
    elif case == "cmi":
        for d in ds():
            yield Prescription(z, x, "rat", cmi=d)
    else:
        raise DomainError(f"unknown case {case!r}")


# -- the differential report -----------------------------------------------------------


@dataclass
class OracleReport:
    space: EnumerationSpace
    achieved_count: int = 0
    necessity_checked: int = 0
    sufficiency_checked: int = 0
    constructive_checked: int = 0
    necessity_violations: list = dc_field(default_factory=list)
    sufficiency_violations: list = dc_field(default_factory=list)
    caveat_unachieved: list = dc_field(default_factory=list)
    records: list = dc_field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.necessity_violations and not self.sufficiency_violations

    def to_json(self):
        return {
            "space": self.space.to_json(),
            "achieved_count": self.achieved_count,
            "necessity_checked": self.necessity_checked,
            "sufficiency_checked": self.sufficiency_checked,
            "constructive_checked": self.constructive_checked,
            "necessity_violations": self.necessity_violations,
            "sufficiency_violations": self.sufficiency_violations,
            "caveat_unachieved_count": len(self.caveat_unachieved),
            "clean": self.clean,
        }


_RAT_CASES = (
    "inf-sing-rat", "inf-cmi-rat", "inf-rmi-rat",
    "fin-sing", "fin-cmi", "fin-rmi", "complete-rat",
)


def _sufficiency_guaranteed(case: str, report) -> bool:
    """Whether a passing verdict promises a witness over this very field."""
    return report.feasible != FEASIBLE_AC_ONLY


def differential_check(
    P: PolyMatrix,
    space: EnumerationSpace,
    cases=None,
    xs=(0, 1),
    sufficiency: bool = True,
    constructive_budget: int = 0,
    search_cap: int = 1 << 13,
    emit=None,
) -> OracleReport:
    """Run both directions of the differential test for one matrix.

    ``constructive_budget`` caps, per (case, x), how many passing
    rational-kind prescriptions are realized through complete_rows; zero
    disables the constructive side.  ``emit``, when given, receives one record
    dict per checked prescription.
    """
    cases = list(cases or DECISION_CASES.keys())
    report = OracleReport(space)
    S = structural_data(P)
    achieved = achievable_with_witnesses(P, space)
    report.achieved_count = len(achieved)

    projections: dict[str, set] = {c: set() for c in cases}
    for T in achieved:
        x = T.rank - S.rank
        for c in cases:
            projections[c].add(projection_of(c, T, x))

    # necessity: every achieved bundle satisfies every decision's conditions
    for T in achieved:
        x = T.rank - S.rank
        if xs is not None and x not in xs:
            continue
        if T.rank >= 1 and not existence_complete(T, S.m + space.z, S.n):
            report.necessity_violations.append(
                {"kind": "existence", "data": T.to_json()}
            )
        for c in cases:
            pre = prescription_from(c, T, x, space.z)
            rep = decide(c, S, pre)
            report.necessity_checked += 1
            if not rep.conditions_pass:
                rec = {
                    "direction": "necessity",
                    "case": c,
                    "prescription": pre.to_json(),
                    "achieved_by": achieved[T].to_json(),
                    "failed": [cd.tag for cd in rep.conditions if cd.gating and not cd.passed],
                }
                report.necessity_violations.append(rec)
                if emit:
                    emit(rec)

    if not sufficiency:
        return report

    field = P.field
    for x in xs:
        if not 0 <= x <= min(space.z, S.n - S.rank):
            continue
        box = CandidateBox.for_space(space, S.rank + x)
        for c in cases:
            constructive_left = constructive_budget
            for pre in sufficiency_candidates(c, S, space.z, x, box, field):
                try:
                    rep = decide(c, S, pre)
                except DomainError:
                    continue
                if rep.feasible == INFEASIBLE:
                    continue
                key = projection_of_prescription(c, pre)
                if c in _RAT_CASES:
                    # rational-kind: constructive realization on a budget
                    if constructive_left <= 0:
                        continue
                    bound = completed_degree_bound(S, pre)
                    if bound is None:
                        continue
                    size = field.p ** (space.z * space.n * (bound + 1))
                    if size > search_cap:
                        continue
                    constructive_left -= 1
                    report.constructive_checked += 1
                    res = complete_rows(
                        P, pre, SearchConfig(max_candidates=search_cap)
                    )
                    if res.status != "found":
                        rec = {
                            "direction": "sufficiency-constructive",
                            "case": c,
                            "prescription": pre.to_json(),
                            "status": res.status,
                            "note": res.note,
                        }
                        report.sufficiency_violations.append(rec)
                        if emit:
                            emit(rec)
                else:
                    bound = completed_degree_bound(S, pre)
                    if bound is None or bound > space.max_deg:
                        continue
                    report.sufficiency_checked += 1
                    member = key in projections[c]
                    if member:
                        continue
                    if not _sufficiency_guaranteed(c, rep):
                        report.caveat_unachieved.append(
                            {"case": c, "prescription": pre.to_json()}
                        )
                        continue
                    rec = {
                        "direction": "sufficiency",
                        "case": c,
                        "prescription": pre.to_json(),
                    }
                    report.sufficiency_violations.append(rec)
                    if emit:
                        emit(rec)
    return report
