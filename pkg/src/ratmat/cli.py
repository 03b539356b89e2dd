"""Batch command-line interface.

JSON in, JSON out (sorted keys, stable formatting).  Exit codes: 0 when the
requested computation succeeded, 2 when the verdict itself is negative
(infeasible prescription, failed verification, counterexamples found), 1 for
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .construct import SearchConfig, complete_rows, verify_completion
from .decide import DECISION_CASES, INFEASIBLE, Prescription, decide
from .fields import DomainError, Field
from .matrices import matrix_from_json
from .oracle import EnumerationSpace, differential_check
from .structure import structural_data


def _dump(obj, path=None) -> None:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"))
    print(text)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _load_matrix(path, field_flag=None):
    obj = _load_json(path)
    if field_flag and "field" not in obj:
        obj["field"] = Field.from_flag(field_flag).to_json()
    M = matrix_from_json(obj)
    if field_flag and M.field != Field.from_flag(field_flag):
        raise DomainError("matrix field disagrees with --field")
    return M


def _as_rational(M):
    from .matrices import PolyMatrix

    return M.to_rational() if isinstance(M, PolyMatrix) else M


def cmd_structure(args) -> int:
    M = _load_matrix(args.matrix, args.field)
    _dump(structural_data(_as_rational(M)).to_json(), args.json)
    return 0


def cmd_decide(args) -> int:
    M = _load_matrix(args.matrix, args.field)
    pre = Prescription.from_json(M.field, _load_json(args.prescription))
    S = structural_data(_as_rational(M))
    report = decide(args.case, S, pre)
    _dump(report.to_json(), args.json)
    return 2 if report.feasible == INFEASIBLE else 0


def cmd_scan(args) -> int:
    if args.vary != "infinite":
        raise DomainError("only --vary infinite is supported")
    M = _load_matrix(args.matrix, args.field)
    base = Prescription.from_json(M.field, _load_json(args.prescription))
    S = structural_data(_as_rational(M))
    lo, hi = (int(t) for t in args.range.split(".."))
    import itertools

    length = S.rank + base.x
    region = []
    for q in itertools.combinations_with_replacement(range(lo, hi + 1), length):
        pre = Prescription(
            base.z, base.x, base.kind, base.finite, tuple(q), base.cmi, base.rmi
        )
        report = decide(args.case, S, pre)
        if report.conditions_pass:
            region.append({"q": list(q), "feasible": report.feasible})
    _dump({"case": args.case, "range": [lo, hi], "region": region}, args.json)
    return 0


def cmd_search(args) -> int:
    M = _load_matrix(args.matrix, args.field)
    pre = Prescription.from_json(M.field, _load_json(args.prescription))
    config = SearchConfig.from_json(_load_json(args.config)) if args.config else SearchConfig()
    if args.max_degree is not None:
        config = SearchConfig(args.max_degree, config.max_candidates, config.parallel)
    result = complete_rows(M, pre, config)
    _dump(result.to_json(), args.json)
    return 0 if result.status == "found" else 2


def cmd_verify(args) -> int:
    M = _load_matrix(args.matrix, args.field)
    W = _load_matrix(args.completion, args.field)
    pre = Prescription.from_json(M.field, _load_json(args.prescription))
    ok, detail = verify_completion(M, W, pre)
    _dump(detail, args.json)
    return 0 if ok else 2


def cmd_oracle(args) -> int:
    M = _load_matrix(args.matrix, args.field)
    space = EnumerationSpace.from_json(_load_json(args.space))
    if args.max_degree is not None:
        space = EnumerationSpace(
            space.field, space.m, space.n, space.z, args.max_degree, space.cap
        )
    records = []
    report = differential_check(
        M,
        space,
        cases=args.cases.split(",") if args.cases else None,
        constructive_budget=args.constructive_budget,
        emit=records.append,
    )
    out = report.to_json()
    _dump(out, args.json)
    if args.jsonl:
        with open(args.jsonl, "w") as fh:
            for rec in records:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
    return 0 if report.clean else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ratmat",
        description="Structural data and row completions of polynomial and "
        "rational matrices, exactly.",
    )
    ap.add_argument("--field", help="field shorthand: q | qi | fp:<p>")
    ap.add_argument("--json", help="also write the JSON output to this path")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("structure", help="print the structural data of a matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("decide", help="evaluate a prescription against a matrix")
    p.add_argument("--case", required=True, choices=sorted(DECISION_CASES))
    p.add_argument("matrix")
    p.add_argument("prescription")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("scan", help="sweep prescribed orders over a range")
    p.add_argument("--case", required=True, choices=sorted(DECISION_CASES))
    p.add_argument("--vary", default="infinite")
    p.add_argument("--range", required=True, help="lo..hi")
    p.add_argument("matrix")
    p.add_argument("prescription")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("search", help="construct a completion")
    p.add_argument("--config", help="SearchConfig JSON path")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("matrix")
    p.add_argument("prescription")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check a completion against a prescription")
    p.add_argument("matrix")
    p.add_argument("completion")
    p.add_argument("prescription")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="differential-test the decisions")
    p.add_argument("--space", required=True, help="EnumerationSpace JSON path")
    p.add_argument("--cases", help="comma-separated decision cases")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--constructive-budget", type=int, default=0)
    p.add_argument("--jsonl", help="write per-prescription records here")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_oracle)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, FileNotFoundError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
