"""Batch front-end: validate data files, inspect structure, enumerate and
classify quasitriangular structures, verify supplied R-matrices, export.

File in, file out; no interactive mode.  Exit status 0 on success, 1 on
mathematical failure (invalid data or failed verification), 2 on usage
errors.  RMATRIX_THREADS overrides internal parallelism; --budget caps the
group size and every search-space size, refusing loudly instead of hanging.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import families, serialize, solver
from .cocycle import check_necessary, validate
from .hopf import verify_hopf_axioms
from .reports import Report
from .rmatrix import verify_qybe, verify_quasitriangular
from .solver import BudgetExceeded

DEFAULT_BUDGET = 1_000_000


class UsageError(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: not valid JSON ({e})")


def _load_data(path: str, budget: int):
    try:
        data = serialize.data_from_json(_load_json(path))
    except (KeyError, ValueError, TypeError) as e:
        raise UsageError(f"{path}: bad data file ({e})")
    if budget and data.group.order > budget:
        raise UsageError(
            f"|G| = {data.group.order} exceeds the budget {budget}; "
            "raise --budget to proceed"
        )
    return data


def _write_out(obj, path: str | None):
    text = serialize.dumps(obj)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)


def _print_report(rep: Report):
    print(str(rep))


def cmd_validate(args) -> int:
    data = _load_data(args.data, args.budget)
    rep = validate(data)
    _print_report(rep)
    status = 0 if rep.ok else 1
    if rep.ok:
        nec = check_necessary(data)
        _print_report(nec)
        if args.axioms:
            ax = verify_hopf_axioms(data)
            _print_report(ax)
            if not ax.ok:
                status = 1
    return status


def cmd_info(args) -> int:
    data = _load_data(args.data, args.budget)
    rep = validate(data)
    if not rep.ok:
        _print_report(rep)
        return 1
    G = data.group
    print(f"data: {data.name}")
    print(f"|G| = {G.order} ({G!r}), dim H = {2 * G.order}")
    print(f"S ({len(data.S)}): {data.S}")
    print(f"T ({len(data.T)}): {data.T}")
    nec = check_necessary(data)
    if not nec.ok:
        _print_report(nec)
        return 0
    print(f"b = {data.b}")
    pres = data.presentation
    print(f"presentation: s = {list(pres.s_gens)}, orders = {list(pres.orders)}, "
          f"a = {pres.a_gen}, a^2 = s^{list(pres.m_exps)}, b = s^{list(pres.p_exps)}")
    eta_vals = {data.eta_rou(g, h) for g in G.elements for h in G.elements}
    on_s = all(data.eta_rou(s1, s2).num == 0 for s1 in data.S for s2 in data.S)
    print(f"eta: {len(eta_vals)} distinct values; trivial on SxS: {on_s}")
    return 0


KINDS = ("trivial", "general", "special", "all", "phi-symmetric")


def cmd_enumerate(args) -> int:
    data = _load_data(args.data, args.budget)
    rep = validate(data)
    if not rep.ok:
        _print_report(rep)
        return 1
    budget = args.budget or None
    solutions: dict[str, list] = {}
    note = None
    try:
        # "all" = every structure on this algebra: trivial + non-trivial.
        # "general" solutions live on the untwisted companion datum.
        if args.kind in ("trivial", "all"):
            solutions["trivial"] = solver.enumerate_trivial(data, budget)
        if args.kind == "general":
            tuples = solver.enumerate_general_tuples(data, budget)
            solutions["general"] = [
                solver.tuple_to_rmatrix_general(data, t) for t in tuples
            ]
            note = "general solutions live on the untwisted companion " \
                   "(same group/action, sigma = tau = 1)"
        if args.kind in ("special", "all"):
            solutions["special"] = solver.enumerate_all_nontrivial(data, budget)
        if args.kind == "phi-symmetric":
            solutions["phi-symmetric"] = solver.enumerate_phi_symmetric(data, budget)
    except BudgetExceeded as e:
        print(f"refused: {e}", file=sys.stderr)
        return 2
    nec = check_necessary(data)
    if not nec.ok and args.kind in ("special", "all", "phi-symmetric"):
        print("note: necessary conditions fail, non-trivial sets are empty")
        _print_report(nec)
    verified: bool | None = None
    if args.verify:
        verified = True
        for kind, rs in solutions.items():
            for R in rs:
                ok = verify_quasitriangular(R).ok and verify_qybe(R).ok
                if not ok:
                    verified = False
                    print(f"FAILED re-verification: kind={kind}")
    for kind in sorted(solutions):
        print(f"{kind}: {len(solutions[kind])} solutions")
    out = serialize.solution_set_to_json(data, solutions, verified)
    if note:
        out["note"] = note
    _write_out(out, args.output)
    return 0 if verified in (None, True) else 1


def cmd_verify(args) -> int:
    data = _load_data(args.data, args.budget)
    rep = validate(data)
    if not rep.ok:
        _print_report(rep)
        return 1
    try:
        R = serialize.rmatrix_from_json(data, _load_json(args.rmatrix))
    except (KeyError, ValueError, TypeError) as e:
        raise UsageError(f"{args.rmatrix}: bad R-matrix file ({e})")
    rep = verify_quasitriangular(R)
    _print_report(rep)
    status = 0 if rep.ok else 1
    if args.qybe:
        qrep = verify_qybe(R)
        _print_report(qrep)
        if not qrep.ok:
            status = 1
    return status


def cmd_classify(args) -> int:
    try:
        data = families.preset(args.preset)
    except ValueError as e:
        raise UsageError(str(e))
    if args.budget and data.group.order > args.budget:
        raise UsageError(f"|G| = {data.group.order} exceeds the budget")
    if data.group.rank == 2:
        sols = families.classify_K(data)
        kind = "K"
    else:
        sols = families.classify_A(data)
        kind = "A"
    all_ok = True
    entries = []
    for s in sols:
        ok = verify_quasitriangular(s.rmatrix).ok
        all_ok = all_ok and ok
        entries.append({
            "params": [serialize.scalar_to_json(p) for p in s.params],
            "rmatrix": serialize.rmatrix_to_json(s.rmatrix),
            "verified": ok,
        })
    print(f"{kind}-family classification of {data.name}: "
          f"{len(sols)} non-trivial structures, all verified: {all_ok}")
    out = {
        "preset": args.preset,
        "data_fingerprint": serialize.data_fingerprint(data),
        "count": len(sols),
        "solutions": entries,
    }
    _write_out(out, args.output)
    return 0 if all_ok else 1


def cmd_export(args) -> int:
    data = _load_data(args.data, args.budget)
    try:
        R = serialize.rmatrix_from_json(data, _load_json(args.rmatrix))
    except (KeyError, ValueError, TypeError) as e:
        raise UsageError(f"{args.rmatrix}: bad R-matrix file ({e})")
    from .rmatrix import to_tensor

    if args.format == "json":
        out = serialize.rmatrix_to_json(R)
    elif args.format == "matrix":
        out = {"basis": "e_g then e_g x, g in enumeration order",
               "matrix": serialize.tensor_to_dense(to_tensor(R))}
    else:
        out = {
            "warning": "floating-point approximation; NOT authoritative",
            "matrix": serialize.tensor_to_dense(to_tensor(R), approx=True),
        }
    _write_out(out, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hopfqt",
        description="exact classification of quasitriangular structures on "
                    "abelian-extension Hopf algebras of Z2",
    )
    ap.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                    help="cap on |G| and search-space sizes; 0 = unlimited "
                         f"(default {DEFAULT_BUDGET})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a data file")
    p.add_argument("data")
    p.add_argument("--axioms", action="store_true",
                   help="also run the exhaustive Hopf-axiom checker")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("info", help="print structure of a data file")
    p.add_argument("data")
    p.set_defaults(fn=cmd_info)

    p = sub.add_parser("enumerate", help="enumerate solution sets")
    p.add_argument("data")
    p.add_argument("--kind", choices=KINDS, default="all")
    p.add_argument("--verify", action="store_true",
                   help="re-certify every solution with the tensor verifier")
    p.add_argument("-o", "--output", help="write the solution-set JSON here")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("verify", help="verify a supplied R-matrix file")
    p.add_argument("data")
    p.add_argument("rmatrix")
    p.add_argument("--qybe", action="store_true",
                   help="also check the quantum Yang-Baxter equation")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("classify", help="closed-form family classification")
    p.add_argument("--preset", required=True,
                   help='"kac-paljutkin", "K8n:n=<k>:untwisted", '
                        '"A8n:n=<k>:paper", "A8n:n=<k>:untwisted"')
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("export", help="re-emit an R-matrix in another format")
    p.add_argument("data")
    p.add_argument("rmatrix")
    p.add_argument("--format", choices=("json", "matrix", "complex"),
                   default="json")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_export)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.budget is not None and args.budget <= 0:
        args.budget = 0
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"refused: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
