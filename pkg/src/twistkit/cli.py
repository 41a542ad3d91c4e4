"""Command-line surface: JSON files in, canonical JSON reports out.

Exit codes: 0 when every verification passed (or the construction succeeded),
1 when a verification returned ok = false (the report is still written),
2 on input or usage errors (including oversized enumeration requests).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import basischange, catalog, extension, search, serialize, twisting
from .errors import TwistKitError
from .report import VerificationReport


def _read_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise TwistKitError(f"cannot read {path}: {exc}") from None
    return serialize.loads(text)


def _write_output(payload, out: str | None) -> None:
    text = serialize.dumps(payload)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _exit_for(report: VerificationReport) -> int:
    return 0 if report.ok else 1


# -- subcommand handlers ---------------------------------------------------------


def _cmd_validate_algebra(args) -> int:
    from .algebra import validate_algebra

    algebra = serialize.algebra_from_json(_read_json(args.input))
    report = validate_algebra(algebra)
    _write_output(serialize.report_to_json(report), args.out)
    return _exit_for(report)


_CHECKS = {
    "direct": twisting.check_conditions_direct,
    "rho": twisting.check_rho_representation,
    "phi": twisting.check_phi_representation,
    "rep": twisting.check_representations,
    "oracle": twisting.oracle_check,
}


def _cmd_check_twisting(args) -> int:
    candidate = serialize.candidate_from_json(_read_json(args.input))
    if args.checker == "all":
        reports = {name: fn(candidate.family) for name, fn in _CHECKS.items()}
        ok = all(r.ok for r in reports.values())
        payload = {"ok": ok, "reports": {k: serialize.report_to_json(r) for k, r in reports.items()}}
        _write_output(payload, args.out)
        return 0 if ok else 1
    report = _CHECKS[args.checker](candidate.family)
    _write_output(serialize.report_to_json(report), args.out)
    return _exit_for(report)


def _cmd_build_product(args) -> int:
    candidate = twisting.certify(serialize.candidate_from_json(_read_json(args.input)))
    if not candidate.verified:
        report = twisting.check_conditions_direct(candidate.family)
        _write_output({"ok": False, "report": serialize.report_to_json(report)}, args.out)
        return 1
    product = twisting.build_twisted_product(candidate)
    _write_output(
        {"ok": True, "product": serialize.algebra_to_json(product.algebra)}, args.out
    )
    return 0


def _cmd_represent(args) -> int:
    candidate = twisting.certify(serialize.candidate_from_json(_read_json(args.input)))
    if not candidate.verified:
        report = twisting.check_conditions_direct(candidate.family)
        _write_output({"ok": False, "report": serialize.report_to_json(report)}, args.out)
        return 1
    family = candidate.family
    n, d = family.B.dim, family.A.dim
    payload = {
        "ok": True,
        "phi_chi": {
            "B": [
                serialize.algmatrix_to_json(twisting.lift_structure_matrix(family, k))
                for k in range(n)
            ],
            "A": [
                serialize.algmatrix_to_json(twisting.phi_hat(family, family.A.basis_element(p)))
                for p in range(d)
            ],
        },
        "rho_hat": [
            serialize.endomatrix_to_json(twisting.rho_hat(family, k)) for k in range(n)
        ],
    }
    _write_output(payload, args.out)
    return 0


def _cmd_rebase(args) -> int:
    candidate = twisting.certify(serialize.candidate_from_json(_read_json(args.input)))
    if not candidate.verified:
        report = twisting.check_conditions_direct(candidate.family)
        _write_output({"ok": False, "report": serialize.report_to_json(report)}, args.out)
        return 1
    p_mat = serialize.kmatrix_from_json(
        candidate.family.field, _read_json(args.matrix), "change-of-basis matrix"
    )
    result = basischange.rebase(candidate, p_mat)
    payload = {
        "ok": result.conjugation.ok and result.candidate.verified,
        "candidate": serialize.candidate_to_json(result.candidate),
        "conjugation": serialize.report_to_json(result.conjugation),
        "verified": result.candidate.verified,
    }
    _write_output(payload, args.out)
    return 0 if payload["ok"] else 1


def _cmd_extend(args) -> int:
    obj = _read_json(args.input)
    candidate = serialize.candidate_from_json(
        {"A": obj["A"], "B": obj["B"], "gamma": obj["gamma"]}
        if "psi" not in obj
        else obj["psi"]
    )
    n = int(obj["n"]) if "n" in obj else args.n
    if n is None:
        raise TwistKitError("the cut position n is required (in the file or via --n)")
    m = int(obj["m"]) if "m" in obj else None
    report = extension.check_extension_given_theta(
        candidate.family, n, m, require_gamma01_zero=not args.lemma_stage
    )
    payload = {"ok": report.ok, "report": serialize.report_to_json(report)}
    if args.blocks:
        blocks = extension.split_blocks(candidate.family, n)
        field = candidate.family.field
        payload["blocks"] = {
            "B1": serialize.array_to_json(field, blocks.B1),
            "B2": serialize.array_to_json(field, blocks.B2),
            "C1": serialize.array_to_json(field, blocks.C1),
            "C2": serialize.array_to_json(field, blocks.C2),
        }
    _write_output(payload, args.out)
    return 0 if report.ok else 1


def _cmd_quiver(args) -> int:
    candidate = serialize.candidate_from_json(_read_json(args.input))
    quiver, rep = catalog.quiver_of(candidate)
    payload = {
        "vertices": list(quiver.vertices),
        "arrows": [
            {
                "source": source,
                "target": target,
                "map": serialize.kmatrix_to_json(rep.maps[(source, target)]),
            }
            for source, target in quiver.arrows
        ],
    }
    _write_output(payload, args.out)
    return 0


def _cmd_catalog(args) -> int:
    params = _read_json(args.input)
    a = serialize.algebra_from_json(params["A"])
    field = a.field
    if args.family == "ncd":
        f = serialize.kmatrix_from_json(field, params["f"], "f")
        delta = serialize.kmatrix_from_json(field, params["delta"], "delta")
        candidate = catalog.make_ncd(a, f, delta)
        conditions = catalog.ncd_conditions(a, f, delta)
    elif args.family == "qdup":
        f = serialize.kmatrix_from_json(field, params["f"], "f")
        delta = serialize.kmatrix_from_json(field, params["delta"], "delta")
        alpha, beta = params["alpha"], params["beta"]
        candidate = catalog.make_quantum_duplicate(a, alpha, beta, f, delta)
        conditions = catalog.qdup_conditions(a, alpha, beta, f, delta)
    elif args.family == "kn":
        n = int(params["n"])
        grid = params["gamma"]
        candidate = catalog.make_kn(a, n, grid)
        conditions = catalog.kn_conditions(a, n, candidate.family.gamma)
    elif args.family == "trunc":
        n = int(params["n"])
        if "first_row" in params:
            candidate = catalog.truncated_from_first_row(a, n, params["first_row"])
        else:
            candidate = catalog.make_truncated(a, n, params["gamma"])
        conditions = catalog.truncated_conditions(a, n, candidate.family.gamma)
    else:  # pragma: no cover - argparse restricts choices
        raise TwistKitError(f"unknown family {args.family}")
    verdict = twisting.check_conditions_direct(candidate.family)
    payload = {
        "candidate": serialize.candidate_to_json(candidate),
        "verdict": serialize.report_to_json(verdict),
        "family_conditions": serialize.report_to_json(conditions),
    }
    _write_output(payload, args.out)
    return 0 if verdict.ok else 1


def _space_from_args(args) -> search.SearchSpace:
    a = serialize.algebra_from_json(_read_json(args.A))
    b = serialize.algebra_from_json(_read_json(args.B))
    return search.SearchSpace(a, b)


def _cmd_enumerate(args) -> int:
    space = _space_from_args(args)
    stop = args.to if args.to is not None else None
    accepted = search.enumerate_space(space, checker=args.checker, start=args.start, stop=stop)
    lines = []
    for idx in accepted:
        gamma = space.gamma_of_index(idx)
        lines.append(
            serialize.dumps(
                {"index": idx, "gamma": serialize.array_to_json(space.A.field, gamma)},
                compact=True,
            )
        )
    text = "".join(line + "\n" for line in lines)
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0


def _cmd_cross_validate(args) -> int:
    space = _space_from_args(args)
    stop = args.to if args.to is not None else None
    report = search.cross_validate(space, start=args.start, stop=stop)
    _write_output(serialize.report_to_json(report), args.out)
    return _exit_for(report)


# -- parser -------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistkit",
        description="Exact verification and construction of twisting maps and "
        "twisted tensor products of finite-dimensional algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        return p

    p = add("validate-algebra", _cmd_validate_algebra, "check structure constants")
    p.add_argument("input", help="algebra JSON file")

    p = add("check-twisting", _cmd_check_twisting, "run twisting checkers on a candidate")
    p.add_argument("input", help="candidate JSON file")
    p.add_argument(
        "--checker",
        choices=["direct", "rho", "phi", "rep", "oracle", "all"],
        default="all",
    )

    p = add("build-product", _cmd_build_product, "build the twisted tensor product")
    p.add_argument("input", help="candidate JSON file")

    p = add("represent", _cmd_represent, "emit the matrix representations")
    p.add_argument("input", help="candidate JSON file")

    p = add("rebase", _cmd_rebase, "rewrite a candidate in a new carrier basis")
    p.add_argument("input", help="candidate JSON file")
    p.add_argument("--matrix", required=True, help="JSON file with the new-basis columns")

    p = add("extend", _cmd_extend, "check the extension criterion on a product carrier")
    p.add_argument("input", help='JSON file {"psi": candidate, "n": cut} or candidate with --n')
    p.add_argument("--n", type=int, default=None, help="cut position (dim of the first factor)")
    p.add_argument("--lemma-stage", action="store_true", help="stop before the corner-vanishing strengthening")
    p.add_argument("--blocks", action="store_true", help="include the block dump")

    p = add("quiver", _cmd_quiver, "quiver and representation of a K^n candidate")
    p.add_argument("input", help="candidate JSON file")

    p = add("catalog", _cmd_catalog, "build a stock family candidate")
    p.add_argument("family", choices=["ncd", "qdup", "kn", "trunc"])
    p.add_argument("input", help="family parameter JSON file")

    p = add("enumerate", _cmd_enumerate, "enumerate accepted candidates over a prime field")
    p.add_argument("--A", required=True, help="algebra JSON file for A")
    p.add_argument("--B", required=True, help="algebra JSON file for B")
    p.add_argument("--checker", choices=["direct", "rep", "oracle", "all"], default="direct")
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--to", dest="to", type=int, default=None)

    p = add("cross-validate", _cmd_cross_validate, "verdict unanimity of the three routes")
    p.add_argument("--A", required=True, help="algebra JSON file for A")
    p.add_argument("--B", required=True, help="algebra JSON file for B")
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--to", dest="to", type=int, default=None)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (TwistKitError, ValueError, IndexError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
