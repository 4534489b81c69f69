"""Command-line front end.

Subcommands: validate | entropy | chain-basis | verify | catalog.  Input is
either a JSON problem file (--input) or a catalog family (--family with
--params).  Exit codes: 0 success, 1 semantic failure (validation or
verification failed), 2 unusable input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import catalog as cat
from .chain import (
    associated_polynomials,
    build_chain_basis,
    chain_basis_to_json,
    graded_projection_degrees,
    verify_homogeneous_independence,
)
from .divergence import (
    BoxGrid,
    InsufficientAcceptanceError,
    bowen_exponent_fit,
    brudnyi_ganzburg_check,
    verify_coefficient_decay,
)
from .filtration import NotUnipotentError, compute_filtration, slow_entropy
from .lie import check_abelian_unipotent, load_problem, validate

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


class SemanticError(Exception):
    """Input parsed fine but fails the mathematical checks."""


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def emit(obj, fmt: str, render_text):
    if fmt == "json":
        sys.stdout.write(canonical_json(obj))
    else:
        sys.stdout.write(render_text(obj))


def _parse_family_spec(family: str, params: list[str]) -> cat.ExampleSpec:
    if family == "direct_sum":
        if len(params) != 1:
            raise ValueError(
                "direct_sum takes one argument like "
                "'sl_first_row_restriction:3,2+strictly_upper_first_row:3,1'"
            )
        parts = []
        for chunk in params[0].split("+"):
            name, _, rest = chunk.partition(":")
            sub = [p for p in rest.split(",") if p]
            parts.append(_parse_family_spec(name.strip(), sub))
        return cat.ExampleSpec("direct_sum", tuple(parts))
    if family not in cat.FAMILY_INFO:
        raise ValueError(f"unknown family {family!r}; see the catalog subcommand")
    return cat.ExampleSpec(family, tuple(int(p) for p in params))


def _load_input(args) -> tuple:
    """Returns (algebra, u, spec-or-None)."""
    if bool(args.input) == bool(args.family):
        raise ValueError("give exactly one input source: --input or --family")
    if args.input:
        algebra, u = load_problem(args.input)
        return algebra, u, None
    spec = _parse_family_spec(args.family, args.params or [])
    algebra, u = cat.build_example(spec)
    return algebra, u, spec


def _violation_rows(violations) -> list[dict]:
    return [
        {"kind": v.kind, "where": list(v.where), "detail": v.detail}
        for v in violations
    ]


def _filtration_block(f) -> dict:
    return {"dims": list(f.dims), "m": f.m, "k": f.k}


def _dims_table(f) -> str:
    lines = ["level | dim", "------+----"]
    for i in range(f.m, -1, -1):
        lines.append(f"{i:5d} | {f.dims[i]:3d} {'*' * min(f.dims[i], 40)}")
    return "\n".join(lines)


def cmd_validate(args) -> int:
    algebra, u, spec = _load_input(args)
    structure = validate(algebra)
    subalgebra = check_abelian_unipotent(algebra, u)
    ok = not structure and not subalgebra
    report = {
        "algebra": {"dim": algebra.dim, "basis": list(algebra.basis_names)},
        "u": {"k": u.k},
        "structure_violations": _violation_rows(structure),
        "subalgebra_violations": _violation_rows(subalgebra),
        "ok": ok,
    }

    def text(rep) -> str:
        lines = [f"algebra dim {algebra.dim}, u dim {u.k}"]
        if rep["ok"]:
            lines.append("ok: antisymmetry, Jacobi, abelian ad-unipotent checks pass")
        else:
            for row in rep["structure_violations"]:
                lines.append(f"violation {row['kind']} at {row['where']} {row['detail']}")
            for row in rep["subalgebra_violations"]:
                lines.append(f"violation {row['kind']} at generators {row['where']}")
        return "\n".join(lines) + "\n"

    emit(report, args.format, text)
    return EXIT_OK if ok else EXIT_FAIL


def _entropy_report(algebra, u, f, spec) -> dict:
    e = slow_entropy(f)
    report = {
        "algebra": {
            "dim": algebra.dim,
            "name": spec.label() if spec is not None else "file input",
        },
        "u": {"k": u.k},
        "filtration": _filtration_block(f),
        "entropy": {
            "unnormalized": str(e.unnormalized_h),
            "normalized": str(e.normalized_h),
        },
    }
    if spec is not None:
        oracle = cat.oracle_entropy(spec)
        report["oracle"] = {
            "normalized": str(oracle),
            "match": oracle == e.normalized_h,
        }
    return report


def _checked_filtration(algebra, u, spec, args):
    # catalog algebras are correct by construction; files always get checked
    if spec is None:
        bad = validate(algebra)
        if bad:
            raise SemanticError(f"algebra fails validation: {len(bad)} violations")
    bad_u = check_abelian_unipotent(algebra, u)
    if bad_u:
        kinds = sorted({v.kind for v in bad_u})
        raise SemanticError(f"u is not abelian ad-unipotent: {', '.join(kinds)}")
    return compute_filtration(algebra, u)


def cmd_entropy(args) -> int:
    algebra, u, spec = _load_input(args)
    f = _checked_filtration(algebra, u, spec, args)
    report = _entropy_report(algebra, u, f, spec)

    def text(rep) -> str:
        lines = [
            f"algebra: {rep['algebra']['name']} (dim {rep['algebra']['dim']})",
            f"u: dim {rep['u']['k']}",
            _dims_table(f),
            f"entropy: {rep['entropy']['normalized']} "
            f"(unnormalized {rep['entropy']['unnormalized']})",
        ]
        if "oracle" in rep:
            lines.append(
                f"closed form: {rep['oracle']['normalized']} "
                f"({'match' if rep['oracle']['match'] else 'MISMATCH'})"
            )
        return "\n".join(lines) + "\n"

    emit(report, args.format, text)
    if "oracle" in report and not report["oracle"]["match"]:
        return EXIT_FAIL
    return EXIT_OK


def cmd_chain_basis(args) -> int:
    algebra, u, spec = _load_input(args)
    f = _checked_filtration(algebra, u, spec, args)
    cb = associated_polynomials(algebra, u, f, build_chain_basis(algebra, u, f))
    report = chain_basis_to_json(cb)

    def text(rep) -> str:
        lines = []
        for level in rep["levels"]:
            lines.append(f"level {level['level']}: {len(level['elements'])} elements")
            for entry in level["elements"]:
                poly = entry.get("poly", {})
                terms = ", ".join(f"{k}:{v}" for k, v in sorted(poly.items()))
                lines.append(
                    f"  alpha={entry['alpha']} word={entry['multidegree']} poly {{{terms}}}"
                )
        return "\n".join(lines) + "\n"

    emit(report, args.format, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    algebra, u, spec = _load_input(args)
    f = _checked_filtration(algebra, u, spec, args)
    e = slow_entropy(f)
    cb = associated_polynomials(algebra, u, f, build_chain_basis(algebra, u, f))
    r_list = [float(x) for x in args.r_list.split(",")]

    counts_ok = all(
        len(lv.elements) == f.dims[lv.index] for lv in cb.levels
    )
    degrees_ok = all(
        p.degree() == lv.index for lv in cb.levels for p in lv.polys
    )
    independence = verify_homogeneous_independence(cb)
    independence_ok = all(rec.ok for rec in independence)
    projections = graded_projection_degrees(algebra, u, f, cb)
    projections_ok = all(
        (rec.projection > rec.level and rec.is_zero)
        or (
            rec.projection <= rec.level
            and not rec.is_zero
            and rec.degree == rec.expected_degree
        )
        for rec in projections
    )
    decay = verify_coefficient_decay(
        algebra,
        u,
        cb,
        trials=args.trials,
        R_list=r_list,
        points_per_axis=args.grid,
        seed=args.seed,
    )
    bg_reports = []
    bg_ok = True
    box = BoxGrid(u.k, max(r_list), args.grid)
    for lv in cb.levels:
        for p in lv.polys:
            if p.degree() == 0:
                continue
            rep = brudnyi_ganzburg_check(p, box)
            bg_ok = bg_ok and rep["passed"]
            bg_reports.append(
                {"level": lv.index, "min_margin": rep["min_margin"], "passed": rep["passed"]}
            )
    h = float(e.unnormalized_h)
    fit = None
    try:
        fit = bowen_exponent_fit(
            algebra,
            u,
            f,
            cb,
            eta=args.eta,
            R_list=r_list,
            mc_samples=args.samples,
            points_per_axis=args.grid,
            seed=args.seed,
        )
        slope_ok = (
            h == 0 and abs(fit.slope) <= args.tolerance
        ) or (h > 0 and abs(fit.slope + h) / h <= args.tolerance)
        bowen = {
            "slope": fit.slope,
            "expected_slope": -h,
            "r_squared": fit.r_squared,
            "accepted": fit.details["accepted"],
            "mc_samples": fit.details["mc_samples"],
            "passed": slope_ok and fit.r_squared >= 0.98,
        }
    except InsufficientAcceptanceError as exc:
        bowen = {"error": str(exc), "passed": False}
    if args.csv and fit is not None:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write("log_R,log_volume\n")
            for r, lv in zip(fit.radii, fit.log_volumes):
                fh.write(f"{math.log(r)!r},{lv!r}\n")

    checks = {
        "level_counts": {"passed": counts_ok},
        "poly_degrees": {"passed": degrees_ok},
        "homogeneous_independence": {
            "passed": independence_ok,
            "records": [
                {"level": r.level, "alpha": r.alpha, "count": r.count, "rank": r.rank}
                for r in independence
            ],
        },
        "projection_degrees": {"passed": projections_ok},
        "coefficient_decay": decay,
        "brudnyi_ganzburg": {"passed": bg_ok, "polys": bg_reports},
        "bowen_fit": bowen,
    }
    passed = all(c["passed"] for c in checks.values())
    report = {
        "input": spec.label() if spec is not None else args.input,
        "entropy": {
            "unnormalized": str(e.unnormalized_h),
            "normalized": str(e.normalized_h),
        },
        "checks": checks,
        "passed": passed,
    }

    def text(rep) -> str:
        lines = [f"input: {rep['input']}  entropy {rep['entropy']['normalized']}"]
        for name, c in rep["checks"].items():
            lines.append(f"  {'PASS' if c['passed'] else 'FAIL'} {name}")
            if name == "coefficient_decay":
                lines.append(
                    f"         forward stability {c['forward_stability']:.3f}, "
                    f"reverse stability {c['reverse_stability']:.3f}"
                )
            if name == "bowen_fit" and "slope" in c:
                lines.append(
                    f"         slope {c['slope']:.3f} vs {c['expected_slope']:.1f}, "
                    f"r2 {c['r_squared']:.4f}, accepted {c['accepted']}"
                )
        lines.append("PASS" if rep["passed"] else "FAIL")
        return "\n".join(lines) + "\n"

    emit(report, args.format, text)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_catalog(args) -> int:
    if args.family:
        if args.family not in cat.FAMILY_INFO:
            raise ValueError(f"unknown family {args.family!r}")
        info = cat.FAMILY_INFO[args.family]
        report = {"family": args.family, **info}

        def text(rep) -> str:
            return (
                f"{rep['family']}\n"
                f"  params: {rep['params']}\n"
                f"  {rep['description']}\n"
                f"  normalized entropy: {rep['entropy']}\n"
            )

        emit(report, args.format, text)
        return EXIT_OK
    report = {
        "families": [
            {"family": name, **info} for name, info in sorted(cat.FAMILY_INFO.items())
        ]
    }

    def text(rep) -> str:
        lines = []
        for row in rep["families"]:
            lines.append(f"{row['family']:28s} {row['params']}")
            lines.append(f"{'':28s} {row['description']}; entropy {row['entropy']}")
        return "\n".join(lines) + "\n"

    emit(report, args.format, text)
    return EXIT_OK


def _add_input_options(sub):
    sub.add_argument("--input", help="JSON problem file with algebra and subalgebra")
    sub.add_argument("--family", help="catalog family name")
    sub.add_argument("--params", nargs="*", help="family parameters")
    sub.add_argument("--format", choices=["text", "json"], default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slowent",
        description="Polynomial slow-entropy invariants of abelian unipotent actions",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    _add_input_options(subs.add_parser("validate", help="structure and subalgebra checks"))
    _add_input_options(subs.add_parser("entropy", help="filtration and entropy value"))
    _add_input_options(
        subs.add_parser("chain-basis", help="chain basis with associated polynomials")
    )

    verify = subs.add_parser("verify", help="numeric divergence checks")
    _add_input_options(verify)
    verify.add_argument("--R-list", dest="r_list", default="4,8,16,32,64")
    verify.add_argument("--grid", type=int, default=9, help="points per grid axis")
    verify.add_argument("--samples", type=int, default=200_000, help="Monte-Carlo samples per radius")
    verify.add_argument("--trials", type=int, default=200, help="decay-test draws")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--eta", type=float, default=0.5, help="translated-norm threshold")
    verify.add_argument(
        "--tolerance", type=float, default=0.10, help="relative slope tolerance"
    )
    verify.add_argument("--csv", help="write (log R, log volume) pairs to this file")

    catalog_cmd = subs.add_parser("catalog", help="list example families")
    catalog_cmd.add_argument("--family", help="describe one family")
    catalog_cmd.add_argument("--format", choices=["text", "json"], default="text")
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "entropy": cmd_entropy,
    "chain-basis": cmd_chain_basis,
    "verify": cmd_verify,
    "catalog": cmd_catalog,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (SemanticError, NotUnipotentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
