"""Command-line driver: ``jacreal realize|jnf|smf|verify FILE [--json] [--seed N]``.

Exit codes: 0 all checks pass, 1 usage or parse error, 2 a verification
check failed, 3 an internal invariant was violated.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import linalg
from .errors import InvariantViolation, JacrealError
from .factor import factor_seed
from .field import Field
from .jnf import jacobson_normal_form
from .mcmillan import smith_mcmillan
from .polymat import PolyMatrix
from .problem import KINDS, ProblemFile, format_expr, parse_problem
from .ratfun import partial_fractions
from .realize import Realization, realize_full
from .verify import is_minimal, transfer_of

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_INTERNAL = 0, 1, 2, 3


def _scalar(field: Field, x):
    return int(x) if field.is_prime_field else str(x)


def _matrix_json(field: Field, a: np.ndarray) -> list:
    return [[_scalar(field, x) for x in row] for row in a]


def _polymat_json(m: PolyMatrix) -> list:
    return [[str(x) for x in row] for row in m.entries]


def _field_name(field: Field) -> str:
    return f"gf {field.modulus}" if field.is_prime_field else "q"


def _format_matrix(rows: list[list]) -> list[str]:
    if not rows or not rows[0]:
        return ["  (empty)"]
    cells = [[str(x) for x in row] for row in rows]
    width = max(len(c) for row in cells for c in row)
    return ["  " + " ".join(c.rjust(width) for c in row) for row in cells]


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _realization_report(r: Realization) -> dict:
    return {
        "field": _field_name(r.field),
        "dimension": r.dimension,
        "blocks": [[str(p), k] for p, k in r.blocks],
        "F": _matrix_json(r.field, r.F),
        "G": _matrix_json(r.field, r.G),
        "H": _matrix_json(r.field, r.H),
    }


def _cmd_realize(problem: ProblemFile) -> tuple[dict, int]:
    r = realize_full(problem.matrix)
    report = _realization_report(r)
    transfer_ok = transfer_of(r) == problem.matrix
    minimal = is_minimal(r)
    report["transfer_check"] = _verdict(transfer_ok)
    report["minimality"] = _verdict(minimal.minimal)
    if not (transfer_ok and minimal.minimal):
        raise InvariantViolation("realize produced a realization that fails verification")
    return report, EXIT_OK


def _cmd_verify(problem: ProblemFile) -> tuple[dict, int]:
    if problem.states is None:
        raise JacrealError("verify needs a 'states' line with F, G, H entries")
    r = Realization(F=problem.F, G=problem.G, H=problem.H, field=problem.field)
    transfer_ok = transfer_of(r) == problem.matrix
    minimal = is_minimal(r)
    report = _realization_report(r)
    del report["blocks"]
    report.update(
        transfer_check=_verdict(transfer_ok),
        minimality=_verdict(minimal.minimal),
        controllability_rank=minimal.controllability_rank,
        observability_rank=minimal.observability_rank,
    )
    return report, EXIT_OK if transfer_ok and minimal.minimal else EXIT_FAIL


def _cmd_jnf(problem: ProblemFile) -> tuple[dict, int]:
    f = problem.field
    a = problem.scalar_matrix()
    jf = jacobson_normal_form(f, a)
    similar = linalg.equal(linalg.matmul(f, a, jf.S), linalg.matmul(f, jf.S, jf.J)) and (
        linalg.det(f, jf.S) != 0
    )
    report = {
        "field": _field_name(f),
        "dimension": a.shape[0],
        "elementary_divisors": [[str(p), k] for p, k in jf.elementary_divisors],
        "J": _matrix_json(f, jf.J),
        "S": _matrix_json(f, jf.S),
        "similarity_check": _verdict(similar),
    }
    if not similar:
        raise InvariantViolation("A S != S J")
    return report, EXIT_OK


def _cmd_smf(problem: ProblemFile) -> tuple[dict, int]:
    comps = []
    ok = True
    for c in partial_fractions(problem.matrix):
        smf = smith_mcmillan(c)
        good = smf.reconstruct() == c.component
        ok = ok and good
        comps.append(
            {
                "prime": str(c.prime),
                "sigma": [format_expr(d) for d in _full_diagonal(smf)],
                "exponents": list(smf.exponents),
                "U": _polymat_json(smf.U),
                "V": _polymat_json(smf.V),
                "reconstruction_check": _verdict(good),
            }
        )
    if not ok:
        raise InvariantViolation("U Sigma V^T does not reproduce a component")
    return {"field": _field_name(problem.field), "components": comps}, EXIT_OK


def _full_diagonal(smf) -> list:
    sigma = smf.sigma()
    return [sigma.entries[i][i] for i in range(min(sigma.rows, sigma.cols))]


COMMANDS = {"realize": _cmd_realize, "jnf": _cmd_jnf, "smf": _cmd_smf, "verify": _cmd_verify}


def render_text(command: str, report: dict) -> str:
    out = [f"field: {report['field']}"]
    if command == "smf":
        for comp in report["components"]:
            out.append(f"prime: {comp['prime']}")
            out.append("Sigma: diag(" + ", ".join(comp["sigma"]) + ")")
            out.append("U:")
            out.extend(_format_matrix(comp["U"]))
            out.append("V:")
            out.extend(_format_matrix(comp["V"]))
            out.append(f"reconstruction check: {comp['reconstruction_check']}")
        return "\n".join(out)
    out.append(f"dimension: {report['dimension']}")
    if command == "jnf":
        divs = ", ".join(f"({p})^{k}" for p, k in report["elementary_divisors"])
        out.append(f"elementary divisors: {divs}")
        out.append("J:")
        out.extend(_format_matrix(report["J"]))
        out.append("S:")
        out.extend(_format_matrix(report["S"]))
        out.append(f"similarity check: {report['similarity_check']}")
        return "\n".join(out)
    if "blocks" in report:
        out.append("blocks: [" + ", ".join(f"({p}, {k})" for p, k in report["blocks"]) + "]")
    for name in ("F", "G", "H"):
        out.append(f"{name}:")
        out.extend(_format_matrix(report[name]))
    out.append(f"transfer check: {report['transfer_check']}")
    out.append(f"minimality: {report['minimality']}")
    return "\n".join(out)


def run(command: str, problem: ProblemFile, as_json: bool = False, seed: int = 0) -> tuple[str, int]:
    """Execute ``command`` on a parsed problem; return the rendered report and exit code."""
    if problem.kind is not None and problem.kind != command:
        raise JacrealError(f"file declares problem '{problem.kind}' but command is '{command}'")
    with factor_seed(seed):
        report, code = COMMANDS[command](problem)
    text = json.dumps(report, indent=2) if as_json else render_text(command, report)
    return text, code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="jacreal", description="Minimal realizations in Jacobson normal form over GF(p) and Q."
    )
    ap.add_argument("command", choices=KINDS)
    ap.add_argument("file", help="problem file, or '-' for stdin")
    ap.add_argument("--json", action="store_true", help="emit a machine-readable report")
    ap.add_argument("--seed", type=int, default=0, help="seed of the factorizer's random source")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.file == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(args.file, "rb") as fh:
                data = fh.read()
        problem = parse_problem(data)
        text, code = run(args.command, problem, as_json=args.json, seed=args.seed)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (JacrealError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
