"""Command-line harness: case-file ingestion, verification, JSON reports,
and CSV grid dumps.

Exit codes for ``verify``: 0 pass, 1 parse/validation failure, 2 the
verification refused (roots in the circle guard band).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import (
    AmbiguousRootError,
    MomentReport,
    QuadratureError,
    SzegoReport,
    moments,
    pole_set,
    re_F_khrushchev,
    szego_verify,
    zero_count_trace,
)
from .opuc_core import (
    DEFAULT_GUARD_UNIT,
    GuardViolationError,
    VerblunskySequence,
    second_kind_polys,
    szego_polys,
)
from .schur import RationalFn, as_rational_F, recover_coefficients
from .poly import ComplexPoly

DEFAULT_VERIFY_TOL = 1e-8
DEFAULT_QUAD_TOL = 1e-11
DEFAULT_QUAD_MAX_POINTS = 1 << 20


class CaseError(ValueError):
    """A case file failed to parse or validate."""


@dataclass(frozen=True)
class CaseFile:
    seq: VerblunskySequence
    quad_tol: float
    quad_max_points: int
    label: str


def _complex_from_obj(obj, where: str) -> complex:
    try:
        return complex(float(obj["re"]), float(obj["im"]))
    except (TypeError, KeyError, ValueError) as exc:
        raise CaseError(f"{where}: expected an object with 're' and 'im'") from exc


def load_case(path: Path) -> CaseFile:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CaseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CaseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(raw, dict) or "alphas" not in raw:
        raise CaseError(f"{path}: case file must be an object with an 'alphas' list")
    alphas = [_complex_from_obj(a, f"alphas[{j}]") for j, a in enumerate(raw["alphas"])]
    guard = float(raw.get("guard_unit", DEFAULT_GUARD_UNIT))
    quad = raw.get("quad", {})
    tol = float(quad.get("tol", DEFAULT_QUAD_TOL))
    max_points = int(quad.get("max_points", DEFAULT_QUAD_MAX_POINTS))
    label = str(raw.get("label", Path(path).stem))
    try:
        seq = VerblunskySequence(alphas, guard)
    except GuardViolationError as exc:
        raise CaseError(f"{path}: index {exc.index} on unit circle") from exc
    except ValueError as exc:
        raise CaseError(f"{path}: {exc}") from exc
    return CaseFile(seq=seq, quad_tol=tol, quad_max_points=max_points, label=label)


def _cx(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def report_to_dict(report: SzegoReport) -> dict:
    return {
        "lhs": report.lhs,
        "rhs": report.rhs,
        "epsilon": report.epsilon,
        "log_integral": report.log_integral,
        "rel_error": report.rel_error,
        "quad_points": report.quad_points,
        "poles": [_cx(p) for p in report.poles],
        "warnings": list(report.warnings),
    }


def report_from_dict(data: dict) -> SzegoReport:
    return SzegoReport(
        lhs=data["lhs"],
        poles=tuple(complex(p["re"], p["im"]) for p in data["poles"]),
        epsilon=data["epsilon"],
        log_integral=data["log_integral"],
        rhs=data["rhs"],
        rel_error=data["rel_error"],
        quad_points=data["quad_points"],
        warnings=tuple(data["warnings"]),
    )


def moment_report_to_dict(report: MomentReport) -> dict:
    return {
        "moments": [_cx(c) for c in report.moments],
        "growth_rate": report.growth_rate,
        "predicted_rate": report.predicted_rate,
    }


def _emit(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _parse_complex_list(text: str, flag: str) -> list[complex]:
    out = []
    for k, part in enumerate(text.split(",")):
        try:
            out.append(complex(part.strip().replace(" ", "")))
        except ValueError as exc:
            raise CaseError(f"{flag}: entry {k} ({part!r}) is not a complex number") from exc
    return out


def cmd_verify(args: argparse.Namespace) -> int:
    case = load_case(args.input)
    report = szego_verify(case.seq, tol=args.quad_tol or case.quad_tol,
                          max_points=args.max_points or case.quad_max_points)
    payload = {"label": case.label, **report_to_dict(report)}
    _emit(payload)
    return 0 if report.rel_error < args.tol else 1


def cmd_grid(args: argparse.Namespace) -> int:
    case = load_case(args.input)
    seq = case.seq
    F = as_rational_F(seq)
    m = args.points
    lines = ["theta,reF_direct,reF_khrushchev,abs_diff"]
    for k in range(m):
        theta = 2.0 * np.pi * k / m
        z = complex(np.cos(theta), np.sin(theta))
        direct = (F.num(z) / F.den(z)).real
        formula = re_F_khrushchev(seq, seq.N, theta)
        lines.append(f"{theta:.17g},{direct:.17g},{formula:.17g},{abs(direct - formula):.17g}")
    text = "\n".join(lines) + "\n"
    if args.csv:
        Path(args.csv).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_poles(args: argparse.Namespace) -> int:
    case = load_case(args.input)
    _emit({"label": case.label, "poles": [_cx(p) for p in pole_set(case.seq)]})
    return 0


def cmd_polys(args: argparse.Namespace) -> int:
    case = load_case(args.input)
    phi, phistar = szego_polys(case.seq, args.n)
    psi, psistar = second_kind_polys(case.seq, args.n)
    _emit({
        "label": case.label,
        "n": args.n,
        "phi": [_cx(c) for c in phi.coeffs],
        "phi_star": [_cx(c) for c in phistar.coeffs],
        "psi": [_cx(c) for c in psi.coeffs],
        "psi_star": [_cx(c) for c in psistar.coeffs],
    })
    return 0


def cmd_moments(args: argparse.Namespace) -> int:
    case = load_case(args.input)
    m = args.m if args.m is not None else len(case.seq)
    report = moments(case.seq, m, args.order)
    _emit({"label": case.label, "m": m, **moment_report_to_dict(report)})
    return 0


def cmd_recover(args: argparse.Namespace) -> int:
    num = _parse_complex_list(args.num, "--num")
    den = _parse_complex_list(args.den, "--den")
    fstar = RationalFn(ComplexPoly(num), ComplexPoly(den))
    result = recover_coefficients(fstar, args.max_n)
    _emit({
        "alphas": [_cx(a) for a in result.alphas],
        "terminated": result.termination,
    })
    return 0


def cmd_trace(args: argparse.Namespace) -> int:
    case = load_case(args.input)
    n_max = args.n_max if args.n_max is not None else len(case.seq)
    rows = zero_count_trace(case.seq, n_max)
    _emit({
        "label": case.label,
        "rows": [{
            "k": r.k,
            "predicted": r.predicted,
            "actual": r.actual,
            "predicted_star": r.predicted_star,
            "actual_star": r.actual_star,
        } for r in rows],
    })
    return 0


def _run_batch_case(path: Path, tol: float) -> dict:
    entry: dict = {"file": path.name}
    try:
        case = load_case(path)
        entry["label"] = case.label
        report = szego_verify(case.seq, tol=case.quad_tol,
                              max_points=case.quad_max_points)
        entry["report"] = report_to_dict(report)
        entry["rel_error"] = report.rel_error
        entry["status"] = "pass" if report.rel_error < tol else "fail"
    except (CaseError, AmbiguousRootError, QuadratureError) as exc:
        entry["status"] = "fail"
        entry["error"] = str(exc)
    return entry


def cmd_batch(args: argparse.Namespace) -> int:
    case_dir = Path(args.dir)
    if not case_dir.is_dir():
        print(f"error: {case_dir} is not a directory", file=sys.stderr)
        return 1
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = sorted(case_dir.glob("*.json"))
    if args.jobs > 1 and len(paths) > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=args.jobs) as pool:
            entries = list(pool.map(lambda p: _run_batch_case(p, args.tol), paths))
    else:
        entries = [_run_batch_case(p, args.tol) for p in paths]
    for entry in entries:  # single collector writes all output files
        if "report" in entry:
            (out_dir / f"{Path(entry['file']).stem}.report.json").write_text(
                json.dumps(entry["report"], indent=2) + "\n")
    worst = max((e["rel_error"] for e in entries if "rel_error" in e), default=None)
    summary = {
        "pass": sum(1 for e in entries if e["status"] == "pass"),
        "fail": sum(1 for e in entries if e["status"] == "fail"),
        "worst_rel_error": worst,
        "cases": [{k: v for k, v in e.items() if k != "report"} for e in entries],
    }
    (out_dir / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    _emit(summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opuc",
        description="Verblunsky-sequence toolkit: Szego identity verification, "
                    "pole sets, moments, and inverse Schur recovery.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Verify the Szego identity for a case file")
    verify.add_argument("--input", type=Path, required=True, help="case JSON file")
    verify.add_argument("--tol", type=float, default=DEFAULT_VERIFY_TOL,
                        help="pass threshold on the relative error")
    verify.add_argument("--quad-tol", type=float, default=None,
                        help="override the case quadrature tolerance")
    verify.add_argument("--max-points", type=int, default=None,
                        help="override the case quadrature point cap")
    verify.set_defaults(func=cmd_verify)

    grid = sub.add_parser("grid", help="Dump Re F on a circle grid as CSV")
    grid.add_argument("--input", type=Path, required=True)
    grid.add_argument("--points", type=int, default=256)
    grid.add_argument("--csv", type=Path, default=None, help="output file (stdout if omitted)")
    grid.set_defaults(func=cmd_grid)

    poles = sub.add_parser("poles", help="Poles of F inside the unit disk")
    poles.add_argument("--input", type=Path, required=True)
    poles.set_defaults(func=cmd_poles)

    polys = sub.add_parser("polys", help="Recurrence polynomials at index n")
    polys.add_argument("--input", type=Path, required=True)
    polys.add_argument("--n", type=int, required=True)
    polys.set_defaults(func=cmd_polys)

    mom = sub.add_parser("moments", help="Moment sequence and growth rate")
    mom.add_argument("--input", type=Path, required=True)
    mom.add_argument("--order", type=int, default=20, help="number of moments J")
    mom.add_argument("--m", type=int, default=None, help="recurrence index (default: stored length)")
    mom.set_defaults(func=cmd_moments)

    rec = sub.add_parser("recover", help="Inverse Schur recovery from rational F_*")
    rec.add_argument("--num", type=str, required=True,
                     help="comma-separated numerator coefficients, constant first")
    rec.add_argument("--den", type=str, required=True,
                     help="comma-separated denominator coefficients, constant first")
    rec.add_argument("--max-n", type=int, required=True, dest="max_n")
    rec.set_defaults(func=cmd_recover)

    trace = sub.add_parser("trace", help="Zero-count recursion trace")
    trace.add_argument("--input", type=Path, required=True)
    trace.add_argument("--n-max", type=int, default=None, dest="n_max")
    trace.set_defaults(func=cmd_trace)

    batch = sub.add_parser("batch", help="Verify every case file in a directory")
    batch.add_argument("--dir", type=Path, required=True)
    batch.add_argument("--out", type=Path, required=True)
    batch.add_argument("--jobs", type=int, default=1)
    batch.add_argument("--tol", type=float, default=DEFAULT_VERIFY_TOL)
    batch.set_defaults(func=cmd_batch)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (AmbiguousRootError, QuadratureError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
