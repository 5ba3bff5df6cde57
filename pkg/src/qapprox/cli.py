"""Command-line surface: build approximants, run growth scans, emit
approximant-sequence and transport tables.

Outputs are plain files (JSON reports, flat CSV) and are byte-identical for
identical configurations.  Exit codes: 0 success, 2 input error, 3 domain
error (pole or range), 4 internal construction failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .candidates import Candidate, builtin_candidate, ratfunc_candidate, truncation_candidate
from .exact import (
    ConstructionError,
    DomainError,
    InputError,
    Interval,
    format_rational,
    parse_rational,
)
from .growth import GrowthReport, contradiction_report, log_spaced_ints
from .liouville import (
    K_MAX,
    liouville_constant_enclosure,
    liouville_constant_seq,
    maillet_transform,
    omega_sequence,
)
from .pade import build_pade, series_of_R
from .ratfunc import parse_ratfunc


@dataclass
class RunConfig:
    command: str
    input_path: Optional[Path]
    builtin: Optional[str]
    t: Optional[int]
    m_min: int
    m_max: int
    m_points: int
    eps_exp: Optional[int]
    k_max: int
    f_expr: Optional[str]
    out_dir: Path
    precision: int

    def validate(self) -> None:
        if self.t is not None and self.t < 1:
            raise InputError("t must be >= 1")
        if self.m_min < 2:
            raise InputError("m-min must be >= 2")
        if self.m_max < self.m_min:
            raise InputError("m range must be ascending")
        if self.m_points < 1:
            raise InputError("m-points must be >= 1")
        if self.precision < 8:
            raise InputError("precision must be at least 8 digits")
        self.out_dir.mkdir(parents=True, exist_ok=True)


def _float_cell(x) -> str:
    return f"{float(x):.12g}"


def _write_text(path: Path, text: str) -> None:
    path.write_text(text, encoding="utf-8")


def _write_json(path: Path, payload: dict) -> None:
    _write_text(path, json.dumps(payload, indent=2) + "\n")


# ---------------------------------------------------------------------------
# Series input files
# ---------------------------------------------------------------------------

def read_series_file(path: Path) -> dict:
    """Parse {"t": int, "a0": optional rational, "coeffs": [rationals],
    "f": optional expression} with position diagnostics on bad JSON."""
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"{path}: malformed input at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    if "coeffs" not in doc or not isinstance(doc["coeffs"], list):
        raise InputError(f'{path}: missing "coeffs" list')
    out = {
        "t": doc.get("t"),
        "a0": parse_rational(doc["a0"]) if "a0" in doc else Fraction(0),
        "coeffs": [parse_rational(c) for c in doc["coeffs"]],
        "f": doc.get("f"),
    }
    if out["t"] is not None and (not isinstance(out["t"], int) or out["t"] < 1):
        raise InputError(f'{path}: "t" must be a positive integer')
    return out


def _resolve_t(config: RunConfig, file_t: Optional[int]) -> int:
    t = config.t if config.t is not None else file_t
    if t is None:
        raise InputError("t is required (flag --t or input file field)")
    if t < 1:
        raise InputError("t must be >= 1")
    return t


def _candidate_from_doc(doc: dict, t: int, name: str) -> Candidate:
    n_coeffs = 2 * t
    coeffs = [doc["a0"]] + doc["coeffs"]
    if doc["f"] is not None:
        rf = parse_ratfunc(doc["f"])
        cand = ratfunc_candidate(rf, max(n_coeffs, len(coeffs) - 1), name=str(doc["f"]))
        for i, c in enumerate(coeffs):
            if cand.coeffs[i] != c:
                raise InputError(
                    f"coefficient a_{i} = {format_rational(c)} disagrees with "
                    f"the designated evaluator ({format_rational(cand.coeffs[i])})"
                )
        return cand
    if len(doc["coeffs"]) < 2 * t:
        raise InputError(
            f"expected {2 * t} coefficients, got {len(doc['coeffs'])}"
        )
    return truncation_candidate(tuple(coeffs), name=name)


# ---------------------------------------------------------------------------
# pade
# ---------------------------------------------------------------------------

def cmd_pade(config: RunConfig) -> int:
    if config.input_path is not None:
        doc = read_series_file(config.input_path)
        t = _resolve_t(config, doc["t"])
        if len(doc["coeffs"]) < 2 * t:
            raise InputError(
                f"expected {2 * t} coefficients, got {len(doc['coeffs'])}"
            )
        a = doc["coeffs"][: 2 * t]
        a0 = doc["a0"]
    elif config.builtin is not None:
        t = _resolve_t(config, None)
        cand = builtin_candidate(config.builtin, 2 * t)
        a = list(cand.coeff_prefix(t))
        a0 = cand.coeffs[0]
    else:
        raise InputError("pade needs --input FILE or --builtin NAME")

    pade = build_pade(a, t, a0=a0)
    matched = 2 * t - pade.j
    expansion = series_of_R(pade, matched)
    f_poly = pade.F
    verified = all(
        expansion.coeff(i) == f_poly.coeff(i) + (pade.a0 if i == 0 else 0)
        for i in range(matched + 1)
    )

    def poly_payload(p) -> dict:
        return {"coeffs": [format_rational(c) for c in p.coeffs], "text": str(p)}

    payload = {
        "t": pade.t,
        "j": pade.j,
        "a0": format_rational(pade.a0),
        "Q": poly_payload(pade.Q),
        "P": poly_payload(pade.P),
        "S": poly_payload(pade.S),
        "matched_through_degree": matched,
        "order_verified": verified,
    }
    if pade.S.is_zero():
        payload["note"] = "R == F exactly"
    out = config.out_dir / "pade.json"
    _write_json(out, payload)
    print(f"t={pade.t} j={pade.j} Q = {pade.Q}")
    print(f"wrote {out}")
    return 0


# ---------------------------------------------------------------------------
# harness
# ---------------------------------------------------------------------------

HARNESS_CSV_HEADER = "M,f_lo,f_hi,R,gap_lo,gap_hi,den_f,theta_lo,theta_hi"


def harness_csv_lines(report: GrowthReport) -> list[str]:
    lines = [HARNESS_CSV_HEADER]
    for row in report.rows:
        if row.skipped:
            continue
        cells = [
            str(row.M),
            format_rational(row.f_bounds.lo),
            format_rational(row.f_bounds.hi),
            format_rational(row.r_value),
            format_rational(row.gap.lo),
            format_rational(row.gap.hi),
            "" if row.den_f is None else str(row.den_f),
            format_rational(row.theta.lo),
            format_rational(row.theta.hi),
        ]
        lines.append(",".join(cells))
    lines.append("# summary")
    lines.append(f"# t,{report.t}")
    lines.append(f"# j,{report.j}")
    gap_fit = report.fitted_gap_exponent
    lines.append(
        "# gap_exponent," + ("" if gap_fit is None else _float_cell(gap_fit.slope))
    )
    lines.append(
        "# gap_exponent_uncertainty,"
        + ("" if gap_fit is None else _float_cell(gap_fit.uncertainty))
    )
    den_fit = report.fitted_den_exponent
    lines.append(
        "# den_exponent," + ("" if den_fit is None else _float_cell(den_fit.slope))
    )
    lines.append(f"# verdict,{report.verdict}")
    lines.append(f"# m_star,{'' if report.m_star is None else report.m_star}")
    return lines


def cmd_harness(config: RunConfig) -> int:
    if config.builtin is not None:
        t = _resolve_t(config, None)
        cand = builtin_candidate(config.builtin, 2 * t)
    else:
        doc = read_series_file(config.input_path)
        t = _resolve_t(config, doc["t"])
        cand = _candidate_from_doc(doc, t, name=config.input_path.stem)
    ms = log_spaced_ints(config.m_min, config.m_max, config.m_points)
    eps_rule = None
    if config.eps_exp is not None:
        exp = config.eps_exp
        eps_rule = lambda m: Fraction(1, m**exp)  # noqa: E731
    report = contradiction_report(cand, t, ms, eps_rule)

    csv_path = config.out_dir / "harness.csv"
    _write_text(csv_path, "\n".join(harness_csv_lines(report)) + "\n")
    json_path = config.out_dir / "report.json"
    _write_json(json_path, report.to_dict())
    print(f"candidate={report.candidate} t={report.t} j={report.j} verdict={report.verdict}")
    if report.m_star is not None:
        print(f"collision at sampled M* = {report.m_star}")
    print(f"wrote {csv_path} and {json_path}")
    return 0


# ---------------------------------------------------------------------------
# liouville / maillet
# ---------------------------------------------------------------------------

SEQ_CSV_HEADER = "k,p,q,gap_lo,gap_hi,omega_lo,omega_hi"


def _seq_csv_lines(seq, omegas) -> list[str]:
    lines = [SEQ_CSV_HEADER]
    for row, om in zip(seq.rows, omegas):
        lines.append(
            ",".join(
                [
                    str(row.k),
                    str(row.p),
                    str(row.q),
                    format_rational(row.gap.lo),
                    format_rational(row.gap.hi),
                    _float_cell(om.omega_lo),
                    _float_cell(om.omega_hi),
                ]
            )
        )
    return lines


def cmd_liouville(config: RunConfig) -> int:
    if config.k_max > K_MAX:
        raise DomainError(f"k-max beyond desk scale (max {K_MAX})")
    seq = liouville_constant_seq(config.k_max)
    omegas = omega_sequence(seq, dps=config.precision)
    path = config.out_dir / "liouville.csv"
    _write_text(path, "\n".join(_seq_csv_lines(seq, omegas)) + "\n")
    print(f"wrote {path} ({len(seq.rows)} rows)")
    return 0


def cmd_maillet(config: RunConfig) -> int:
    if config.f_expr is None:
        raise InputError("maillet needs --f EXPR")
    if config.k_max > K_MAX:
        raise DomainError(f"k-max beyond desk scale (max {K_MAX})")
    f = parse_ratfunc(config.f_expr)
    if f.is_constant():
        raise InputError("non-constant rational function required")
    seq = liouville_constant_seq(config.k_max)
    # a 3-term enclosure of the constant already localizes the hull to
    # ~1e-24; using more terms only bloats the certified endpoints
    enclosure = liouville_constant_enclosure(min(config.k_max, 3))
    transformed = maillet_transform(f, seq, enclosure)
    omegas = omega_sequence(transformed, dps=config.precision)
    path = config.out_dir / "maillet.csv"
    _write_text(path, "\n".join(_seq_csv_lines(transformed, omegas)) + "\n")
    dropped = len(seq.rows) - len(transformed.rows)
    note = f", {dropped} dropped" if dropped else ""
    print(f"wrote {path} ({len(transformed.rows)} rows{note})")
    return 0


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qapprox",
        description="Exact rational approximants, growth measurements, and "
        "approximation-exponent tables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument(
            "--precision",
            type=int,
            default=64,
            metavar="DIGITS",
            help="decimal digits for log-based estimates",
        )

    p_pade = sub.add_parser("pade", help="build one approximant from a series file")
    p_pade.add_argument("--t", type=int)
    src = p_pade.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", type=Path)
    src.add_argument("--builtin")
    add_common(p_pade)

    p_har = sub.add_parser("harness", help="measure gap and denominator growth")
    p_har.add_argument("--t", type=int)
    src = p_har.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", type=Path)
    src.add_argument("--builtin")
    p_har.add_argument("--m-min", type=int, default=10)
    p_har.add_argument("--m-max", type=int, default=10_000)
    p_har.add_argument("--m-points", type=int, default=40)
    p_har.add_argument(
        "--eps-exp",
        type=int,
        help="override the error budget rule to 1/M^EXP",
    )
    add_common(p_har)

    p_lio = sub.add_parser("liouville", help="built-in approximant sequence table")
    p_lio.add_argument("--k-max", type=int, default=5)
    add_common(p_lio)

    p_mai = sub.add_parser("maillet", help="transport the sequence through f")
    p_mai.add_argument("--f", required=True, metavar="EXPR")
    p_mai.add_argument("--k-max", type=int, default=5)
    add_common(p_mai)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(
        command=args.command,
        input_path=getattr(args, "input", None),
        builtin=getattr(args, "builtin", None),
        t=getattr(args, "t", None),
        m_min=getattr(args, "m_min", 10),
        m_max=getattr(args, "m_max", 10_000),
        m_points=getattr(args, "m_points", 40),
        eps_exp=getattr(args, "eps_exp", None),
        k_max=getattr(args, "k_max", 5),
        f_expr=getattr(args, "f", None),
        out_dir=Path(args.out),
        precision=args.precision,
    )
    config.validate()
    return config


COMMANDS = {
    "pade": cmd_pade,
    "harness": cmd_harness,
    "liouville": cmd_liouville,
    "maillet": cmd_maillet,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        return COMMANDS[config.command](config)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConstructionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
