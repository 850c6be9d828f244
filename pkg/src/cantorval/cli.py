"""Command-line front end.

Parses spec files (or inline JSON), runs classification, measure, gap, and
series computations, verifies certificates, and emits deterministic JSON,
plain text, or self-contained SVG. Exit codes are stable: 0 success,
1 verification failure, 2 parse/validation error, 3 hypothesis violation,
4 interval budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .classify import (
    VERDICT_CANTORVAL,
    Certificate,
    classify,
    verification_passed,
    verify_certificate,
)
from .construction import RatioSequence
from .diffsets import diff_approximation
from .errors import (
    AssumptionError,
    DepthBudgetError,
    SpecValidationError,
    VerificationError,
)
from .gapforest import gap_family, smallest_valid_base
from .rationals import format_rational, parse_rational
from .render import ascii_depth_stack, depth_stack, svg_depth_stack
from .series import (
    DoublingPattern,
    MultigeometricSeries,
    is_fast_convergent,
    kakeya_classify,
    multigeometric_form,
    ratios_from_series,
    series_from_pattern,
    series_from_ratios,
)

_COMMANDS = ("classify", "measure", "approx", "gaps", "series", "verify", "render", "examples")

_EXAMPLES = (
    {
        "k_rule": "2n",
        "period_bits": (0, 1),
        "period": ("7/15", "5/21"),
        "measure": "8/5",
    },
    {
        "k_rule": "3n",
        "period_bits": (0, 0, 1),
        "period": ("8/21", "11/24", "7/33"),
        "measure": "13/7",
    },
    {
        "k_rule": "2,3,5,6,...",
        "period_bits": (0, 1, 1),
        "period": ("25/51", "23/75", "17/69"),
        "measure": "26/17",
    },
)


def _load_input(spec: str | None) -> dict:
    """Accept a file path or inline JSON (anything starting with '{')."""
    if spec is None:
        raise SpecValidationError("this command needs --spec")
    raw = spec.strip()
    if raw.startswith("{"):
        source, origin = raw, "inline spec"
    else:
        try:
            source = Path(spec).read_text(encoding="utf-8")
        except OSError as exc:
            raise SpecValidationError(f"cannot read spec file {spec}: {exc}") from exc
        origin = spec
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise SpecValidationError(f"{origin}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecValidationError(f"{origin}: top-level JSON must be an object")
    return data


def _lambda_spec(data: dict) -> RatioSequence:
    if "lambda" not in data:
        raise SpecValidationError('expected a top-level "lambda" key')
    return RatioSequence.from_json(data["lambda"])


def _resolve_cli_budget(args) -> int | None:
    if args.budget is not None:
        if args.budget < 1:
            raise SpecValidationError("--budget must be >= 1")
        return args.budget
    env = os.environ.get("CANTORVAL_BUDGET")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise SpecValidationError(
                f"CANTORVAL_BUDGET must be an integer, got {env!r}"
            ) from None
        if value < 1:
            raise SpecValidationError("CANTORVAL_BUDGET must be >= 1")
        return value
    return None


def _depth(args, default: int) -> int:
    depth = default if args.depth is None else args.depth
    if depth < 0:
        raise SpecValidationError("--depth must be >= 0")
    return depth


def _cert_text(cert: Certificate) -> str:
    lines = [f"verdict: {cert.verdict}", f"rule: {cert.rule}"]
    if cert.measure is not None:
        lines.append(f"measure: {format_rational(cert.measure)}")
    if cert.base is not None:
        lines.append(f"k0: {cert.base}")
    if cert.residuals is not None:
        worst = max((abs(e.value) for e in cert.residuals), default=Fraction(0))
        lines.append(f"residuals: {len(cert.residuals)} checked, largest |value| {worst}")
    if cert.stable_depth is not None:
        lines.append(f"stable_depth: {cert.stable_depth}")
    if cert.report is not None:
        for row in cert.report:
            lines.append(
                f"depth {row.depth}: measure {format_rational(row.measure)}, "
                f"{row.gap_count} gaps"
            )
    return "\n".join(lines) + "\n"


def _cmd_classify(args, budget):
    cert = classify(_lambda_spec(_load_input(args.spec)), base=args.k0, budget=budget)
    return cert.to_json(), _cert_text(cert), None, 0


def _cmd_measure(args, budget):
    cert = classify(_lambda_spec(_load_input(args.spec)), base=args.k0, budget=budget)
    if cert.measure is None:
        raise AssumptionError(
            f"no exact measure available (verdict {cert.verdict}); the closed "
            "form needs every cover equation to vanish with k0 = 0"
        )
    payload = {"verdict": cert.verdict, "measure": format_rational(cert.measure)}
    return payload, format_rational(cert.measure) + "\n", None, 0


def _cmd_approx(args, budget):
    seq = _lambda_spec(_load_input(args.spec))
    union = diff_approximation(seq, _depth(args, 4), budget)
    payload = {
        "depth": _depth(args, 4),
        "count": len(union.parts),
        "measure": format_rational(union.measure),
        "parts": union.to_json(),
    }
    text = "".join(f"[{lo}, {hi}]\n" for lo, hi in union.to_json())
    return payload, text, None, 0


def _cmd_gaps(args, budget):
    seq = _lambda_spec(_load_input(args.spec))
    base = smallest_valid_base(seq) if args.k0 is None else args.k0
    levels = _depth(args, 3)
    family = gap_family(seq, (), levels, base)
    payload = family.to_json(seq)
    lines = [f"k0: {base}"]
    for n, gaps in family.levels:
        lines.append(f"level {n}: {len(gaps)} gaps")
    return payload, "\n".join(lines) + "\n", None, 0


def _cmd_series(args, budget):
    data = _load_input(args.spec)
    kinds = set(data) & {"lambda", "series", "k"}
    if len(kinds) != 1:
        raise SpecValidationError(
            'input must contain exactly one of "lambda", "series", or "k"'
        )
    kind = kinds.pop()

    if kind == "lambda":
        seq = RatioSequence.from_json(data["lambda"])
        series = series_from_ratios(seq)
        payload = {
            "input": {"lambda": seq.to_json()},
            "series": series.to_json(),
            "total": format_rational(series.total),
            "kakeya": kakeya_classify(series),
        }
    elif kind == "series":
        series = MultigeometricSeries.from_json(data["series"])
        fast = is_fast_convergent(series)
        payload = {
            "input": {"series": series.to_json()},
            "kakeya": kakeya_classify(series),
            "total": format_rational(series.total),
            "lambda": ratios_from_series(series).to_json() if fast else None,
        }
    else:
        pattern = DoublingPattern.from_json(data["k"])
        series, seq, cert = series_from_pattern(pattern)
        diff_measure = series.total * cert.measure
        if diff_measure != 3:
            raise VerificationError(
                f"difference-set measure of a doubling pattern must be 3, got {diff_measure}"
            )
        form = None
        if not pattern.prefix_bits:
            mg = multigeometric_form(pattern)
            form = {
                "epsilons": list(mg.epsilons),
                "ratio": format_rational(mg.ratio),
                "measure": format_rational(mg.measure),
            }
        payload = {
            "input": {"k": pattern.to_json()},
            "series": series.to_json(),
            "lambda": seq.to_json(),
            "verdict": cert.verdict,
            "measure": format_rational(cert.measure),
            "difference_measure": format_rational(diff_measure),
            "multigeometric": form,
        }

    text = "".join(
        f"{key}: {json.dumps(value, sort_keys=True)}\n" for key, value in sorted(payload.items())
    )
    return payload, text, None, 0


def _cmd_verify(args, budget):
    cert = Certificate.from_json(_load_input(args.spec))
    checks = verify_certificate(cert, depth=_depth(args, 6), budget=budget)
    passed = verification_passed(checks)
    payload = {"passed": passed, "checks": [c.to_json() for c in checks]}
    lines = [
        f"{'PASS' if c.passed else 'FAIL'} {c.name}" + (f" — {c.detail}" if c.detail else "")
        for c in checks
    ]
    lines.append("verification " + ("passed" if passed else "FAILED"))
    return payload, "\n".join(lines) + "\n", None, 0 if passed else 1


def _cmd_render(args, budget):
    seq = _lambda_spec(_load_input(args.spec))
    stack = depth_stack(seq, _depth(args, 5), budget)
    return stack.to_json(), ascii_depth_stack(stack), svg_depth_stack(stack), 0


def _cmd_examples(args, budget):
    rows = []
    lines = []
    for entry in _EXAMPLES:
        pattern = DoublingPattern(prefix_bits=(), period_bits=entry["period_bits"])
        series, seq, cert = series_from_pattern(pattern)
        expected_period = tuple(parse_rational(x) for x in entry["period"])
        expected_measure = parse_rational(entry["measure"])
        if seq.prefix or seq.period != expected_period:
            raise VerificationError(
                f"pattern {entry['k_rule']} induced ratios {seq.to_json()}, "
                f"expected period {entry['period']}"
            )
        if cert.measure != expected_measure:
            raise VerificationError(
                f"pattern {entry['k_rule']} gave measure {cert.measure}, "
                f"expected {entry['measure']}"
            )
        direct = classify(RatioSequence(prefix=(), period=expected_period), budget=budget)
        if direct.verdict != VERDICT_CANTORVAL or direct.measure != expected_measure:
            raise VerificationError(
                f"direct classification of period {entry['period']} disagrees: "
                f"{direct.verdict} {direct.measure}"
            )
        if series.total * cert.measure != 3:
            raise VerificationError(
                f"difference-set measure for pattern {entry['k_rule']} is not 3"
            )
        rows.append(
            {
                "k_rule": entry["k_rule"],
                "pattern": pattern.to_json(),
                "lambda_period": list(entry["period"]),
                "verdict": cert.verdict,
                "measure": entry["measure"],
                "difference_measure": "3",
            }
        )
        lines.append(
            f"k = {entry['k_rule']:<12} lambda period ({', '.join(entry['period'])})"
            f"  measure {entry['measure']}  difference-set measure 3"
        )
    return {"examples": rows}, "\n".join(lines) + "\n", None, 0


_HANDLERS = {
    "classify": _cmd_classify,
    "measure": _cmd_measure,
    "approx": _cmd_approx,
    "gaps": _cmd_gaps,
    "series": _cmd_series,
    "verify": _cmd_verify,
    "render": _cmd_render,
    "examples": _cmd_examples,
}

_HELP = {
    "classify": "decide the trichotomy and emit a certificate",
    "measure": "exact measure of the difference set",
    "approx": "difference-set approximation at a depth",
    "gaps": "persistent gap family by level",
    "series": "convert between ratio, series, and doubling-pattern forms",
    "verify": "recheck a certificate and its invariants",
    "render": "depth-stack picture of the difference set",
    "examples": "reproduce the three bundled examples end to end",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cantorval",
        description="Exact classification and measure of central Cantor set "
        "difference sets, with series and doubling-pattern conversions.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in _COMMANDS:
        p = sub.add_parser(name, help=_HELP[name])
        if name != "examples":
            p.add_argument("--spec", help="spec file path, or inline JSON starting with '{'")
        p.add_argument("--depth", type=int, help="construction depth / family levels")
        p.add_argument("--budget", type=int, help="max intervals per enumeration")
        p.add_argument("--k0", type=int, help="override the base split index")
        p.add_argument(
            "--format",
            choices=("json", "text", "svg"),
            help="output format (default json; render defaults to svg)",
        )
        p.add_argument("--out", help="write output to this file instead of stdout")
    return parser


def _emit(args, payload, text: str, svg: str | None) -> None:
    fmt = args.format or ("svg" if args.command == "render" else "json")
    if fmt == "svg":
        if svg is None:
            raise SpecValidationError("--format svg is only available for render")
        body = svg
    elif fmt == "text":
        body = text
    else:
        body = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "spec", None) is None:
        args.spec = None
    try:
        budget = _resolve_cli_budget(args)
        payload, text, svg, status = _HANDLERS[args.command](args, budget)
        _emit(args, payload, text, svg)
        return status
    except SpecValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DepthBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except AssumptionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
