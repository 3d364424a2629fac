"""Command line: eval, certify, sweep and figure.

Exit codes: 0 every valid claim certified (or plain success), 1 a claim was
violated, 2 invalid parameters or arguments, 3 only inconclusive results,
4 output could not be written.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

from app.config import Settings, settings
from app.exceptions import InvalidParametersError, WrightError
from app.models.claim import ClaimId
from app.models.function_kind import FunctionKind
from app.schemas.evaluation import EvaluationResponse
from app.schemas.params import WrightParams
from app.schemas.report import ComplexPoint, ScanGrid
from app.services.bounds_catalog import bounds_catalog
from app.services.coefficient_stream import evaluate, get_stream
from app.services.figure_service import figure_service
from app.services.report_service import format_float, report_service
from app.services.verifier_service import verifier_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3
EXIT_IO = 4

EVAL_CSV_HEADER = "re_z,im_z,re_f,im_f,tail_bound"
FIGURE_DEFAULT_POINTS = 512
# list-valued flags whose value may start with "-" and still not be a plain number
DASH_VALUE_FLAGS = frozenset({"--z", "--radii", "--lambdas", "--ns"})


class UsageError(Exception):
    """Well-formed flags that do not fit the command."""


def parse_complex(text: str) -> complex:
    parts = [p.strip() for p in text.split(",")]
    if not 1 <= len(parts) <= 2:
        raise argparse.ArgumentTypeError(f"expected 're[,im]', got {text!r}")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're[,im]', got {text!r}")
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def parse_float_list(text: str) -> List[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of numbers, got {text!r}")


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="python -m app", description=settings.app_name)
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser, params: bool = True) -> None:
        if params:
            sub.add_argument("--lambda", dest="lam", type=float, required=True)
            sub.add_argument("--mu", type=float, required=True)
        sub.add_argument("--format", choices=["csv", "json", "svg"], default=None)
        sub.add_argument("--out", type=Path, default=None)
        sub.add_argument("--verbose", action="store_true")

    def grid_flags(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--boundary-points", type=int, default=None)
        sub.add_argument("--radii", type=parse_float_list, default=None)

    eval_cmd = commands.add_parser("eval", help="evaluate one function kind")
    eval_cmd.add_argument("--kind", choices=[k.value for k in FunctionKind], required=True)
    eval_cmd.add_argument("--z", type=parse_complex, default=None)
    eval_cmd.add_argument("--radii", type=parse_float_list, default=None)
    common(eval_cmd)

    certify_cmd = commands.add_parser("certify", help="certify one claim or all claims")
    certify_cmd.add_argument("--claim", default="all")
    certify_cmd.add_argument("--n", type=int, default=0)
    grid_flags(certify_cmd)
    common(certify_cmd)

    sweep_cmd = commands.add_parser("sweep", help="certify claims over sample parameter points")
    sweep_cmd.add_argument("--claim", default="all")
    sweep_cmd.add_argument("--lambdas", type=parse_float_list, default=None)
    sweep_cmd.add_argument("--ns", type=parse_int_list, default=None)
    grid_flags(sweep_cmd)
    common(sweep_cmd, params=False)

    figure_cmd = commands.add_parser("figure", help="image-domain curves of f and 1/f")
    figure_cmd.add_argument("--boundary-points", type=int, default=FIGURE_DEFAULT_POINTS)
    common(figure_cmd, params=False)
    return parser


def _grid(args: argparse.Namespace) -> ScanGrid:
    overrides = {}
    if args.boundary_points is not None:
        overrides["boundary_points"] = args.boundary_points
    if args.radii is not None:
        overrides["radii"] = args.radii
    return ScanGrid(**overrides)


def _claim_ids(text: str) -> Optional[List[ClaimId]]:
    if text == "all":
        return None
    try:
        return [ClaimId(text)]
    except ValueError:
        raise UsageError(f"unknown claim {text!r}; expected one of {[c.value for c in ClaimId]} or 'all'")


def _require_format(args: argparse.Namespace, allowed: Sequence[str]) -> None:
    if args.format is not None and args.format not in allowed:
        raise UsageError(f"{args.command} does not support --format {args.format}")


def run_eval(args: argparse.Namespace) -> str:
    _require_format(args, ("csv", "json"))
    kind = FunctionKind(args.kind)
    stream = get_stream(kind, WrightParams(lam=args.lam, mu=args.mu))
    zs = [args.z] if args.z is not None else [complex(r, 0.0) for r in (args.radii or settings.radii)]
    values = [(z, evaluate(stream, z)) for z in zs]

    if args.format == "json":
        responses = [
            EvaluationResponse(
                kind=kind,
                z=ComplexPoint.from_complex(z),
                value=ComplexPoint.from_complex(v.value),
                tail_bound=v.tail_bound,
                terms_used=v.terms_used,
                method=v.method.value,
                certified=v.certified,
            ).model_dump(mode="json")
            for z, v in values
        ]
        return json.dumps(responses, indent=2) + "\n"
    if args.format == "csv":
        rows = [EVAL_CSV_HEADER]
        for z, v in values:
            rows.append(",".join(format_float(x) for x in (z.real, z.imag, v.value.real, v.value.imag, v.tail_bound)))
        return "\n".join(rows) + "\n"
    return "".join(
        f"z={format_float(z.real)},{format_float(z.imag)} "
        f"value={format_float(v.value.real)},{format_float(v.value.imag)} "
        f"tail_bound={format_float(v.tail_bound)} terms={v.terms_used} method={v.method.value}\n"
        for z, v in values
    )


def _render_reports(args: argparse.Namespace, reports) -> str:
    _require_format(args, ("csv", "json"))
    if args.format == "json":
        return report_service.to_json(reports)
    if args.format == "csv":
        return report_service.to_csv(reports)
    return report_service.to_lines(reports)


def run_certify(args: argparse.Namespace):
    if args.n < 0:
        raise UsageError(f"--n must be >= 0, got {args.n}")
    _require_format(args, ("csv", "json"))
    ids = _claim_ids(args.claim)
    params = WrightParams(lam=args.lam, mu=args.mu)
    grid = _grid(args)
    if ids is None:
        reports = verifier_service.certify_all(params, args.n, grid)
    else:
        reports = [
            verifier_service.certify_row(row, params, args.n, grid)
            for row in bounds_catalog.repository.variants(ids[0])
        ]
    return _render_reports(args, reports), report_service.exit_status(reports)


def run_sweep(args: argparse.Namespace):
    _require_format(args, ("csv", "json"))
    reports = verifier_service.sweep(_claim_ids(args.claim), args.lambdas, args.ns, _grid(args))
    return _render_reports(args, reports), report_service.exit_status(reports)


def run_figure(args: argparse.Namespace) -> str:
    _require_format(args, ("csv", "svg"))
    rows = figure_service.samples(args.boundary_points)
    if args.format == "svg":
        return figure_service.to_svg(rows)
    return figure_service.to_csv(rows)


def _apply_environment() -> None:
    """Pick up WRIGHT_TERM_CAP changes made after import."""
    fresh = Settings()
    if fresh.term_cap != settings.term_cap:
        settings.term_cap = fresh.term_cap
        get_stream.cache_clear()


def _looks_negative(value: str) -> bool:
    return value.startswith("-") and (value[1:2].isdigit() or value[1:2] == ".")


def join_dash_values(argv: Sequence[str]) -> List[str]:
    """Rewrite `--z -0.3,0.4` as `--z=-0.3,0.4` so argparse does not read the value as an option."""
    joined: List[str] = []
    index = 0
    while index < len(argv):
        token = argv[index]
        following = argv[index + 1] if index + 1 < len(argv) else None
        if token in DASH_VALUE_FLAGS and following is not None and _looks_negative(following):
            joined.append(f"{token}={following}")
            index += 2
            continue
        joined.append(token)
        index += 1
    return joined


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(join_dash_values(sys.argv[1:] if argv is None else argv))
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if args.verbose else settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    status = EXIT_OK
    try:
        _apply_environment()
        if args.command == "eval":
            text = run_eval(args)
        elif args.command == "certify":
            text, status = run_certify(args)
        elif args.command == "sweep":
            text, status = run_sweep(args)
        else:
            text = run_figure(args)
    except InvalidParametersError as exc:
        hint = f" (requires {exc.predicate})" if exc.predicate else ""
        print(f"error: {exc}{hint}", file=sys.stderr)
        return EXIT_INVALID
    except (WrightError, ValidationError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    try:
        if args.out is not None:
            args.out.write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except OSError as exc:
        logger.error(f"Could not write output: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return status
