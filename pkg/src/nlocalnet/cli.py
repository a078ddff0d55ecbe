"""Command-line surface: build layouts, evaluate and maximize the witness,
run grid sweeps, and search classical models.

Exit codes: 0 success, 2 bad input, 3 expected violation absent, 4 resource
cap hit.  Angles are radians, or multiples of pi with a "pi" suffix
("0.25pi").  Reports are single-line JSON on stdout; sweeps are CSV.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Sequence

from .errors import ConfigurationError, InvalidParameterError, ResourceLimitError
from .inequality import VIOLATION_TOLERANCE, closed_form_smax, evaluate_S
from .lhv import DEFAULT_MAX_WORK, lhv_best_S, model_to_jsonable
from .optimize import optimize_alpha_equal, optimize_alpha_free, sweep
from .quantum import canonical_plan
from .topology import (NetworkConfig, build_chain, build_star, build_tree,
                       parse_config, serialize_config, validate)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_EXPECTATION = 3
EXIT_RESOURCE = 4


def parse_angle(token: str) -> float:
    """Parse an angle in radians; a trailing 'pi' multiplies by pi."""
    text = token.strip().lower()
    if not text:
        raise InvalidParameterError("empty angle value")
    factor = 1.0
    if text.endswith("pi"):
        factor = math.pi
        text = text[:-2].strip() or "1"
        if text in ("+", "-"):
            text += "1"
    try:
        return float(text) * factor
    except ValueError:
        raise InvalidParameterError(f"cannot parse angle {token!r}") from None


def parse_angle_list(text: str) -> list[float]:
    return [parse_angle(token) for token in text.split(",")]


def _nine_digits(value: float) -> float:
    return float(f"{value:.9g}")


def _load_topology(path: str) -> NetworkConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidParameterError(f"cannot read topology file: {exc}") from None
    config = parse_config(text)
    issues = validate(config)
    if issues:
        raise InvalidParameterError("invalid topology: " + "; ".join(issues))
    return config


def _emit(text: str, output: str | None) -> None:
    sys.stdout.write(text)
    if output:
        Path(output).write_text(text, encoding="utf-8")


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.kind == "chain":
        _require_params(args, "n")
        config = build_chain(args.n)
    elif args.kind == "star":
        _require_params(args, "n")
        config = build_star(args.n)
    elif args.kind == "tree":
        _require_params(args, "n", "m")
        config = build_tree(args.n, args.m)
    else:
        _require_params(args, "n", "m", "p", "edges")
        try:
            edges_doc = json.loads(args.edges)
        except json.JSONDecodeError as exc:
            raise InvalidParameterError(f"--edges is not valid JSON: {exc}") from None
        config = parse_config(json.dumps(
            {"n": args.n, "m": args.m, "p": args.p, "edges": edges_doc}))
        issues = validate(config)
        if issues:
            raise InvalidParameterError("invalid topology: " + "; ".join(issues))
    text = serialize_config(config)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _require_params(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name, None) is None:
            raise InvalidParameterError(
                f"--{name} is required for kind {args.kind!r}")


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        text = Path(args.topology).read_text(encoding="utf-8")
    except OSError as exc:
        raise InvalidParameterError(f"cannot read topology file: {exc}") from None
    issues = validate(parse_config(text))
    if issues:
        for issue in issues:
            print(issue)
        return EXIT_INPUT
    print("ok")
    return EXIT_OK


def _parsed_angles(config: NetworkConfig, args: argparse.Namespace,
                   want_alpha: bool) -> tuple[list[float], list[float]]:
    if args.theta is None:
        raise InvalidParameterError("--theta is required")
    thetas = parse_angle_list(args.theta)
    if len(thetas) != config.n:
        raise InvalidParameterError(
            f"need {config.n} theta values, got {len(thetas)}")
    alphas: list[float] = []
    if want_alpha:
        if args.alpha is None:
            raise InvalidParameterError("--alpha is required")
        alphas = parse_angle_list(args.alpha)
        if len(alphas) != config.p:
            raise InvalidParameterError(
                f"need {config.p} alpha values, got {len(alphas)}")
    return thetas, alphas


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _load_topology(args.topology)
    thetas, alphas = _parsed_angles(config, args, want_alpha=True)
    result = evaluate_S(config, thetas, canonical_plan(config, alphas))
    _, alpha_hint = closed_form_smax(thetas, config.p)
    report = {
        "I0": result.i0,
        "I1": result.i1,
        "S": result.s,
        "bound": 1,
        "violated": result.violated,
        "alpha_star_hint": _nine_digits(alpha_hint),
    }
    _emit(json.dumps(report) + "\n", args.output)
    if args.expect_violation and not result.violated:
        return EXIT_EXPECTATION
    return EXIT_OK


def _cmd_maximize(args: argparse.Namespace) -> int:
    config = _load_topology(args.topology)
    thetas, _ = _parsed_angles(config, args, want_alpha=False)
    alpha_star, smax = optimize_alpha_equal(thetas, config.p)
    report = {
        "alpha_star": _nine_digits(alpha_star),
        "smax": smax,
        "violated": smax > 1.0 + VIOLATION_TOLERANCE,
    }
    if args.free:
        free = optimize_alpha_free(config, thetas)
        report["free_alphas"] = [_nine_digits(a) for a in free.alphas]
        report["free_smax"] = free.smax
        report["free_converged"] = free.converged
    _emit(json.dumps(report) + "\n", args.output)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _load_topology(args.topology)
    if args.grid is None:
        raise InvalidParameterError("--grid is required")
    grid = parse_angle_list(args.grid)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as sink:
            sweep(config, grid, sink)
    else:
        sweep(config, grid, sys.stdout)
    return EXIT_OK


def _cmd_lhv(args: argparse.Namespace) -> int:
    config = _load_topology(args.topology)
    best, model = lhv_best_S(config, alphabet_size=args.alphabet_size,
                             weight_grid_steps=args.grid_steps,
                             refine=not args.no_refine,
                             max_work=args.max_work)
    report = {
        "best_s": best,
        "bound": 1,
        "alphabet_size": args.alphabet_size,
        "weight_grid_steps": args.grid_steps,
    }
    if args.seed is not None:
        report["seed"] = args.seed
    sys.stdout.write(json.dumps(report) + "\n")
    if args.output:
        Path(args.output).write_text(
            json.dumps(model_to_jsonable(model), indent=2) + "\n",
            encoding="utf-8")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlocalnet",
        description="Acyclic quantum network layouts and their n-local "
                    "correlation inequalities.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a topology JSON file")
    gen.add_argument("kind", choices=["chain", "star", "tree", "custom"])
    gen.add_argument("--n", type=int, help="source count")
    gen.add_argument("--m", type=int, help="particles per intermediate node")
    gen.add_argument("--p", type=int, help="extremal node count (custom only)")
    gen.add_argument("--edges", help="JSON edge list (custom only)")
    gen.add_argument("--output", help="file to write (stdout if omitted)")
    gen.set_defaults(run=_cmd_generate)

    val = sub.add_parser("validate", help="check a topology file")
    val.add_argument("--topology", required=True)
    val.set_defaults(run=_cmd_validate)

    ev = sub.add_parser("evaluate", help="evaluate the witness for given angles")
    ev.add_argument("--topology", required=True)
    ev.add_argument("--theta", help="comma-separated source angles")
    ev.add_argument("--alpha", help="comma-separated extremal angles")
    ev.add_argument("--expect-violation", action="store_true",
                    help="exit 3 unless the bound is violated")
    ev.add_argument("--output", help="also write the report to this file")
    ev.set_defaults(run=_cmd_evaluate)

    mx = sub.add_parser("maximize", help="best extremal angles for given sources")
    mx.add_argument("--topology", required=True)
    mx.add_argument("--theta", help="comma-separated source angles")
    mx.add_argument("--free", action="store_true",
                    help="also run the per-node coordinate ascent")
    mx.add_argument("--output", help="also write the report to this file")
    mx.set_defaults(run=_cmd_maximize)

    sw = sub.add_parser("sweep", help="tabulate the witness over a theta grid")
    sw.add_argument("--topology", required=True)
    sw.add_argument("--grid", help="comma-separated grid of source angles")
    sw.add_argument("--output", help="CSV file to write (stdout if omitted)")
    sw.set_defaults(run=_cmd_sweep)

    lh = sub.add_parser("lhv", help="search classical models for the best witness")
    lh.add_argument("--topology", required=True)
    lh.add_argument("--alphabet-size", type=int, default=2)
    lh.add_argument("--grid-steps", type=int, default=11,
                    help="weight grid levels per source")
    lh.add_argument("--max-work", type=int, default=DEFAULT_MAX_WORK,
                    help="cap on enumeration work")
    lh.add_argument("--no-refine", action="store_true",
                    help="skip the weight refinement pass")
    lh.add_argument("--seed", type=int,
                    help="recorded in the report; the search is deterministic")
    lh.add_argument("--output", help="dump the best model as JSON to this file")
    lh.set_defaults(run=_cmd_lhv)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (InvalidParameterError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    raise SystemExit(main())
