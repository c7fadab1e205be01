"""Command-line front end.

Subcommands:
    info      algebra dimensions, Cartan verdict, definiteness
    classify  orbit descriptor of a skew-Hermitian element
    verify    run every invariant suite and report residuals
    pullback  compare the coadjoint orbit form against the orbit 2-form

Exit codes: 0 on success, 1 when an invariant suite fails, 2 on input
errors.  Reports are emitted as a single JSON document (or plain text);
identical configuration and seed produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .algebra import (
    AlgebraElement,
    BadDimension,
    LieAlgebra,
    NotInAlgebra,
    UnknownPreset,
    ad_matrix,
    element_from_matrix,
    load_algebra,
    preset,
    random_element,
)
from .forms import classify_definiteness, is_semisimple, killing_form, trace_form
from .numerics import Tolerance, rank_with_tol
from .orbits import NotSkewHermitian, UnsupportedAlgebra, classify
from .symplectic import CentralElement, KKSContext, pullback_compare
from .verify import run_suites

__all__ = ["main", "build_parser"]

DEFAULT_SEED = 42


class InputError(ValueError):
    """Bad command-line input; maps to exit code 2."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbitkit",
        description="Killing forms, adjoint orbits and their symplectic structure at desk scale.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("info", "algebra dimensions, Cartan verdict and definiteness"),
        ("classify", "orbit descriptor of a skew-Hermitian element"),
        ("verify", "run the invariant verification suites"),
        ("pullback", "compare the coadjoint orbit form with the orbit 2-form"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        src = cmd.add_mutually_exclusive_group(required=True)
        src.add_argument("--preset", metavar="NAME:N", help="algebra preset, e.g. su:2 or u:3")
        src.add_argument("--file", metavar="PATH", help="algebra JSON file")
        cmd.add_argument(
            "--form",
            choices=("killing", "trace", "auto"),
            default="auto",
            help="bilinear form; auto picks killing when semisimple, else trace",
        )
        cmd.add_argument("--samples", type=int, default=100, help="sample count for sweeps")
        cmd.add_argument("--seed", type=int, default=None, help="RNG seed (default 42 or $ORBITKIT_SEED)")
        cmd.add_argument("--tol", type=float, default=None, help="absolute tolerance override")
        cmd.add_argument("--output", choices=("text", "json"), default="text")
        if name in ("classify", "pullback"):
            cmd.add_argument(
                "--element",
                metavar="JSON|PATH",
                help='element as {"diag": [l1, ...]} meaning diag(i*l1, ...) or {"matrix": [[[re, im], ...]]}',
            )
    return parser


def _load_algebra(args) -> LieAlgebra:
    if args.preset:
        try:
            name, _, num = args.preset.partition(":")
            if not num:
                raise ValueError("preset must look like su:2")
            algebra = preset(name, int(num))
        except (UnknownPreset, BadDimension, ValueError) as exc:
            raise InputError(f"bad preset {args.preset!r}: {exc}") from exc
        return algebra
    try:
        return load_algebra(args.file)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot load algebra from {args.file!r}: {exc}") from exc


def _pick_form(algebra: LieAlgebra, kind: str, tol: Tolerance):
    if kind == "auto":
        kind = "killing" if is_semisimple(algebra, tol).semisimple else "trace"
    form = killing_form(algebra) if kind == "killing" else trace_form(algebra)
    if not form.is_nondegenerate(tol):
        raise InputError(
            f"the {kind} form on {algebra.name} is degenerate; use --form auto"
        )
    return form


def _parse_element(algebra: LieAlgebra, spec: str | None, seed: int, tol: Tolerance):
    if spec is None:
        return None
    text = spec.strip()
    if not text.startswith("{"):
        try:
            with open(text, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read element file {spec!r}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"element is not valid JSON: {exc}") from exc

    if "diag" in doc:
        lams = [float(v) for v in doc["diag"]]
        if len(lams) != algebra.n:
            raise InputError(f"diag needs {algebra.n} eigenvalues for {algebra.name}")
        matrix = np.diag([1j * v for v in lams])
    elif "matrix" in doc:
        entries = np.asarray(doc["matrix"], dtype=float)
        if entries.shape != (algebra.n, algebra.n, 2):
            raise InputError(f"matrix must be {algebra.n} x {algebra.n} with [re, im] entries")
        matrix = entries[..., 0] + 1j * entries[..., 1]
    else:
        raise InputError('element JSON needs a "diag" or "matrix" key')
    try:
        return element_from_matrix(algebra, matrix)
    except NotInAlgebra as exc:
        raise InputError(str(exc)) from exc


def _noncentral_default(algebra: LieAlgebra, seed: int, tol: Tolerance) -> AlgebraElement:
    for i in range(50):
        h = random_element(algebra, np.random.default_rng([seed, i]))
        if rank_with_tol(ad_matrix(h), tol) > 0:
            return h
    raise InputError(f"{algebra.name} is abelian; pullback needs a noncentral element")


def _emit(report: dict, output: str) -> None:
    if output == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
        return
    for line in _text_lines(report):
        print(line)


def _text_lines(report: dict, prefix: str = "") -> list[str]:
    lines = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            lines.append(f"{prefix}{key}:")
            lines += _text_lines(value, prefix + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for item in value:
                tag = item.get("suite", "-")
                rest = {k: v for k, v in item.items() if k != "suite"}
                body = "  ".join(f"{k}={_fmt(v)}" for k, v in sorted(rest.items()))
                lines.append(f"{prefix}  {tag:28s} {body}")
        else:
            lines.append(f"{prefix}{key}: {_fmt(value)}")
    return lines


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.6e}"
    if isinstance(value, list):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return str(value)


def _cmd_info(algebra, form, args, seed, tol) -> tuple[dict, int]:
    verdict = is_semisimple(algebra, tol)
    kf = killing_form(algebra)
    report = {
        "command": "info",
        "algebra": algebra.name,
        "n": algebra.n,
        "dim": algebra.dim,
        "semisimple": verdict.semisimple,
        "killing_definiteness": classify_definiteness(kf, tol),
        "form": {
            "kind": form.kind,
            "definiteness": classify_definiteness(form, tol),
        },
    }
    if verdict.witness is not None:
        report["witness"] = [round(float(v), 12) for v in verdict.witness.coeffs]
    return report, 0


def _cmd_classify(algebra, form, args, seed, tol) -> tuple[dict, int]:
    element = _parse_element(algebra, args.element, seed, tol)
    if element is None:
        raise InputError("classify needs --element")
    try:
        descriptor = classify(element)
    except (NotSkewHermitian, UnsupportedAlgebra) as exc:
        raise InputError(str(exc)) from exc
    report = {"command": "classify", "algebra": algebra.name}
    report.update(descriptor.as_dict())
    return report, 0


def _cmd_verify(algebra, form, args, seed, tol) -> tuple[dict, int]:
    reports = run_suites(algebra, form, samples=args.samples, seed=seed, tol=tol)
    ok = all(r.passed for r in reports)
    report = {
        "command": "verify",
        "algebra": algebra.name,
        "form": form.kind,
        "samples": args.samples,
        "seed": seed,
        "suites": [r.as_dict() for r in reports],
        "pass": ok,
    }
    if not ok:
        report["failed_suites"] = [r.suite for r in reports if not r.passed]
    return report, 0 if ok else 1


def _cmd_pullback(algebra, form, args, seed, tol) -> tuple[dict, int]:
    element = _parse_element(algebra, args.element, seed, tol)
    if element is None:
        element = _noncentral_default(algebra, seed, tol)
    try:
        ctx = KKSContext(form, tol=tol)
        result = pullback_compare(ctx, element, samples=args.samples, seed=seed)
    except CentralElement as exc:
        raise InputError(str(exc)) from exc
    report = {
        "command": "pullback",
        "algebra": algebra.name,
        "form": form.kind,
        "seed": seed,
    }
    report.update(result.as_dict())
    return report, 0 if result.passed else 1


_COMMANDS = {
    "info": _cmd_info,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "pullback": _cmd_pullback,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None:
        seed = args.seed
    else:
        try:
            seed = int(os.environ.get("ORBITKIT_SEED", DEFAULT_SEED))
        except ValueError:
            seed = DEFAULT_SEED
    tol = Tolerance() if args.tol is None else Tolerance(abs=args.tol)
    if args.samples < 1:
        print("error: --samples must be at least 1", file=sys.stderr)
        return 2

    try:
        algebra = _load_algebra(args)
        form = _pick_form(algebra, args.form, tol)
        report, code = _COMMANDS[args.command](algebra, form, args, seed, tol)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
