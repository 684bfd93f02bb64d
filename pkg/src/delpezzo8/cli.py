"""Command line front end.

Exit status: 0 ok, 2 not rational, 3 inconclusive, 1 invalid input or I/O.
JSON goes to stdout (or --out); a short stage log with timings to stderr.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass

from .conic import DEFAULT_HEIGHT, SOLVABLE, UNSOLVABLE, DegenerateFormError, recheck_certificate, solve_conic
from .formats import InputError, dumps, form_from_json, ideal_from_json, loads, map_from_json
from .pipeline import (
    INCONCLUSIVE_TAG,
    INVALID,
    KINDS,
    NOT_RATIONAL,
    PARAMETRIZATION,
    PipelineError,
    classify,
    classify_and_parametrize,
    generate_instance,
    image_is_surface,
    substitutes_to_zero,
)

log = logging.getLogger("delpezzo8")

EXIT_OK, EXIT_INVALID, EXIT_NOT_RATIONAL, EXIT_INCONCLUSIVE = 0, 1, 2, 3

EXIT_CODES = {
    PARAMETRIZATION: EXIT_OK,
    NOT_RATIONAL: EXIT_NOT_RATIONAL,
    INCONCLUSIVE_TAG: EXIT_INCONCLUSIVE,
    INVALID: EXIT_INVALID,
}


@dataclass
class RunConfig:
    subcommand: str
    input: str | None = None
    output: str | None = None
    map: str | None = None
    height: int = DEFAULT_HEIGHT
    kind: str | None = None
    a: int | None = None
    perturb: int | None = None
    seed: int | None = None

    def validate(self) -> None:
        if self.height < 1:
            raise InputError("--height must be positive")
        if self.subcommand == "generate":
            if self.kind == "sphere" and self.a is None:
                raise InputError("--kind sphere needs --a")
            if self.kind != "sphere" and self.a is not None:
                raise InputError("--a only applies to --kind sphere")
            if self.perturb is None or self.perturb < 0:
                raise InputError("--perturb must be a nonnegative integer")


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _emit(data: dict, path: str | None) -> None:
    text = dumps(data)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parametrize(cfg: RunConfig) -> int:
    ideal = ideal_from_json(loads(_read(cfg.input)))
    res = classify_and_parametrize(ideal, cfg.height)
    _emit(res.to_json(), cfg.output)
    return EXIT_CODES[res.tag]


def _verify(cfg: RunConfig) -> int:
    pm = map_from_json(loads(_read(cfg.map), "map"))
    ideal = ideal_from_json(loads(_read(cfg.input)))
    subst = substitutes_to_zero(ideal, pm)
    surface = image_is_surface(pm)
    ok = subst and surface
    _emit({"result": "verified" if ok else "failed", "substitution": subst, "surface": surface}, cfg.output)
    return EXIT_OK if ok else EXIT_INVALID


def _generate(cfg: RunConfig) -> int:
    try:
        ideal, _ = generate_instance(cfg.kind, cfg.perturb, cfg.seed, cfg.a)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    doc = ideal.to_json()
    doc["instance"] = {"kind": cfg.kind, "a": cfg.a, "perturb": cfg.perturb, "seed": cfg.seed}
    _emit(doc, cfg.output)
    return EXIT_OK


def _conic(cfg: RunConfig) -> int:
    form = form_from_json(loads(_read(cfg.input)))
    try:
        cert = solve_conic(form, cfg.height)
    except DegenerateFormError as exc:
        raise InputError(str(exc)) from None
    out = cert.to_json()
    if cert.verdict in (SOLVABLE, UNSOLVABLE):
        out["rechecked"] = recheck_certificate(cert, form)
    _emit(out, cfg.output)
    return {SOLVABLE: EXIT_OK, UNSOLVABLE: EXIT_NOT_RATIONAL}.get(cert.verdict, EXIT_INCONCLUSIVE)


def _info(cfg: RunConfig) -> int:
    ideal = ideal_from_json(loads(_read(cfg.input)))
    try:
        info = classify(ideal)
    except PipelineError as exc:
        _emit({"result": INVALID, "stage": exc.stage, "reason": exc.reason}, cfg.output)
        return EXIT_INVALID
    _emit(info, cfg.output)
    return EXIT_OK


COMMANDS = {
    "parametrize": _parametrize,
    "verify": _verify,
    "generate": _generate,
    "conic": _conic,
    "info": _info,
}


class _Parser(argparse.ArgumentParser):
    # argparse uses status 2 for usage errors, which would read as "not rational"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="delpezzo8", description="Rational parametrization of degree-8 Del Pezzo surfaces.")
    sub = ap.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("parametrize", help="decide rationality and parametrize")
    p.add_argument("--height", type=int, default=DEFAULT_HEIGHT, help="conic search height over Q(sqrt a)")
    p.add_argument("--in", dest="input", metavar="F")
    p.add_argument("--out", dest="output", metavar="F")

    p = sub.add_parser("verify", help="check a map against an ideal")
    p.add_argument("--map", required=True, metavar="F")
    p.add_argument("--in", dest="input", required=True, metavar="F")

    p = sub.add_parser("generate", help="random instance of a canonical model")
    p.add_argument("--kind", required=True, choices=KINDS)
    p.add_argument("--a", type=int, metavar="D")
    p.add_argument("--perturb", type=int, required=True, metavar="B")
    p.add_argument("--seed", type=int, required=True, metavar="S")

    p = sub.add_parser("conic", help="solve a ternary quadratic form")
    p.add_argument("--in", dest="input", required=True, metavar="F")
    p.add_argument("--height", type=int, default=DEFAULT_HEIGHT)

    p = sub.add_parser("info", help="Lie algebra and classification only")
    p.add_argument("--in", dest="input", required=True, metavar="F")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})


def run(cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    try:
        cfg.validate()
        code = COMMANDS[cfg.subcommand](cfg)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INVALID
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INVALID
    log.info("%s finished in %.2f s (exit %d)", cfg.subcommand, time.perf_counter() - t0, code)
    return code


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO)
    log.propagate = False
    return run(config_from_args(ns))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
