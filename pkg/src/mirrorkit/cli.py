"""Command-line front end.

Exit codes: 0 success, 1 a gating verification failed, 2 usage error,
3 input/output error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .diffop import OperatorError, diffop_from_text, diffop_to_text, guess_min_ode
from .hyper import (delta_qseries, eta_quotient_qseries, form_factor_series, hadamard_power_family,
                    j2_qseries, parse_eta_quotient, parse_pfq, pfq_series, theta_null_qseries)
from .mirror import _fmt, build_mirror_bundle, qs_numeric, theta4_operator
from .registry import RegistryError, gating_failures, identity_ids, run_all
from .series import PowerSeries, SeriesError, series_from_text, series_to_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
MIN_ORDER = 8  # expand accepts any positive order
MIN_PRECISION = 64


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    order: int | None
    precision_bits: int
    input: str | None
    output: str | None
    format: str
    ode_file: str | None


# -- expand --------------------------------------------------------------------------

def expand_target(target: str, order: int) -> PowerSeries:
    """Series for a named target, known below exponent ``order``."""
    name, _, arg = target.partition(":")
    if name in ("nome", "mirror", "yukawa", "y0"):
        b = build_mirror_bundle(theta4_operator(), order + 1)
        f = {"nome": b.nome, "mirror": b.mirror, "yukawa": b.yukawa, "y0": b.basis.y0}[name]
        return f.truncate(order)
    if name == "delta":
        return delta_qseries(order).truncate(order)
    if name == "j2":
        return j2_qseries(order + 1).truncate(order)
    if name in ("theta2", "theta3", "theta4"):
        return theta_null_qseries(int(name[-1]), order).truncate(order)
    if name == "pfq":
        up, lo, scale = parse_pfq(arg)
        return pfq_series(up, lo, scale, order=order)
    if name == "eta":
        f = eta_quotient_qseries(parse_eta_quotient(arg), order + 2)
        return f.truncate(order)
    if name == "formfactor":
        try:
            k, n = (Fraction(v) for v in arg.split(","))
        except ValueError:
            raise UsageError("formfactor target is formfactor:k,n") from None
        return form_factor_series(k, n, order)
    if name == "hadamard-power":
        try:
            n = int(arg)
        except ValueError:
            raise UsageError("hadamard-power target is hadamard-power:n") from None
        return hadamard_power_family(n, "sqrt", order)
    raise UsageError(f"unknown target {target!r}")


def series_json(f: PowerSeries) -> dict:
    return {"variable": f.var, "scale": f.scale, "order": f.order,
            "terms": [[int(e * f.scale), _fmt(c)] for e, c in f.terms()]}


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w") as fh:
        fh.write(text)


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def cmd_expand(cfg: CliConfig, target: str) -> int:
    f = expand_target(target, cfg.order or 20)
    text = json.dumps(series_json(f), indent=1) + "\n" if cfg.format == "json" else series_to_text(f)
    _emit(text, cfg.output)
    return EXIT_OK


# -- verify --------------------------------------------------------------------------

def cmd_verify(cfg: CliConfig, ids: Sequence[str] | None) -> int:
    known = set(identity_ids())
    if ids:
        bad = [i for i in ids if i not in known]
        if bad:
            raise UsageError(f"unknown identity {bad[0]!r}")
    overrides = {}
    if cfg.order is not None:
        sel = ids if ids else identity_ids()
        overrides = {i: cfg.order for i in sel}
    reports = run_all(overrides, cfg.ode_file, ids)
    if cfg.format == "json":
        text = json.dumps([r.to_dict() for r in reports], indent=1) + "\n"
    else:
        lines = []
        for r in reports:
            line = f"{r.status:10s} {r.id}"
            if r.order is not None:
                line += f" (order {r.order})"
            if r.status == "FAIL":
                line += f" check {r.failing_check!r} witness {r.witness}"
                if r.first_failing_exponent is not None:
                    line += f" at exponent {_fmt(r.first_failing_exponent)}"
            if r.detail and r.status in ("DIAGNOSTIC", "SKIPPED"):
                line += f": {r.detail}"
            lines.append(line)
        text = "\n".join(lines) + "\n"
    _emit(text, cfg.output)
    return EXIT_FAIL if gating_failures(reports) else EXIT_OK


# -- mirror --------------------------------------------------------------------------

def cmd_mirror(cfg: CliConfig, operator_file: str | None) -> int:
    op = diffop_from_text(_read(operator_file)) if operator_file else theta4_operator()
    order = cfg.order or 20
    b = build_mirror_bundle(op, order + 1)
    parts = {"nome": b.nome, "mirror": b.mirror}
    if b.yukawa is not None:
        parts["yukawa"] = b.yukawa
    parts = {k: v.truncate(order) for k, v in parts.items()}
    if cfg.format == "json":
        text = json.dumps({k: series_json(v) for k, v in parts.items()}, indent=1) + "\n"
    else:
        text = "".join(f"# {k}\n" + series_to_text(v) for k, v in parts.items())
    _emit(text, cfg.output)
    return EXIT_OK


# -- guess ---------------------------------------------------------------------------

def cmd_guess(cfg: CliConfig, series_file: str, max_order: int, max_degree: int) -> int:
    f = series_from_text(_read(series_file))
    try:
        op = guess_min_ode(f, max_order, max_degree)
    except OperatorError as exc:
        raise UsageError(str(exc)) from None
    if op is None:
        msg = f"none: no operator of order <= {max_order} and theta-degree <= {max_degree}\n"
        if cfg.format == "json":
            msg = json.dumps({"operator": None, "max_order": max_order, "max_degree": max_degree}) + "\n"
        _emit(msg, cfg.output)
        return EXIT_OK
    text = diffop_to_text(op)
    if cfg.format == "json":
        text = json.dumps({"operator": text, "order": op.order}) + "\n"
    _emit(text, cfg.output)
    return EXIT_OK


# -- qs ------------------------------------------------------------------------------

def cmd_qs(cfg: CliConfig, terms: int) -> int:
    r = qs_numeric(cfg.precision_bits, terms)
    import mpmath

    # only the digits the enclosure certifies
    digits = max(10, int(-mpmath.log10(r.error_bound)) + 1)
    value = mpmath.nstr(r.value, digits)
    err = mpmath.nstr(r.error_bound, 5)
    if cfg.format == "json":
        text = json.dumps({"q_s": value, "error_bound": err, "precision_bits": r.precision, "terms": r.terms}) + "\n"
    else:
        text = f"q_s = {value}\nerror bound = {err}\n"
    _emit(text, cfg.output)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=None)
    common.add_argument("--precision", type=int, default=128, help="bits, numeric commands")
    common.add_argument("--format", choices=("json", "text"), default=None)
    common.add_argument("--out", default=None)

    p = argparse.ArgumentParser(prog="mirrorkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("expand", parents=[common], help="expand a named series")
    e.add_argument("target")

    v = sub.add_parser("verify", parents=[common], help="run registry identities")
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--id", action="append", dest="ids")
    g.add_argument("--all", action="store_true")
    g.add_argument("--list", action="store_true")
    v.add_argument("--ode-file", default=None)

    m = sub.add_parser("mirror", parents=[common], help="nome, mirror map and Yukawa coupling")
    m.add_argument("--operator-file", default=None)

    gs = sub.add_parser("guess", parents=[common], help="guess a minimal operator")
    gs.add_argument("series_file")
    gs.add_argument("--max-order", type=int, default=4)
    gs.add_argument("--max-degree", type=int, default=4)

    q = sub.add_parser("qs", parents=[common], help="nome at the conifold point")
    q.add_argument("--terms", type=int, default=20000)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    p = build_parser()
    args = p.parse_args(argv)
    default_format = "json" if args.command == "verify" else "text"
    cfg = CliConfig(args.command, args.order, args.precision, None, args.out,
                    args.format or default_format, getattr(args, "ode_file", None))
    try:
        if cfg.order is not None and cfg.order < (1 if args.command == "expand" else MIN_ORDER):
            raise UsageError(f"--order must be at least {MIN_ORDER}" if args.command != "expand"
                             else "--order must be positive")
        if args.command == "qs" and cfg.precision_bits < MIN_PRECISION:
            raise UsageError(f"--precision must be at least {MIN_PRECISION} bits")
        if args.command == "expand":
            return cmd_expand(cfg, args.target)
        if args.command == "verify":
            if args.list:
                _emit("\n".join(identity_ids()) + "\n", cfg.output)
                return EXIT_OK
            return cmd_verify(cfg, None if args.all else args.ids)
        if args.command == "mirror":
            return cmd_mirror(cfg, args.operator_file)
        if args.command == "guess":
            return cmd_guess(cfg, args.series_file, args.max_order, args.max_degree)
        return cmd_qs(cfg, args.terms)
    except (UsageError, RegistryError, SeriesError, OperatorError, ValueError) as exc:
        print(f"mirrorkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"mirrorkit: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
