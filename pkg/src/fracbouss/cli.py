"""Command-line entry point.

Commands
--------
simulate CONFIG.json
    Run a simulation; writes the diagnostics CSV and a final-state dump.
    Exit 0 on success, 1 on a bad config, 2 if the run produced NaN/Inf.
feasible --alpha A --beta B [--witness OUT.json]
    Decide membership and search for an exponent witness.
    Exit 0 feasible, 3 infeasible, 1 bad input.
region --alpha-min --alpha-max --alpha-step [--beta-mode midpoint|grid] [--out CSV]
    Sweep a rational grid and report the smallest feasible α.
shells DUMP [--field omega|theta|G] [--s S ...] [--out CSV]
    Per-shell norms of a dumped field.

Diagnostics CSV columns, in order::

    step, t, L2_u, L2_theta, Linf_theta, Lp_theta_<p>..., L2_G, Lm_G,
    diss_u_cum, diss_theta_cum, diss_theta_delta_cum, resid_theta, resid_u,
    besov_inf1_omega

``Lm_G`` is the L^m norm of G = ω - R_α θ, ``diss_*_cum`` are the
time integrals of ‖Λ^{α/2}u‖², ‖Λ^{β/2}θ‖² and ‖Λ^{δ+β/2}θ‖², ``resid_*``
the energy-balance defects and ``besov_inf1_omega`` the sharp-shell
B⁰_{∞,1} norm of ω.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema

from . import io, region
from .diagnostics import csv_columns, dyadic_shells
from .rational import parse_rational
from .solver import PRESETS, BlowupError, SimConfig, SimState, compute_G, run

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BLOWUP = 2
EXIT_INFEASIBLE = 3

_NUMBER_OR_RATIONAL = {"oneOf": [{"type": "number"}, {"type": "string"}]}

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["alpha", "beta", "n", "dt", "t_end", "ic", "output"],
    "properties": {
        "alpha": _NUMBER_OR_RATIONAL,
        "beta": _NUMBER_OR_RATIONAL,
        "n": {"type": "integer", "minimum": 8},
        "dt": {"type": "number", "exclusiveMinimum": 0},
        "t_end": {"type": "number", "minimum": 0},
        "ic": {
            "type": "object",
            "additionalProperties": False,
            "required": ["preset"],
            "properties": {
                "preset": {"enum": list(PRESETS)},
                "seed": {"type": "integer"},
                "amplitude": {"type": "number"},
            },
        },
        "diag_every": {"type": "integer", "minimum": 1},
        "lp_exponents": {"type": "array", "items": {"type": "number", "minimum": 1}},
        "m": {"type": "number", "exclusiveMinimum": 2},
        "delta": {"type": "number", "minimum": 0},
        "output": {
            "type": "object",
            "additionalProperties": False,
            "required": ["csv", "dump"],
            "properties": {"csv": {"type": "string"}, "dump": {"type": "string"}},
        },
    },
}


def banner(alpha: Fraction, beta: Fraction) -> str:
    verdict = "yes" if region.in_region(alpha, beta) else "no"
    return f"inside admissible (alpha, beta) region: {verdict}"


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_ERROR


def load_config(path) -> tuple[SimConfig, dict, Fraction, Fraction]:
    """Parse and validate a config file; raises ValueError on any problem."""
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ValueError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from exc
    try:
        jsonschema.validate(doc, CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ValueError(f"invalid config: {exc.message}") from exc
    alpha, beta = parse_rational(doc["alpha"]), parse_rational(doc["beta"])
    cfg = SimConfig(
        alpha=float(alpha),
        beta=float(beta),
        n=doc["n"],
        dt=doc["dt"],
        t_end=doc["t_end"],
        ic=doc["ic"]["preset"],
        seed=doc["ic"].get("seed", 0),
        amplitude=doc["ic"].get("amplitude", 1.0),
        diag_every=doc.get("diag_every", 10),
        lp_exponents=tuple(doc.get("lp_exponents", (2, 4, 8))),
        m=doc.get("m"),
        delta=doc.get("delta"),
    )
    return cfg, doc["output"], alpha, beta


def cmd_simulate(args) -> int:
    try:
        cfg, out, alpha, beta = load_config(args.config)
    except ValueError as exc:
        return _fail(str(exc))
    print(banner(alpha, beta))
    try:
        result = run(cfg)
    except BlowupError as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    columns = csv_columns(cfg.lp_exponents)
    io.write_atomic(out["csv"], io.csv_text(columns, [r.values() for r in result.rows]))
    io.dump_state(out["dump"], result.state, cfg.alpha, cfg.beta)
    last = result.rows[-1]
    print(f"t = {last.t:.6g}  steps = {last.step}  rows = {len(result.rows)}")
    print(f"delta = {result.delta:.6g}  m = {result.m:.6g}")
    return EXIT_OK


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def cmd_feasible(args) -> int:
    a, b = args.alpha, args.beta
    if not (0 < a < 1 and 0 < b < 1):
        return _fail("need 0 < alpha < 1 and 0 < beta < 1")
    print(banner(a, b))
    w = region.find_witness(a, b)
    if w is None:
        print("feasible: no")
        return EXIT_INFEASIBLE
    print("feasible: yes")
    for name in region.WITNESS_FIELDS:
        value = getattr(w, name)
        print(f"  {name:<12}{str(value):<28}{float(value):.6f}")
    if args.witness:
        io.write_atomic(args.witness, io.witness_json(w))
    return EXIT_OK


def cmd_region(args) -> int:
    try:
        alphas = region.rational_grid(args.alpha_min, args.alpha_max, args.alpha_step)
        if any(not 0 < a < 1 for a in alphas):
            raise ValueError("alpha grid must lie in (0, 1)")
        if args.beta_mode == "grid":
            if None in (args.beta_min, args.beta_max, args.beta_step):
                raise ValueError("grid mode needs --beta-min, --beta-max and --beta-step")
            betas = region.rational_grid(args.beta_min, args.beta_max, args.beta_step)
        else:
            betas = None
    except ValueError as exc:
        return _fail(str(exc))
    rmap = region.sweep_region(alphas, betas)
    if args.out:
        io.write_atomic(args.out, io.region_csv_text(rmap))
    edge = rmap.boundary_alpha()
    feasible = sum(c.feasible for c in rmap.cells)
    print(f"cells: {len(rmap.cells)}  feasible: {feasible}")
    if edge is None:
        print("boundary alpha: none (no feasible cell)")
    else:
        print(f"boundary alpha: {float(edge):.4f} ({edge})")
    print(f"threshold (10-2*sqrt(10))/5 = {region.alpha_threshold().decimal(6)}")
    return EXIT_OK


def cmd_shells(args) -> int:
    try:
        fields, meta = io.load_dump(args.dump)
    except (OSError, ValueError) as exc:
        return _fail(f"cannot read dump: {exc}")
    if args.field == "G":
        if not {"omega", "theta"} <= fields.keys():
            return _fail("dump lacks omega/theta needed for G")
        f = compute_G(SimState(fields["omega"], fields["theta"], meta["t"]), meta["alpha"])
    elif args.field in fields:
        f = fields[args.field]
    else:
        return _fail(f"dump has no field {args.field!r}")
    text = io.shells_csv_text(dyadic_shells(f), args.s)
    if args.out:
        io.write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracbouss",
        description="Fractional Boussinesq simulator and exponent-region checker.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a simulation from a JSON config")
    p.add_argument("config")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("feasible", help="search an exponent witness for (alpha, beta)")
    p.add_argument("--alpha", type=_rational_arg, required=True)
    p.add_argument("--beta", type=_rational_arg, required=True)
    p.add_argument("--witness", help="write the witness as JSON")
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("region", help="sweep a grid of (alpha, beta)")
    for name in ("alpha-min", "alpha-max", "alpha-step"):
        p.add_argument(f"--{name}", type=_rational_arg, required=True)
    p.add_argument("--beta-mode", choices=("midpoint", "grid"), default="midpoint")
    for name in ("beta-min", "beta-max", "beta-step"):
        p.add_argument(f"--{name}", type=_rational_arg)
    p.add_argument("--out", help="region CSV path")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("shells", help="dyadic shell norms of a dumped field")
    p.add_argument("dump")
    p.add_argument("--field", choices=("omega", "theta", "G"), default="omega")
    p.add_argument("--s", type=float, action="append", help="weight exponent (repeatable)")
    p.add_argument("--out", help="shell CSV path (default: stdout)")
    p.set_defaults(func=cmd_shells)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; that code means blow-up here
        return EXIT_ERROR if exc.code else EXIT_OK
    if getattr(args, "s", None) is None and args.command == "shells":
        args.s = [0.0]
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
