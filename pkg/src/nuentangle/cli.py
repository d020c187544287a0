"""Command-line interface: ``nuentangle {qm,qft,compare,verify,bogoliubov}``.

Exit codes: 0 success, 1 usage/config/domain error, 2 verification failure.
Values come from defaults, then the ``--config`` file, then flags; a flag
that replaces a value set in the file is reported on stderr. Data goes to
``--output`` or stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

import yaml

from nuentangle import __version__, qft
from nuentangle.scenario import (
    FORMATS,
    ConfigError,
    OutputError,
    ScenarioConfig,
    dump_config,
    emit,
    header_comments,
    parse_config,
    run_sweep,
    write_output,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY_FAILED = 2


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1 like every other input error."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# flag dest -> config key
_FLAG_KEYS = {
    "sin2_theta": "sin2_theta",
    "theta_rad": "theta_rad",
    "omega1": "omega1",
    "omega2": "omega2",
    "phase_min": "phase_min",
    "phase_max": "phase_max",
    "m1": "m1",
    "m2": "m2",
    "k": "k",
    "t_min": "t_min",
    "t_max": "t_max",
    "seed": "seed",
    "points": "n_points",
    "format": "format",
    "output": "output",
}


def _add_common(p: argparse.ArgumentParser, theta: bool = True):
    if theta:
        g = p.add_mutually_exclusive_group()
        g.add_argument("--sin2-theta", type=float, metavar="S", help="sin^2(theta) in [0, 1] (default 0.314)")
        g.add_argument("--theta-rad", type=float, metavar="RAD", help="mixing angle in radians, [0, pi/2]")
    p.add_argument("--points", type=int, metavar="N", help="number of sweep / grid points")
    p.add_argument("--config", metavar="FILE", help="YAML scenario file; flags override its values")
    p.add_argument("--format", choices=FORMATS, help="output format (default csv)")
    p.add_argument("--output", metavar="PATH", help="output file (default stdout)")
    p.add_argument(
        "--echo-config",
        action="store_true",
        help="print the resolved config as YAML and exit without running",
    )


def _add_sector(p: argparse.ArgumentParser, required: bool = False):
    p.add_argument("--m1", type=float, required=required, help="mass m1 > 0")
    p.add_argument("--m2", type=float, required=required, help="mass m2 > 0")
    p.add_argument("--k", type=float, required=required, help="momentum |k| >= 0")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nuentangle", description=__doc__.splitlines()[0], allow_abbrev=False)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser(
        "qm",
        help="QM sweep over the phase (omega2 - omega1) t / 2",
        description="QM mixing: probabilities, linear entropy and flavor variances versus phase.",
        allow_abbrev=False,
    )
    _add_common(p)
    p.add_argument("--omega1", type=float, help="energy of mass state 1 (default 1)")
    p.add_argument("--omega2", type=float, help="energy of mass state 2 (default 2)")
    p.add_argument("--phase-min", type=float, help="first phase (default 0)")
    p.add_argument("--phase-max", type=float, help="last phase (default 2 pi)")

    for name, text in (
        ("qft", "QFT sweep over t for one momentum sector"),
        ("compare", "QM and QFT columns side by side over t"),
    ):
        p = sub.add_parser(name, help=text, description=text + ".", allow_abbrev=False)
        _add_common(p)
        _add_sector(p)
        p.add_argument("--t-min", type=float, help="first time (default 0)")
        p.add_argument("--t-max", type=float, help="last time (default: one period of the slow oscillation)")

    p = sub.add_parser(
        "verify",
        help="check every closed form against the exact Fock-space model",
        description="Run the Fock-space checks on a randomized grid; exit 2 if any residual exceeds its tolerance.",
        allow_abbrev=False,
    )
    _add_common(p, theta=False)
    p.add_argument("--seed", type=int, help="grid seed (default 0)")

    p = sub.add_parser(
        "bogoliubov",
        help="print |U_k|, |V_k| and |U_k|^2 + |V_k|^2",
        description="Bogoliubov coefficients of one momentum sector.",
        allow_abbrev=False,
    )
    _add_sector(p, required=True)
    return parser


def _resolve(args) -> ScenarioConfig:
    flags = {key: getattr(args, dest) for dest, key in _FLAG_KEYS.items() if getattr(args, dest, None) is not None}
    if args.config is None:
        return ScenarioConfig(mode=args.command, **flags)

    try:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError([f"cannot read {args.config}: {exc.strerror or exc}"]) from None
    try:
        cfg = parse_config(text)
    except ConfigError as exc:
        raise ConfigError([f"{args.config}: {p}" for p in exc.problems]) from None
    if cfg.mode != args.command:
        raise ConfigError([f"{args.config}: mode is {cfg.mode!r} but the subcommand is {args.command!r}"])

    in_file = set(yaml.safe_load(text))
    for key, value in flags.items():
        replaced = [key] if key in in_file else []
        if key in ("theta_rad", "sin2_theta"):
            replaced = [k for k in ("theta_rad", "sin2_theta") if k in in_file]
        for k in replaced:
            print(f"note: command-line {key} = {value!r} overrides {k} from {args.config}", file=sys.stderr)
    return cfg.with_overrides(**flags)


def _bogoliubov(args) -> int:
    u, v = qft.bogoliubov(args.m1, args.m2, args.k)
    norm = u * u + v * v
    print(f"u_k = {u:.17g}")
    print(f"v_k = {v:.17g}")
    print(f"u_k^2 + v_k^2 = {norm:.17g}")
    print(f"identity residual = {abs(norm - 1.0):.3e}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bogoliubov":
            return _bogoliubov(args)
        cfg = _resolve(args)
        if args.echo_config:
            write_output(dump_config(cfg).encode("utf-8"))
            return EXIT_OK
        rows = run_sweep(cfg)
        comments = header_comments(cfg) if cfg.format == "csv" else None
        write_output(emit(rows, cfg.format, comments), cfg.output)
    except (ConfigError, OutputError, ValueError) as exc:
        print(f"nuentangle: error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    if cfg.mode == "verify":
        failed = [r for r in rows if not r["passed"]]
        for r in failed:
            print(f"FAIL {r['check']}: residual {r['residual']:.3e} > {r['tolerance']:.0e}", file=sys.stderr)
        print(f"{len(rows) - len(failed)}/{len(rows)} checks passed over {cfg.n_points} grid points", file=sys.stderr)
        return EXIT_VERIFY_FAILED if failed else EXIT_OK
    return EXIT_OK
