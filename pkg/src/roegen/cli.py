"""Command-line interface.

Exit codes: 0 success, 2 configuration or validation error, 3 numerical
convergence error, 4 I/O error.
"""
import argparse
import os
import sys

from .config import Config, load_config
from .core import dictionary_csv
from .eos import isotherm
from .equilibrium import build_diagram, find_critical, maxwell_construction
from .exceptions import BuildError, ConfigError, ConvergenceError, RoegenError
from .io import dumps, emit_outputs, format_number, read_points_csv
from .potentials import QuasiStaticPath, pfaff_loop_residual, pfaff_residual, second_law_check
from .process import simulate

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4
DEFAULT_CONFIG = "./roegen.json"


def _config(args):
    path = getattr(args, "config", None)
    if path is None:
        if not os.path.exists(DEFAULT_CONFIG):
            return Config()
        path = DEFAULT_CONFIG
    return load_config(path)


def _build(cfg, args):
    return build_diagram(cfg.eos, cfg.solid, cfg.grid, cfg.tolerances, n_jobs=getattr(args, "jobs", None))


def cmd_diagram(args, out):
    cfg = _config(args)
    diagram = _build(cfg, args)
    report = None
    if args.path:
        report = simulate(diagram, read_points_csv(args.path, ("I", "P")))
    for path in emit_outputs(diagram, args.out, report):
        print(path, file=out)


def cmd_critical(args, out):
    crit = find_critical(_config(args).eos)
    print(" ".join(format_number(v) for v in (crit.I_c, crit.P_c, crit.Q_c)), file=out)


def cmd_maxwell(args, out):
    cfg = _config(args)
    pt = maxwell_construction(cfg.eos, args.I, cfg.tolerances)
    print(" ".join(format_number(v) for v in (pt.P_sat, pt.Q_low, pt.Q_high, pt.latent_q)), file=out)


def cmd_isotherm(args, out):
    rows = isotherm(_config(args).eos, args.I, args.qmin, args.qmax, args.n)
    out.write("Q,P\n")
    for Q, P in rows:
        out.write(f"{format_number(Q)},{format_number(P)}\n")


def cmd_simulate(args, out):
    cfg = _config(args)
    diagram = _build(cfg, args)
    report = simulate(diagram, read_points_csv(args.path, ("I", "P")))
    out.write(dumps(report.to_dict()))


def cmd_laws(args, out):
    cfg = _config(args)
    rows = read_points_csv(args.path, ("I", "Q"))
    path = QuasiStaticPath(
        rows[:, 0], rows[:, 1], reversible=args.dissipation == 0, dissipation=args.dissipation
    )
    print(f"second_law {second_law_check(cfg.eos, path).value}", file=out)
    if path.closed:
        loop = QuasiStaticPath(path.I, path.Q)
        residual = pfaff_loop_residual(cfg.eos, loop, args.segments)
        print(f"pfaff_loop_residual {format_number(residual)}", file=out)
    else:
        print(f"pfaff_residual {format_number(pfaff_residual(cfg.eos, path, args.segments))}", file=out)


def cmd_dictionary(args, out):
    out.write(dictionary_csv())


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help=f"JSON config (default {DEFAULT_CONFIG})")
    common.add_argument("--out", default=argparse.SUPPRESS, help="output directory (default ./out)")

    parser = argparse.ArgumentParser(prog="roegen", description="Phase diagrams for Roegenian economics.")
    parser.add_argument("--config", default=None, help=f"JSON config (default {DEFAULT_CONFIG})")
    parser.add_argument("--out", default="./out", help="output directory (default ./out)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", parents=[common], help="build the phase diagram and write all outputs")
    p.add_argument("--path", help="optional I,P path CSV to simulate into simulation.json")
    p.add_argument("--jobs", type=int, default=None, help="parallel Maxwell constructions")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("critical", parents=[common], help="print I_c P_c Q_c")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("maxwell", parents=[common], help="print P_sat Q_low Q_high latent_q")
    p.add_argument("--I", type=float, required=True)
    p.set_defaults(func=cmd_maxwell)

    p = sub.add_parser("isotherm", parents=[common], help="sample a constant-I curve as Q,P CSV")
    p.add_argument("--I", type=float, required=True)
    p.add_argument("--qmin", type=float, required=True)
    p.add_argument("--qmax", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_isotherm)

    p = sub.add_parser("simulate", parents=[common], help="label an I,P path and report crossings")
    p.add_argument("--path", required=True)
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("laws", parents=[common], help="second-law verdict and Pfaff residual of an I,Q path")
    p.add_argument("--path", required=True)
    p.add_argument("--dissipation", type=float, default=0.0)
    p.add_argument("--segments", type=int, default=2048)
    p.set_defaults(func=cmd_laws)

    p = sub.add_parser("dictionary", parents=[common], help="dump the dictionary as CSV")
    p.set_defaults(func=cmd_dictionary)
    return parser


def _exit_code(err):
    if isinstance(err, BuildError):
        cause = err.__cause__
        return EXIT_NUMERIC if isinstance(cause, ConvergenceError) else EXIT_CONFIG
    if isinstance(err, ConvergenceError):
        return EXIT_NUMERIC
    return EXIT_CONFIG


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except (ConfigError, RoegenError) as err:
        print(f"roegen: error: {err}", file=sys.stderr)
        return _exit_code(err)
    except OSError as err:
        print(f"roegen: I/O error: {err}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
