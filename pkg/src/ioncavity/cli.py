import argparse
import sys
from pathlib import Path

import numpy as np
import ultraprint.common as p
from dotenv import load_dotenv

from .errors import IonCavityError
from .leakage import FockSpace, fit_power_law, leakage_series
from .render import emit, emit_table
from .settings import FORMATS, ScenarioConfig, figure_preset, output_defaults, parse_config, to_scaled_units
from .pipeline import run_scenario

LEAKAGE_WINDOW = (0.01, 0.1)
LEAKAGE_SAMPLES = 19


def print_banner(title):
    p.cyan_bg(f" IONCAVITY {title.upper()} ")
    p.n()
    return None


def print_tip(msg):
    _ = p.yellow("Tip: " + msg)
    _ = p.n()
    return None


def print_error(msg):
    _ = p.red("Error: " + msg)
    _ = p.n()
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ioncavity",
        description="Pure-dephasing dynamics of a trapped ion in an optical cavity. "
        "Frequencies are in 10^6 rad/s; the time axis is T = a_11 t in degrees.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="Output directory (env IONCAVITY_OUTPUT_DIR, default 'out')")
    common.add_argument("--format", choices=FORMATS, help="Output format (env IONCAVITY_FORMAT, default 'both')")
    common.add_argument("--grid-points", type=int, help="Number of points on the T grid")
    common.add_argument("--kappa", type=float, action="append", help="Coupling strength; repeat to sweep several")

    sub = parser.add_subparsers(dest="command", required=True)
    fig = sub.add_parser("figure", parents=[common], help="Reproduce one of the six standard figures")
    fig.add_argument("n", type=int, help="Figure number 1..6")
    run = sub.add_parser("run", parents=[common], help="Run a scenario file")
    run.add_argument("--config", required=True, help="Scenario file (key = value lines or a JSON object)")
    leak = sub.add_parser("leakage", parents=[common], help="Fit the short-time leakage power law")
    leak.add_argument("--config", help="Scenario file supplying Omega, alpha and the Fock cutoffs")
    return parser


def _overrides(args) -> dict:
    return {"grid_points": args.grid_points, "kappas": args.kappa}


def _destination(args):
    out_dir, fmt = output_defaults()
    return Path(args.out or out_dir), args.format or fmt


def _run_and_emit(cfg: ScenarioConfig, stem: str, args) -> None:
    out_dir, fmt = _destination(args)
    p.lgray(f"{len(cfg.kappas)} kappa value(s), {cfg.grid_points} grid points up to T = {cfg.t_max_deg:g} deg")
    p.n()
    series = run_scenario(cfg, progress=lambda kappa: (p.lgray(f"  kappa = {kappa:g} done"), p.n()))
    for path in emit(series, out_dir, stem, fmt):
        p.green(f"Wrote {path}")
        p.n()


def cmd_figure(args) -> None:
    print_banner(f"figure {args.n}")
    cfg = figure_preset(args.n, **_overrides(args))
    _run_and_emit(cfg, f"figure{args.n}", args)


def cmd_run(args) -> None:
    print_banner("scenario")
    cfg = parse_config(args.config).with_overrides(**_overrides(args))
    _run_and_emit(cfg, Path(args.config).stem, args)


def cmd_leakage(args) -> None:
    print_banner("leakage")
    cfg = parse_config(args.config) if args.config else ScenarioConfig()
    params = to_scaled_units(cfg).params
    space = FockSpace(*cfg.fock_cutoffs)
    times = np.geomspace(*LEAKAGE_WINDOW, LEAKAGE_SAMPLES)

    leak = leakage_series(params, space, times)
    fit = fit_power_law(times, leak)
    p.green(f"Leakage exponent over a11*t in [{LEAKAGE_WINDOW[0]:g}, {LEAKAGE_WINDOW[1]:g}]: {fit.exponent:.4f} (r^2 = {fit.r2:.6f})")
    p.n()

    doubled = leakage_series(params, space.doubled(), times)
    change = float(np.max(np.abs(doubled - leak) / leak))
    p.green(f"Largest relative change with cutoffs {space.doubled().phonon_cut}x{space.doubled().photon_cut}: {change:.2e}")
    p.n()

    out_dir, fmt = _destination(args)
    if fmt in ("csv", "both"):
        path = emit_table(
            out_dir / "leakage.csv",
            ["a11_t", "leakage", "leakage_doubled_cutoffs"],
            [times, leak, doubled],
        )
        p.green(f"Wrote {path}")
        p.n()
    if fmt == "svg":
        print_tip("the leakage command writes CSV only")


COMMANDS = {"figure": cmd_figure, "run": cmd_run, "leakage": cmd_leakage}


def main(argv=None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except IonCavityError as exc:
        print_error(str(exc))
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
