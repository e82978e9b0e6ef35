"""Command-line entry point.

Usage::

    abscatter phase --config fluxes.json --path path.json --method both
    abscatter field --config flux.json --alpha 0.5 --k 1 --grid -5,5,-5,5,64,64 -o psi.csv
    abscatter bessel --nu 0.5 --z 1.0 --method all
    abscatter xsection --alphas 0.25,0.5 --k 1 --r 50 --phi-min -2.6 --phi-max 2.6 --samples 11
    abscatter experiment --alpha 1/3 --winding 2 --k 10 --sep 0.2 --width 4 --points 201

Exit status: 0 on success, 2 on usage errors, 1 on computational errors
(the error class name is printed to stderr).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import io
from .berry_phase import PathPolyline, phase_analytic, phase_line_integral
from .bessel import bessel_j, is_integer, sinpi
from .errors import ScatteringError
from .experiment import ExperimentSpec, interference_pattern
from .flux_geometry import FluxConfig
from .momentum_contour import bessel_contour_split, bessel_integer_integral
from .partial_waves import Grid, PartialWaveSpec, ab_wavefunction, scattering_amplitude


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _grid_spec(text: str):
    parts = text.split(",")
    if len(parts) != 6:
        raise argparse.ArgumentTypeError("grid needs XMIN,XMAX,YMIN,YMAX,NX,NY")
    try:
        bounds = [float(v) for v in parts[:4]]
        counts = [int(v) for v in parts[4:]]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    if min(counts) < 1:
        raise argparse.ArgumentTypeError("grid counts must be positive")
    return (*bounds, *counts)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected P/Q or a decimal, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abscatter", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-o", "--output", type=Path, help="write data here instead of stdout")
        return p

    p = add("phase", "geometric phase along a path")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--path", type=Path, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--method", choices=("analytic", "quadrature", "both"), default="analytic")

    p = add("field", "partial-wave wavefunction on a rectangular grid")
    p.add_argument("--config", type=Path, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--grid", type=_grid_spec, required=True)
    p.add_argument("--mmax", type=int)

    p = add("bessel", "compare Bessel evaluation routes")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--method", choices=("series", "integral", "contour", "all"), default="all")

    p = add("xsection", "scattering amplitude sweep over flux strengths")
    p.add_argument("--alphas", type=_float_list, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--phi-min", type=float, required=True)
    p.add_argument("--phi-max", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)

    p = add("experiment", "two-beam winding interference")
    p.add_argument("--alpha", type=_fraction, required=True)
    p.add_argument("--winding", type=int, required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--sep", type=float, required=True)
    p.add_argument("--width", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    return parser


def _read_json(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _cmd_phase(args) -> str:
    config = FluxConfig.from_dict(_read_json(args.config))
    path = PathPolyline.from_dict(_read_json(args.path))
    if args.method == "analytic":
        return io.dumps(phase_analytic(config, path).to_dict())
    if args.method == "quadrature":
        return io.dumps(phase_line_integral(config, path, args.tol).to_dict())
    return io.dumps({
        "analytic": phase_analytic(config, path).to_dict(),
        "quadrature": phase_line_integral(config, path, args.tol).to_dict(),
    })


def _cmd_field(args) -> str:
    config = FluxConfig.from_dict(_read_json(args.config))
    if len(config.fluxes) > 1:
        raise UsageError("field supports a single flux; the config lists more")
    center = config.fluxes[0].position if config.fluxes else (0.0, 0.0)
    grid = Grid.rectangular(*args.grid)
    spec = PartialWaveSpec(args.alpha, args.k, m_max=args.mmax, ideal_angle=config.ideal_angle)
    field = ab_wavefunction(spec, grid.shifted(-center[0], -center[1]))
    return io.csv_text(("x", "y", "re", "im"), zip(grid.a, grid.b, field.values.real, field.values.imag))


def _cmd_bessel(args) -> str:
    nu, z = args.nu, args.z
    columns = {}
    if args.method in ("series", "all"):
        columns["series"] = bessel_j(nu, z, method="series")
    if args.method in ("integral", "all"):
        if is_integer(nu):
            columns["integral"] = bessel_integer_integral(int(nu), z)
        else:
            columns["integral"] = bessel_j(nu, z, method="integral")
    if args.method == "contour":
        split = bessel_contour_split(nu, z)
        ref = bessel_j(nu, z, method="series")
        return io.csv_text(
            ("nu", "z", "real_leg", "imag_leg", "total", "series_ref"),
            [(nu, z, split.real_leg, split.imag_leg, split.total, ref)],
        )
    if args.method == "all":
        columns["contour"] = bessel_contour_split(nu, z).total
        values = list(columns.values())
        columns["max_abs_diff"] = max(values) - min(values)
    return io.csv_text(("nu", "z", *columns), [(nu, z, *columns.values())])


def _cmd_xsection(args) -> str:
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    phis = np.linspace(args.phi_min, args.phi_max, args.samples)
    rows = []
    for alpha in args.alphas:
        f = scattering_amplitude(PartialWaveSpec(alpha, args.k), args.r, phis)
        s2 = sinpi(alpha) ** 2
        for phi, amp in zip(phis, f):
            rows.append((alpha, phi, amp.real, amp.imag, abs(amp) ** 2, s2))
    return io.csv_text(("alpha", "phi", "re", "im", "abs2", "sin2"), rows)


def _cmd_experiment(args):
    spec = ExperimentSpec(args.alpha, args.winding, args.k, args.sep, args.points, args.width)
    result = interference_pattern(spec)
    meta = {"alpha": args.alpha, "winding": args.winding, **result.metadata()}
    if args.output is None:
        meta["x"] = result.positions
        meta["intensity"] = result.intensity_profile
        return io.dumps(meta)
    sidecar = args.output.with_name(args.output.name + ".json")
    sidecar.write_text(io.dumps(meta) + "\n")
    return result.to_csv()


COMMANDS = {
    "phase": _cmd_phase,
    "field": _cmd_field,
    "bessel": _cmd_bessel,
    "xsection": _cmd_xsection,
    "experiment": _cmd_experiment,
}


# values that may start with "-" and would otherwise be read as options
_VALUE_FLAGS = {"--grid", "--alphas", "--phi-min", "--phi-max", "--nu", "--z", "--alpha", "--winding"}


def _join_values(argv: list[str]) -> list[str]:
    out = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def run(argv=None) -> int:
    parser = build_parser()
    argv = _join_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"abscatter {args.command}: {exc}", file=sys.stderr)
        return 2
    except (ScatteringError, ValueError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if not text.endswith("\n"):
        text += "\n"
    if args.output is None:
        sys.stdout.write(text)
    else:
        try:
            args.output.write_text(text)
        except OSError as exc:
            print(f"abscatter: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return 2
    return 0


def main() -> None:
    sys.exit(run())
