"""Command-line front end.

Reports go to stdout as JSON; every number is an object
``{"value": ..., "unit": ...}``.  ``--pretty`` prints an aligned table
instead and ``--csv PATH`` additionally writes tabular data.

Exit codes: 0 success, 1 bad input or usage, 2 numerical failure
(including a failed ``validate`` check).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import __version__, _kernels
from .atoms import (DEFAULT_ALPHA_RATIO, DEFAULT_HBAR_OMEGA0_EV, DEFAULT_LJ_RATIO, DEFAULT_TC_K,
                    alpha_from_susceptibility, lj_contact_energy, vdw_contact_energy)
from .constants import constants_from_env
from .electron_gas import (C1_DEFAULT, ElectronGasParams, correlation_energy, cutoff_u0,
                           spectral_distribution, sweep_rs)
from .errors import InputError, NumericalError
from .matsubara import MatsubaraControl, frequencies
from .pair_free_energy import PairCoupling, compare_free_energies
from .polarizability import polarizability_function
from .spectrum import ZERO_TEMPERATURE, Boltzmann, Fermi, ThermalState, load_spectrum
from .validation import PRNG_NAME, equivalence_suite, oracle_suite

EXIT_OK, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2

ENERGY = "energy (input units)"
POLARIZABILITY = "polarizability (input units)"


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; that code is reserved here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def q(value, unit):
    v = int(value) if isinstance(value, (int, np.integer)) else float(value)
    return {"value": v, "unit": unit}


# --- shared argument helpers ---------------------------------------------

def _add_output(p):
    p.add_argument("--pretty", action="store_true", help="human-readable table instead of JSON")
    p.add_argument("--csv", metavar="PATH", help="also write tabular data as CSV")


def _add_thermal(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--beta", type=float, help="inverse temperature (1/energy)")
    g.add_argument("--zero-temperature", action="store_true")
    p.add_argument("--zeta", type=float, help="Fermi fugacity; omit for Boltzmann statistics")


def _add_control(p):
    p.add_argument("--n-max", type=int, default=1024, help="initial Matsubara truncation")
    p.add_argument("--tail-tolerance", type=float, default=1e-9)


def _thermal(args, from_file):
    if args.beta is None and not args.zero_temperature and args.zeta is None:
        if from_file is None:
            raise InputError("no temperature given: use --beta or --zero-temperature, "
                             "or put 'beta' in the spectrum file")
        return from_file
    if args.beta is None and not args.zero_temperature:
        if from_file is None:
            raise InputError("--zeta needs --beta")
        beta = from_file.beta
    else:
        beta = ZERO_TEMPERATURE if args.zero_temperature else args.beta
    stats = Boltzmann() if args.zeta is None else Fermi(args.zeta)
    return ThermalState(beta, stats)


def _parse_grid(text):
    try:
        start, stop, points = text.split(":")
        return float(start), float(stop), int(points)
    except ValueError as exc:
        raise InputError(f"grid must look like start:stop:points, got {text!r}") from exc


# --- subcommands -----------------------------------------------------------

def cmd_polarizability(args):
    model, file_thermal = load_spectrum(args.spectrum)
    t = _thermal(args, file_thermal)
    if args.matsubara is not None:
        if t.zero_temperature:
            raise InputError("--matsubara needs a finite beta")
        ks = frequencies(t.beta, args.matsubara)
        ks = ks[ks >= 0]
    elif args.k_grid is not None:
        start, stop, points = _parse_grid(args.k_grid)
        ks = np.linspace(start, stop, points)
    else:
        ks = np.array([0.0])
    pol = polarizability_function(model, t)
    alpha = np.atleast_1d(pol(ks))
    report = {
        "command": "polarizability",
        "statistics": "fermi" if t.is_fermi else "boltzmann",
        "beta": "zero_temperature" if t.zero_temperature else q(t.beta, "1/energy"),
        "degenerate_pairs": q(pol.n_degenerate, "count"),
        "points": [{"K": q(k, ENERGY), "alpha": q(a, POLARIZABILITY)} for k, a in zip(ks, alpha)],
    }
    rows = [("K", "alpha")] + [(repr(float(k)), repr(float(a))) for k, a in zip(ks, alpha)]
    return report, rows


def cmd_pair_free_energy(args):
    a, ta = load_spectrum(args.spectrum_a)
    b, tb = load_spectrum(args.spectrum_b)
    t = _thermal(args, ta if ta is not None else tb)
    control = MatsubaraControl(n_max=args.n_max, tail_tolerance=args.tail_tolerance)
    pair = PairCoupling(args.psi, a, b, t)
    res = compare_free_energies(pair, control, include_log=not args.no_log)
    report = {
        "command": "pair-free-energy",
        "psi": q(args.psi, "1/polarizability"),
        "statistics": "fermi" if t.is_fermi else "boltzmann",
        "beta": "zero_temperature" if t.zero_temperature else q(t.beta, "1/energy"),
        "free_energy": {k: q(v, ENERGY) for k, v in res["values"].items()},
        "relative_deviation": {k: q(v, "1") for k, v in res["relative_deviations"].items()},
        "limit_branch_count": q(res["limit_branch_count"], "count"),
    }
    rows = [("method", "free_energy")] + [(k, repr(v)) for k, v in res["values"].items()]
    return report, rows


def cmd_validate(args):
    results = []
    stats = ["boltzmann", "fermi"] if args.statistics == "both" else [args.statistics]
    for i, s in enumerate(stats):
        results += equivalence_suite(args.instances, args.seed + i, s, args.tolerance)
    if args.oracle_instances > 0:
        results += oracle_suite(args.oracle_instances, args.seed, args.oracle_tolerance)
    report = {
        "command": "validate",
        "prng": PRNG_NAME,
        "seed": q(args.seed, "1"),
        "checks": [{"name": r.name, "instances": q(r.instances, "count"),
                    "max_relative_deviation": q(r.max_deviation, "1"),
                    "tolerance": q(r.tolerance, "1"),
                    "result": "PASS" if r.passed else "FAIL"} for r in results],
        "passed": all(r.passed for r in results),
    }
    rows = [("check", "instances", "max_relative_deviation", "tolerance", "result")] + [
        (r.name, str(r.instances), repr(r.max_deviation), repr(r.tolerance),
         "PASS" if r.passed else "FAIL") for r in results]
    return report, rows


def _eg_report(r):
    return {
        "density": q(r.density, "m^-3"),
        "r_s": q(r.r_s, "1"),
        "g": q(r.g, "1"),
        "k_f": q(r.k_f, "m^-1"),
        "hbar_omega_p": q(r.hbar_omega_p, "eV"),
        "mu": q(r.mu, "eV"),
        "alpha": q(r.alpha, "1"),
        "u0": q(r.u0, "1"),
        "x0": q(r.x0, "1"),
        "f_ex": q(r.f_ex, "eV"),
        "f_ex_quadrature": q(r.f_ex_quadrature, "eV"),
        "f_c": q(r.f_c, "eV"),
        "f_c_quadrature": q(r.f_c_quadrature, "eV"),
        "kinetic_ref": q(r.kinetic_ref, "eV"),
    }


_EG_FIELDS = ("density", "r_s", "hbar_omega_p", "mu", "alpha", "x0", "f_ex", "f_c")


def cmd_electron_gas(args):
    constants = constants_from_env()
    if args.sweep is not None:
        kind, _, rest = args.sweep.partition(":")
        if kind != "rs":
            raise InputError("--sweep must look like rs:start:stop:points")
        start, stop, points = _parse_grid(rest)
        reports = sweep_rs(start, stop, points, args.g, constants, args.c1)
        report = {"command": "electron-gas", "sweep": [_eg_report(r) for r in reports]}
        rows = [_EG_FIELDS] + [tuple(repr(float(getattr(r, f))) for f in _EG_FIELDS)
                               for r in reports]
        return report, rows
    if (args.density is None) == (args.rs is None):
        raise InputError("give exactly one of --density and --rs (or --sweep)")
    params = ElectronGasParams(density=args.density, r_s=args.rs, g=args.g,
                               constants=constants, c1=args.c1)
    r = correlation_energy(params)
    report = {"command": "electron-gas", **_eg_report(r)}
    rows = [("field", "value")] + [(f, repr(float(getattr(r, f)))) for f in _EG_FIELDS]
    if args.spectral_points:
        u = cutoff_u0(args.g, args.c1) * np.arange(1, args.spectral_points + 1) / args.spectral_points
        half_u, eps = spectral_distribution(params, u)
        report["spectral_distribution"] = [{"u_half": q(x, "1"), "eps_c": q(e, "eV")}
                                           for x, e in zip(half_u, eps)]
        rows = [("u_half", "eps_c")] + [(repr(float(x)), repr(float(e))) for x, e in zip(half_u, eps)]
    return report, rows


def cmd_atoms(args):
    constants = constants_from_env()
    if args.from_susceptibility is not None:
        eps_m1, rho_s3 = args.from_susceptibility
        ratio = alpha_from_susceptibility(eps_m1, rho_s3)
    else:
        ratio = args.alpha_ratio
    v = vdw_contact_energy(ratio, args.hw0_ev, args.r_over_sigma)
    lj = lj_contact_energy(args.lj_tc, args.lj_ratio, constants)
    report = {
        "command": "atoms-estimate",
        "alpha0_over_sigma3": q(ratio, "1"),
        "hbar_omega0": q(args.hw0_ev, "eV"),
        "r_over_sigma": q(args.r_over_sigma, "1"),
        "vdw_contact_energy": q(v * 1e3, "meV"),
        "lj_tc": q(args.lj_tc, "K"),
        "lj_contact_energy": q(lj * 1e3, "meV"),
    }
    rows = [("estimate", "meV"), ("vdw", repr(v * 1e3)), ("lennard_jones", repr(lj * 1e3))]
    return report, rows


# --- parser ----------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="matsuvdw", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__} (kernels: {_kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("polarizability", help="alpha(K) on a grid")
    p.add_argument("spectrum")
    _add_thermal(p)
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--k-grid", metavar="START:STOP:POINTS")
    grid.add_argument("--matsubara", type=int, metavar="N", help="K_n for n = 0..N")
    _add_output(p)
    p.set_defaults(func=cmd_polarizability)

    p = sub.add_parser("pair-free-energy", help="induced free energy by three routes")
    p.add_argument("spectrum_a")
    p.add_argument("spectrum_b")
    p.add_argument("--psi", type=float, required=True)
    _add_thermal(p)
    _add_control(p)
    p.add_argument("--no-log", action="store_true", help="skip the all-orders log form")
    _add_output(p)
    p.set_defaults(func=cmd_pair_free_energy)

    p = sub.add_parser("validate", help="random-instance equivalence checks")
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--statistics", choices=["boltzmann", "fermi", "both"], default="both")
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--oracle-instances", type=int, default=20)
    p.add_argument("--oracle-tolerance", type=float, default=1e-6)
    _add_output(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("electron-gas", help="exchange and correlation estimate at T=0")
    p.add_argument("--density", type=float, help="particles per m^3")
    p.add_argument("--rs", type=float, help="Wigner-Seitz radius in Bohr radii")
    p.add_argument("--sweep", metavar="rs:START:STOP:POINTS")
    p.add_argument("--g", type=int, default=2, help="spin degeneracy")
    p.add_argument("--c1", type=float, default=C1_DEFAULT, help="excitation-energy factor")
    p.add_argument("--spectral-points", type=int, default=0,
                   help="also emit eps_c on this many points up to the cutoff")
    _add_output(p)
    p.set_defaults(func=cmd_electron_gas)

    p = sub.add_parser("atoms-estimate", help="contact van der Waals estimates")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--alpha-ratio", type=float, default=DEFAULT_ALPHA_RATIO,
                     help="alpha(0)/sigma^3")
    src.add_argument("--from-susceptibility", type=float, nargs=2, metavar=("EPS_MINUS_1", "RHO_SIGMA3"))
    p.add_argument("--hw0-ev", type=float, default=DEFAULT_HBAR_OMEGA0_EV)
    p.add_argument("--r-over-sigma", type=float, default=1.0)
    p.add_argument("--lj-tc", type=float, default=DEFAULT_TC_K)
    p.add_argument("--lj-ratio", type=float, default=DEFAULT_LJ_RATIO)
    _add_output(p)
    p.set_defaults(func=cmd_atoms)
    return parser


def _flatten(obj, prefix=""):
    if isinstance(obj, dict) and set(obj) == {"value", "unit"}:
        unit = "" if obj["unit"] == "1" else f" {obj['unit']}"
        yield prefix, f"{obj['value']:.10g}{unit}"
    elif isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, str(obj)


def _emit(report, rows, args, out):
    if args.pretty:
        items = list(_flatten(report))
        width = max(len(k) for k, _ in items)
        for k, v in items:
            out.write(f"{k:<{width}}  {v}\n")
    else:
        out.write(json.dumps(report, indent=2) + "\n")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            csv.writer(fh).writerows(rows)


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, rows = args.func(args)
        _emit(report, rows, args, out)
    except InputError as exc:
        sys.stderr.write(f"matsuvdw: input error: {exc}\n")
        return EXIT_INPUT
    except NumericalError as exc:
        sys.stderr.write(f"matsuvdw: numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except OSError as exc:
        sys.stderr.write(f"matsuvdw: {exc}\n")
        return EXIT_INPUT
    if args.command == "validate" and not report["passed"]:
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
