"""Command-line interface.

Every subcommand prints one document to stdout in the ``--output`` format.
Exit status: 0 success, 2 bad arguments or domain error, 3 numerical
non-convergence.

Defaults for any flag may come from ``--config FILE`` (``key = value`` lines,
keys spelled like the flags). The ``GRAVLOC_DENSITY`` environment variable
sets the default density. Precedence: flags, config file, environment,
built-in default.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import gravenergy, regimes, solver
from ._validation import ConvergenceError, DomainError, check_positive
from .profiles import Gaussian
from .solver import LumpSpec, Mode
from .units import RHO_REF, Constants

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgumentError(f"{self.prog}: {message}")


def _common():
    p = _Parser(add_help=False)
    p.add_argument("--mode", choices=["paper", "derived", "both"], default="paper")
    p.add_argument("--density", type=float, default=None,
                   help="reference density in proton masses per cm^3")
    p.add_argument("--output", choices=["json", "csv", "table"], default="table")
    p.add_argument("--precision", type=int, default=6,
                   help="significant digits, 3 to 17")
    p.add_argument("--config", default=None, help="file of 'key = value' defaults")
    return p


def build_parser():
    common = _common()
    parser = _Parser(prog="gravloc",
                     description="Gravitationally induced localization length.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("constants", parents=[common], help="print the constant set")

    p = sub.add_parser("solve", parents=[common], help="solve one lump")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--lambda0", type=float, default=None,
                   help="inner dispersion in cm (default: from density)")

    p = sub.add_parser("sweep", parents=[common], help="mass sweep")
    p.add_argument("--mu-min", type=float, required=True)
    p.add_argument("--mu-max", type=float, required=True)
    p.add_argument("--per-decade", type=int, default=4)
    p.add_argument("--lambda0", type=float, default=None)
    p.add_argument("--out", default=None, help="write to FILE instead of stdout")

    p = sub.add_parser("asymptotics", parents=[common])
    p.add_argument("--mu", type=float, required=True)

    sub.add_parser("crossover", parents=[common])

    p = sub.add_parser("energy-profile", parents=[common])
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--lambda0", type=float, default=None)
    p.add_argument("--lp-min", type=float, required=True)
    p.add_argument("--lp-max", type=float, required=True)
    p.add_argument("--points", type=int, default=50)

    p = sub.add_parser("force-law", parents=[common])
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--d-min", type=float, required=True)
    p.add_argument("--d-max", type=float, required=True)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--m1", type=float, default=1.0)
    p.add_argument("--m2", type=float, default=1.0)

    p = sub.add_parser("e0-check", parents=[common])
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--mass", type=float, required=True)
    return parser, sub.choices


def _read_config(path):
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise _ArgumentError(f"{path}:{n}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key.replace("_", "-")] = value
    return out


def _config_path(argv):
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--config="):
            return a.split("=", 1)[1]
    return None


def _apply_config(argv, subparsers):
    """Insert config-file flags right after the subcommand so that explicit
    flags, which come later, take precedence."""
    path = _config_path(argv)
    if path is None or not argv or argv[0] not in subparsers:
        return argv
    try:
        cfg = _read_config(path)
    except OSError as exc:
        raise _ArgumentError(f"cannot read config {path}: {exc.strerror}") from None
    known = {opt for action in subparsers[argv[0]]._actions
             for opt in action.option_strings}
    extra = []
    for key, value in cfg.items():
        flag = f"--{key}"
        if key == "lambda" and argv[0] == "e0-check":
            flag = "--lambda"
        if flag not in known or flag == "--config":
            raise _ArgumentError(f"{path}: unknown key {key!r} for {argv[0]}")
        extra += [flag, value]
    return [argv[0]] + extra + list(argv[1:])


def _resolve_density(args):
    if args.density is not None:
        rho = args.density
    elif "GRAVLOC_DENSITY" in os.environ:
        try:
            rho = float(os.environ["GRAVLOC_DENSITY"])
        except ValueError:
            raise DomainError("GRAVLOC_DENSITY must be a number") from None
    else:
        rho = RHO_REF
    if not (math.isfinite(rho) and rho > 0):
        raise DomainError(f"density must be positive, got {rho!r}")
    return rho


def _modes(args):
    return [Mode.PAPER, Mode.DERIVED] if args.mode == "both" else [Mode(args.mode)]


# --- rendering ------------------------------------------------------------

def _num(v, precision):
    if isinstance(v, bool) or not isinstance(v, float):
        return v
    if not math.isfinite(v):
        return None
    return regimes.round_sig(v, precision)


def _clean(obj, precision):
    if isinstance(obj, dict):
        return {k: _clean(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v, precision) for v in obj]
    if hasattr(obj, "value") and isinstance(obj.value, str):
        return obj.value
    return _num(obj, precision)


def _text(v, precision):
    if isinstance(v, float):
        return f"{v:.{precision - 1}e}"
    if v is None:
        return ""
    return str(v)


def render(doc, fmt, precision):
    """Render ``doc`` (``{"rows": [...], ...}`` or a flat dict) as text."""
    doc = _clean(doc, precision)
    if fmt == "json":
        return json.dumps(doc) + "\n"
    rows = doc.get("rows") if isinstance(doc, dict) else None
    meta = {k: v for k, v in doc.items() if k != "rows"} if rows is not None else doc
    if fmt == "csv":
        lines = []
        if rows is not None:
            cols = list(rows[0]) if rows else []
            lines.append(",".join(cols))
            lines += [",".join(_text(r[c], precision) for c in cols) for r in rows]
            lines += [f"# {k},{_text(v, precision)}" for k, v in meta.items()]
        else:
            lines.append(",".join(meta))
            lines.append(",".join(_text(v, precision) for v in meta.values()))
        return "\n".join(lines) + "\n"
    # table
    lines = []
    if rows is not None and rows:
        cols = list(rows[0])
        cells = [[_text(r[c], precision) for c in cols] for r in rows]
        widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
        lines.append("  ".join(c.rjust(w) for c, w in zip(cols, widths)))
        lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells]
    if meta:
        width = max(len(k) for k in meta)
        lines += [f"{k.ljust(width)}  {_text(v, precision)}" for k, v in meta.items()]
    return "\n".join(lines) + "\n"


# --- subcommands ----------------------------------------------------------

def _result_record(res, const):
    spec = LumpSpec(res.mu, res.lambda0, res.mode)
    e = solver.total_energy(spec, res.lambda_prime, const)
    return {
        "mode": res.mode, "mu": float(res.mu), "lambda0_cm": res.lambda0,
        "lambda_prime_cm": res.lambda_prime, "x": res.x,
        "K_log10": res.log10_K, "residual": float(res.residual),
        "curvature_positive": res.curvature_positive,
        "iterations": res.iterations, "regime": regimes.classify(res).label,
        "e0_erg": e.e0, "ekin_erg": e.e_kin, "etotal_erg": e.e_total,
    }


def cmd_constants(args, const):
    return const.as_dict()


def cmd_solve(args, const):
    rows = []
    for mode in _modes(args):
        if args.lambda0 is None:
            spec = LumpSpec.from_density(args.mu, const.rho_ref, mode, const)
        else:
            spec = LumpSpec(args.mu, args.lambda0, mode)
        rows.append(_result_record(solver.solve_localization(spec, const), const))
    return rows[0] if len(rows) == 1 else {"rows": rows}


def cmd_sweep(args, const):
    tables = [regimes.sweep(args.mu_min, args.mu_max, args.per_decade, mode,
                            const.rho_ref, const, args.lambda0)
              for mode in _modes(args)]
    # paired rows per mu when both modes are requested
    records = [rec for group in zip(*(t.to_records() for t in tables)) for rec in group]
    return {"rows": records}


def cmd_asymptotics(args, const):
    rows = []
    for mode in _modes(args):
        small = regimes.asymptote_small(args.mu, mode, const)
        large = regimes.asymptote_large(args.mu, mode, const.rho_ref, const)
        res = solver.solve_localization(
            LumpSpec.from_density(args.mu, const.rho_ref, mode, const), const)
        rows.append({
            "mode": mode, "mu": float(args.mu), "asymptote_small_cm": small,
            "asymptote_large_cm": large, "lambda_prime_cm": res.lambda_prime,
            "deviation_small": res.lambda_prime / small - 1.0,
            "deviation_large": res.lambda_prime / large - 1.0,
            "regime": regimes.classify(res).label,
        })
    return rows[0] if len(rows) == 1 else {"rows": rows}


def cmd_crossover(args, const):
    rows = []
    for mode in _modes(args):
        mu_q = regimes.boundary_mu(regimes.QUANTUM_ABOVE, mode, const.rho_ref, const)
        mu_c = regimes.boundary_mu(regimes.CLASSICAL_BELOW, mode, const.rho_ref, const)
        rows.append({
            "mode": mode,
            "crossover_mu": regimes.crossover_mu(mode, const.rho_ref, const),
            "transition_width_decades": math.log10(mu_c / mu_q),
            "mu_quantum_boundary": mu_q, "mu_classical_boundary": mu_c,
        })
    return rows[0] if len(rows) == 1 else {"rows": rows}


def _check_points(points):
    if points < 2:
        raise DomainError(f"points must be at least 2, got {points}")


def cmd_energy_profile(args, const):
    _check_points(args.points)
    if args.lambda0 is None:
        spec = LumpSpec.from_density(args.mu, const.rho_ref, const=const)
    else:
        spec = LumpSpec(args.mu, args.lambda0)
    lo = check_positive("lp-min", args.lp_min)
    hi = check_positive("lp-max", args.lp_max)
    if not lo < hi:
        raise DomainError("lp-min must be below lp-max")
    rows = []
    for lp in np.logspace(math.log10(lo), math.log10(hi), args.points):
        e = solver.total_energy(spec, float(lp), const)
        rows.append({"lambda_prime_cm": float(lp), "e0_erg": e.e0,
                     "ekin_erg": e.e_kin, "etotal_erg": e.e_total})
    return {"rows": rows}


def cmd_force_law(args, const):
    _check_points(args.points)
    lo = check_positive("d-min", args.d_min)
    hi = check_positive("d-max", args.d_max)
    if not lo < hi:
        raise DomainError("d-min must be below d-max")
    rows, ds, fs = [], [], []
    for d in np.logspace(math.log10(lo), math.log10(hi), args.points):
        spec = gravenergy.TwoSourceSpec(args.m1, args.m2, args.sigma, float(d))
        e = gravenergy.two_source_interaction(spec, const)
        f = gravenergy.two_source_force(spec, const)
        rows.append({"d_cm": float(d), "e_int_erg": e, "force_dyn": f})
        ds.append(float(d))
        fs.append(f)
    return {"rows": rows, "loglog_slope": gravenergy.loglog_slope(ds, fs)}


def cmd_e0_check(args, const):
    closed = gravenergy.e0_closed_gaussian(args.mass, args.lam, const)
    quad = gravenergy.e0_quadrature(Gaussian(args.lam, args.mass), const)
    ratio = quad / closed
    return {
        "e0_closed_erg": closed, "e0_quadrature_erg": quad, "ratio": ratio,
        "expected_ratio": gravenergy.GAUSSIAN_RATIO,
        "status": ("closed-form/integral mismatch" if abs(ratio - 1.0) > 1e-6
                   else "consistent"),
    }


COMMANDS = {
    "constants": cmd_constants, "solve": cmd_solve, "sweep": cmd_sweep,
    "asymptotics": cmd_asymptotics, "crossover": cmd_crossover,
    "energy-profile": cmd_energy_profile, "force-law": cmd_force_law,
    "e0-check": cmd_e0_check,
}


def run(argv=None, stdout=None, stderr=None):
    """Run the CLI and return the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = build_parser()
    if any(a in ("-h", "--help") for a in argv):
        try:
            parser.parse_args(argv)
        except SystemExit as exc:
            return exc.code or EXIT_OK
    try:
        args = parser.parse_args(_apply_config(argv, subparsers))
        if not 3 <= args.precision <= 17:
            raise DomainError(f"precision must be in [3, 17], got {args.precision}")
        const = Constants(rho_ref=_resolve_density(args))
        doc = COMMANDS[args.command](args, const)
        text = render(doc, args.output, args.precision)
    except (_ArgumentError, DomainError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"error: {exc} (residual {exc.residual:.3e})", file=stderr)
        return EXIT_NUMERIC
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
