"""Command-line front end: ``besselwell <subcommand> [options]``.

Exit codes: 0 success, 1 computation-domain error, 2 argument error.
Numbers in data output are written with full double precision (repr);
the 3-decimal summary goes to stderr under ``--verbose``.
"""
import argparse
import csv
import functools
import io
import json
import math
import platform
import sys
import warnings

import numpy as np

from . import __version__, oracle, scattering, spectra
from .errors import BesselWellError, DomainError, ScanExhaustedError
from .parallel import ENV_VAR, parallel_map, worker_count
from .potentials import CUBIC_FAMILY, VALLEY_FAMILY, WELL_FAMILY, Family, PotentialSpec, evaluate
from .validate import run_suite

PARITIES = ("even", "odd", "both")
TOLERANCES = {
    "root_relative_width": 1e-12,
    "residual_factor": spectra.RESIDUAL_FACTOR,
    "duplicate": spectra.DUPLICATE_TOL,
    "shooting_relative_width": oracle.EIGEN_REL_WIDTH,
}
MOMENT_POINTS_PER_WAVELENGTH = 30
MAX_GRID_POINTS = 2_000_000


class ArgumentError(Exception):
    """Semantic argument problem detected after parsing (exit 2)."""


# --- parsing -----------------------------------------------------------------------


def _family(text):
    return Family.parse(text)


def _positive(text):
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise ValueError(f"must be positive, got {text!r}")
    return value


def _count(text):
    value = int(text)
    if value < 1:
        raise ValueError(f"must be >= 1, got {text!r}")
    return value


_family.__name__ = "family"
_positive.__name__ = "positive number"
_count.__name__ = "count"


def _potential_options(p, families=None, required=True):
    p.add_argument("--family", type=_family, required=required,
                   help="v1..v6, x^3, |x|^3 or -|x|^3" if families is None else "/".join(families))
    p.add_argument("--v0", type=_positive, default=1.0, help="depth/height V0 (default 1)")
    p.add_argument("--a", type=_positive, default=1.0, help="length scale a (default 1)")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), help="data format (default json)")
    common.add_argument("--output", help="write data here instead of stdout")
    common.add_argument("--config", help="flat key=value file; command-line flags take precedence")
    common.add_argument("--verbose", action="store_true", help="diagnostics and a 3-decimal summary on stderr")

    parser = argparse.ArgumentParser(prog="besselwell", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"besselwell {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("spectrum", parents=[common], help="bound, special and non-physical energies")
    _potential_options(p)
    p.add_argument("--n", type=_count, default=2, help="number of lowest levels (default 2)")
    p.add_argument("--parity", choices=PARITIES, default="both")
    p.add_argument("--nonphysical", action="store_true", help="negative-order roots (v4/v5/v6 only)")
    p.add_argument("--emax", type=_positive, help="energy ceiling for the valley scan")

    p = sub.add_parser("scatter", parents=[common], help="A, B, R, T over an energy sweep")
    _potential_options(p, ("v4", "v2"))
    p.add_argument("--emin", type=float, required=True)
    p.add_argument("--emax", type=float, required=True)
    p.add_argument("--steps", type=_count, default=100, help="number of energies, endpoints included")
    p.add_argument("--verbatim", action="store_true", help="v2 only: closed form as commonly quoted (not unitary)")

    p = sub.add_parser("wavefunction", parents=[common], help="sampled eigenfunction")
    _potential_options(p)
    p.add_argument("--level", type=int, default=0, help="index into the sorted level list (default 0)")
    p.add_argument("--parity", choices=PARITIES, default="both")
    p.add_argument("--xmin", type=float, default=-6.0)
    p.add_argument("--xmax", type=float, default=6.0)
    p.add_argument("--points", type=int, default=1201)
    p.add_argument("--cosmetic-flip", action="store_true", help="multiply odd states by sgn(x)")

    p = sub.add_parser("transfer", parents=[common], help="v4 transfer matrix at one energy")
    _potential_options(p, ("v4",), required=False)
    p.add_argument("--energy", type=float, required=True)

    p = sub.add_parser("poles", parents=[common], help="amplitude poles after V0 -> -V0")
    _potential_options(p, ("v4", "v2"))
    p.add_argument("--flip-sign", action="store_true", required=True, help="reverse the sign of V0 (required)")
    p.add_argument("--n", type=_count, default=2)
    p.add_argument("--emax", type=_positive)

    p = sub.add_parser("cubic", parents=[common], help="hybrid levels of V = x^3")
    p.add_argument("--n", type=_count, default=2)
    p.add_argument("--x-left", type=float, default=oracle.CUBIC_X_LEFT)
    p.add_argument("--x-right", type=_positive)
    p.add_argument("--step", type=_positive, default=oracle.CUBIC_STEP)
    p.add_argument("--wavefunction", type=int, metavar="INDEX", help="dump the wavefunction of this level instead")

    p = sub.add_parser("moments", parents=[common], help="<x^n> or <p^n> on |x| <= L")
    _potential_options(p)
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--parity", choices=PARITIES, default="both")
    p.add_argument("--observable", choices=("x", "p"), required=True)
    p.add_argument("--power", type=_count, default=2)
    p.add_argument("--cutoff", type=_positive, required=True, help="half-width L of the integration domain")
    p.add_argument("--step", type=_positive, help="grid step (default: resolve the local wavelength)")

    sub.add_parser("validate", parents=[common], help="run the invariant suite")
    return parser


def _config_tokens(path):
    tokens = []
    with open(path, encoding="utf-8") as fh:
        for number, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ArgumentError(f"{path}:{number}: expected key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            flag = "--" + key.replace("_", "-")
            if value.lower() in ("true", "yes", "on"):
                tokens.append(flag)
            elif value.lower() in ("false", "no", "off"):
                continue
            else:
                tokens.append(f"{flag}={value}")
    return tokens


def _find_config(argv):
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def parse_args(argv):
    """Parse argv, splicing a --config file in front of the explicit flags."""
    parser = build_parser()
    argv = list(argv)
    path = _find_config(argv)
    if path is not None and argv and not argv[0].startswith("-"):
        try:
            argv = argv[:1] + _config_tokens(path) + argv[1:]
        except OSError as exc:
            parser.error(f"cannot read config file: {exc}")
        except ArgumentError as exc:
            parser.error(str(exc))
    args = parser.parse_args(argv)
    _check_args(parser, args)
    return args


def _check_args(parser, args):
    cmd = args.command
    if cmd == "scatter":
        if args.family not in (Family.V4, Family.V2):
            parser.error("scatter supports --family v4 or v2")
        if not args.emin < args.emax and args.steps > 1:
            parser.error("need --emin < --emax")
        if args.verbatim and args.family is not Family.V2:
            parser.error("--verbatim applies to v2 only")
    elif cmd == "poles" and args.family not in (Family.V4, Family.V2):
        parser.error("poles supports --family v4 or v2")
    elif cmd == "transfer" and args.family not in (None, Family.V4):
        parser.error("transfer supports --family v4 only")
    elif cmd == "wavefunction":
        if args.points < 2 or not args.xmax > args.xmin:
            parser.error("need --points >= 2 and --xmax > --xmin")
    if getattr(args, "level", 0) is not None and getattr(args, "level", 0) < 0:
        parser.error("--level must be >= 0")
    try:
        args.workers = worker_count()
    except ValueError as exc:
        parser.error(f"{ENV_VAR}: {exc}")


# --- output ------------------------------------------------------------------------


def _num(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_num(v) for v in row])
    return buf.getvalue()


class Payload:
    """Data for one invocation in both output shapes."""

    def __init__(self, document, header, rows, text=None, ok=True):
        self.document = document
        self.header = header
        self.rows = rows
        self.text = text
        self.ok = ok

    def render(self, fmt):
        if fmt is None and self.text is not None:
            return self.text
        if fmt == "csv":
            return _csv_text(self.header, self.rows)
        return json.dumps(_jsonable(self.document), indent=2) + "\n"


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _say(args, text):
    if args.verbose:
        print(text, file=sys.stderr)


# --- level lists ---------------------------------------------------------------------


def _parities(choice):
    return [spectra.Parity.EVEN, spectra.Parity.ODD] if choice == "both" else [spectra.Parity(choice)]


def _cubic_family_levels(family, n, parities):
    if family is Family.CUBIC:
        levels = oracle.cubic_levels(n_max=n if len(parities) == 2 else 2 * n + 2)
    elif family is Family.CUBIC_ABS:
        levels = []
        spec = PotentialSpec(family)
        for parity in parities:
            matching = oracle.Matching.DPSI_ZERO_AT_ORIGIN if parity is spectra.Parity.EVEN else \
                oracle.Matching.PSI_ZERO_AT_ORIGIN
            top = 4.0
            found = []
            while len(found) < n and top < 1e4:
                top *= 2.0
                found = oracle.shoot_levels(spec, matching, 1e-3, top, n, 0.1, step=oracle.CUBIC_STEP)
            levels += found
    else:
        raise DomainError("-|x|^3 has no decaying side, so no discrete levels are defined")
    return [lv for lv in levels if lv.parity in parities]


def collect_levels(family, V0, a, n, parity="both", nonphysical=False, E_max=None):
    """Lowest ``n`` levels of ``family`` across the requested parities, sorted by energy."""
    parities = _parities(parity)
    levels = []
    if family in WELL_FAMILY:
        search = spectra.nonphysical_states if nonphysical else spectra.special_states_well_family
        for p in parities:
            levels += search(V0, a, p, n_max=n)
    elif nonphysical:
        raise DomainError("non-physical roots exist only for the v4/v5/v6 family")
    elif family in VALLEY_FAMILY:
        for p in parities:
            levels += spectra.special_states_valley_family(V0, a, p, n_max=n, E_max=E_max, raise_on_exhaustion=False)
        if len(levels) < n:
            raise ScanExhaustedError(f"only {len(levels)} levels below the energy ceiling; raise --emax", levels)
    else:
        levels = _cubic_family_levels(family, n, parities)
    return sorted(levels, key=lambda lv: lv.E)[:n]


def _level_record(lv):
    return {"E": lv.E, "parity": lv.parity.value, "condition": lv.condition.value,
            "residual": lv.residual, "physical": lv.physical}


def _levels_payload(family, V0, a, levels, extra_meta=None):
    meta = {"tolerances": TOLERANCES}
    meta.update(extra_meta or {})
    doc = {"family": family.value, "v0": V0, "a": a, "levels": [_level_record(lv) for lv in levels], "meta": meta}
    rows = [(lv.E, lv.parity.value, lv.condition.value, lv.residual) for lv in levels]
    return Payload(doc, ["E", "parity", "condition", "residual"], rows)


def _summary(levels):
    return "\n".join(f"E{i} = {lv.E:.3f} ({lv.parity.value}, {lv.condition.value})" for i, lv in enumerate(levels))


def _pick_level(args):
    levels = collect_levels(args.family, args.v0, args.a, args.level + 1, args.parity)
    if len(levels) <= args.level:
        raise DomainError(f"only {len(levels)} levels available; --level {args.level} is out of range")
    return levels[args.level]


# --- subcommands -------------------------------------------------------------------


def cmd_spectrum(args):
    levels = collect_levels(args.family, args.v0, args.a, args.n, args.parity, args.nonphysical, args.emax)
    _say(args, _summary(levels))
    return _levels_payload(args.family, args.v0, args.a, levels, {"nonphysical": args.nonphysical})


def cmd_scatter(args):
    fam = args.family
    if fam is Family.V4:
        func = scattering.amplitudes_v4
    else:
        func = scattering.amplitudes_v2_verbatim if args.verbatim else scattering.amplitudes_v2
    energies = np.linspace(args.emin, args.emax, args.steps) if args.steps > 1 else np.array([args.emin])
    results = parallel_map(functools.partial(func, V0=args.v0, a=args.a), energies.tolist(), args.workers)
    header = ["E", "ReA", "ImA", "ReB", "ImB", "R", "T"]
    rows = [(r.E, r.A.real, r.A.imag, r.B.real, r.B.imag, r.R, r.T) for r in results]
    if args.verbatim:
        header.append("unitarity_defect")
        rows = [row + (r.unitarity_defect,) for row, r in zip(rows, results)]
    doc = {"family": fam.value, "v0": args.v0, "a": args.a, "verbatim": args.verbatim,
           "rows": [dict(zip(header, row)) for row in rows]}
    _say(args, f"{len(rows)} energies; max |R + T - 1| = {max(abs(r.R + r.T - 1.0) for r in results):.3e}")
    return Payload(doc, header, rows)


def _grid_payload(args, grid, level, family, V0, a):
    doc = {"family": family.value, "v0": V0, "a": a, "E": level.E, "parity": level.parity.value,
           "condition": level.condition.value, "normalized": grid.normalized,
           "sign_flip_at_origin": grid.sign_flip_at_origin, "x": grid.xs, "psi": grid.psi}
    _say(args, f"E = {level.E:.3f} ({level.parity.value}); {grid.xs.size} points")
    return Payload(doc, ["x", "psi"], list(zip(grid.xs.tolist(), grid.psi.tolist())))


def cmd_wavefunction(args):
    level = _pick_level(args)
    fam = args.family
    if fam in CUBIC_FAMILY:
        step = (args.xmax - args.xmin) / (args.points - 1)
        spec = PotentialSpec(fam)
        grid = oracle.shooting_wavefunction(spec, level, args.xmin, max(args.xmax, level.E ** (1 / 3) + 6.0), step)
        grid = _clip(grid, args.xmin, args.xmax)
    else:
        grid = spectra.wavefunction(PotentialSpec(fam, args.v0, args.a), level, args.xmin, args.xmax, args.points,
                                    cosmetic_sign_flip=args.cosmetic_flip)
    return _grid_payload(args, grid, level, fam, args.v0, args.a)


def _clip(grid, lo, hi):
    mask = (grid.xs >= lo - 1e-12) & (grid.xs <= hi + 1e-12)
    grid.xs, grid.psi = grid.xs[mask], grid.psi[mask]
    return grid


def cmd_transfer(args):
    result = scattering.amplitudes_v4(args.energy, args.v0, args.a)
    m = scattering.transfer_matrix(result)
    image = m.apply([1.0, 1.0])
    det = complex(m.det)
    doc = {"family": "v4", "v0": args.v0, "a": args.a, "E": args.energy,
           "m11": m.m11, "m12": m.m12, "m21": m.m21, "m22": m.m22, "det": det, "M_times_11": image}
    header = ["E", "Re_m11", "Im_m11", "Re_m12", "Im_m12", "Re_m21", "Im_m21", "Re_m22", "Im_m22", "Re_det", "Im_det"]
    row = (args.energy, m.m11.real, m.m11.imag, m.m12.real, m.m12.imag, m.m21.real, m.m21.imag,
           m.m22.real, m.m22.imag, det.real, det.imag)
    _say(args, f"M (1,1) = ({image[0].real:.3f}{image[0].imag:+.3f}i, {image[1].real:.3f}{image[1].imag:+.3f}i)")
    return Payload(doc, header, [row])


def cmd_poles(args):
    E_range = None if args.emax is None else (0.0, args.emax)
    levels = scattering.find_poles(args.family, args.v0, args.a, True, E_range, n_max=args.n)
    _say(args, _summary(levels))
    return _levels_payload(args.family, args.v0, args.a, levels, {"sign_flipped": True})


def cmd_cubic(args):
    n = args.n if args.wavefunction is None else max(args.n, args.wavefunction + 1)
    levels = oracle.cubic_levels(n_max=n, x_right=args.x_right, x_left=args.x_left, step=args.step)
    _say(args, _summary(levels))
    if args.wavefunction is None:
        return _levels_payload(Family.CUBIC, None, None, levels, {"x_left": args.x_left, "step": args.step})
    if len(levels) <= args.wavefunction:
        raise DomainError(f"only {len(levels)} levels found")
    level = levels[args.wavefunction]
    grid = oracle.cubic_wavefunction(level, x_left=args.x_left, x_right=args.x_right, step=args.step)
    return _grid_payload(args, grid, level, Family.CUBIC, None, None)


def moment_step(spec, E, cutoff, a=1.0):
    """Grid step resolving the shortest local wavelength on |x| <= cutoff."""
    xs = np.linspace(-cutoff, cutoff, 4001)
    k_max = math.sqrt(max(float(np.max(E - evaluate(spec, xs))), 1e-12))
    return min(1e-3 * a, 2.0 * math.pi / (k_max * MOMENT_POINTS_PER_WAVELENGTH))


def cmd_moments(args):
    level = _pick_level(args)
    fam = args.family
    spec = PotentialSpec(fam, args.v0, args.a)
    L = args.cutoff
    step = args.step or moment_step(spec, level.E, L, args.a)
    n_points = int(math.ceil(2.0 * L / step)) + 1
    if n_points > MAX_GRID_POINTS:
        raise DomainError(f"cutoff {L:g} needs {n_points} grid points; choose a smaller cutoff or pass --step")
    if fam in CUBIC_FAMILY:
        grid = oracle.shooting_wavefunction(spec, level, -L, max(L, level.E ** (1 / 3) + 6.0), 2.0 * L / (n_points - 1))
    else:
        grid = spectra.wavefunction(spec, level, -L, L, n_points)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        value = oracle.moments(grid, args.observable, args.power, L)
    for w in caught:
        print(f"besselwell: warning: {w.message}", file=sys.stderr)
    doc = {"family": fam.value, "v0": args.v0, "a": args.a, "E": level.E, "parity": level.parity.value,
           "observable": args.observable, "power": args.power, "cutoff": L, "step": grid.step, "value": value}
    if args.observable == "p" and args.power % 2 == 1:
        doc["note"] = "odd powers of p vanish for a real wavefunction"
    _say(args, f"<{args.observable}^{args.power}> on |x| <= {L:g}: {value:.6g}")
    return Payload(doc, ["E", "observable", "power", "cutoff", "value"],
                   [(level.E, args.observable, args.power, L, value)])


def cmd_validate(args):
    checks = run_suite()
    passed = sum(c.passed for c in checks)
    summary = f"{passed}/{len(checks)} checks passed"
    doc = {"checks": [{"name": c.name, "deviation": c.deviation, "tolerance": c.tolerance, "passed": c.passed}
                      for c in checks], "summary": summary}
    text = "".join(c.line() + "\n" for c in checks) + summary + "\n"
    if args.format is not None:
        print(summary, file=sys.stderr)
    return Payload(doc, ["name", "deviation", "tolerance", "passed"],
                   [(c.name, c.deviation, c.tolerance, c.passed) for c in checks],
                   text=text, ok=passed == len(checks))


COMMANDS = {
    "spectrum": cmd_spectrum,
    "scatter": cmd_scatter,
    "wavefunction": cmd_wavefunction,
    "transfer": cmd_transfer,
    "poles": cmd_poles,
    "cubic": cmd_cubic,
    "moments": cmd_moments,
    "validate": cmd_validate,
}


def run(argv=None):
    """Execute one CLI invocation and return its exit code."""
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.verbose:
        print(f"besselwell {__version__}, python {platform.python_version()}, numpy {np.__version__}, "
              f"workers {args.workers}", file=sys.stderr)
    try:
        payload = COMMANDS[args.command](args)
        _write(payload.render(args.format), args.output)
    except BesselWellError as exc:
        print(f"besselwell: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"besselwell: error: {exc}", file=sys.stderr)
        return 1
    return 0 if payload.ok else 1


def main():
    sys.exit(run())
