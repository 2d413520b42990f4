"""Command-line interface: ``slantix`` or ``python -m slantix``.

Exit codes
----------
0  success
1  a verification or comparison check failed
2  invalid arguments or configuration
3  parameter outside a family's domain, a singular closed form, or a curve
   the checks cannot be evaluated on (vanishing curvature)
4  file could not be read or written
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .errors import (DegenerateError, DomainError, QuadratureError, SingularParameterError,
                     SlantixError)
from .families import FAMILIES, ROUTES, build_curve, get_family, make_profile, t_to_s
from .figures import subfigures
from .oracle import IntegratorConfig, seeded_oracle
from .profiles import Branch, SlantParameters, parse_ratio
from .verify import (ORACLE_TOL, all_passed, compare_curves, darboux_checks,
                     sigma_check, slant_angle_check, slant_suite)

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3, 4

SEED_ENV = "SLANTIX_SEED"  # reserved; nothing in slantix is random

# default ranges: n*t for t-families, mu*s for precession, s otherwise
_DEFAULT_RANGE = {
    "salkowski": (-0.4, 0.4),
    "anti-salkowski": (0.12, 1.5),
    "precession": (-1.2, 1.2),
}
_DEFAULT_S = (-2.0, 2.0)
_DEFAULT_COUNT = 2001


class UsageError(ValueError):
    pass


def parse_grid(text):
    """``"a:b:count"`` -> ``numpy.linspace(a, b, count)``; a and b may be ratios."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must look like a:b:count, got {text!r}")
    try:
        a, b = parse_ratio(parts[0]), parse_ratio(parts[1])
        count = int(parts[2])
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from None
    if count < 2:
        raise argparse.ArgumentTypeError("grid count must be at least 2")
    if not a < b:
        raise argparse.ArgumentTypeError("grid start must be below its end")
    return np.linspace(a, b, count)


def _ratio(text):
    try:
        return parse_ratio(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number or ratio: {text!r}") from exc


def _positive(text):
    value = _ratio(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def read_config(path):
    """Plain ``key = value`` lines; ``#`` starts a comment.  Keys use option names."""
    values = {}
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    for number, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{number}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


# ---------------------------------------------------------------------------
# parser


def _add_family_args(p, grid=True):
    g = p.add_argument_group("curve")
    g.add_argument("--family", choices=sorted(FAMILIES), help="curve family (see list-families)")
    g.add_argument("--n", type=_ratio, help="cosine of the slant angle, e.g. 1/3 or 0.25")
    g.add_argument("--mu", type=_positive, help="precession frequency (default: m)")
    g.add_argument("--mu-eq-m", action="store_true", help="set mu = m explicitly")
    g.add_argument("--sign", default="+", choices=["+", "-"], help="sign of tau/kappa")
    g.add_argument("--branch", default="arcsin", choices=[b.value for b in Branch])
    g.add_argument("--kappa0", type=_positive, default=1.0, help="helix curvature")
    g.add_argument("--tau0", type=_ratio, default=0.0, help="helix torsion")
    g.add_argument("--ratio", type=_ratio, default=1.0, help="general-helix tau/kappa")
    if grid:
        g.add_argument("--t", type=parse_grid, metavar="A:B:COUNT", help="grid in slant parameter t")
        g.add_argument("--s", type=parse_grid, metavar="A:B:COUNT", help="grid in arc length s")
        g.add_argument("--route", choices=ROUTES, default=None,
                       help="generator (default closed-form for slant families, oracle otherwise)")


def _add_integrator_args(p):
    g = p.add_argument_group("integrator")
    g.add_argument("--step", type=_positive, default=1e-4, help="RK4 step (default 1e-4)")
    g.add_argument("--renormalize-every", type=int, default=1, help="Gram-Schmidt interval in steps")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="slantix", description="Synthesize and verify space curves from intrinsic equations.")
    parser.add_argument("--config", help="key = value file mirroring the flags (flags win)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a curve and write it to a file")
    _add_family_args(p)
    _add_integrator_args(p)
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--format", choices=["csv", "obj", "dat"], help="default: from the suffix")

    p = sub.add_parser("verify", help="run the check suite and emit a JSON report")
    p.add_argument("--in", dest="infile", help="curve CSV written by generate (else built inline)")
    _add_family_args(p)
    _add_integrator_args(p)
    p.add_argument("--report", help="write the JSON bundle here (default: stdout)")
    p.add_argument("--no-oracle", action="store_true", help="skip the oracle comparison")

    p = sub.add_parser("compare", help="closed form against the seeded oracle")
    _add_family_args(p)
    _add_integrator_args(p)
    p.add_argument("--against", choices=["oracle", "natural"], default="oracle")
    p.add_argument("--tol", type=_positive, default=ORACLE_TOL)
    p.add_argument("--report", help="write the JSON report here")

    p = sub.add_parser("figure", help="emit the data behind one figure")
    p.add_argument("which", type=int, choices=[1, 2, 3])
    p.add_argument("--outdir", default=".", help="directory for the CSV and .dat files")
    p.add_argument("--route", choices=ROUTES, default="closed-form")
    _add_integrator_args(p)

    sub.add_parser("list-families", help="describe the available families")
    return parser


def _config_defaults(subparser, values, command):
    known = {}
    for action in subparser._actions:
        for opt in action.option_strings:
            known[opt.lstrip("-").replace("-", "_")] = action
        known.setdefault(action.dest, action)
    defaults = {}
    for key, value in values.items():
        action = known.get(key)
        if action is None or not action.option_strings:
            raise UsageError(f"unknown config key {key!r} for {command}")
        if isinstance(action, argparse._StoreTrueAction):
            defaults[action.dest] = value.lower() in ("1", "true", "yes", "on")
            continue
        if action.choices is not None and value not in [str(c) for c in action.choices]:
            raise UsageError(f"config {key} = {value!r} not in {list(action.choices)}")
        try:
            defaults[action.dest] = action.type(value) if action.type else value
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"config {key}: {exc}") from None
    return defaults


def _join_grid_values(argv):
    # "-1.2:1.2:2001" starts with a dash and would be taken for an option
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--t", "--s") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def parse_args(argv=None):
    """Parse ``argv``, folding in ``--config`` values as defaults below the flags."""
    argv = _join_grid_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    first, rest = pre.parse_known_args(argv)
    command = next((tok for tok in rest if not tok.startswith("-")), None)
    subparsers = parser._subparsers._group_actions[0].choices
    if first.config and command in subparsers:
        subparser = subparsers[command]
        defaults = _config_defaults(subparser, read_config(first.config), command)
        subparser.set_defaults(**defaults)
        for action in subparser._actions:
            if action.dest in defaults:
                action.required = False
    return parser.parse_args(argv)


# ---------------------------------------------------------------------------
# helpers


def _params(args):
    fam = get_family(args.family)
    if not fam.slant:
        return None
    if args.n is None:
        raise UsageError(f"--n is required for {args.family}")
    return SlantParameters(args.n, branch=args.branch, sign=args.sign)


def _mu(args, params):
    if args.family != "precession":
        return None
    if args.mu is not None and args.mu_eq_m and abs(args.mu - params.m) > 1e-12 * params.m:
        raise UsageError("--mu and --mu-eq-m disagree")
    return params.m if args.mu is None else args.mu


def _config(args):
    return IntegratorConfig(step=args.step, renormalize_every=args.renormalize_every)


def _route(args):
    fam = get_family(args.family)
    route = args.route or ("closed-form" if fam.slant else "oracle")
    if route not in fam.routes:
        raise UsageError(f"route {route!r} unavailable for {args.family}")
    return route


def _grid(args, route, params, mu):
    """The sampling grid in the parameter ``build_curve`` expects for ``route``."""
    fam = get_family(args.family)
    if args.t is not None and args.s is not None:
        raise UsageError("give either --t or --s, not both")
    wants_t = route in ("closed-form", "parametric") and fam.grid == "t"
    if wants_t:
        if args.s is not None:
            raise UsageError(f"{args.family} {route} samples are placed in t; use --t")
        if args.t is not None:
            return args.t
        lo, hi = _DEFAULT_RANGE[args.family]
        return np.linspace(lo / params.n, hi / params.n, _DEFAULT_COUNT)
    if args.s is not None:
        return args.s
    if args.t is not None:
        if fam.grid != "t":
            raise UsageError(f"{args.family} is sampled in s; use --s")
        s = np.sort(t_to_s(make_profile(args.family, params), args.t))
        return np.linspace(s[0], s[-1], args.t.size)
    if args.family == "precession":
        lo, hi = _DEFAULT_RANGE["precession"]
        return np.linspace(lo / mu, hi / mu, _DEFAULT_COUNT)
    if fam.slant:
        lo, hi = _DEFAULT_RANGE[args.family]
        t = np.linspace(lo / params.n, hi / params.n, _DEFAULT_COUNT)
        s = np.sort(t_to_s(make_profile(args.family, params), t))
        return np.linspace(s[0], s[-1], _DEFAULT_COUNT)
    return np.linspace(*_DEFAULT_S, _DEFAULT_COUNT)


def _build(args):
    if args.family is None:
        raise UsageError("--family is required")
    params = _params(args)
    mu = _mu(args, params) if params else None
    route = _route(args)
    grid = _grid(args, route, params, mu)
    curve = build_curve(args.family, grid, route, params, mu, _config(args),
                        args.kappa0, args.tau0, args.ratio)
    return curve, route


def _summary(curve, route):
    return (f"{len(curve)} samples, s in [{curve.s[0]:.9g}, {curve.s[-1]:.9g}] "
            f"(span {curve.s[-1] - curve.s[0]:.9g}), route {route}")


def _emit_json(bundle, path, out):
    if path:
        io.write_json(bundle, path)
    else:
        out.write(json.dumps(bundle, indent=2) + "\n")


def suite_for(curve, family=None, include_oracle=True, config=None):
    """Checks appropriate to the family: slant suite, or the control checks."""
    fam = FAMILIES.get(family) if family else None
    if curve.params is not None:
        return slant_suite(curve, oracle_config=config, include_oracle=include_oracle)
    reports = []
    if fam is not None and fam.name == "general-helix":
        angle = slant_angle_check(curve)
        angle.tolerance, angle.passed = None, None
        angle.notes = (angle.notes + "; not asserted for a general helix").lstrip("; ")
        reports += [sigma_check(curve, expected=0.0, tolerance=1e-8), angle]
    else:
        reports += [slant_angle_check(curve), sigma_check(curve)]
    if curve.has_frames and np.all(np.isfinite(curve.kappa)):
        reports += darboux_checks(curve)
    return reports


# ---------------------------------------------------------------------------
# commands


def cmd_generate(args, out):
    curve, route = _build(args)
    io.write_curve(curve, args.out, args.format)
    out.write(f"wrote {args.out}: {_summary(curve, route)}, generator {curve.generator.value}\n")
    return EXIT_OK


def cmd_verify(args, out):
    if args.infile:
        curve = io.read_csv(args.infile)
        if args.family:
            params = _params(args)
            curve.params = params
            curve.profile = make_profile(args.family, params, _mu(args, params) if params else None,
                                         args.kappa0, args.tau0, args.ratio)
            curve.orientation = getattr(curve.profile, "orientation", 1)
        else:
            curve.profile = None
        source = args.infile
    else:
        curve, route = _build(args)
        source = f"{args.family} via {route}"
    reports = suite_for(curve, args.family, not args.no_oracle, _config(args))
    for r in reports:
        out.write(r.line() + "\n")
    bundle = io.report_bundle(reports, command="verify", source=source, family=args.family,
                              n=args.n, samples=len(curve))
    _emit_json(bundle, args.report, out)
    return EXIT_OK if all_passed(reports) else EXIT_FAIL


def cmd_compare(args, out):
    if args.family is None:
        raise UsageError("--family is required")
    params = _params(args)
    if params is None:
        raise UsageError("compare needs a slant family with a closed form")
    mu = _mu(args, params)
    curve = build_curve(args.family, _grid(args, "closed-form", params, mu), "closed-form", params, mu)
    if args.against == "oracle":
        other = seeded_oracle(curve, _config(args))
    else:
        other = build_curve(args.family, np.linspace(curve.s[0], curve.s[-1], len(curve)),
                            "natural", params, mu)
    report = compare_curves(curve, other, args.tol)
    report.check = f"closed_form_vs_{args.against}"
    if report.passed is False and args.against == "oracle":
        report.notes += (f"; RK4 global error scales like step^4, "
                         f"step {args.step:g} is too coarse for tolerance {args.tol:g}")
    out.write(report.line() + "\n")
    if report.notes:
        out.write(f"  {report.notes}\n")
    if args.report:
        io.write_json(io.report_bundle([report], command="compare", family=args.family, n=args.n,
                                       step=args.step), args.report)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_figure(args, out):
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    curves, labels = [], []
    for sf in subfigures(args.which):
        curve = sf.build(args.route, _config(args))
        path = outdir / f"{sf.label}.csv"
        io.write_csv(curve, path)
        curves.append(curve)
        labels.append(f"{sf.label}: {sf.family} n={sf.n}, {sf.lo:g} <= "
                      f"{'mu*s' if sf.family == 'precession' else 'n*t'} <= {sf.hi:g}, {sf.count} samples")
        out.write(f"wrote {path}: {_summary(curve, args.route)}\n")
    dat = outdir / f"fig{args.which}.dat"
    io.write_gnuplot(curves, dat, labels)
    out.write(f"wrote {dat}\n")
    return EXIT_OK


def cmd_list_families(args, out):
    for fam in FAMILIES.values():
        kind = "slant" if fam.slant else "control"
        out.write(f"{fam.name:15s} {kind:8s} grid {fam.grid}  routes {','.join(fam.routes)}\n"
                  f"{'':15s} {fam.summary}\n")
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "compare": cmd_compare,
    "figure": cmd_figure,
    "list-families": cmd_list_families,
}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = parse_args(argv)
        return COMMANDS[args.command](args, out)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    except (DomainError, SingularParameterError, QuadratureError, DegenerateError) as exc:
        err.write(f"slantix: error: {exc}\n")
        return EXIT_DOMAIN
    except OSError as exc:
        err.write(f"slantix: error: {exc}\n")
        return EXIT_IO
    except (ValueError, SlantixError) as exc:
        err.write(f"slantix: error: {exc}\n")
        return EXIT_INVALID


def entry():
    sys.exit(main())
