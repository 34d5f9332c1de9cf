"""Command line front-end.

Subcommands:

``run``
    Full campaign over a config document.  Writes machine-readable
    reports and exits 0 only when every row passed.
``identities``
    Same campaign restricted to the representation-identity checks.
``convergence``
    Refinement study on uniform-grid scenarios, printed as a table.
``fixtures``
    Compare (default) or regenerate the brute-force fixture file.

Exit codes: 0 all checks passed, 1 at least one failed or errored row,
2 the config could not be parsed or validated.
"""

import argparse
import os
import sys

from . import __version__
from .campaign import materialize_functions, run_campaign
from .config import load_scenarios, scenario_from_dict
from .errors import ParseError, TsverifyError, UnsupportedKind, ValidationError
from .fixtures import diff_fixtures, write_fixtures
from .inequalities import DEFAULT_TOL_COEFF, continuous_convergence_study

IDENTITY_CHECKS = ("identities", "averaged_identity")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tsverify",
        description="Numerical verification of octant representation "
        "identities and deviation/product-mean bounds on product time scales.",
    )
    parser.add_argument(
        "--version", action="version", version="%(prog)s " + __version__
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run every configured check")
    run.add_argument("config", help="path to a scenario config document")
    run.add_argument("--out", help="directory for report.json and report.csv")
    run.add_argument("--workers", type=int, default=1, help="process pool size")
    run.add_argument(
        "--tol-abs",
        type=float,
        default=None,
        help="absolute tolerance override for inequality margins",
    )
    run.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="stdout format when --out is not given",
    )

    ident = sub.add_parser(
        "identities", help="run only the representation-identity checks"
    )
    ident.add_argument("config", help="path to a scenario config document")
    ident.add_argument("--out", help="directory for report.json and report.csv")
    ident.add_argument("--workers", type=int, default=1, help="process pool size")
    ident.add_argument("--tol-abs", type=float, default=None, help=argparse.SUPPRESS)
    ident.add_argument(
        "--format", choices=("json", "csv"), default="json",
        help="stdout format when --out is not given",
    )

    conv = sub.add_parser(
        "convergence", help="refinement study on uniform-grid scenarios"
    )
    conv.add_argument("config", help="path to a scenario config document")
    conv.add_argument(
        "--levels",
        type=int,
        default=None,
        help="number of halvings (overrides each scenario's max_level)",
    )
    conv.add_argument("--tol-abs", type=float, default=None)

    fix = sub.add_parser(
        "fixtures", help="check the brute-force fixture file against a fresh run"
    )
    fix.add_argument(
        "--regenerate",
        action="store_true",
        help="rewrite the fixture file instead of diffing",
    )
    fix.add_argument(
        "--dir",
        default=os.path.join("tests", "fixtures"),
        help="fixture directory (default: tests/fixtures)",
    )
    return parser


def _read_config(path):
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError("cannot read config %r: %s" % (path, e)) from e


def _seed_override():
    raw = os.environ.get("TSVERIFY_SEED")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(
            "TSVERIFY_SEED must be an integer, got %r" % raw
        ) from None


def _emit_report(report, notes, args, out):
    for note in notes:
        print("error: %s" % note, file=sys.stderr)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        json_path = os.path.join(args.out, "report.json")
        csv_path = os.path.join(args.out, "report.csv")
        with open(json_path, "w") as fh:
            fh.write(report.to_json())
        with open(csv_path, "w") as fh:
            fh.write(report.to_csv())
        s = report.summary
        print(
            "wrote %s and %s: %d checks, %d passed, %d failed"
            % (json_path, csv_path, s["total"], s["passed"], s["failed"]),
            file=out,
        )
    else:
        out.write(report.to_json() if args.format == "json" else report.to_csv())
    return 0 if report.all_passed else 1


def _cmd_run(args, out):
    text = _read_config(args.config)
    report, notes = run_campaign(
        text,
        workers=args.workers,
        tol_abs=args.tol_abs,
        seed_override=_seed_override(),
    )
    return _emit_report(report, notes, args, out)


def _cmd_identities(args, out):
    text = _read_config(args.config)
    scenarios = []
    for cfg in load_scenarios(text):
        raw = dict(cfg.raw)
        kept = [c for c in cfg.checks if c in IDENTITY_CHECKS]
        raw["checks"] = kept or list(IDENTITY_CHECKS)
        scenarios.append(scenario_from_dict(raw, default_name=cfg.name))
    report, notes = run_campaign(
        scenarios,
        workers=args.workers,
        tol_abs=args.tol_abs,
        seed_override=_seed_override(),
    )
    return _emit_report(report, notes, args, out)


def _fmt_rate(rate):
    return "   --  " if rate is None else "%7.3f" % rate


def _cmd_convergence(args, out):
    text = _read_config(args.config)
    scenarios = load_scenarios(text)
    seed_override = _seed_override()
    status = 0
    for cfg in scenarios:
        levels = args.levels if args.levels is not None else cfg.max_level
        tol_abs = args.tol_abs if args.tol_abs is not None else cfg.tol_abs
        box = cfg.box()
        for fid, fn, err in materialize_functions(cfg, seed_override):
            print("%s / %s" % (cfg.name, fid), file=out)
            if err is not None:
                print("  error: %s" % err, file=out)
                status = max(status, 1)
                continue
            try:
                record = continuous_convergence_study(
                    fn, box, levels, tol_abs=tol_abs
                )
            except UnsupportedKind as e:
                print("  skipped: %s" % e, file=out)
                continue
            except TsverifyError as e:
                print("  error: %s" % e, file=out)
                status = max(status, 1)
                continue
            print(
                "  %5s %14s %14s %14s %7s"
                % ("level", "lhs", "rhs", "margin", "rate"),
                file=out,
            )
            rates = (None, None) + record.rates
            for level, (lhs, rhs), rate in zip(record.levels, record.values, rates):
                margin = rhs - lhs
                print(
                    "  %5d %14.6e %14.6e %14.6e %s"
                    % (level, lhs, rhs, margin, _fmt_rate(rate)),
                    file=out,
                )
                tol = (
                    tol_abs
                    if tol_abs is not None
                    else DEFAULT_TOL_COEFF * (1.0 + abs(rhs))
                )
                if margin < -tol:
                    status = max(status, 1)
    return status


def _cmd_fixtures(args, out):
    if args.regenerate:
        path = write_fixtures(args.dir)
        print("rewrote %s" % path, file=out)
        return 0
    mismatches = diff_fixtures(args.dir)
    if not mismatches:
        print("fixtures match a fresh brute-force run", file=out)
        return 0
    for m in mismatches:
        print("mismatch: %s" % m, file=sys.stderr)
    return 1


_COMMANDS = {
    "run": _cmd_run,
    "identities": _cmd_identities,
    "convergence": _cmd_convergence,
    "fixtures": _cmd_fixtures,
}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except (ParseError, ValidationError) as e:
        print("config error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
