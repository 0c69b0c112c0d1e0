"""Command-line front end: ``python -m zetalab <command>``.

Commands
--------
verify   run verification suites and write a JSON report
zeros    locate zeros on the critical line and write a CSV
scan     tabulate Z, the boundary value or the domain limit along the line
eigfun   sample the eigenfunction Psi_s(x)
report   re-render a stored JSON report

Exit codes: 0 success / all checks pass, 1 a check failed, 2 configuration
error, 3 I/O error.

The ``--config`` file is JSON with keys mirroring `RunConfig`::

    {"suites": ["su11", "borel"], "tolerances": {"s1": 1e-9},
     "allow_loose": false, "n_max": 128, "m_max": 12, "height_max": 50,
     "threads": 2, "seed": 1, "out": "report.json"}

``threads`` defaults to the number of CPUs; the report does not depend on it.

Command-line flags take precedence over the file, which takes precedence
over the defaults.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import json
import logging
import sys

import numpy as np

from . import eigensystem, specfun, suites, weightspace
from .operators import ModelParams
from .report import VerificationReport
from .specfun import DomainError

log = logging.getLogger("zetalab")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3


class _ArgumentError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage, which is our config code too."""

    def error(self, message):
        raise _ArgumentError(message)


def _tolerance(text):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError("expected NAME=VALUE")
    try:
        return name.strip(), float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance value {value!r}") from None


def build_parser():
    p = _Parser(prog="zetalab", description=__doc__.split("\n\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", action="append", help=f"one of {', '.join(suites.SUITES)}; repeatable")
    v.add_argument("--tolerance", action="append", type=_tolerance, metavar="NAME=VALUE")
    v.add_argument("--allow-loose", action="store_true", default=None,
                   help="permit tolerances looser than the defaults")
    v.add_argument("--threads", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--height-max", type=float)
    v.add_argument("--n-max", type=int)
    v.add_argument("--m-max", type=int)
    v.add_argument("--out", help="path of the JSON report")
    v.add_argument("--config", help="JSON configuration file")

    z = sub.add_parser("zeros", help="locate zeros and write a CSV")
    z.add_argument("--height-max", type=float, default=50.0)
    z.add_argument("--threads", type=int, default=1)
    z.add_argument("--out", help="CSV path (default: stdout)")

    s = sub.add_parser("scan", help="tabulate a function along the critical line")
    s.add_argument("what", choices=("Z", "boundary", "domain_limit"))
    s.add_argument("--t-min", type=float, default=10.0)
    s.add_argument("--t-max", type=float, default=30.0)
    s.add_argument("--step", type=float, default=0.05)
    s.add_argument("--out", help="CSV path (default: stdout)")

    e = sub.add_parser("eigfun", help="sample Psi_s(x)")
    e.add_argument("--s", type=complex, default=complex(0.5, suites.KNOWN_ZEROS[0]),
                   help="spectral parameter, e.g. 0.5+14.1347j")
    e.add_argument("--t", type=float, default=0.25, help="model parameter, |t| < 1/3")
    e.add_argument("--x-max", type=float, default=10.0)
    e.add_argument("--num", type=int, default=41)
    e.add_argument("--n-max", type=int)
    e.add_argument("--out", help="CSV path (default: stdout)")

    r = sub.add_parser("report", help="re-render a stored report")
    r.add_argument("path")
    return p


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _run_config(args):
    data = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise suites.ConfigError("configuration file must hold a JSON object")
    flags = {
        "suites": tuple(args.suite) if args.suite else None,
        "allow_loose": args.allow_loose,
        "threads": args.threads,
        "seed": args.seed,
        "height_max": args.height_max,
        "n_max": args.n_max,
        "m_max": args.m_max,
        "out": args.out,
    }
    data.update({k: v for k, v in flags.items() if v is not None})
    if args.tolerance:
        tols = dict(data.get("tolerances", {}))
        tols.update(dict(args.tolerance))
        data["tolerances"] = tols
    return suites.RunConfig.from_mapping(data)


def cmd_verify(args):
    cfg = _run_config(args)
    report = suites.run(cfg)
    for line in report.summary_lines():
        print(line)
    n_fail = len(report.failures())
    print(f"{len(report.checks) - n_fail} passed, {n_fail} failed")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(report.dumps())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_zeros(args):
    zeros = eigensystem.find_zeros(args.height_max, threads=args.threads)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "height", "residual", "eigenvalue_re", "eigenvalue_im"])
        for z in zeros:
            e = z.eigenvalue
            w.writerow([z.index, repr(z.height), f"{z.residual:.6e}", repr(e.real), repr(e.imag)])
    return EXIT_OK


def _scan_values(what, t):
    s = complex(0.5, t)
    if what == "Z":
        return complex(specfun.hardy_z(t).real, 0.0)
    if what == "boundary":
        return complex(eigensystem.boundary_value_closed(s, ModelParams.beta_one()))
    return complex(weightspace.domain_limit_closed(s))


def cmd_scan(args):
    if not args.step > 0:
        raise suites.ConfigError("step must be positive")
    n = int(np.floor((args.t_max - args.t_min) / args.step + 1e-9)) + 1
    ts = args.t_min + args.step * np.arange(max(n, 0))
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "re", "im", "abs"])
        for t in ts:
            v = _scan_values(args.what, float(t))
            w.writerow([repr(float(t)), repr(v.real), repr(v.imag), repr(abs(v))])
    return EXIT_OK


def cmd_eigfun(args):
    params = ModelParams(args.t)
    xs = np.linspace(0.0, args.x_max, args.num)
    with _output(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "re", "im", "error"])
        for x in xs:
            r = eigensystem.eigenfunction(args.s, params, float(x), n_max=args.n_max,
                                          full_output=True)
            v = complex(r.value)
            w.writerow([repr(float(x)), repr(v.real), repr(v.imag), f"{r.error:.3e}"])
    return EXIT_OK


def cmd_report(args):
    with open(args.path) as fh:
        report = VerificationReport.loads(fh.read())
    for line in report.summary_lines():
        print(line)
    for name, secs in sorted(report.timings.items()):
        print(f"timing  {name:12s} {secs:8.3f} s")
    print(f"status: {report.status}")
    return EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "zeros": cmd_zeros, "scan": cmd_scan,
            "eigfun": cmd_eigfun, "report": cmd_report}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except _ArgumentError as exc:
        print(f"zetalab: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (suites.ConfigError, DomainError, json.JSONDecodeError, TypeError) as exc:
        print(f"zetalab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        # schema mismatch in a stored report, bad parameter values
        print(f"zetalab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"zetalab: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
