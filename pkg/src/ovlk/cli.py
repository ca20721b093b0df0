"""Command-line front end.

    ovlk true --pop 0,1 --pop 1,1
    ovlk estimate a.txt b.txt c.txt --alpha 1 --alpha ml --comparator
    ovlk simulate --config study.json --reps 200 --out results.csv
    ovlk table2 --seed 1234

Exit codes: 0 success, 2 usage, 3 data error, 4 numerical failure. Errors
are reported on stderr as one line, ``ovlk: error[<kind>]: <message>``.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile

from . import published
from .distributions import Convention, GroupSample, NormalParams
from .errors import DataError, OVLError, ParameterError
from .estimators import EstimatorSpec, evaluate
from .quadrature import DEFAULT_TAIL_SIGMAS, exact_ovl
from .simulation import Scenario, bundled_config, load_config, run_simulation

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4
_KIND = {EXIT_USAGE: "usage", EXIT_DATA: "data", EXIT_NUMERIC: "numerical"}


class UsageError(OVLError):
    exit_code = EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _g6(x):
    return format(x, ".6g")


# -- argument types -------------------------------------------------------------


def _pop(text):
    try:
        mu, sigma = (float(t) for t in text.split(","))
        return NormalParams(mu, sigma)
    except (ValueError, ParameterError):
        raise argparse.ArgumentTypeError(f"expected MU,SIGMA with SIGMA > 0, got {text!r}") from None


def _alpha(text):
    if text == "ml":
        return text
    try:
        value = float(text)
    except ValueError:
        value = math.nan
    if not (math.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"expected 1, 2, ml or a positive number, got {text!r}")
    return value


def _r(text):
    if text == "auto":
        return text
    try:
        value = int(text)
    except ValueError:
        value = -1
    if value < 4 or value % 2:
        raise argparse.ArgumentTypeError(f"expected auto or an even integer >= 4, got {text!r}")
    return value


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        value = 0
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        value = -1
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"expected an unsigned 64-bit integer, got {text!r}")
    return value


def _unit(text):
    try:
        value = float(text)
    except ValueError:
        value = math.nan
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"expected a number in (0, 1], got {text!r}")
    return value


def _sizes(text):
    try:
        sizes = tuple(int(t) for t in text.split(","))
    except ValueError:
        sizes = ()
    if len(sizes) != 3 or min(sizes) < 1:
        raise argparse.ArgumentTypeError(f"expected N1,N2,N3 positive integers, got {text!r}")
    return sizes


# -- data ingestion ----------------------------------------------------------------


def _strip(line):
    return line.split("#", 1)[0].strip()


def read_groups(paths):
    """Read one group per plain file, or several from a ``group,value`` CSV file."""
    groups = []
    for path in paths:
        before = len(groups)
        try:
            with open(path, encoding="utf-8") as fh:
                lines = fh.readlines()
        except FileNotFoundError:
            raise DataError(f"{path}: file not found") from None
        except OSError as exc:
            raise DataError(f"{path}: {exc.strerror}") from None
        rows = [(i, _strip(line)) for i, line in enumerate(lines, 1)]
        rows = [(i, s) for i, s in rows if s]
        if rows and rows[0][1].replace(" ", "").lower() == "group,value":
            found = {}
            for lineno, text in rows[1:]:
                parts = [p.strip() for p in text.split(",")]
                if len(parts) != 2:
                    raise DataError(f"{path}:{lineno}: expected 'group,value', got {text!r}")
                found.setdefault(parts[0], []).append(_number(parts[1], path, lineno))
            groups.extend(found.values())
        else:
            groups.append([_number(text, path, lineno) for lineno, text in rows])
        if len(groups) == before or not all(groups[before:]):
            raise DataError(f"{path}: no data values")
    return [GroupSample(i + 1, g) for i, g in enumerate(groups)]


def _number(text, path, lineno):
    try:
        value = float(text)
    except ValueError:
        raise DataError(f"{path}:{lineno}: cannot parse {text!r} as a number") from None
    if not math.isfinite(value):
        raise DataError(f"{path}:{lineno}: non-finite value {text!r}")
    return value


def atomic_write(path, text):
    """Write ``text`` to ``path`` via a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".ovlk-", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            atomic_write(out, text)
        except OSError as exc:
            raise DataError(f"{out}: {exc.strerror}") from None


# -- subcommands -------------------------------------------------------------------


def cmd_true(args):
    if len(args.pop) < 2:
        raise UsageError("need at least two --pop MU,SIGMA pairs")
    res = exact_ovl(args.pop, tol=args.tol, full_output=True)
    sys.stdout.write(
        f"{_g6(res.value)}\n"
        f"# raw={res.raw!r} r={res.r} a={_g6(res.a)} b={_g6(res.b)} "
        f"tail_sigmas={_g6(DEFAULT_TAIL_SIGMAS)} tol={args.tol:g}\n"
    )


def cmd_estimate(args):
    samples = read_groups(args.files)
    if len(samples) < 2:
        raise DataError(f"need at least two groups, got {len(samples)}")
    specs = [EstimatorSpec.simpson(a, args.r, args.convention) for a in (args.alpha or [1.0])]
    if args.comparator:
        specs.append(EstimatorSpec.comparator())
    lines = ["estimator,delta_hat,alpha,r,convention"]
    for spec in specs:
        est = evaluate(spec, samples)
        alpha = "" if est.alpha is None else _g6(est.alpha)
        r = "" if est.r is None else str(est.r)
        lines.append(f"{spec.label},{_g6(est.value)},{alpha},{r},{est.convention.value}")
    sys.stdout.write("\n".join(lines) + "\n")


def _simulation_config(args, config):
    changes = {}
    if args.reps is not None:
        changes["repetitions"] = args.reps
    if args.seed is not None:
        changes["master_seed"] = args.seed
    if getattr(args, "true_delta", None) is not None:
        if len(config.scenarios) != 1:
            raise UsageError("--true-delta needs a config with exactly one scenario; "
                             "set reference_delta per scenario in the config instead")
        s = config.scenarios[0]
        changes["scenarios"] = (Scenario(s.name, s.populations, s.sample_sizes, args.true_delta),)
    return config.replace(**changes) if changes else config


def cmd_simulate(args):
    config = load_config(args.config) if args.config else bundled_config("table2")
    config = _simulation_config(args, config)
    report = run_simulation(config, threads=args.threads)
    _emit(report.to_csv(), args.out)


def table2_rows(report, unbalanced=published.SIMULATED_SIZES[published.UNBALANCED]):
    """Published vs reproduced values for every Table 2 cell.

    Yields dicts with keys scenario, cell, sizes, metric, estimator,
    published, reproduced, diff, tol and status.
    """
    cells = {published.BALANCED: published.SIMULATED_SIZES[published.BALANCED],
             published.UNBALANCED: tuple(unbalanced)}
    for scen, blocks in published.TABLE2.items():
        for label, metrics in blocks.items():
            sizes = cells[label]
            for metric in published.METRICS:
                for est, pub in metrics[metric].items():
                    c = report.get(scen, sizes, est)
                    value = {"AV": c.av, "RB": c.rb, "RRMSE": c.rrmse, "EFF": c.eff}[metric]
                    diff = abs(value - pub)
                    tol, status = None, ""
                    if metric == "AV":
                        tol = max(0.012, 4 * c.mc_std_error)
                        status = "ok" if diff <= tol else "FLAG"
                    elif metric == "RB":
                        status = "ok" if (value > 0) == (pub > 0) else "SIGN"
                    yield dict(scenario=scen, cell=label, sizes=sizes, metric=metric,
                               estimator=est, published=pub, reproduced=value, diff=diff,
                               tol=tol, status=status)


def format_table2(rows):
    head = f"{'scen':<5}{'cell':<15}{'run':<14}{'metric':<7}{'estimator':<13}" \
           f"{'published':>11}{'reproduced':>12}{'|diff|':>10}{'tol':>10}  status"
    out = [head, "-" * len(head)]
    flagged = 0
    for row in rows:
        run = "(" + ",".join(map(str, row["sizes"])) + ")"
        tol = "" if row["tol"] is None else f"{row['tol']:.4f}"
        flagged += row["status"] in ("FLAG", "SIGN")
        out.append(
            f"{row['scenario']:<5}{row['cell']:<15}{run:<14}{row['metric']:<7}{row['estimator']:<13}"
            f"{row['published']:>11.5f}{row['reproduced']:>12.5f}{row['diff']:>10.5f}{tol:>10}  {row['status']}"
        )
    out.append(f"flagged cells: {flagged}")
    return "\n".join(out) + "\n"


def cmd_table2(args):
    config = bundled_config("table2")
    scenarios = tuple(
        Scenario(s.name, s.populations, (published.SIMULATED_SIZES[published.BALANCED], args.unbalanced_sizes),
                 s.reference_delta)
        for s in config.scenarios
    )
    config = _simulation_config(args, config.replace(scenarios=scenarios))
    report = run_simulation(config, threads=args.threads)
    text = format_table2(table2_rows(report, args.unbalanced_sizes))
    if args.out:
        _emit(report.to_csv(), args.out)
    sys.stdout.write(text)


# -- entry point -------------------------------------------------------------------


def build_parser():
    parser = _Parser(prog="ovlk", description="Overlap coefficient of k normal distributions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("true", help="reference overlap for known parameters")
    p.add_argument("--pop", type=_pop, action="append", default=[], metavar="MU,SIGMA",
                   help="population parameters (repeat for each population)")
    p.add_argument("--tol", type=float, default=1e-10, help="refinement tolerance (default 1e-10)")
    p.set_defaults(func=cmd_true)

    p = sub.add_parser("estimate", help="estimate the overlap from samples")
    p.add_argument("files", nargs="+", help="one value per line, or a group,value CSV")
    p.add_argument("--alpha", type=_alpha, action="append", metavar="{1|2|ml|A}",
                   help="transform shape; repeat for several estimators (default 1)")
    p.add_argument("--r", type=_r, default="auto", help="Simpson subintervals: auto or even int")
    p.add_argument("--convention", type=Convention, choices=list(Convention), default=Convention.MLE,
                   help="variance divisor for the Simpson estimators (default mle)")
    p.add_argument("--comparator", action="store_true", help="also report the comparator estimator")
    p.set_defaults(func=cmd_estimate)

    for name, helptext in (("simulate", "run a Monte Carlo study from a JSON config"),
                           ("table2", "reproduce the published four-scenario comparison")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--reps", type=_positive_int, help="repetitions R")
        p.add_argument("--seed", type=_seed, help="master seed")
        p.add_argument("--out", help="CSV output path (default: stdout for simulate)")
        p.add_argument("--threads", type=_positive_int, help="worker threads (default: all cores)")
        if name == "simulate":
            p.add_argument("--config", help="config path (default: bundled table2.json)")
            p.add_argument("--true-delta", type=_unit, help="reference overlap for a one-scenario config")
            p.set_defaults(func=cmd_simulate)
        else:
            p.add_argument("--unbalanced-sizes", type=_sizes, metavar="N1,N2,N3",
                           default=published.SIMULATED_SIZES[published.UNBALANCED],
                           help="sizes simulated for the unbalanced cell (default 50,100,150)")
            p.set_defaults(func=cmd_table2, seed=1234)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except OVLError as exc:
        code = exc.exit_code if exc.exit_code in _KIND else EXIT_NUMERIC
        msg = " ".join(str(exc).split())
        sys.stderr.write(f"ovlk: error[{_KIND[code]}]: {msg}\n")
        return code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
