"""Command-line front end: reports, time series, death times, sweeps, verify.

Output is CSV (default) or JSON.  Floats are printed in their shortest
round-trip representation, so identical configurations produce
byte-identical output — golden-file friendly.  All correlation values are
in nats unless ``--units bits`` is given, which rescales the displayed
ef/d1/d2/mutual-information values by 1/ln(2) and nothing else.

Death-time cells that have no finite value carry a marker string instead
of a number, in both formats: "asymptotic-only" (zero-temperature bath;
decay never finishes) or "separable" (sweep rows whose state has nothing
left to lose).

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 inapplicable request (death time of an already-separable state).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

import numpy as np

from .core import (
    StandardForm,
    StsParams,
    is_separable,
    standard_form_from_sts,
    symplectic_spectrum,
)
from .correlations import correlation_report
from .dynamics import (
    AsymptoticOnly,
    ReservoirConfig,
    esd_time_identical_baths,
    esd_time_single_bath,
    evolve,
)
from .errors import InvalidParameterError, NonPhysicalStateError, SeparableInputError
from .verification import esd_bisection, run_verification

# Canonical column order for the selectable outputs.
_OUTPUT_COLUMNS = {
    "ef": ["ef"],
    "d1": ["d1"],
    "d2": ["d2"],
    "mutual_information": ["mutual_information"],
    "kappas": ["kappa_plus", "kappa_minus", "kappa_tilde_plus", "kappa_tilde_minus"],
    "separable": ["separable"],
    "ts": ["ts"],
}
_REPORT_OUTPUTS = ["ef", "d1", "d2", "mutual_information", "kappas", "separable"]
_SWEEP_OUTPUTS = _REPORT_OUTPUTS + ["ts"]

# Fixed column schema of the `evolve` subcommand (documented in README).
_EVOLVE_COLUMNS = ["t", "b1", "b2", "c", "ef", "d1", "d2", "mutual_information", "separable"]

_LN2 = math.log(2.0)


class _CliError(Exception):
    """Invalid command-line input; maps to exit code 2."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stsdecay",
        description=(
            "Quantum correlations of two-mode squeezed thermal states and "
            "their decay in local thermal reservoirs."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, *, reservoir: bool = True) -> None:
        state = p.add_argument_group(
            "state", "either the physical parameters --n1/--n2/--r or the standard form --b1/--b2/--c"
        )
        state.add_argument("--n1", type=float, help="mean thermal photon number of mode 1")
        state.add_argument("--n2", type=float, help="mean thermal photon number of mode 2")
        state.add_argument("--r", type=float, help="squeeze parameter")
        state.add_argument("--b1", type=float, help="standard-form diagonal entry of mode 1")
        state.add_argument("--b2", type=float, help="standard-form diagonal entry of mode 2")
        state.add_argument("--c", type=float, help="standard-form cross-block magnitude")
        state.add_argument("--phi", type=float, default=0.0, help="phase (radians, default 0)")
        if reservoir:
            res = p.add_argument_group("reservoir")
            res.add_argument("--gamma1", type=float, help="damping rate of mode 1")
            res.add_argument("--nr1", type=float, help="reservoir occupancy seen by mode 1")
            res.add_argument("--gamma2", type=float, help="damping rate of mode 2")
            res.add_argument("--nr2", type=float, help="reservoir occupancy seen by mode 2")
            res.add_argument(
                "--identical", action="store_true", help="identical baths on both modes (uses --gamma/--nr)"
            )
            res.add_argument(
                "--single-bath", action="store_true", help="bath on mode 1 only (uses --gamma/--nr)"
            )
            res.add_argument("--gamma", type=float, default=1.0, help="shorthand damping rate (default 1)")
            res.add_argument("--nr", type=float, help="shorthand reservoir occupancy")
        out = p.add_argument_group("output")
        out.add_argument("--format", choices=["csv", "json"], default="csv")
        out.add_argument("--units", choices=["nats", "bits"], default="nats")
        out.add_argument("--out", help="write to this path instead of stdout")
        p.add_argument("--config", help="key=value file; command-line flags override it")

    p_report = sub.add_parser("report", help="all correlation measures of one state at one time")
    add_common(p_report)
    p_report.add_argument("--t", type=float, default=0.0, help="evolution time (default 0)")
    p_report.add_argument(
        "--outputs",
        default=",".join(_REPORT_OUTPUTS),
        help=f"comma-separated subset of {{{','.join(_REPORT_OUTPUTS)}}}",
    )

    p_evolve = sub.add_parser("evolve", help="correlation time series over a time grid")
    add_common(p_evolve)
    grid = p_evolve.add_argument_group("grid")
    grid.add_argument("--t-start", type=float, default=0.0)
    grid.add_argument("--t-end", type=float, required=True)
    grid.add_argument("--points", type=int, default=200)
    grid.add_argument("--log-spacing", action="store_true", help="logarithmic grid (needs --t-start > 0)")

    p_esd = sub.add_parser("esd", help="entanglement sudden-death time")
    add_common(p_esd)
    p_esd.add_argument(
        "--verify",
        action="store_true",
        help="also run the bisection oracle and print the difference",
    )

    p_sweep = sub.add_parser("sweep", help="scalar outputs along a one-parameter sweep")
    add_common(p_sweep)
    p_sweep.add_argument("--param", required=True, choices=["n1", "n2", "r", "nr", "gamma"])
    p_sweep.add_argument("--min", type=float, required=True)
    p_sweep.add_argument("--max", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument(
        "--outputs",
        default=None,
        help=(
            f"comma-separated subset of {{{','.join(_SWEEP_OUTPUTS)}}}; defaults to the "
            "correlation measures, plus ts when a reservoir is configured"
        ),
    )

    p_verify = sub.add_parser("verify", help="closed forms vs independent numeric oracles")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--format", choices=["text", "json"], default="text")
    p_verify.add_argument("--out", help="write to this path instead of stdout")
    p_verify.add_argument("--config", help="key=value file; command-line flags override it")

    return parser


def _expand_config(argv: list[str]) -> list[str]:
    """Splice flags from a --config key=value file in after the subcommand.

    User-supplied flags come later in argv, so they win (argparse keeps
    the last occurrence of a repeated option).
    """
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    if path is None or not argv:
        return argv
    extra: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise _CliError(f"{path}:{lineno}: expected key=value, got {line!r}")
            flag = "--" + key.strip().replace("_", "-")
            value = value.strip()
            if value.lower() in ("true", "false"):
                if value.lower() == "true":
                    extra.append(flag)
            else:
                extra.extend([flag, value])
    return [argv[0], *extra, *argv[1:]]


def _state_from_args(args: argparse.Namespace) -> StandardForm:
    sts_given = any(v is not None for v in (args.n1, args.n2, args.r))
    sf_given = any(v is not None for v in (args.b1, args.b2, args.c))
    if sts_given and sf_given:
        raise _CliError("give either --n1/--n2/--r or --b1/--b2/--c, not both")
    if sts_given:
        if None in (args.n1, args.n2, args.r):
            raise _CliError("the physical parametrization needs all of --n1, --n2, --r")
        return standard_form_from_sts(StsParams(args.n1, args.n2, args.r, args.phi))
    if sf_given:
        if None in (args.b1, args.b2, args.c):
            raise _CliError("the standard form needs all of --b1, --b2, --c")
        return StandardForm(args.b1, args.b2, args.c, args.phi)
    raise _CliError("no state given: use --n1/--n2/--r or --b1/--b2/--c")


def _reservoir_from_args(args: argparse.Namespace, *, nr_optional: bool = False) -> ReservoirConfig | None:
    explicit = any(v is not None for v in (args.gamma1, args.nr1, args.gamma2, args.nr2))
    if args.identical and args.single_bath:
        raise _CliError("--identical and --single-bath are mutually exclusive")
    shorthand = args.identical or args.single_bath
    if explicit and shorthand:
        raise _CliError("give either the explicit --gamma1/--nr1/--gamma2/--nr2 or a shorthand layout")
    if shorthand:
        n_r = args.nr
        if n_r is None:
            if not nr_optional:
                raise _CliError("the shorthand reservoir layouts need --nr")
            n_r = 0.0
        if args.identical:
            return ReservoirConfig.identical(args.gamma, n_r)
        return ReservoirConfig.single_bath(args.gamma, n_r)
    if explicit:
        return ReservoirConfig(
            args.gamma1 if args.gamma1 is not None else 0.0,
            args.nr1 if args.nr1 is not None else 0.0,
            args.gamma2 if args.gamma2 is not None else 0.0,
            args.nr2 if args.nr2 is not None else 0.0,
        )
    return None


def _parse_outputs(selection: str, allowed: list[str]) -> list[str]:
    chosen = [tok.strip() for tok in selection.split(",") if tok.strip()]
    bad = [tok for tok in chosen if tok not in allowed]
    if bad:
        raise _CliError(f"unknown outputs {bad!r}; pick from {allowed!r}")
    # Canonical order regardless of how the user listed them.
    return [name for name in allowed if name in chosen]


def _scale(value: float, units: str) -> float:
    return value / _LN2 if units == "bits" else value


def _measure_columns(sf: StandardForm, outputs: list[str], units: str) -> dict[str, object]:
    """The selectable per-state columns, in canonical order."""
    rep = correlation_report(sf)
    row: dict[str, object] = {}
    for name in outputs:
        if name == "ef":
            row["ef"] = _scale(rep.ef, units)
        elif name == "d1":
            row["d1"] = _scale(rep.d1, units)
        elif name == "d2":
            row["d2"] = _scale(rep.d2, units)
        elif name == "mutual_information":
            row["mutual_information"] = _scale(rep.mutual_information, units)
        elif name == "kappas":
            spec = symplectic_spectrum(sf)
            row["kappa_plus"] = spec.kappa_plus
            row["kappa_minus"] = spec.kappa_minus
            row["kappa_tilde_plus"] = spec.kappa_tilde_plus
            row["kappa_tilde_minus"] = spec.kappa_tilde_minus
        elif name == "separable":
            row["separable"] = is_separable(sf)
    return row


def _emit(rows: list[dict], fieldnames: list[str], fmt: str, out: str | None) -> None:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(
                {k: ("true" if v is True else "false" if v is False else v) for k, v in row.items()}
            )
        text = buf.getvalue()
    else:
        text = json.dumps(rows, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _closed_form_death_time(
    sf: StandardForm, res: ReservoirConfig
) -> float | AsymptoticOnly | None:
    """The applicable closed-form death time, or None when only bisection works."""
    if res.gamma1 > 0.0 and res.gamma2 > 0.0:
        if res.gamma1 == res.gamma2 and res.n_r1 == res.n_r2:
            return esd_time_identical_baths(sf, res.gamma1, res.n_r1)
        return None
    if res.gamma1 > 0.0:
        return esd_time_single_bath(sf, res.gamma1, res.n_r1)
    if res.gamma2 > 0.0:
        # Bath on mode 2 only: same formula with the modes relabeled.
        swapped = StandardForm(sf.b2, sf.b1, sf.c, sf.phi)
        return esd_time_single_bath(swapped, res.gamma2, res.n_r2)
    raise _CliError("the reservoir has no active bath; nothing evolves")


def _death_time_cell(sf: StandardForm, res: ReservoirConfig) -> object:
    """Death time as a table cell: float, 'asymptotic-only', or 'separable'."""
    if is_separable(sf):
        return "separable"
    ts = _closed_form_death_time(sf, res)
    if ts is None:
        ts = esd_bisection(sf, res)
    return "asymptotic-only" if isinstance(ts, AsymptoticOnly) else ts


def _cmd_report(args: argparse.Namespace) -> int:
    sf = _state_from_args(args)
    outputs = _parse_outputs(args.outputs, _REPORT_OUTPUTS)
    res = _reservoir_from_args(args)
    t = args.t
    if t != 0.0:
        if res is None:
            raise _CliError("--t > 0 needs a reservoir; add bath flags or use --t 0")
        sf = evolve(sf, res, t).sf
    row: dict[str, object] = {"t": t, "b1": sf.b1, "b2": sf.b2, "c": sf.c}
    row.update(_measure_columns(sf, outputs, args.units))
    _emit([row], list(row.keys()), args.format, args.out)
    return 0


def _cmd_evolve(args: argparse.Namespace) -> int:
    sf0 = _state_from_args(args)
    res = _reservoir_from_args(args)
    if res is None:
        raise _CliError("evolve needs a reservoir: bath flags or --identical/--single-bath")
    if not (math.isfinite(args.t_start) and math.isfinite(args.t_end)):
        raise _CliError("the time grid must be finite")
    if args.t_end <= args.t_start:
        raise _CliError(f"need --t-end > --t-start, got [{args.t_start!r}, {args.t_end!r}]")
    if args.points < 2:
        raise _CliError("need --points >= 2")
    if args.log_spacing:
        if args.t_start <= 0.0:
            raise _CliError("--log-spacing needs --t-start > 0")
        grid = np.geomspace(args.t_start, args.t_end, args.points)
    else:
        grid = np.linspace(args.t_start, args.t_end, args.points)
    measures = ["ef", "d1", "d2", "mutual_information", "separable"]
    rows = []
    for t in grid:
        sf = evolve(sf0, res, float(t)).sf
        row: dict[str, object] = {"t": float(t), "b1": sf.b1, "b2": sf.b2, "c": sf.c}
        row.update(_measure_columns(sf, measures, args.units))
        rows.append(row)
    _emit(rows, _EVOLVE_COLUMNS, args.format, args.out)
    return 0


def _cmd_esd(args: argparse.Namespace) -> int:
    sf = _state_from_args(args)
    res = _reservoir_from_args(args)
    if res is None:
        raise _CliError("esd needs a reservoir: bath flags or --identical/--single-bath")
    closed = _closed_form_death_time(sf, res)  # raises SeparableInputError -> exit 3
    if args.verify:
        if closed is None:
            raise _CliError(
                "no closed form exists for two baths with different rates; drop --verify"
            )
        oracle = esd_bisection(sf, res)
        if isinstance(closed, AsymptoticOnly) or isinstance(oracle, AsymptoticOnly):
            sys.stderr.write("no sudden death (zero-temperature bath)\n")
            row: dict[str, object] = {
                "t_s_closed": "asymptotic-only",
                "t_s_bisection": "asymptotic-only",
                "abs_difference": "asymptotic-only",
            }
        else:
            row = {
                "t_s_closed": closed,
                "t_s_bisection": oracle,
                "abs_difference": abs(closed - oracle),
            }
        _emit([row], list(row.keys()), args.format, args.out)
        return 0
    ts = closed if closed is not None else esd_bisection(sf, res)
    if isinstance(ts, AsymptoticOnly):
        sys.stderr.write("no sudden death (zero-temperature bath)\n")
        _emit([{"t_s": "asymptotic-only"}], ["t_s"], args.format, args.out)
    else:
        _emit([{"t_s": ts}], ["t_s"], args.format, args.out)
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    if args.steps < 1:
        raise _CliError("need --steps >= 1")
    if args.param in ("nr", "gamma") and not (args.identical or args.single_bath):
        raise _CliError(f"sweeping {args.param} needs a shorthand layout (--identical or --single-bath)")
    sweeping_state = args.param in ("n1", "n2", "r")
    if sweeping_state:
        if any(v is not None for v in (args.b1, args.b2, args.c)):
            raise _CliError(f"sweeping {args.param} needs the --n1/--n2/--r parametrization")
        # The swept flag may be omitted; pin it so _state_from_args sees a full triple.
        if getattr(args, args.param) is None:
            setattr(args, args.param, args.min)
    res = _reservoir_from_args(args, nr_optional=(args.param == "nr"))
    allowed = _SWEEP_OUTPUTS if res is not None else _REPORT_OUTPUTS
    if args.outputs is None:
        outputs = ["ef", "d1", "d2", "mutual_information", "separable"] + (
            ["ts"] if res is not None else []
        )
    else:
        outputs = _parse_outputs(args.outputs, allowed)
    values = np.linspace(args.min, args.max, args.steps)
    rows = []
    fieldnames: list[str] | None = None
    for value in values:
        value = float(value)
        if sweeping_state:
            setattr(args, args.param, value)
            sf = _state_from_args(args)
            res_v = res
        else:
            sf = _state_from_args(args)
            gamma = value if args.param == "gamma" else args.gamma
            n_r = value if args.param == "nr" else args.nr
            if args.identical:
                res_v = ReservoirConfig.identical(gamma, n_r)
            else:
                res_v = ReservoirConfig.single_bath(gamma, n_r)
        row: dict[str, object] = {args.param: value}
        row.update(_measure_columns(sf, [o for o in outputs if o != "ts"], args.units))
        if "ts" in outputs:
            assert res_v is not None
            row["ts"] = _death_time_cell(sf, res_v)
        if fieldnames is None:
            fieldnames = list(row.keys())
        rows.append(row)
    assert fieldnames is not None
    _emit(rows, fieldnames, args.format, args.out)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    reports = run_verification(seed=args.seed)
    if args.format == "json":
        payload = [
            {
                "quantity": r.quantity,
                "closed_form": r.closed_form,
                "oracle": r.oracle,
                "abs_err": r.abs_err,
                "tol": r.tol,
                "passed": r.passed,
            }
            for r in reports
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [
            f"{'PASS' if r.passed else 'FAIL'}  {r.quantity}: "
            f"closed={r.closed_form!r}  oracle={r.oracle!r}  "
            f"|err|={r.abs_err:.3e}  tol={r.tol:g}"
            for r in reports
        ]
        ok = sum(r.passed for r in reports)
        lines.append(f"{ok}/{len(reports)} checks passed")
        text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if all(r.passed for r in reports) else 1


def main(argv: Sequence[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        expanded = _expand_config(list(argv))
    except (OSError, _CliError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    args = _build_parser().parse_args(expanded)
    commands = {
        "report": _cmd_report,
        "evolve": _cmd_evolve,
        "esd": _cmd_esd,
        "sweep": _cmd_sweep,
        "verify": _cmd_verify,
    }
    try:
        return commands[args.command](args)
    except SeparableInputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except (_CliError, InvalidParameterError, NonPhysicalStateError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
