"""Command-line front end.

All computed results are emitted as JSON (numbers rendered as decimal
strings so downstream consumers never round-trip through binary floats);
`table` writes CSV and `sample` writes the plain edge-list text format.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys

from . import formulas, mc, models, oracle
from .errors import TwoconError
from .graphs import DegreeSequence, format_edge_list
from .numeric import derive_params

_REGIME_ALIASES = {
    "auto": "auto", "main": "main", "a": "case_a", "b": "case_b",
    "c": "case_c", "two-edge": "two_edge", "wright": "wright",
    "mindeg2": "mindeg2",
}

_PREDICATE_ALIASES = {
    "two-connected": "two_connected",
    "two-edge-connected": "two_edge_connected",
    "min-degree-2": "min_degree_2",
    "connected": "connected",
    "all": "all",
}


def _num(x):
    """Serialize a number losslessly as a decimal string."""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _params_dict(p):
    return {k: _num(v) for k, v in dataclasses.asdict(p).items()}


def _count_dict(est):
    out = {
        "regime": est.regime,
        "log": _num(est.log),
        "log10": f"{est.log10():.6f}",
        "decimal": est.decimal_string(),
        "breakdown": {k: _num(v) for k, v in est.breakdown.items()},
    }
    if est.params is not None:
        out["params"] = _params_dict(est.params)
    return out


def _estimate_dict(est, extra=None):
    out = {
        "statistic": est.statistic,
        "value": _num(est.value),
        "std_error": _num(est.std_error),
        "samples": est.samples,
        "seed": est.seed,
    }
    if extra:
        out["params"] = extra
    return out


def _emit(obj, stream=None):
    json.dump(obj, stream or sys.stdout, indent=2, sort_keys=True)
    (stream or sys.stdout).write("\n")


def _read_degrees(path):
    with open(path) as fh:
        return DegreeSequence([int(tok) for tok in fh.read().split()])


def _degree_source(args):
    """Resolve --degrees / --n / --m into estimate_event keyword args."""
    if getattr(args, "degrees", None):
        return {"degrees": list(_read_degrees(args.degrees))}
    if args.n is None or args.m is None:
        raise TwoconError("provide --degrees FILE or both --n and --m")
    return {"n": args.n, "m": args.m}


def _cmd_params(args):
    _emit(_params_dict(derive_params(args.n, args.m)))
    return 0


def _cmd_count_asymptotic(args):
    regime = _REGIME_ALIASES[args.regime]
    if regime == "wright":
        est = formulas.log_count_wright(args.n, args.m - args.n)
    else:
        est = formulas.evaluate(args.n, args.m, regime)
    _emit(_count_dict(est))
    return 0


def _cmd_count_exact(args):
    count = oracle.exact_count(args.n, args.m,
                               _PREDICATE_ALIASES[args.predicate],
                               override=args.override)
    _emit({"count": str(count), "predicate": args.predicate,
           "n": args.n, "m": args.m})
    return 0


def _cmd_count_degseq(args):
    d = _read_degrees(args.file)
    est = formulas.log_count_degseq(d, args.regime)
    _emit(_count_dict(est))
    return 0


def _cmd_count_exact_degseq(args):
    d = _read_degrees(args.file)
    count = oracle.exact_count_degseq(d, _PREDICATE_ALIASES[args.predicate])
    _emit({"count": str(count), "predicate": args.predicate,
           "degrees": list(d)})
    return 0


def _resolve_sample_degrees(args):
    if args.file:
        return _read_degrees(args.file)
    if args.conditioned and args.n is not None and args.m is not None:
        return models.sample_degrees_conditioned(args.n, args.m,
                                                 seed=args.seed + 1)
    raise TwoconError("provide --file FILE or --n/--m with --conditioned")


def _cmd_sample(args):
    d = _resolve_sample_degrees(args)
    if args.kind == "pairing":
        G = models.sample_pairing(d, seed=args.seed)
        sys.stdout.write(format_edge_list(G))
        return 0
    cfg = models.sample_kernel_config(d, seed=args.seed)
    sys.stdout.write(format_edge_list(cfg.kernel))
    for i, labels in enumerate(cfg.assignment):
        sys.stdout.write("a %d %s\n" % (i, " ".join(map(str, labels))))
    return 0


def _cmd_estimate(args):
    model = {"pairing": "pairing", "kernel": "kernel_config"}[args.model]
    kw = _degree_source(args)
    est = mc.estimate_event(model, args.event, samples=args.samples,
                            seed=args.seed, threads=args.threads, **kw)
    _emit(_estimate_dict(est, {"model": model, **{k: str(v) for k, v in kw.items()}}))
    return 0


def _cmd_xyz(args):
    kw = _degree_source(args)
    summary = mc.collect_xyz(samples=args.samples, seed=args.seed,
                             mode=args.mode, threads=args.threads, **kw)
    out = summary.as_dict()
    out["moments"] = {k: _estimate_dict(v)
                      for k, v in summary.moments.items()}
    _emit(out)
    return 0


def _cmd_typical(args):
    d = _read_degrees(args.file)
    n = len(list(d))
    m = args.m if args.m is not None else d.m
    p = derive_params(n, m)
    report = models.classify_typical(d, p, args.regime, epsilon=args.epsilon)
    out = dataclasses.asdict(report)
    out["measured"] = {k: _num(v) for k, v in report.measured.items()}
    out["targets"] = {k: _num(v) for k, v in report.targets.items()}
    out["psi"] = _num(report.psi)
    out["violations"] = list(report.violations)
    _emit(out)
    return 0


_SWEEP_COLUMNS = ("value", "n", "m", "c", "lambda_c", "log_main",
                  "log_case_a", "log_case_c", "log_two_edge",
                  "diff_a_main", "diff_c_main")


def _sweep_row(value, fixed, variable):
    spec = dict(fixed)
    spec[variable] = value
    n = int(spec["n"])
    if "m" in spec:
        m = int(spec["m"])
    elif "c" in spec:
        m = int(round(float(spec["c"]) * n / 2.0))
    elif "r" in spec:
        m = n + int(spec["r"]) // 2
    else:
        raise TwoconError("sweep spec must pin m, c, or r")
    p = derive_params(n, m)
    row = {"value": value, "n": n, "m": m, "c": repr(p.c),
           "lambda_c": repr(p.lambda_c)}
    main = formulas.log_count_main(p)
    row["log_main"] = repr(main.log)
    row["log_two_edge"] = repr(formulas.log_count_two_edge(p).log)
    for name, fn, diff in (("log_case_a", formulas.log_count_case_a,
                            "diff_a_main"),
                           ("log_case_c", formulas.log_count_case_c,
                            "diff_c_main")):
        try:
            est = fn(p)
            row[name] = repr(est.log)
            row[diff] = repr(est.log - main.log)
        except (TwoconError, ArithmeticError):
            row[name] = ""
            row[diff] = ""
    return row


def _cmd_table(args):
    with open(args.sweep) as fh:
        spec = json.load(fh)
    variable = spec["variable"]
    values = spec["values"]
    fixed = spec.get("fixed", {})
    output = spec.get("output", "-")
    rows = [_sweep_row(v, fixed, variable) for v in values]
    out = sys.stdout if output == "-" else open(output, "w", newline="")
    try:
        writer = csv.DictWriter(out, fieldnames=_SWEEP_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _add_sampling_args(p):
    p.add_argument("--degrees", help="degree-sequence file "
                   "(whitespace-separated integers)")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="twocon",
        description="Asymptotic and exact counts of 2-connected, "
        "2-edge-connected, and min-degree-2 labelled (n,m)-graphs, with "
        "pairing / kernel-configuration Monte Carlo.  Regime auto-select: "
        "c < 2.2 uses case a, c > 30 uses case c, otherwise main (the main "
        "formula is valid everywhere).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="model parameters for (n, m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(fn=_cmd_params)

    pc = sub.add_parser("count", help="asymptotic or exact counts")
    csub = pc.add_subparsers(dest="mode", required=True)

    p = csub.add_parser("asymptotic")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--regime", choices=sorted(_REGIME_ALIASES),
                   default="auto")
    p.set_defaults(fn=_cmd_count_asymptotic)

    p = csub.add_parser("exact")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--predicate", choices=sorted(_PREDICATE_ALIASES),
                   default="two-connected")
    p.add_argument("--override", action="store_true",
                   help="allow n = 9 (slow)")
    p.set_defaults(fn=_cmd_count_exact)

    p = csub.add_parser("degseq")
    p.add_argument("--file", required=True)
    p.add_argument("--regime", choices=("a", "b", "c"), required=True)
    p.set_defaults(fn=_cmd_count_degseq)

    p = csub.add_parser("exact-degseq")
    p.add_argument("--file", required=True)
    p.add_argument("--predicate", choices=sorted(_PREDICATE_ALIASES),
                   default="two-connected")
    p.set_defaults(fn=_cmd_count_exact_degseq)

    p = sub.add_parser("sample", help="draw one model sample")
    p.add_argument("kind", choices=("pairing", "kernel"))
    p.add_argument("--file", help="degree-sequence file")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--conditioned", action="store_true")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("estimate", help="Monte Carlo event probability")
    p.add_argument("--model", choices=("pairing", "kernel"), required=True)
    p.add_argument("--event", choices=mc.EVENTS, required=True)
    _add_sampling_args(p)
    p.set_defaults(fn=_cmd_estimate)

    p = sub.add_parser("xyz", help="kernel loop/double-edge statistics")
    p.add_argument("--mode", choices=("section5", "section8"),
                   default="section5")
    _add_sampling_args(p)
    p.set_defaults(fn=_cmd_xyz)

    p = sub.add_parser("typical", help="typical-set membership of a "
                       "degree sequence")
    p.add_argument("--file", required=True)
    p.add_argument("--regime", choices=("a", "b"), required=True)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--m", type=int,
                   help="edge count for parameter derivation "
                   "(default: half the degree sum)")
    p.set_defaults(fn=_cmd_typical)

    p = sub.add_parser("table", help="CSV sweep; spec JSON: "
                       "{variable, values[], fixed{}, output}")
    p.add_argument("--sweep", required=True)
    p.set_defaults(fn=_cmd_table)

    return ap


def run(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (TwoconError, ArithmeticError, OSError, ValueError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)},
              stream=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
