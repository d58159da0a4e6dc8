"""Command-line front end: ``beamsel {gen,select,bound,sweep,verify}``.

Exit codes: 0 success, 1 validation or I/O error, 2 numerical failure,
3 invariant violation.
"""

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .channel import (ChannelParams, channel_to_dict, generate_beamspace_channel,
                      load_channel)
from .errors import BeamselError
from .linalg import pinv_fro_norm_sq
from .precoding import db_to_linear, sum_rate
from .selection import (bound_report, decremental_select,
                        decremental_select_naive, hyperbola_profile, preselect,
                        proof_identities, theorem1_bound)
from .simulation import DEFAULT_SNR_DB, SweepConfig, run_sweep
from .verification import VerificationReport, run_verification, verify_channel

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL, EXIT_INVARIANT = 0, 1, 2, 3

DEFAULT_PARAMS = dict(n_B=256, n_U=32, L=2, los_var=1.0, nlos_var=0.1, seed=0)
VERIFY_DEFAULTS = dict(DEFAULT_PARAMS, n_B=16, n_U=4)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _channel_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("channel model")
    g.add_argument("--n-B", dest="n_B", type=int, help="number of beams")
    g.add_argument("--n-U", dest="n_U", type=int, help="number of users")
    g.add_argument("--L", dest="L", type=int, help="NLOS paths per user")
    g.add_argument("--los-var", dest="los_var", type=float)
    g.add_argument("--nlos-var", dest="nlos_var", type=float)
    g.add_argument("--seed", dest="seed", type=int)


def _params(args, base: dict) -> ChannelParams:
    d = dict(base)
    for k in DEFAULT_PARAMS:
        v = getattr(args, k, None)
        if v is not None:
            d[k] = v
    return ChannelParams(**d)


def cmd_gen(args) -> int:
    params = _params(args, DEFAULT_PARAMS)
    H = generate_beamspace_channel(params, args.trial)
    _emit(json.dumps(channel_to_dict(H, params)) + "\n", args.output)
    return EXIT_OK


def cmd_select(args) -> int:
    H = load_channel(args.channel)
    n_U, n_B = H.shape
    K = args.K
    if not n_U <= K <= n_B:
        raise UsageError(f"K must lie in [{n_U}, {n_B}]")
    select = decremental_select_naive if args.naive else decremental_select
    full = pinv_fro_norm_sq(H)
    snr = float(db_to_linear(args.snr_db))
    out = {"n_U": n_U, "n_B": n_B, "K": K,
           "method": "naive" if args.naive else "sherman-morrison"}
    if args.preselect == "none":
        res = select(H, K)
        report = bound_report(n_B, n_U, K, full, snr)
        selection = res.to_dict()
    else:
        rng = np.random.Generator(np.random.Philox(args.seed))
        pre = preselect(H, K, args.preselect, args.oversample, rng)
        res = select(pre.H_c, K)
        cand = pinv_fro_norm_sq(pre.H_c)
        report = bound_report(n_B, n_U, K, full, snr, pre.n_c, cand)
        idx = pre.indices
        selection = res.to_dict()
        selection["selected"] = [int(idx[i]) for i in res.selected]
        selection["eliminated"] = [int(idx[i]) for i in res.eliminated]
        out["preselect"] = {"mode": pre.mode, "oversample": pre.oversample,
                            "candidates": [int(i) for i in idx],
                            "epsilon": (cand - full) / full}
    out["selection"] = selection
    out["bounds"] = report.to_dict()
    out["rates"] = {"snr_db": args.snr_db,
                    "r_full": sum_rate(full, snr, 1.0, n_U),
                    "r_s": sum_rate(res.final_norm_sq, snr, 1.0, n_U)}
    _emit(json.dumps(out, indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_bound(args) -> int:
    if not 1 <= args.n_U < args.n_B:
        raise UsageError("need 1 <= n_U < n_B")
    prof = hyperbola_profile(args.n_B, args.n_U)
    lines = ["K,factor"]
    lines += [f"{k},{_fmt(f)}" for k, f in zip(prof.K, prof.factor)]
    lines.append(f"# vertex,{_fmt(prof.vertex[0])},{_fmt(prof.vertex[1])}")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _sweep_config(args) -> SweepConfig:
    base = {}
    if args.config:
        base = json.loads(Path(args.config).read_text())
    params = dict(DEFAULT_PARAMS)
    params.update(base.pop("params", {}))
    for k in DEFAULT_PARAMS:
        v = getattr(args, k, None)
        if v is not None:
            params[k] = v
    cfg = {"K_values": (32, 64), "snr_db": DEFAULT_SNR_DB, "trials": 100,
           "preselect_mode": "top", "oversample": 1.0, "workers": 1}
    cfg.update(base)
    overrides = {"K_values": args.K, "snr_db": args.snr_db,
                 "trials": args.trials, "preselect_mode": args.preselect,
                 "oversample": args.oversample, "workers": args.workers}
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    cfg["params"] = params
    return SweepConfig.from_dict(cfg)


def cmd_sweep(args) -> int:
    config = _sweep_config(args)
    result = run_sweep(config)
    text = result.to_csv() if args.format == "csv" else result.to_json()
    _emit(text, args.output)
    bad = result.violations()
    for v in bad:
        print(f"violation: {v}", file=sys.stderr)
    return EXIT_INVARIANT if bad else EXIT_OK


def _broken_bound(n_B, n_U, K, full_norm_sq):
    return 0.5 * theorem1_bound(n_B, n_U, K, full_norm_sq)


def cmd_verify(args) -> int:
    bound_fn = _broken_bound if args.break_bound else theorem1_bound
    if args.channel:
        H = load_channel(args.channel)
        ids = proof_identities(H)
        print(f"q_norm_sum {_fmt(ids.q_norm_sum)} (expected {ids.n_U})")
        print(f"trace_sum {_fmt(ids.trace_sum)} (expected {_fmt(ids.full_norm_sq)})")
        weighted = "not evaluable" if ids.weighted_sum is None else _fmt(ids.weighted_sum)
        print(f"weighted_sum {weighted} (expected {_fmt(ids.weighted_expected)})")
        print(f"min_cost {_fmt(ids.min_cost)} <= {_fmt(ids.min_cost_bound)}")
        report = VerificationReport()
        verify_channel(H, report, args.channel, bound_fn)
    else:
        report = run_verification(_params(args, VERIFY_DEFAULTS), args.count, bound_fn)
    for line in report.lines():
        print(line)
    for f in report.failures:
        print(f"  {f}")
    return EXIT_OK if report.ok else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="beamsel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a beamspace channel fixture (JSON)")
    _channel_flags(p)
    p.add_argument("--trial", type=int, default=0, help="trial index substream")
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("select", help="run decremental beam selection on a channel file")
    p.add_argument("channel", help="channel JSON written by 'gen'")
    p.add_argument("-K", type=int, required=True, help="beams to keep")
    p.add_argument("--naive", action="store_true",
                   help="use the direct-inversion reference path")
    p.add_argument("--preselect", choices=("none", "top", "bernoulli"), default="none")
    p.add_argument("--oversample", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0, help="seed for bernoulli pre-selection")
    p.add_argument("--snr-db", type=float, default=10.0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("bound", help="CSV of the bound factor versus K")
    p.add_argument("n_B", type=int)
    p.add_argument("n_U", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="Monte Carlo sum-rate sweep over SNR")
    _channel_flags(p)
    p.add_argument("--config", help="JSON config; flags override its values")
    p.add_argument("--K", type=int, nargs="+")
    p.add_argument("--snr-db", type=float, nargs="+")
    p.add_argument("--trials", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--preselect", choices=("top", "bernoulli"))
    p.add_argument("--oversample", type=float)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check identities and bounds on random channels")
    _channel_flags(p)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--channel", help="verify a single channel file instead")
    p.add_argument("--break-bound", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except BeamselError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, ValueError, TypeError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
