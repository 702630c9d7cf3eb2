"""Command-line entry point: ``hedcs {gen,run,bounds,bench,verify}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness
from .engine import AMORTIZED, MODES
from .errors import HedcsError, InvariantViolation, TraceError


def _engine_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--beta", type=int, default=8)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0, help="engine rank seed (HEDCS_SEED overrides)")
    p.add_argument("--mode", choices=MODES, default=AMORTIZED)
    p.add_argument("--sparsify", action="store_true", help="run behind the degree-capping wrapper")
    p.add_argument("--check-every", type=int, default=0, metavar="N")
    p.add_argument("--oracle-every", type=int, default=0, metavar="N")
    p.add_argument("--mu-prime", type=int, default=20, help="ratio gate on mu(G)")
    p.add_argument("--cap-epsilon", type=float, help="epsilon for the degree cap (default: --epsilon)")


def _config(args) -> harness.EngineConfig:
    return harness.EngineConfig(
        k=args.k, beta=args.beta, epsilon=args.epsilon, seed=args.seed,
        mode=args.mode, sparsify=args.sparsify, mu_prime=args.mu_prime,
        cap_epsilon=args.cap_epsilon,
    )


def _emit_json(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    trace = harness.generate_trace(args.kind, args.n, args.delta, args.m, args.length, args.seed)
    if args.out:
        trace.write(args.out)
    else:
        sys.stdout.write(trace.to_text())
    return 0


def _outputs(out: str | None) -> tuple[Path | None, Path | None]:
    if not out:
        return None, None
    base = Path(out)
    if base.suffix == ".csv":
        base = base.with_suffix("")
    return base.with_suffix(".csv"), base.with_suffix(".summary.json")


def cmd_run(args) -> int:
    trace = harness.read_trace(args.trace)
    csv_path, summary_path = _outputs(args.out)
    res = harness.run_trace(
        trace, _config(args), args.check_every, args.oracle_every,
        csv_path=csv_path, summary_path=summary_path,
    )
    if summary_path is None:
        _emit_json(res.summary, None)
    return 0


def cmd_verify(args) -> int:
    trace = harness.read_trace(args.trace)
    if args.trace_only:
        print(f"trace ok: {len(trace)} events")
        return 0
    res = harness.run_trace(
        trace, _config(args), args.check_every or 100, args.oracle_every,
        check_hedcs=True, check_potential=True,
    )
    s = res.summary
    print(
        f"valid: {s['updates']} updates, {s['hedcs_checks']} hedcs checks, "
        f"{s['invariant_checks']} invariant checks, {s['add_layer_calls']} add_layer audits"
    )
    return 0


def cmd_bounds(args) -> int:
    report = harness.bounds_report(
        args.k, args.beta, args.beta_minus, lp_path=args.lp, variable_cap=args.cap, delta=args.delta
    )
    _emit_json(report, args.out)
    return 0


def cmd_bench(args) -> int:
    deltas = [int(x) for x in args.deltas.split(",")]
    report = harness.scaling_bench(
        args.k, args.beta, args.epsilon, deltas, args.seed, churn=args.churn,
        n_over_delta=args.n_over_delta, fill=args.fill, mode=args.mode,
    )
    _emit_json(report, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hedcs", description="Dynamic matching via hierarchical EDCS.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random legal trace")
    p.add_argument("--kind", choices=harness.TRACE_KINDS, default="churn")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help="adversary seed (independent of engine ranks)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="replay a trace and write metrics")
    p.add_argument("trace")
    _engine_flags(p)
    p.add_argument("--out", help="output prefix: writes PREFIX.csv and PREFIX.summary.json")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("verify", help="replay with every verifier enabled")
    p.add_argument("trace")
    _engine_flags(p)
    p.add_argument("--trace-only", action="store_true", help="only check trace legality")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="solve or export the factor-revealing LP")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--beta-minus", type=int)
    p.add_argument("--delta", type=float, default=0.0, help="slack for the analytic bound")
    p.add_argument("--cap", type=int, default=harness.bounds.DEFAULT_VARIABLE_CAP)
    p.add_argument("--lp", help="also write the LP file here (.gz to compress)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("bench", help="fit update-work scaling against the degree cap")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--beta", type=int, default=2)
    p.add_argument("--epsilon", type=float, default=0.08)
    p.add_argument("--deltas", default="64,256,1024")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--churn", type=int, help="measured updates per family (default: two level-1 windows)")
    p.add_argument("--n-over-delta", type=int, default=2)
    p.add_argument("--fill", type=float, default=0.75, help="average degree as a fraction of delta")
    p.add_argument("--mode", choices=MODES, default=AMORTIZED)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "bounds" and args.beta_minus is None:
        args.beta_minus = args.beta - 1
    try:
        return args.func(args)
    except TraceError as exc:
        print(f"trace error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    except HedcsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
