"""Trace files, end-to-end replay with metrics, bound reports and scaling fits.

Trace text format::

    n 200 delta 20 m 1000
    + 0 1
    + 3 7      # comments run to end of line
    - 0 1

Vertices are 0-indexed.  Traces are generated from a seed stream derived
from ``"trace:<seed>"``, which never coincides with the engine's integer rank
seed, so an update sequence cannot depend on the ranks it will meet.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import random
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import bounds
from .engine import AMORTIZED, MODES, AddLayerStats, Hedcs, build
from .errors import InvariantViolation, ParameterError, SizeExceededError, TraceError
from .graph import EdgeSetView, compute_level_probs, edge_key
from .matching import maximum_matching_exact
from .sparsify import DegreeCappedEngine, capped_delta_prime
from .verify import check_state_invariants, engine_witness, is_valid_hedcs

Event = tuple[str, int, int]
TRACE_KINDS = ("random", "sliding_window", "insert_only", "churn")
SEED_ENV = "HEDCS_SEED"
SCHEMA_PATH = Path(__file__).with_name("schemas") / "summary.schema.json"


# --- traces ---------------------------------------------------------------------------


@dataclass
class TraceFile:
    n: int
    delta_cap: int
    m_cap: int
    events: list[Event] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.events)

    def header(self) -> str:
        return f"n {self.n} delta {self.delta_cap} m {self.m_cap}"

    def to_text(self) -> str:
        lines = [self.header()]
        lines.extend(f"{op} {u} {v}" for op, u, v in self.events)
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_text(), encoding="ascii", newline="\n")
        return path


def _strip(line: str) -> str:
    i = line.find("#")
    return (line if i < 0 else line[:i]).strip()


def parse_trace(text: str, validate: bool = True) -> TraceFile:
    """Parse trace text; raises :class:`TraceError` with a 1-based line number."""
    trace = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        parts = line.split()
        if trace is None:
            if len(parts) != 6 or parts[0::2] != ["n", "delta", "m"]:
                raise TraceError("expected header 'n <N> delta <D> m <M>'", lineno)
            try:
                n, d, m = (int(x) for x in parts[1::2])
            except ValueError:
                raise TraceError("non-integer header field", lineno) from None
            if n < 1 or d < 1 or m < 0:
                raise TraceError("header fields must be positive", lineno)
            trace = TraceFile(n, d, m)
            lines_of: list[int] = []
            continue
        if len(parts) != 3 or parts[0] not in ("+", "-"):
            raise TraceError(f"expected '+ u v' or '- u v', got {line!r}", lineno)
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise TraceError(f"non-integer vertex in {line!r}", lineno) from None
        trace.events.append((parts[0], u, v))
        lines_of.append(lineno)
    if trace is None:
        raise TraceError("missing header", 1)
    if validate:
        validate_trace(trace, lines_of)
    return trace


def read_trace(path: str | Path, validate: bool = True) -> TraceFile:
    return parse_trace(Path(path).read_text(encoding="ascii"), validate)


def validate_trace(trace: TraceFile, line_numbers: Sequence[int] | None = None) -> None:
    """Reject self-loops, out-of-range ids, double inserts, phantom deletes and cap overruns.

    Line numbers default to the file layout produced by :meth:`TraceFile.to_text`
    (header on line 1).
    """
    present: set[tuple[int, int]] = set()
    deg = [0] * trace.n
    for idx, (op, u, v) in enumerate(trace.events):
        line = line_numbers[idx] if line_numbers is not None else idx + 2
        if not (0 <= u < trace.n and 0 <= v < trace.n):
            raise TraceError(f"vertex out of range in ({u}, {v})", line)
        if u == v:
            raise TraceError(f"self-loop ({u}, {v})", line)
        e = edge_key(u, v)
        if op == "+":
            if e in present:
                raise TraceError(f"double insert of {e}", line)
            present.add(e)
            deg[u] += 1
            deg[v] += 1
            if deg[u] > trace.delta_cap or deg[v] > trace.delta_cap:
                raise TraceError(f"insert of {e} exceeds degree cap {trace.delta_cap}", line)
            if len(present) > trace.m_cap:
                raise TraceError(f"insert of {e} exceeds edge cap {trace.m_cap}", line)
        elif op == "-":
            if e not in present:
                raise TraceError(f"phantom delete of {e}", line)
            present.remove(e)
            deg[u] -= 1
            deg[v] -= 1
        else:
            raise TraceError(f"unknown op {op!r}", line)


class _Adversary:
    """Random legal edge choices under degree and edge caps."""

    def __init__(self, n: int, delta_cap: int, m_cap: int, rng: random.Random):
        self.n, self.delta_cap, self.m_cap, self.rng = n, delta_cap, m_cap, rng
        self.deg = [0] * n
        self.edges: list[tuple[int, int]] = []
        self.pos: dict[tuple[int, int], int] = {}

    def can_insert(self) -> bool:
        return len(self.edges) < self.m_cap

    def pick_new(self) -> tuple[int, int] | None:
        n, cap, rng = self.n, self.delta_cap, self.rng
        if not self.can_insert():
            return None
        for _ in range(64):
            u, v = rng.randrange(n), rng.randrange(n)
            if u == v:
                continue
            e = edge_key(u, v)
            if e not in self.pos and self.deg[u] < cap and self.deg[v] < cap:
                return e
        free = [v for v in range(n) if self.deg[v] < cap]
        cand = [
            (a, b) for i, a in enumerate(free) for b in free[i + 1 :] if (a, b) not in self.pos
        ]
        return rng.choice(cand) if cand else None

    def insert(self, e: tuple[int, int]) -> Event:
        self.pos[e] = len(self.edges)
        self.edges.append(e)
        self.deg[e[0]] += 1
        self.deg[e[1]] += 1
        return ("+", e[0], e[1])

    def delete(self, e: tuple[int, int]) -> Event:
        i = self.pos.pop(e)
        last = self.edges.pop()
        if last != e:
            self.edges[i] = last
            self.pos[last] = i
        self.deg[e[0]] -= 1
        self.deg[e[1]] -= 1
        return ("-", e[0], e[1])

    def delete_random(self) -> Event:
        return self.delete(self.edges[self.rng.randrange(len(self.edges))])


def generate_trace(
    kind: str, n: int, delta_cap: int, m_cap: int, length: int, seed: int = 0
) -> TraceFile:
    """A legal random trace of ``length`` events.

    * ``insert_only`` -- distinct insertions.
    * ``random`` -- fair coin between insertion and deletion.
    * ``churn`` -- fills up to ``m_cap`` and then mostly swaps edges near it.
    * ``sliding_window`` -- inserts, deleting the oldest edge once ``m_cap``
      edges are present.
    """
    if kind not in TRACE_KINDS:
        raise ParameterError(f"kind must be one of {TRACE_KINDS}, got {kind!r}")
    if n < 2 or delta_cap < 1 or m_cap < 1 or length < 0:
        raise ParameterError("need n >= 2, delta_cap >= 1, m_cap >= 1, length >= 0")
    max_edges = min(m_cap, n * (n - 1) // 2, n * delta_cap // 2)
    if kind == "insert_only" and length > max_edges:
        raise ParameterError(f"insert_only trace of length {length} cannot fit {max_edges} edges")
    rng = random.Random(f"trace:{seed}")
    adv = _Adversary(n, delta_cap, m_cap, rng)
    trace = TraceFile(n, delta_cap, m_cap)
    out = trace.events
    oldest: list[tuple[int, int]] = []
    head = 0
    while len(out) < length:
        m = len(adv.edges)
        if kind == "insert_only":
            e = adv.pick_new()
            if e is None:
                raise ParameterError("no legal insertion left for insert_only trace")
            out.append(adv.insert(e))
            continue
        if kind == "sliding_window":
            if m >= m_cap:
                while oldest[head] not in adv.pos:
                    head += 1
                out.append(adv.delete(oldest[head]))
                head += 1
                continue
            e = adv.pick_new()
            if e is None:
                if not m:
                    raise ParameterError("no legal insertion possible")
                out.append(adv.delete_random())
                continue
            oldest.append(e)
            out.append(adv.insert(e))
            continue
        if not m:
            p_insert = 1.0
        elif kind == "random":
            p_insert = 0.5
        else:  # churn
            p_insert = 0.95 if m < 0.9 * max_edges else 0.5
        if rng.random() < p_insert:
            e = adv.pick_new()
            if e is not None:
                out.append(adv.insert(e))
                continue
        if m:
            out.append(adv.delete_random())
        else:
            raise ParameterError("no legal event possible")
    return trace


# --- replay ---------------------------------------------------------------------------


@dataclass
class EngineConfig:
    k: int = 1
    beta: int = 8
    epsilon: float = 0.05
    seed: int = 0
    mode: str = AMORTIZED
    sparsify: bool = False
    mu_prime: int = 20
    cap_epsilon: float | None = None  # epsilon for the degree cap; defaults to ``epsilon``

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ParameterError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.k < 0:
            raise ParameterError("k must be >= 0")
        if self.cap_epsilon is not None and not 0.0 < self.cap_epsilon < 1.0:
            raise ParameterError("cap_epsilon must lie in (0, 1)")


def effective_seed(seed: int) -> int:
    env = os.environ.get(SEED_ENV)
    return int(env) if env not in (None, "") else seed


@dataclass
class RunResult:
    csv_text: str
    summary: dict
    add_layer_stats: list[AddLayerStats] = field(default_factory=list)

    @property
    def rows(self) -> list[dict]:
        return list(csv.DictReader(io.StringIO(self.csv_text)))


def csv_columns(k: int, sparsify: bool = False) -> list[str]:
    """Column layout of the metrics CSV for a given ``k``."""
    cols = [
        "update_index", "op", "u", "v", "matching_size", "mu_exact", "ratio",
        "work_units", "triggered_level", "completed_level",
    ]
    if sparsify:
        cols += ["forwarded", "tilde_max_degree", "mu_tilde"]
    cols += [f"U_{i}" for i in range(1, k + 2)]
    cols += [f"H_{i}" for i in range(1, k + 1)]
    cols += [f"c_{i}" for i in range(1, k + 2)]
    cols += [f"mu_{i}" for i in range(1, k + 2)]
    cols += [f"s_{i}" for i in range(1, k + 1)]
    return cols


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


def _mu_exact(n: int, edges: Iterable[tuple[int, int]]) -> int:
    return maximum_matching_exact(EdgeSetView(n, edges), max_vertices=max(n, 2000)).size


def run_trace(
    trace: TraceFile,
    config: EngineConfig,
    check_every: int = 0,
    oracle_every: int = 0,
    check_hedcs: bool = False,
    check_potential: bool = False,
    csv_path: str | Path | None = None,
    summary_path: str | Path | None = None,
    keep_stats: bool = False,
) -> RunResult:
    """Replay ``trace`` and collect one metrics row per update.

    ``check_every`` runs the full state-invariant rescan, ``check_hedcs``
    validates the hierarchical witness after every recomputation and
    ``check_potential`` audits every add_layer call.  Any failure raises
    :class:`InvariantViolation`.  ``oracle_every`` computes ``mu(G)`` exactly
    at that period and records ``|M| / mu(G)``.
    """
    seed = effective_seed(config.seed)
    k = config.k
    stats_log: list[AddLayerStats] = []
    counters = {"hedcs_checks": 0, "invariant_checks": 0, "add_layer_calls": 0, "potential_violations": 0}
    max_insertion_ratio = 0.0

    def on_add_layer(st: AddLayerStats) -> None:
        nonlocal max_insertion_ratio
        counters["add_layer_calls"] += 1
        if keep_stats:
            stats_log.append(st)
        if st.bound:
            max_insertion_ratio = max(max_insertion_ratio, st.insertions / st.bound)
        if check_potential:
            problems = st.violations()
            if problems:
                counters["potential_violations"] += len(problems)
                raise InvariantViolation(f"add_layer at level {st.level}: {'; '.join(problems)}")

    def on_recompute(eng: Hedcs, level: int) -> None:
        if check_hedcs and eng.k >= 1:
            counters["hedcs_checks"] += 1
            verdict = is_valid_hedcs(engine_witness(eng))
            if not verdict.valid:
                raise InvariantViolation(verdict)

    hooks = {"on_add_layer": on_add_layer, "on_recompute": on_recompute}
    t0 = time.perf_counter()
    if config.sparsify:
        cap_eps = config.epsilon if config.cap_epsilon is None else config.cap_epsilon
        m_cap = max(trace.m_cap, 1)
        wrapper = DegreeCappedEngine(
            trace.n, k, config.beta, config.epsilon, m_cap, seed, mode=config.mode,
            delta_prime=capped_delta_prime(m_cap, cap_eps), **hooks
        )
        eng = wrapper.engine
    else:
        wrapper = None
        eng = build(trace.n, k, config.beta, config.epsilon, trace.delta_cap, max(trace.m_cap, 1), seed,
                    mode=config.mode, **hooks)

    cols = csv_columns(k, config.sparsify)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    present: set[tuple[int, int]] = set()
    ratios: list[tuple[int, float]] = []
    tilde_ratios: list[float] = []
    works: list[int] = []
    max_s = 0.0
    max_forwarded = 0
    max_tilde_deg = 0
    for idx, (op, u, v) in enumerate(trace.events, start=1):
        e = edge_key(u, v)
        if op == "+":
            present.add(e)
        else:
            present.discard(e)
        if wrapper is not None:
            forwarded, reports = wrapper.apply_update(op, u, v)
            work = sum(r.work_units for r in reports) + 1
            triggered = next((r.triggered_level for r in reports if r.triggered_level is not None), None)
            completed = next((r.completed_level for r in reports if r.completed_level is not None), None)
            max_forwarded = max(max_forwarded, len(forwarded))
            tdeg = wrapper.marks.max_tilde_degree()
            max_tilde_deg = max(max_tilde_deg, tdeg)
        else:
            rep = eng.apply_update(op, u, v)
            work, triggered, completed = rep.work_units, rep.triggered_level, rep.completed_level
        works.append(work)
        size = eng.matching.size
        mu = ratio = mu_tilde = None
        if oracle_every and idx % oracle_every == 0:
            mu = _mu_exact(trace.n, present)
            ratio = size / mu if mu else None
            if mu and mu >= config.mu_prime:
                ratios.append((idx, ratio))
            if wrapper is not None:
                mu_tilde = _mu_exact(trace.n, wrapper.marks.tilde)
                if mu:
                    tilde_ratios.append(mu_tilde / mu)
        if check_every and idx % check_every == 0:
            counters["invariant_checks"] += 1
            verdict = check_state_invariants(eng)
            if not verdict.valid:
                raise InvariantViolation(verdict)
            if wrapper is not None:
                problems = wrapper.marks.check()
                if problems:
                    raise InvariantViolation("; ".join(problems))
        sizes = eng.level_sizes()
        s_vals = [eng.sparsification[i] for i in range(1, k + 1)]
        for s in s_vals:
            if s is not None:
                max_s = max(max_s, s)
        row = [idx, op, u, v, size, mu, ratio, work, triggered, completed]
        if wrapper is not None:
            row += [len(forwarded), tdeg, mu_tilde]
        row += sizes["U"] + sizes["H"] + sizes["c"] + sizes["mu"] + s_vals
        writer.writerow([_fmt(x) for x in row])
    elapsed = time.perf_counter() - t0

    for rec in eng.history:
        for s in rec.sparsification.values():
            max_s = max(max_s, s)
    gated = [r for _, r in ratios]
    total = sum(works)
    summary = {
        "trace": {"n": trace.n, "delta": trace.delta_cap, "m": trace.m_cap, "events": len(trace.events)},
        "config": {**asdict(config), "seed": seed},
        "updates": len(trace.events),
        "final_matching_size": eng.matching.size,
        "oracle_checkpoints": (len(trace.events) // oracle_every) if oracle_every else 0,
        "gated_checkpoints": len(gated),
        "min_ratio": min(gated) if gated else None,
        "median_ratio": statistics.median(gated) if gated else None,
        "total_work": total,
        "max_work": max(works, default=0),
        "mean_work": total / len(works) if works else 0.0,
        "recomputations": eng.recomputations[1:],
        "max_sparsification": max_s,
        "max_insertion_ratio": max_insertion_ratio,
        **counters,
        "violations": 0,
        "sparsify": None if wrapper is None else {
            "delta_prime": wrapper.delta_prime,
            "max_forwarded": max_forwarded,
            "max_tilde_degree": max_tilde_deg,
            "min_tilde_ratio": min(tilde_ratios) if tilde_ratios else None,
        },
        "elapsed_seconds": round(elapsed, 3),
    }
    result = RunResult(buf.getvalue(), summary, stats_log)
    if csv_path is not None:
        Path(csv_path).write_text(result.csv_text, encoding="ascii", newline="\n")
    if summary_path is not None:
        Path(summary_path).write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="ascii")
    return result


def load_summary_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text(encoding="utf-8"))


# --- bounds -----------------------------------------------------------------------------


def bounds_report(
    k: int,
    beta: int,
    beta_minus: int,
    lp_path: str | Path | None = None,
    variable_cap: int = bounds.DEFAULT_VARIABLE_CAP,
    delta: float = 0.0,
) -> dict:
    """Solve (or export, when too large) the LP and collect every bound we can state."""
    inst = bounds.build_lp(k, beta, beta_minus, variable_cap)
    report: dict = {
        "k": k, "beta": beta, "beta_minus": beta_minus, "status": inst.status,
        "vars": inst.n_vars, "constraints": inst.n_constraints,
        "r": None, "alpha": None, "max_residual": None,
        "trivial_alpha": bounds.trivial_alpha(k, beta, beta_minus),
        "analytic_alpha": None, "analytic_underflow": None, "lp_file": None,
    }
    try:
        a = bounds.analytic_alpha(k, delta)
        report["analytic_alpha"] = float(a.value)
        report["analytic_underflow"] = a.underflow
    except ParameterError:
        pass
    if inst.materialized:
        sol = bounds.solve_lp(inst)
        report["status"] = sol.status
        if sol.objective is not None:
            report["r"] = sol.objective
            report["alpha"] = bounds.alpha_from_f(sol.objective)
            report["max_residual"] = sol.max_residual
    if lp_path is not None:
        report["lp_file"] = str(bounds.export_lp_file(inst, lp_path))
    return report


# --- scaling ------------------------------------------------------------------------------


@dataclass
class ScalingPoint:
    delta: int
    n: int
    edges: int
    updates: int
    work_per_update: float


def fit_exponent(deltas: Sequence[float], values: Sequence[float]) -> tuple[float, float, list[float]]:
    """Least-squares slope/intercept of ``log value`` against ``log delta``, plus residuals."""
    x = np.log(np.asarray(deltas, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = (y - (slope * x + intercept)).tolist()
    return float(slope), float(intercept), resid


def matched_family(delta: int, n_over_delta: int = 2, fill: float = 0.5) -> tuple[int, int]:
    """``(n, m)`` with ``n`` proportional to ``delta`` and average degree ``fill * delta``."""
    n = n_over_delta * delta
    return n, int(fill * n * delta / 2)


def churn_workload(
    n: int, delta_cap: int, m: int, churn: int, seed: int
) -> tuple[list[tuple[int, int]], list[Event]]:
    """A random initial graph with ``m`` edges plus ``churn`` alternating delete/insert events."""
    rng = random.Random(f"trace:{seed}:{n}:{delta_cap}")
    adv = _Adversary(n, delta_cap, m, rng)
    for _ in range(m):
        e = adv.pick_new()
        if e is None:
            break
        adv.insert(e)
    initial = list(adv.edges)
    events: list[Event] = []
    while len(events) < churn:
        if len(adv.edges) >= m or not events or events[-1][0] == "+":
            events.append(adv.delete_random())
        else:
            e = adv.pick_new()
            events.append(adv.insert(e) if e is not None else adv.delete_random())
    return initial, events


def engine_work(
    n: int, delta_cap: int, initial: list[tuple[int, int]], events: list[Event], cfg: EngineConfig
) -> list[int]:
    """Work units per event for the real engine started on ``initial``."""
    eng = build(n, cfg.k, cfg.beta, cfg.epsilon, delta_cap, len(initial) + 1, cfg.seed, initial, cfg.mode)
    return [eng.apply_update(op, u, v).work_units for op, u, v in events]


def auto_churn(k: int, epsilon: float, delta: int, n: int, periods: float = 2.0, minimum: int = 2000) -> int:
    """Churn long enough to span ``periods`` level-1 recomputation windows.

    The window ``eps * mu_1 / p_1`` is estimated from parameters alone with
    ``mu_1 ~ n / 4``, so the workload never depends on the engine's ranks.
    """
    if k == 0:
        return minimum
    p1 = compute_level_probs(k, epsilon, delta).prob(1)
    return max(minimum, math.ceil(periods * (epsilon / k) * (n / 4) / p1))


def scaling_bench(
    k: int,
    beta: int,
    epsilon: float,
    delta_list: Sequence[int],
    seed: int = 0,
    churn: int | Sequence[int] | None = None,
    n_over_delta: int = 2,
    fill: float = 0.5,
    mode: str = AMORTIZED,
    runner: Callable[..., Sequence[int]] | None = None,
) -> dict:
    """Fit the exponent of work per update against ``delta``.

    Each ``delta`` gets a random graph on ``n = n_over_delta * delta``
    vertices with average degree ``fill * delta``, followed by ``churn``
    alternating deletions and insertions that keep the edge count level
    (:func:`auto_churn` when not given).
    The engine is preprocessed once on the initial graph and work per update
    is averaged over the churn phase.  ``runner(n, delta, initial, events,
    cfg)`` replaces the engine, e.g. to calibrate the fit on synthetic work.
    """
    if len(delta_list) < 3 or list(delta_list) != sorted(delta_list):
        raise ParameterError("delta_list must be sorted with at least 3 entries")
    seed = effective_seed(seed)
    cfg = EngineConfig(k=k, beta=beta, epsilon=epsilon, seed=seed, mode=mode)
    if churn is None or isinstance(churn, int):
        churns = [churn] * len(delta_list)
    else:
        churns = list(churn)
    run = runner or engine_work
    points = []
    for d, c in zip(delta_list, churns):
        n, m = matched_family(d, n_over_delta, fill)
        if c is None:
            c = auto_churn(k, epsilon, d, n)
        initial, events = churn_workload(n, d, m, c, seed)
        works = list(run(n, d, initial, events, cfg))
        points.append(ScalingPoint(d, n, len(initial), len(works), sum(works) / max(len(works), 1)))
    slope, intercept, resid = fit_exponent([p.delta for p in points], [p.work_per_update for p in points])
    return {
        "k": k, "beta": beta, "epsilon": epsilon, "seed": seed, "mode": mode,
        "n_over_delta": n_over_delta, "fill": fill,
        "points": [asdict(p) for p in points],
        "exponent": slope, "intercept": intercept, "residuals": resid,
    }


def constant_work_runner(n, delta_cap, initial, events, cfg) -> list[int]:
    """Synthetic engine stub doing one unit of work per update."""
    return [1] * len(events)


def linear_work_runner(n, delta_cap, initial, events, cfg) -> list[int]:
    """Synthetic engine stub whose work grows linearly in the degree cap."""
    return [delta_cap] * len(events)


__all__ = [
    "TRACE_KINDS", "TraceFile", "parse_trace", "read_trace", "validate_trace", "generate_trace",
    "EngineConfig", "RunResult", "csv_columns", "run_trace", "bounds_report", "scaling_bench",
    "fit_exponent", "matched_family", "churn_workload", "engine_work", "constant_work_runner", "linear_work_runner",
    "load_summary_schema", "effective_seed", "SizeExceededError",
]
