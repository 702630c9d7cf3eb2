"""Approximation-ratio bounds for hierarchical EDCS.

The factor-revealing LP ``LP(k, beta, beta_minus)`` is indexed by degree
profiles ``p, q in {0..beta}^k``:

    minimize   r
    subject to n_P(p) * p_j = sum_q x(p, q, j)          for every p, j
               n_Q(q) * q_j = sum_p x(p, q, j)          for every q, j
               sum_q n_Q(q) = r
               sum_p n_P(p) = 1
               sum x(p, q, j) >= beta_minus / 2
               all variables >= 0

where ``x(p, q, j)`` exists only when ``sum_{i<=j} p_i + q_i <= beta``.  Its
optimum lower-bounds the bipartite size ratio ``f``; ``alpha = 2f / (2f + 1)``
converts that into a matching approximation ratio.
"""

from __future__ import annotations

import gzip
import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Iterator

import mpmath
import numpy as np

from . import simplex
from .errors import DomainError, ParameterError

Profile = tuple[int, ...]
Triplet = tuple[Profile, Profile, int]

DEFAULT_VARIABLE_CAP = 5_000_000
SIZE_EXCEEDED = "size-exceeded"
BUILT = "built"
EXTENDED_PREC = 113  # binary128 mantissa


# --- enumeration -------------------------------------------------------------------


def _check_params(k: int, beta: int, beta_minus: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ParameterError(f"k must be an integer >= 1, got {k!r}")
    if not (isinstance(beta, int) and isinstance(beta_minus, int)) or not beta > beta_minus >= 1:
        raise ParameterError(f"need beta > beta_minus >= 1, got beta={beta!r}, beta_minus={beta_minus!r}")


def profiles(k: int, beta: int) -> Iterator[Profile]:
    return itertools.product(range(beta + 1), repeat=k)


def _bounded(length: int, budget: int) -> Iterator[tuple[int, ...]]:
    """Non-negative integer vectors of ``length`` with sum at most ``budget``."""
    if length == 0:
        yield ()
        return
    for a in range(budget + 1):
        for rest in _bounded(length - 1, budget - a):
            yield (a, *rest)


def triplets(k: int, beta: int) -> Iterator[Triplet]:
    """All ``(p, q, j)`` with ``sum_{i<=j} p_i + q_i <= beta``.

    Pruning happens during generation: only the first ``j`` coordinates of
    each side are constrained, the remaining ones range freely.
    """
    for j in range(1, k + 1):
        tail = list(itertools.product(range(beta + 1), repeat=k - j))
        for p_head in _bounded(j, beta):
            left = beta - sum(p_head)
            for q_head in _bounded(j, left):
                for p_tail in tail:
                    p = p_head + p_tail
                    for q_tail in tail:
                        yield p, q_head + q_tail, j


def triplet_count(k: int, beta: int) -> int:
    """``|E_LP|`` in closed form: ``sum_j C(beta + 2j, 2j) (beta + 1)^(2(k - j))``."""
    return sum(comb(beta + 2 * j, 2 * j) * (beta + 1) ** (2 * (k - j)) for j in range(1, k + 1))


def _pname(p: Profile) -> str:
    return ".".join(map(str, p))


def x_name(p: Profile, q: Profile, j: int) -> str:
    return f"x_{_pname(p)}_{_pname(q)}_{j}"


def np_name(p: Profile) -> str:
    return f"nP_{_pname(p)}"


def nq_name(q: Profile) -> str:
    return f"nQ_{_pname(q)}"


# --- instance ------------------------------------------------------------------------


@dataclass
class Row:
    name: str
    terms: list[tuple[int, float]]
    sense: str  # "=", ">="
    rhs: float


@dataclass
class LpInstance:
    k: int
    beta: int
    beta_minus: int
    status: str
    n_vars: int
    n_constraints: int
    triplets: list[Triplet] = field(default_factory=list)
    profiles: list[Profile] = field(default_factory=list)
    x_index: dict[Triplet, int] = field(default_factory=dict)
    np_index: dict[Profile, int] = field(default_factory=dict)
    nq_index: dict[Profile, int] = field(default_factory=dict)
    r_index: int = -1
    rows: list[Row] = field(default_factory=list)

    @property
    def materialized(self) -> bool:
        return self.status == BUILT

    def var_names(self) -> list[str]:
        names = [""] * self.n_vars
        for t, i in self.x_index.items():
            names[i] = x_name(*t)
        for p, i in self.np_index.items():
            names[i] = np_name(p)
        for q, i in self.nq_index.items():
            names[i] = nq_name(q)
        names[self.r_index] = "r"
        return names

    def counts(self) -> dict[str, int]:
        n_prof = (self.beta + 1) ** self.k
        return {
            "x": self.n_vars - 2 * n_prof - 1,
            "nP": n_prof,
            "nQ": n_prof,
            "r": 1,
            "vars": self.n_vars,
            "constraints": self.n_constraints,
        }


def lp_size(k: int, beta: int) -> tuple[int, int]:
    """(variable count, constraint count) without enumerating anything."""
    n_prof = (beta + 1) ** k
    return triplet_count(k, beta) + 2 * n_prof + 1, 2 * n_prof * k + 3


def build_lp(k: int, beta: int, beta_minus: int, variable_cap: int = DEFAULT_VARIABLE_CAP) -> LpInstance:
    """Materialise ``LP(k, beta, beta_minus)``.

    Instances with more than ``variable_cap`` variables come back with status
    ``size-exceeded`` and no rows; :func:`export_lp_file` can still stream them.
    """
    _check_params(k, beta, beta_minus)
    n_vars, n_cons = lp_size(k, beta)
    if n_vars > variable_cap:
        return LpInstance(k, beta, beta_minus, SIZE_EXCEEDED, n_vars, n_cons)
    trip = list(triplets(k, beta))
    profs = list(profiles(k, beta))
    x_index = {t: i for i, t in enumerate(trip)}
    off = len(trip)
    np_index = {p: off + i for i, p in enumerate(profs)}
    off += len(profs)
    nq_index = {q: off + i for i, q in enumerate(profs)}
    r_index = off + len(profs)

    p_rows: dict[tuple[Profile, int], list[tuple[int, float]]] = {}
    q_rows: dict[tuple[Profile, int], list[tuple[int, float]]] = {}
    for p in profs:
        for j in range(1, k + 1):
            p_rows[(p, j)] = [(np_index[p], float(p[j - 1]))]
            q_rows[(p, j)] = [(nq_index[p], float(p[j - 1]))]
    for t, i in x_index.items():
        p, q, j = t
        p_rows[(p, j)].append((i, -1.0))
        q_rows[(q, j)].append((i, -1.0))
    rows = [Row(f"bP_{_pname(p)}_{j}", terms, "=", 0.0) for (p, j), terms in p_rows.items()]
    rows += [Row(f"bQ_{_pname(q)}_{j}", terms, "=", 0.0) for (q, j), terms in q_rows.items()]
    rows.append(Row("sizeQ", [(nq_index[q], 1.0) for q in profs] + [(r_index, -1.0)], "=", 0.0))
    rows.append(Row("sizeP", [(np_index[p], 1.0) for p in profs], "=", 1.0))
    rows.append(Row("mass", [(i, 1.0) for i in range(len(trip))], ">=", beta_minus / 2.0))
    inst = LpInstance(
        k, beta, beta_minus, BUILT, r_index + 1, len(rows), trip, profs, x_index, np_index, nq_index, r_index, rows
    )
    assert inst.n_vars == n_vars and inst.n_constraints == n_cons
    return inst


# --- solving -------------------------------------------------------------------------


@dataclass
class LpSolution:
    status: str
    objective: float | None
    values: np.ndarray | None
    iterations: int = 0
    max_residual: float | None = None

    @property
    def r(self) -> float | None:
        return self.objective


def _standard_form(inst: LpInstance) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense ``(c, A, b)`` with one surplus column for the single ``>=`` row."""
    n = inst.n_vars
    n_ge = sum(1 for row in inst.rows if row.sense == ">=")
    A = np.zeros((len(inst.rows), n + n_ge))
    b = np.zeros(len(inst.rows))
    s = n
    for i, row in enumerate(inst.rows):
        for j, a in row.terms:
            A[i, j] += a
        b[i] = row.rhs
        if row.sense == ">=":
            A[i, s] = -1.0
            s += 1
    c = np.zeros(n + n_ge)
    c[inst.r_index] = 1.0
    return c, A, b


def solve_lp(inst: LpInstance, tol: float = 1e-9) -> LpSolution:
    """Solve with the in-repo simplex, then re-verify against the raw definitions."""
    if not inst.materialized:
        return LpSolution(inst.status, None, None)
    c, A, b = _standard_form(inst)
    res = simplex.solve(c, A, b, tol=tol)
    if res.status != simplex.OPTIMAL:
        return LpSolution(res.status, None, None, res.iterations)
    values = res.x[: inst.n_vars]
    resid = max_violation(inst, values)
    return LpSolution(simplex.OPTIMAL, float(values[inst.r_index]), values, res.iterations, resid)


def max_violation(inst: LpInstance, values) -> float:
    """Largest constraint violation, recomputed from the profile definitions.

    This walks triplets and profiles directly rather than the sparse rows, so
    it is an independent check of both the row builder and the solver.
    """
    k, beta = inst.k, inst.beta
    worst = 0.0
    for v in values:
        worst = max(worst, -float(v))
    p_sum: dict[tuple[Profile, int], float] = {}
    q_sum: dict[tuple[Profile, int], float] = {}
    total = 0.0
    for (p, q, j), i in inst.x_index.items():
        if sum(p[:j]) + sum(q[:j]) > beta:
            worst = max(worst, math.inf)
        xv = float(values[i])
        p_sum[(p, j)] = p_sum.get((p, j), 0.0) + xv
        q_sum[(q, j)] = q_sum.get((q, j), 0.0) + xv
        total += xv
    for p in profiles(k, beta):
        for j in range(1, k + 1):
            worst = max(worst, abs(values[inst.np_index[p]] * p[j - 1] - p_sum.get((p, j), 0.0)))
            worst = max(worst, abs(values[inst.nq_index[p]] * p[j - 1] - q_sum.get((p, j), 0.0)))
    nq = sum(float(values[i]) for i in inst.nq_index.values())
    np_ = sum(float(values[i]) for i in inst.np_index.values())
    worst = max(worst, abs(nq - float(values[inst.r_index])), abs(np_ - 1.0))
    worst = max(worst, inst.beta_minus / 2.0 - total)
    return worst


# --- LP file interchange ---------------------------------------------------------------

TERMS_PER_LINE = 16


def _fmt(a: float) -> str:
    return repr(int(a)) if float(a).is_integer() else repr(float(a))


class _NameCache:
    """Profile names grouped so every completion set is a list prefix.

    For level ``j`` the profiles are sorted by the sum of their first ``j``
    entries; the completions with head budget ``b`` are then exactly the
    first ``cut[j][b]`` names.
    """

    def __init__(self, k: int, beta: int):
        self.names = {p: _pname(p) for p in profiles(k, beta)}
        self.by_level: list[list[str]] = [[]]
        self.cut: list[list[int]] = [[]]
        for j in range(1, k + 1):
            order = sorted(self.names, key=lambda p: (sum(p[:j]), p))
            sums = [sum(p[:j]) for p in order]
            self.by_level.append([self.names[p] for p in order])
            cut, pos = [], 0
            for b in range(beta + 1):
                while pos < len(sums) and sums[pos] <= b:
                    pos += 1
                cut.append(pos)
            self.cut.append(cut)

    def completions(self, j: int, budget: int) -> list[str]:
        if budget < 0:
            return []
        return self.by_level[j][: self.cut[j][budget]]


def _chunks(seq: list[str], size: int) -> Iterator[list[str]]:
    for i in range(0, len(seq), size):
        yield seq[i : i + size]


def _write_lines(out, k: int, beta: int, beta_minus: int, per_line: int) -> None:
    names = _NameCache(k, beta)
    profs = list(profiles(k, beta))
    for side in ("P", "Q"):
        nvar = "nP_" if side == "P" else "nQ_"
        for p in profs:
            pn = names.names[p]
            for j in range(1, k + 1):
                js = str(j)
                buf = [f" b{side}_{pn}_{js}:\n"]
                c = p[j - 1]
                if c:
                    buf.append(f"   + {_coef(c)}{nvar}{pn}\n")
                others = names.completions(j, beta - sum(p[:j]))
                if side == "P":
                    head, sep, tail = f"   - x_{pn}_", f"_{js} - x_{pn}_", f"_{js}\n"
                else:
                    head, sep, tail = "   - x_", f"_{pn}_{js} - x_", f"_{pn}_{js}\n"
                for chunk in _chunks(others, per_line):
                    buf.append(head + sep.join(chunk) + tail)
                buf.append("   = 0\n")
                out.write("".join(buf))
    all_names = [names.names[p] for p in profs]
    out.write(" sizeQ:\n")
    for chunk in _chunks(all_names, per_line):
        out.write("   + nQ_" + " + nQ_".join(chunk) + "\n")
    out.write("   - r\n   = 0\n sizeP:\n")
    for chunk in _chunks(all_names, per_line):
        out.write("   + nP_" + " + nP_".join(chunk) + "\n")
    out.write("   = 1\n mass:\n")
    for j in range(1, k + 1):
        js = str(j)
        for p in profs:
            pn = names.names[p]
            others = names.completions(j, beta - sum(p[:j]))
            if not others:
                continue
            head, sep, tail = f"   + x_{pn}_", f"_{js} + x_{pn}_", f"_{js}\n"
            out.write("".join(head + sep.join(chunk) + tail for chunk in _chunks(others, per_line)))
    out.write(f"   >= {_fmt(beta_minus / 2.0)}\n")


def _coef(a: float) -> str:
    return "" if a == 1 else f"{_fmt(a)} "


def export_lp_file(
    inst: LpInstance, path: str | Path, per_line: int = TERMS_PER_LINE, compresslevel: int = 1
) -> Path:
    """Write ``inst`` in CPLEX LP text format, gzip-compressed if ``path`` ends in .gz.

    Rows are streamed from the profile enumeration, so size-exceeded
    instances export without ever being materialised.  Variables are
    non-negative, the format's default bound.
    """
    path = Path(path)
    k, beta, bm = inst.k, inst.beta, inst.beta_minus
    _check_params(k, beta, bm)
    if path.suffix == ".gz":
        out = gzip.open(path, "wt", encoding="ascii", newline="\n", compresslevel=compresslevel)
    else:
        out = open(path, "w", encoding="ascii", newline="\n", buffering=1 << 20)
    with out:
        out.write(f"\\ hedcs factor-revealing LP k={k} beta={beta} beta_minus={bm}\n")
        out.write(f"\\ variables={inst.n_vars} constraints={inst.n_constraints}\n")
        out.write("Minimize\n obj: r\nSubject To\n")
        _write_lines(out, k, beta, bm, per_line)
        out.write("Bounds\n r >= 0\nEnd\n")
    return path


def expected_term_count(k: int, beta: int) -> int:
    """Number of coefficient occurrences written by :func:`export_lp_file`."""
    n_prof = (beta + 1) ** k
    nonzero = k * beta * (beta + 1) ** (k - 1)  # entries p_j > 0 over all (p, j)
    return 3 * triplet_count(k, beta) + 2 * nonzero + 2 * n_prof + 1


def _open_text(path: Path):
    if path.suffix == ".gz":
        return gzip.open(path, "rt", encoding="ascii")
    return open(path, "r", encoding="ascii", buffering=1 << 20)


_HEADER = re.compile(r"^\\ hedcs factor-revealing LP k=(\d+) beta=(\d+) beta_minus=(\d+)$")
_TERM = re.compile(r"([+-])\s*(\d+(?:\.\d*)?(?:e[+-]?\d+)?)?\s*([A-Za-z_][\w.]*)")
_SECTIONS = ("Minimize", "Subject To", "Bounds", "End")


@dataclass
class ParsedLp:
    header: tuple[int, int, int] | None
    objective: dict[str, float]
    rows: dict[str, tuple[dict[str, float], str, float]]
    variables: set[str]


def read_lp_file(path: str | Path) -> ParsedLp:
    """Reader for the subset of the LP format produced by :func:`export_lp_file`."""
    header = None
    objective: dict[str, float] = {}
    rows: dict[str, tuple[dict[str, float], str, float]] = {}
    variables: set[str] = set()
    section = None
    cur_name = None
    cur_terms: dict[str, float] = {}
    with _open_text(Path(path)) as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("\\"):
                m = _HEADER.match(line)
                if m:
                    header = tuple(int(g) for g in m.groups())
                continue
            s = line.strip()
            if s in _SECTIONS:
                section = s
                continue
            if section == "Minimize":
                _, expr = s.split(":", 1)
                objective = _parse_terms("+ " + expr.strip())
            elif section == "Subject To":
                if s.endswith(":"):
                    cur_name, cur_terms = s[:-1], {}
                elif s.startswith((">=", "<=", "=")):
                    sense, rhs = s.split()
                    rows[cur_name] = (cur_terms, sense, float(rhs))
                    variables.update(cur_terms)
                else:
                    for v, a in _parse_terms(s).items():
                        cur_terms[v] = cur_terms.get(v, 0.0) + a
    variables.update(objective)
    return ParsedLp(header, objective, rows, variables)


def _parse_terms(s: str) -> dict[str, float]:
    out: dict[str, float] = {}
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse LP terms near {s[pos:pos + 40]!r}")
        sign, coef, var = m.groups()
        a = float(coef) if coef else 1.0
        out[var] = out.get(var, 0.0) + (a if sign == "+" else -a)
        pos = m.end()
        while pos < len(s) and s[pos] == " ":
            pos += 1
    return out


def instance_rows_by_name(inst: LpInstance) -> dict[str, tuple[dict[str, float], str, float]]:
    """The materialised rows keyed like a parsed file, for round-trip comparison."""
    names = inst.var_names()
    out = {}
    for row in inst.rows:
        terms: dict[str, float] = {}
        for i, a in row.terms:
            if a:
                terms[names[i]] = terms.get(names[i], 0.0) + a
        out[row.name] = (terms, row.sense, row.rhs)
    return out


_DIGITS = b"0123456789"
_ALLOWED = bytes(range(ord("a"), ord("z") + 1)) + bytes(range(ord("A"), ord("Z") + 1)) + _DIGITS + b"._:+-=<> \n"
# Letters -> 'a', digits -> '0', name separators -> 's', name delimiters -> 'w'.
_CLASSES = bytes.maketrans(
    bytes(range(ord("a"), ord("z") + 1)) + bytes(range(ord("A"), ord("Z") + 1)) + _DIGITS + b"._ \n:",
    b"a" * 52 + b"0" * 10 + b"sswww",
)
_BAD_PAIRS = (b"ss", b"sw", b"ws", b"a0")
_NAME = rb"[A-Za-z][A-Za-z._]*"
_TERM_S = rb"[+-]  ?" + _NAME
_SHAPE = re.compile(
    rb" " + _NAME + rb":"
    rb"|   " + _TERM_S + rb"(?: " + _TERM_S + rb")*"
    rb"|   (?:=|>=|<=) -?\.?"
)


def _blocks(fh, size: int) -> Iterator[bytes]:
    """Newline-aligned blocks of roughly ``size`` bytes."""
    rest = b""
    while True:
        chunk = fh.read(size)
        if not chunk:
            if rest:
                yield rest
            return
        chunk = rest + chunk
        cut = chunk.rfind(b"\n") + 1
        rest = chunk[cut:]
        if cut:
            yield chunk[:cut]


def scan_lp_file(path: str | Path, block_size: int = 1 << 25) -> dict:
    """Validate the grammar of a (possibly huge) exported file in bounded memory.

    The body between ``Subject To`` and ``Bounds`` is checked block-wise at C
    speed: a character whitelist, separator-adjacency rules that force every
    numeric field of a name to be non-empty, and a grammar check of each
    distinct line shape after digits are stripped.  Row structure (name,
    terms, right-hand side) is followed through the positions of ``:`` and
    ``=``.  Raises ``ValueError`` on the first problem found.
    """
    path = Path(path)
    opener = gzip.open if path.suffix == ".gz" else open
    counts = {"header": None, "rows": 0, "terms": 0, "lines": 0}
    shapes: set[bytes] = set()
    open_row = False
    with opener(path, "rb") as fh:
        pre = []
        for raw in fh:
            counts["lines"] += 1
            line = raw.rstrip(b"\n").decode("ascii")
            if line.startswith("\\"):
                m = _HEADER.match(line)
                if m:
                    counts["header"] = tuple(int(g) for g in m.groups())
                continue
            pre.append(line)
            if line == "Subject To":
                break
        if pre != ["Minimize", " obj: r", "Subject To"]:
            raise ValueError(f"unexpected preamble {pre}")
        tail = b""
        for block in _blocks(fh, block_size):
            end = block.find(b"Bounds\n")
            if end >= 0:
                if end and block[end - 1 : end] != b"\n":
                    raise ValueError("'Bounds' not at start of a line")
                tail = block[end:] + fh.read()
                block = block[:end]
            counts["lines"] += block.count(b"\n")
            if block.translate(None, _ALLOWED):
                raise ValueError("unexpected characters in constraint section")
            cls = block.translate(_CLASSES)
            for pair in _BAD_PAIRS:
                if pair in cls:
                    raise ValueError(f"malformed name near {block[cls.find(pair) - 30:cls.find(pair) + 30]!r}")
            skeleton = block.translate(None, _DIGITS)
            shapes.update(skeleton.split(b"\n"))
            counts["terms"] += block.count(b" + ") + block.count(b" - ")
            # Row structure: names end in ':' and right-hand sides hold the only '='.
            events = sorted(
                [(m.start(), "name") for m in re.finditer(rb":\n", block)]
                + [(m.start(), "rhs") for m in re.finditer(rb"=", block)]
            )
            for pos, kind in events:
                if kind == "name":
                    if open_row:
                        raise ValueError("row without right-hand side")
                    line_start = block.rfind(b"\n", 0, pos) + 1
                    if block[line_start : line_start + 1] != b" " or block[line_start + 1 : line_start + 2] == b" ":
                        raise ValueError("malformed row name")
                    open_row = True
                    counts["rows"] += 1
                else:
                    if not open_row:
                        raise ValueError("right-hand side outside a row")
                    open_row = False
                    nxt = block.find(b"\n", pos) + 1
                    if nxt < len(block) and block[nxt : nxt + 1] != b" " or block[nxt + 1 : nxt + 2] == b" ":
                        raise ValueError("terms after a right-hand side")
            if tail:
                break
        if open_row:
            raise ValueError("last row has no right-hand side")
        if tail.decode("ascii").split("\n") != ["Bounds", " r >= 0", "End", ""]:
            raise ValueError("malformed Bounds/End trailer")
        counts["lines"] += 3
    shapes.discard(b"")
    for s in shapes:
        if not _SHAPE.fullmatch(s):
            raise ValueError(f"malformed line shape {s[:80]!r}")
    counts["shapes"] = len(shapes)
    return counts


# --- ratio conversions ------------------------------------------------------------------


def alpha_from_f(f: float) -> float:
    """``2f / (2f + 1)``."""
    if f < 0:
        raise ParameterError(f"f must be non-negative, got {f!r}")
    return 2.0 * f / (2.0 * f + 1.0)


def trivial_alpha(k: int, beta: int, beta_minus: int) -> float:
    """Bound from the maximum degree alone: ``t / (t + 1)`` with ``t = beta_minus / (beta - 1)``."""
    _check_params(k, beta, beta_minus)
    t = beta_minus / (beta - 1)
    return t / (t + 1.0)


def h(k: int, prec: int = EXTENDED_PREC) -> mpmath.mpf:
    """``2 ** -(2 ** (2k))``, exact in mpmath (binary exponents are unbounded)."""
    with mpmath.workprec(prec):
        return mpmath.ldexp(mpmath.mpf(1), -(2 ** (2 * k)))


@dataclass(frozen=True)
class AnalyticAlpha:
    value: mpmath.mpf
    underflow: bool
    prec: int = EXTENDED_PREC

    def __float__(self) -> float:
        return float(self.value)


def analytic_alpha(k: int, delta: float, prec: int = EXTENDED_PREC) -> AnalyticAlpha:
    """``1/2 + h(k)/6 - (2/3) delta`` evaluated at ``prec`` bits.

    ``underflow`` is set when ``h(k)/6`` vanishes against ``1/2`` at this
    precision, in which case the value is exactly ``1/2 - (2/3) delta``.
    """
    if not isinstance(k, int) or k < 1:
        raise ParameterError(f"k must be an integer >= 1, got {k!r}")
    if not 0.0 <= delta <= 0.2:
        raise ParameterError(f"delta must lie in [0, 0.2], got {delta!r}")
    with mpmath.workprec(prec):
        hk = h(k, prec)
        d = mpmath.mpf(delta)
        if hk - 4 * d < 0:
            raise DomainError(f"h({k}) - 4*delta < 0 for delta={delta}")
        half = mpmath.mpf(1) / 2
        bonus = half + hk / 6
        value = bonus - 2 * d / 3
        return AnalyticAlpha(value, bonus == half, prec)


@dataclass
class RecurrenceRow:
    k: int
    holds: bool
    log2_margin: float


def check_h_recurrence(k_max: int) -> list[RecurrenceRow]:
    """Exact check of ``h(k-1) - 12 sqrt(h(k)) >= h(k)`` for ``k = 2..k_max``.

    Scaling by ``2^(2^(2k))`` turns the inequality into integer arithmetic:
    ``2^A - 12 * 2^B - 1 >= 0`` with ``A = 3 * 2^(2k-2)`` and ``B = 2^(2k-1)``.
    """
    if k_max < 2:
        raise ParameterError("k_max must be >= 2")
    if k_max > 14:
        raise ParameterError("exact check limited to k_max <= 14")
    out = []
    for k in range(2, k_max + 1):
        A = 2 ** (2 * k) - 2 ** (2 * k - 2)
        B = 2 ** (2 * k - 1)
        scaled = (1 << A) - 12 * (1 << B) - 1
        holds = scaled >= 0
        # log2(margin) = log2(scaled) - 2^(2k)
        log2m = (scaled.bit_length() - 1 + math.log2(scaled / (1 << (scaled.bit_length() - 1))) if scaled > 0 else -math.inf)
        out.append(RecurrenceRow(k, holds, float(log2m - 2 ** (2 * k)) if scaled > 0 else -math.inf))
    return out


def exact_h_margin(k: int) -> Fraction:
    """``h(k-1) - 12 sqrt(h(k)) - h(k)`` as an exact fraction (small k only)."""
    den = 1 << (2 ** (2 * k))
    A = 2 ** (2 * k) - 2 ** (2 * k - 2)
    B = 2 ** (2 * k - 1)
    return Fraction((1 << A) - 12 * (1 << B) - 1, den)
