"""Lossless logs of generator runs.

A log is the pentad (R, D, O, P, S):

R  route of +1/-1 steps: one up per choice, one down per erased cell, then
   one down per assigned cell of the final sequence;
D  difference of each erased square;
O  +1 if the first half was erased, -1 if the second;
P  rank (1..h) of the just-set cell inside the erased half;
S  final snapshot, 0 for unassigned.

``decode`` recovers the rank sequence from a log plus the run's config, so
distinct rank sequences can never share a log.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bounds import count_logs_upper_bound, crossing_M  # noqa: F401  (re-exported)
from .core import NonrepError, PartialSequence
from .generator import Choice, Erasure, ExecutionTrace, GeneratorConfig, TraceCorruption, available_symbols

UP, DOWN = 1, -1


class DecodeError(NonrepError, ValueError):
    pass


@dataclass
class Log:
    R: list[int]
    D: list[int]
    O: list[int]
    P: list[int]
    S: list[int]

    @property
    def M(self) -> int:
        return self.R.count(UP)

    @property
    def trailing(self) -> int:
        return sum(1 for v in self.S if v)

    def body(self) -> list[int]:
        """Route without the final run of trailing downs."""
        return self.R[: len(self.R) - self.trailing]

    def key(self):
        return (tuple(self.R), tuple(self.D), tuple(self.O), tuple(self.P), tuple(self.S))

    def to_json(self) -> str:
        return json.dumps({"R": rle(self.R), "D": self.D, "O": self.O, "P": self.P, "S": self.S})

    @classmethod
    def from_json(cls, text: str) -> "Log":
        try:
            obj = json.loads(text)
            return cls(unrle(obj["R"]), obj["D"], obj["O"], obj["P"], obj["S"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DecodeError(f"malformed log: {exc}") from None


def rle(route: list[int]) -> list[int]:
    """Run-length encode as signed counts: [3, -2] means up,up,up,down,down."""
    out: list[int] = []
    for step in route:
        if out and (out[-1] > 0) == (step > 0):
            out[-1] += step
        else:
            out.append(step)
    return out


def unrle(runs: list[int]) -> list[int]:
    route = []
    for r in runs:
        if not isinstance(r, int) or r == 0:
            raise DecodeError(f"bad run {r!r}")
        route.extend([UP if r > 0 else DOWN] * abs(r))
    return route


def down_runs(route: list[int]) -> list[tuple[int, int]]:
    """(start, length) of each maximal run of downs that follows an up (a peak)."""
    runs = []
    x = 0
    while x < len(route):
        if route[x] == DOWN and x > 0 and route[x - 1] == UP:
            y = x
            while y < len(route) and route[y] == DOWN:
                y += 1
            runs.append((x, y - x))
            x = y
        else:
            x += 1
    return runs


def encode(trace: ExecutionTrace) -> Log:
    if trace.final is None:
        raise TraceCorruption("trace has no final state")
    R, D, O, P = [], [], [], []
    prev = None
    for idx, e in enumerate(trace.events):
        if isinstance(e, Choice):
            R.append(UP)
        elif isinstance(e, Erasure):
            if not isinstance(prev, Choice):
                raise TraceCorruption(f"event {idx}: erasure not preceded by a choice")
            erased = e.erased_positions
            if erased[e.rank_of_just_set - 1] != prev.position:
                raise TraceCorruption(f"event {idx}: just-set cell not at rank {e.rank_of_just_set}")
            R.extend([DOWN] * e.rep.h)
            D.append(e.rep.d)
            O.append(1 if e.erased_half == "first" else -1)
            P.append(e.rank_of_just_set)
        else:
            raise TraceCorruption(f"event {idx}: unknown event {e!r}")
        prev = e
    S = trace.final.snapshot()
    live = R.count(UP) - R.count(DOWN)
    if live != sum(1 for v in S if v):
        raise TraceCorruption(f"{live} cells should be assigned, final state has {sum(1 for v in S if v)}")
    R.extend([DOWN] * live)
    return Log(R, D, O, P, S)


def _replan(log: Log, cfg: GeneratorConfig):
    """Forward pass: which position each up filled and which cells each peak cleared."""
    n, K = cfg.n, cfg.K
    body = log.body()
    if any(step != DOWN for step in log.R[len(body):]):
        raise DecodeError("route does not end with one down per assigned cell")
    if not (len(log.D) == len(log.O) == len(log.P)):
        raise DecodeError("D, O and P differ in length")
    assigned = [True] + [False] * n  # slot 0 padding keeps index() off it
    ops = []
    peak = 0
    last_set = None
    x = 0
    while x < len(body):
        if body[x] == UP:
            try:
                pos = assigned.index(False)
            except ValueError:
                raise DecodeError(f"step {x}: up-step with every cell assigned") from None
            assigned[pos] = True
            ops.append(("choice", pos))
            last_set = pos
            x += 1
            continue
        if last_set is None:
            raise DecodeError(f"step {x}: down-run without a preceding up-step")
        t = 0
        while x + t < len(body) and body[x + t] == DOWN:
            t += 1
        if peak >= len(log.D):
            raise DecodeError("more peaks than entries in D")
        d, o, p = log.D[peak], log.O[peak], log.P[peak]
        if d not in K or o not in (1, -1) or not 1 <= p <= t:
            raise DecodeError(f"peak {peak}: invalid (d={d}, o={o}, p={p}) for run of {t}")
        m = last_set - (p - 1) * d
        cells = range(m, m + t * d, d)
        if m < 1 or cells[-1] > n or not all(assigned[c] for c in cells):
            raise DecodeError(f"peak {peak}: erased cells {list(cells)} were not all assigned")
        for c in cells:
            assigned[c] = False
        ops.append(("erase", m, d, t, o))
        peak += 1
        last_set = None
        x += t
    if peak != len(log.D):
        raise DecodeError(f"{len(log.D)} entries in D but {peak} peaks")
    if [bool(v) for v in log.S] != assigned[1:]:
        raise DecodeError("assigned cells after the route disagree with S")
    return ops


def decode(log: Log, cfg: GeneratorConfig) -> list[int]:
    """Recover the 0-based ranks r_1..r_M of the run that produced ``log``."""
    if len(log.S) != cfg.n:
        raise DecodeError(f"S has length {len(log.S)}, config says n={cfg.n}")
    ops = _replan(log, cfg)
    seq = PartialSequence.from_snapshot(log.S)
    cells = seq.cells
    ranks = []
    for op in reversed(ops):
        if op[0] == "erase":
            _, m, d, t, o = op
            for c in range(m, m + t * d, d):
                src = c + o * t * d
                if not 1 <= src <= cfg.n or cells[src] is None or cells[c] is not None:
                    raise DecodeError(f"cannot restore cell {c} from {src}")
                seq[c] = cells[src]
        else:
            pos = op[1]
            v = cells[pos]
            if v is None:
                raise DecodeError(f"cell {pos} empty when undoing its choice")
            seq.clear(pos)
            avail = available_symbols(seq, cfg.lists, cfg.K, pos)
            try:
                ranks.append(avail.index(v))
            except ValueError:
                raise DecodeError(f"symbol {v} not available at position {pos}") from None
    if seq.assigned_count():
        raise DecodeError("cells remain assigned after undoing every choice")
    ranks.reverse()
    return ranks


def log_violations(log: Log) -> list[str]:
    """Structural checks on a log; empty list means all invariants hold."""
    problems = []
    M = log.M
    if len(log.R) != 2 * M:
        problems.append(f"route has {len(log.R)} steps, expected {2 * M}")
    height = 0
    for x, step in enumerate(log.R):
        height += step
        if height < 0:
            problems.append(f"route below zero at step {x}")
            break
    if height != 0:
        problems.append(f"route ends at height {height}")
    # the trailing downs only mark S; the h >= 2 and M/2 facts concern erasures
    erasure_peaks = down_runs(log.body())
    for start, length in erasure_peaks:
        if length < 2:
            problems.append(f"down-run of length {length} at step {start}")
    if len(erasure_peaks) > M / 2:
        problems.append(f"{len(erasure_peaks)} peaks exceed M/2 = {M / 2}")
    if not (len(log.D) == len(log.O) == len(log.P) == len(erasure_peaks)):
        problems.append("D, O, P lengths do not match the erasure peaks")
    else:
        for (start, length), p in zip(erasure_peaks, log.P):
            if not 1 <= p <= length:
                problems.append(f"P entry {p} outside 1..{length}")
    if sum(log.P) > M:
        problems.append(f"sum of P = {sum(log.P)} exceeds M = {M}")
    if sum(length for _, length in erasure_peaks) > M:
        problems.append("more cells erased than written")
    return problems
