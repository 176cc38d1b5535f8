"""Square-free colorings of point-line configurations.

Lines are abstract: an ordered list of point indices. Points are colored in
a fixed order with the same erase-and-retry loop as the sequence generator;
a point may not repeat the color of its immediate neighbours on any line
through it.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field

from .checker import CheckReport, best_square_through, is_nonrepetitive
from .core import ConfigurationError, DifferenceSet, InputError, PartialSequence, Repetition
from .generator import BudgetExceeded, Choice, Erasure, ExecutionTrace

_K1 = DifferenceSet([1])


@dataclass
class Configuration:
    points: int
    lines: list[tuple[int, ...]]
    order: list[int] | None = None

    def __post_init__(self):
        self.lines = [tuple(line) for line in self.lines]
        for li, line in enumerate(self.lines):
            if len(set(line)) != len(line):
                raise InputError(f"line {li} repeats a point")
            for p in line:
                if not 1 <= p <= self.points:
                    raise InputError(f"line {li}: point {p} outside 1..{self.points}")
        if self.order is None:
            self.order = list(range(1, self.points + 1))
        elif sorted(self.order) != list(range(1, self.points + 1)):
            raise InputError("order must be a permutation of the points")
        # point -> [(line index, 0-based slot on that line)]
        self.incidences: list[list[tuple[int, int]]] = [[] for _ in range(self.points + 1)]
        for li, line in enumerate(self.lines):
            for slot, p in enumerate(line):
                self.incidences[p].append((li, slot))

    @classmethod
    def from_json(cls, text: str) -> "Configuration":
        try:
            obj = json.loads(text)
            return cls(obj["points"], obj["lines"], obj.get("order"))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad configuration: {exc}") from None

    def to_json(self) -> str:
        return json.dumps({"points": self.points, "lines": [list(l) for l in self.lines],
                           "order": self.order})


def grid_configuration(rows: int, cols: int, diagonals: bool = False) -> Configuration:
    """rows x cols grid, points numbered row by row; lines are rows and columns,
    plus the two main diagonals of a square grid if requested."""
    pt = lambda r, c: r * cols + c + 1
    lines = [tuple(pt(r, c) for c in range(cols)) for r in range(rows)]
    lines += [tuple(pt(r, c) for r in range(rows)) for c in range(cols)]
    if diagonals:
        if rows != cols:
            raise ValueError("diagonals need a square grid")
        lines.append(tuple(pt(i, i) for i in range(rows)))
        lines.append(tuple(pt(i, cols - 1 - i) for i in range(rows)))
    return Configuration(rows * cols, lines)


def line_configuration(n: int) -> Configuration:
    return Configuration(n, [tuple(range(1, n + 1))] if n else [])


def max_incidence(cfg: Configuration) -> int:
    return max((len(inc) for inc in cfg.incidences[1:]), default=0)


def min_colors(I: int) -> int:
    return math.ceil(2 * I + 10 * math.sqrt(I))


@dataclass(frozen=True)
class LineErasure:
    line: int
    rep: Repetition  # first is the 1-based slot on the line, d == 1
    erased_half: str
    rank_of_just_set: int


@dataclass
class ColoringRun:
    coloring: list[int]  # index 0 unused
    events: list = field(default_factory=list)

    @property
    def M(self) -> int:
        return sum(1 for e in self.events if isinstance(e, Choice))

    def as_generator_trace(self, cfg: Configuration) -> ExecutionTrace:
        """For a single line listed as 1..n, the run as a K={1} generator trace."""
        if len(cfg.lines) != 1 or cfg.lines[0] != tuple(range(1, cfg.points + 1)):
            raise ValueError("only a single line 1..n maps onto a sequence trace")
        events = []
        for e in self.events:
            if isinstance(e, LineErasure):
                e = Erasure(e.rep, e.erased_half, e.rank_of_just_set)
            events.append(e)
        return ExecutionTrace(events, PartialSequence.from_symbols(self.coloring[1:]))


def _available(cfg, colors, C, p):
    forbidden = set()
    for li, slot in cfg.incidences[p]:
        line = cfg.lines[li]
        if slot > 0:
            forbidden.add(colors[line[slot - 1]])
        if slot + 1 < len(line):
            forbidden.add(colors[line[slot + 1]])
    return [c for c in range(1, C + 1) if c not in forbidden]


def _canonical_on_lines(cfg, colors, p):
    """Longest square through p over all its lines: (h, first slot, -line)."""
    best = None
    for li, slot in cfg.incidences[p]:
        line = cfg.lines[li]
        left = slot
        while left > 0 and colors[line[left - 1]] is not None:
            left -= 1
        right = slot + 1
        while right < len(line) and colors[line[right]] is not None:
            right += 1
        if right - left < 2:
            continue
        word = [colors[q] for q in line[left:right]]
        found = best_square_through(word, slot - left)
        if found is None:
            continue
        h, s = found
        key = (h, left + s + 1, -li)
        if best is None or key > best:
            best = key
    return best


def color_configuration(cfg: Configuration, C: int, seed: int, max_choices: int | None = None) -> ColoringRun:
    """Color all points so that every line reads square-free.

    Raises BudgetExceeded after ``max_choices`` choices (default
    200 * points * max(I, 1)), ConfigurationError when C <= 2I since a point
    could then run out of colors.
    """
    I = max_incidence(cfg)
    if cfg.points and C <= 2 * I:
        raise ConfigurationError(f"C={C} colors leave none free next to 2I={2 * I} neighbours")
    if max_choices is None:
        max_choices = 200 * cfg.points * max(I, 1)
    rng = random.Random(seed)
    colors: list[int | None] = [None] * (cfg.points + 1)
    rank_of = {p: r for r, p in enumerate(cfg.order)}
    run = ColoringRun(colors)
    ptr = 0
    while ptr < len(cfg.order):
        p = cfg.order[ptr]
        if colors[p] is not None:
            ptr += 1
            continue
        if run.M >= max_choices:
            raise BudgetExceeded(f"more than {max_choices} choices needed", run)
        avail = _available(cfg, colors, C, p)
        r = rng.randrange(len(avail))
        colors[p] = avail[r]
        run.events.append(Choice(p, tuple(avail), r))
        found = _canonical_on_lines(cfg, colors, p)
        if found is None:
            ptr += 1
            continue
        h, first, neg_li = found
        li = -neg_li
        line = cfg.lines[li]
        slot = next(s for l, s in cfg.incidences[p] if l == li) + 1
        if slot <= first + h - 1:
            half, start = "first", first
        else:
            half, start = "second", first + h
        erased = [line[s - 1] for s in range(start, start + h)]
        for q in erased:
            colors[q] = None
        run.events.append(LineErasure(li, Repetition(first, 1, h), half, slot - start + 1))
        ptr = min(ptr, min(rank_of[q] for q in erased))
    return run


def verify_coloring(cfg: Configuration, coloring) -> CheckReport:
    """Check every line; witnesses are (line index, Repetition in line slots)."""
    colors = list(coloring)
    if len(colors) == cfg.points:
        colors = [None] + colors
    if len(colors) != cfg.points + 1:
        raise InputError(f"expected {cfg.points} colors, got {len(colors) - 1}")
    for p in range(1, cfg.points + 1):
        if not colors[p]:
            raise InputError(f"point {p} is uncolored")
    witnesses = []
    for li, line in enumerate(cfg.lines):
        word = PartialSequence.from_symbols([colors[p] for p in line])
        report = is_nonrepetitive(word, _K1)
        witnesses.extend((li, rep) for rep in report.witnesses)
    return CheckReport(not witnesses, witnesses)
