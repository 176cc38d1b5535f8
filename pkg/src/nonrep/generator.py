"""Randomized erase-and-retry construction of square-free sequences.

Each step fills the smallest unassigned position with a uniformly random
symbol from its list, excluding symbols already sitting at distance d for
every d in K. If that creates a square, the longest one (ties: largest
first index, then smallest d) loses the half containing the new symbol and
the walk resumes from the smallest hole.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

from .checker import find_canonical_repetition
from .core import (
    ConfigurationError,
    DifferenceSet,
    ListAssignment,
    NonrepError,
    PartialSequence,
    Repetition,
    default_list_size,
)


class BudgetExceeded(NonrepError, RuntimeError):
    def __init__(self, msg, trace=None):
        super().__init__(msg)
        self.trace = trace


class TraceCorruption(NonrepError, ValueError):
    pass


@dataclass(frozen=True)
class Choice:
    position: int
    available: tuple[int, ...]
    chosen_rank: int  # 0-based index into available

    def __post_init__(self):
        if not 0 <= self.chosen_rank < len(self.available):
            raise TraceCorruption(f"rank {self.chosen_rank} outside available list {self.available}")

    @property
    def symbol(self) -> int:
        return self.available[self.chosen_rank]

    def to_dict(self):
        return {"type": "choice", "position": self.position,
                "available": list(self.available), "rank": self.chosen_rank}


@dataclass(frozen=True)
class Erasure:
    rep: Repetition
    erased_half: str  # "first" or "second"
    rank_of_just_set: int  # 1-based rank of the just-set cell in the erased half

    def __post_init__(self):
        if self.erased_half not in ("first", "second"):
            raise TraceCorruption(f"erased_half must be first|second, got {self.erased_half!r}")
        if not 1 <= self.rank_of_just_set <= self.rep.h:
            raise TraceCorruption(f"rank {self.rank_of_just_set} outside 1..{self.rep.h}")

    @property
    def erased_positions(self) -> list[int]:
        return self.rep.first_half() if self.erased_half == "first" else self.rep.second_half()

    def to_dict(self):
        return {"type": "erasure", "first": self.rep.first, "d": self.rep.d, "h": self.rep.h,
                "half": self.erased_half, "rank": self.rank_of_just_set}


TraceEvent = Union[Choice, Erasure]


def event_from_dict(obj) -> TraceEvent:
    try:
        kind = obj["type"]
        if kind == "choice":
            return Choice(obj["position"], tuple(obj["available"]), obj["rank"])
        if kind == "erasure":
            return Erasure(Repetition(obj["first"], obj["d"], obj["h"]), obj["half"], obj["rank"])
    except (KeyError, TypeError, ValueError) as exc:
        raise TraceCorruption(f"malformed event {obj!r}: {exc}") from None
    raise TraceCorruption(f"unknown event type in {obj!r}")


@dataclass
class GeneratorConfig:
    n: int
    K: DifferenceSet
    lists: ListAssignment | None = None
    seed: int = 0
    max_choices: int | None = None
    record_trace: bool = True

    def __post_init__(self):
        if self.n < 0:
            raise ConfigurationError("n must be non-negative")
        if not isinstance(self.K, DifferenceSet):
            self.K = DifferenceSet(self.K)
        if self.lists is None:
            self.lists = ListAssignment.uniform(self.n, default_list_size(self.K.k))
        if len(self.lists) != self.n:
            raise ConfigurationError(f"{len(self.lists)} lists given for n={self.n}")
        if self.n and self.lists.min_size() - 2 * self.K.k < 1:
            raise ConfigurationError(
                f"lists of size {self.lists.min_size()} leave no symbol once "
                f"2|K|={2 * self.K.k} neighbours are excluded"
            )
        if self.max_choices is None:
            self.max_choices = 200 * self.n * self.K.k
        if self.max_choices < 1:
            raise ConfigurationError("max_choices must be positive")

    def to_dict(self):
        return {"n": self.n, "diffs": self.K.to_list(),
                "lists": [list(lst) for lst in self.lists],
                "seed": self.seed, "max_choices": self.max_choices}

    @classmethod
    def from_dict(cls, obj) -> "GeneratorConfig":
        try:
            n = obj["n"]
            K = DifferenceSet(obj["diffs"]) if "diffs" in obj else DifferenceSet.up_to(obj["k"])
            if "lists" in obj:
                lists = ListAssignment(obj["lists"])
            elif "list_size" in obj:
                lists = ListAssignment.uniform(n, obj["list_size"])
            else:
                lists = None
        except (KeyError, TypeError) as exc:
            raise ConfigurationError(f"bad generator config: {exc}") from None
        return cls(n, K, lists, obj.get("seed", 0), obj.get("max_choices"))


@dataclass
class ExecutionTrace:
    events: list = field(default_factory=list)
    final: PartialSequence | None = None
    choices: int | None = None  # set when events were not recorded

    @property
    def M(self) -> int:
        if self.choices is not None:
            return self.choices
        return sum(1 for e in self.events if isinstance(e, Choice))

    def ranks(self) -> list[int]:
        return [e.chosen_rank for e in self.events if isinstance(e, Choice)]

    def erasures(self) -> list[Erasure]:
        return [e for e in self.events if isinstance(e, Erasure)]

    def dump(self, fp, config: GeneratorConfig | None = None):
        """Write JSON lines: optional header, one event per line, final snapshot."""
        if config is not None:
            fp.write(json.dumps({"type": "header", **config.to_dict()}) + "\n")
        for e in self.events:
            fp.write(json.dumps(e.to_dict()) + "\n")
        if self.final is not None:
            fp.write(json.dumps({"type": "final", "S": self.final.snapshot()}) + "\n")

    @classmethod
    def load(cls, lines: Iterable[str]) -> tuple["ExecutionTrace", GeneratorConfig | None]:
        trace, config = cls(), None
        for lineno, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise TraceCorruption(f"line {lineno}: {exc}") from None
            kind = obj.get("type") if isinstance(obj, dict) else None
            if kind == "header":
                config = GeneratorConfig.from_dict(obj)
            elif kind == "final":
                trace.final = PartialSequence.from_snapshot(obj["S"])
            else:
                trace.events.append(event_from_dict(obj))
        return trace, config


def available_symbols(seq: PartialSequence, lists: ListAssignment, K: DifferenceSet, i: int) -> list[int]:
    """L_i minus the symbols currently at positions i-d and i+d, d in K.

    Neighbours outside 1..n or unassigned exclude nothing.
    """
    n = seq.n
    if not 1 <= i <= n:
        raise IndexError(f"position {i} outside 1..{n}")
    cells = seq.cells
    forbidden = set()
    for d in K:
        if i - d >= 1:
            forbidden.add(cells[i - d])
        if i + d <= n:
            forbidden.add(cells[i + d])
    avail = [s for s in lists[i] if s not in forbidden]
    if not avail:
        raise ConfigurationError(f"no symbol available at position {i}; list L_{i} too small")
    return avail


def erase_half(seq: PartialSequence, rep: Repetition, just_set: int) -> Erasure:
    """Clear the half of rep containing just_set, in increasing position order."""
    last_of_first = rep.first + (rep.h - 1) * rep.d
    if just_set <= last_of_first:
        half, m = "first", rep.first
    else:
        half, m = "second", rep.first + rep.h * rep.d
    rank = None
    for j in range(1, rep.h + 1):
        if m == just_set:
            rank = j
        seq.clear(m)
        m += rep.d
    if rank is None:
        raise ValueError(f"position {just_set} is not in the erased half of {rep}")
    return Erasure(rep, half, rank)


Observer = Callable[[TraceEvent, PartialSequence], None]


def generate(cfg: GeneratorConfig, observer: Observer | None = None, rng=None):
    """Run the construction; return (sequence, trace).

    ``observer`` is called after every event with the live sequence, which
    is how tests inspect intermediate states. ``rng`` overrides the seeded
    generator (anything with ``randrange``). Raises BudgetExceeded when more
    than ``cfg.max_choices`` choices would be needed.
    """
    if rng is None:
        rng = random.Random(cfg.seed)
    K, lists = cfg.K, cfg.lists
    seq = PartialSequence(cfg.n)
    trace = ExecutionTrace()
    events = trace.events if cfg.record_trace else None
    choices = 0
    i = seq.smallest_unassigned()
    while i is not None:
        if choices >= cfg.max_choices:
            trace.final = seq.copy()
            if not cfg.record_trace:
                trace.choices = choices
            raise BudgetExceeded(f"more than {cfg.max_choices} choices needed", trace)
        avail = available_symbols(seq, lists, K, i)
        rank = rng.randrange(len(avail))
        seq[i] = avail[rank]
        choices += 1
        event = Choice(i, tuple(avail), rank)
        if events is not None:
            events.append(event)
        if observer:
            observer(event, seq)
        rep = find_canonical_repetition(seq, K, i)
        if rep is None:
            i = seq.smallest_unassigned(i + 1)
            continue
        event = erase_half(seq, rep, i)
        if events is not None:
            events.append(event)
        if observer:
            observer(event, seq)
        i = seq.smallest_unassigned(event.erased_positions[0])
    trace.final = seq.copy()
    if not cfg.record_trace:
        trace.choices = choices
    return seq, trace


def replay(trace: ExecutionTrace, cfg: GeneratorConfig) -> PartialSequence:
    """Re-apply recorded events to an empty sequence, checking each one."""
    seq = PartialSequence(cfg.n)
    pending = None  # (position, repetition) left by a Choice that created a square
    for idx, e in enumerate(trace.events):
        if isinstance(e, Choice):
            if pending is not None:
                raise TraceCorruption(f"event {idx}: square {pending[1]} was never erased")
            expected = seq.smallest_unassigned()
            if e.position != expected:
                raise TraceCorruption(f"event {idx}: choice at {e.position}, expected {expected}")
            avail = available_symbols(seq, cfg.lists, cfg.K, e.position)
            if tuple(avail) != e.available:
                raise TraceCorruption(f"event {idx}: available set differs at {e.position}")
            seq[e.position] = avail[e.chosen_rank]
            rep = find_canonical_repetition(seq, cfg.K, e.position)
            pending = (e.position, rep) if rep is not None else None
        elif isinstance(e, Erasure):
            if pending is None:
                raise TraceCorruption(f"event {idx}: erasure without a square to erase")
            pos, rep = pending
            if rep != e.rep:
                raise TraceCorruption(f"event {idx}: recorded {e.rep}, found {rep}")
            if erase_half(seq, rep, pos) != e:
                raise TraceCorruption(f"event {idx}: erasure mismatch for {rep}")
            pending = None
        else:
            raise TraceCorruption(f"event {idx}: unknown event {e!r}")
    if pending is not None:
        raise TraceCorruption(f"trace ends with unerased square {pending[1]}")
    if trace.final is not None and seq != trace.final:
        raise TraceCorruption("replayed sequence differs from recorded final state")
    return seq
