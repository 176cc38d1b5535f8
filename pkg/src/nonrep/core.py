"""Shared data model: partial sequences, list assignments, difference sets.

Positions are 1-based everywhere outside this module. An unassigned cell is
``None`` in memory; the integer 0 only shows up in serialized snapshots.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np


class NonrepError(Exception):
    """Base class for errors raised by this package."""


class ConfigurationError(NonrepError, ValueError):
    pass


class InputError(NonrepError, ValueError):
    pass


@dataclass(frozen=True, order=True)
class Repetition:
    """A square on an arithmetic progression.

    The first half sits at ``first, first+d, ..., first+(h-1)d`` and the
    second half continues with the same step up to ``first+(2h-1)d``.
    """

    first: int
    d: int
    h: int

    def __post_init__(self):
        if self.first < 1 or self.d < 1 or self.h < 1:
            raise ValueError(f"invalid repetition {self!r}")

    @property
    def last(self) -> int:
        return self.first + (2 * self.h - 1) * self.d

    def first_half(self) -> list[int]:
        return list(range(self.first, self.first + self.h * self.d, self.d))

    def second_half(self) -> list[int]:
        start = self.first + self.h * self.d
        return list(range(start, start + self.h * self.d, self.d))

    def positions(self) -> list[int]:
        return list(range(self.first, self.last + 1, self.d))

    def __str__(self):
        return f"{self.first} {self.d} {self.h}"


def ap_positions(first: int, d: int, count: int, n: int | None = None) -> list[int]:
    """Return ``first, first+d, ..., first+(count-1)d``.

    Raises IndexError when the progression leaves ``1..n``.
    """
    if first < 1 or d < 1 or count < 1:
        raise IndexError(f"bad progression ({first}, {d}, {count})")
    last = first + (count - 1) * d
    if n is not None and last > n:
        raise IndexError(f"progression ends at {last} > n={n}")
    return list(range(first, last + 1, d))


class DifferenceSet:
    """Sorted set K of distinct positive common differences."""

    __slots__ = ("_diffs",)

    def __init__(self, differences: Iterable[int]):
        diffs = list(differences)
        if not diffs:
            raise ConfigurationError("difference set must be non-empty")
        if len(set(diffs)) != len(diffs):
            raise ConfigurationError(f"duplicate differences in {diffs}")
        for d in diffs:
            if not isinstance(d, int) or d < 1:
                raise ConfigurationError(f"differences must be positive integers, got {d!r}")
        self._diffs = tuple(sorted(diffs))

    @classmethod
    def up_to(cls, k: int) -> "DifferenceSet":
        """The set {1, ..., k} of the mod-k setting."""
        if k < 1:
            raise ConfigurationError("k must be >= 1")
        return cls(range(1, k + 1))

    @classmethod
    def parse(cls, text: str) -> "DifferenceSet":
        try:
            return cls(int(tok) for tok in text.replace(",", " ").split())
        except ValueError as exc:
            raise ConfigurationError(f"cannot parse difference set {text!r}") from exc

    @property
    def k(self) -> int:
        return len(self._diffs)

    def __iter__(self):
        return iter(self._diffs)

    def __len__(self):
        return len(self._diffs)

    def __contains__(self, d):
        return d in self._diffs

    def __eq__(self, other):
        return isinstance(other, DifferenceSet) and self._diffs == other._diffs

    def __hash__(self):
        return hash(self._diffs)

    def __repr__(self):
        return f"DifferenceSet({list(self._diffs)})"

    def to_list(self) -> list[int]:
        return list(self._diffs)


def default_list_size(k: int) -> int:
    """ceil(2k + 10 sqrt(k)), the list size that guarantees termination."""
    return math.ceil(2 * k + 10 * math.sqrt(k))


class ListAssignment:
    """Per-position symbol lists L_1..L_n, each kept sorted."""

    __slots__ = ("_lists",)

    def __init__(self, lists: Iterable[Iterable[int]]):
        out = []
        for i, lst in enumerate(lists, start=1):
            items = list(lst)
            if not items:
                raise ConfigurationError(f"list L_{i} is empty")
            if len(set(items)) != len(items):
                raise ConfigurationError(f"list L_{i} has duplicates: {items}")
            for s in items:
                if not isinstance(s, int) or s < 1:
                    raise ConfigurationError(f"L_{i}: symbols must be integers >= 1, got {s!r}")
            out.append(tuple(sorted(items)))
        self._lists = out

    @classmethod
    def uniform(cls, n: int, size: int) -> "ListAssignment":
        alphabet = range(1, size + 1)
        return cls(alphabet for _ in range(n))

    @classmethod
    def from_json(cls, text: str) -> "ListAssignment":
        data = json.loads(text)
        if not isinstance(data, list):
            raise ConfigurationError("list assignment JSON must be an array of arrays")
        return cls(data)

    def to_json(self) -> str:
        return json.dumps([list(lst) for lst in self._lists])

    def __getitem__(self, i: int) -> tuple[int, ...]:
        if not 1 <= i <= len(self._lists):
            raise IndexError(i)
        return self._lists[i - 1]

    def __len__(self):
        return len(self._lists)

    def __iter__(self):
        return iter(self._lists)

    def __eq__(self, other):
        return isinstance(other, ListAssignment) and self._lists == other._lists

    def min_size(self) -> int:
        return min((len(lst) for lst in self._lists), default=0)

    def max_symbol(self) -> int:
        return max((lst[-1] for lst in self._lists), default=0)


class PartialSequence:
    """Mutable sequence s_1..s_n whose cells are either a symbol or unassigned."""

    __slots__ = ("n", "_cells", "_arr")

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("length must be non-negative")
        self.n = n
        # slot 0 is padding so that cell i lives at index i
        self._cells: list[int | None] = [None] * (n + 1)
        # vectorized mirror for the square search; 0 marks unassigned here only
        self._arr = np.zeros(n + 1, dtype=np.int64)

    @classmethod
    def from_symbols(cls, symbols: Sequence[int | None]) -> "PartialSequence":
        seq = cls(len(symbols))
        for i, s in enumerate(symbols, start=1):
            if s is not None:
                seq[i] = s
        return seq

    @classmethod
    def from_snapshot(cls, values: Sequence[int]) -> "PartialSequence":
        """Build from a 0-means-unassigned integer list."""
        seq = cls(len(values))
        for i, v in enumerate(values, start=1):
            if v < 0:
                raise InputError(f"negative value {v} at position {i}")
            if v:
                seq[i] = v
        return seq

    @classmethod
    def from_text(cls, text: str) -> "PartialSequence":
        try:
            values = [int(tok) for tok in text.split()]
        except ValueError as exc:
            raise InputError(f"sequence text must be integers: {exc}") from None
        return cls.from_snapshot(values)

    def snapshot(self) -> list[int]:
        return [0 if c is None else c for c in self._cells[1:]]

    def to_text(self) -> str:
        return " ".join(map(str, self.snapshot()))

    def copy(self) -> "PartialSequence":
        other = PartialSequence.__new__(PartialSequence)
        other.n = self.n
        other._cells = self._cells.copy()
        other._arr = self._arr.copy()
        return other

    def _check(self, i):
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} outside 1..{self.n}")

    def __getitem__(self, i: int) -> int | None:
        self._check(i)
        return self._cells[i]

    def __setitem__(self, i: int, symbol: int):
        self._check(i)
        if symbol is None or symbol < 1:
            raise ValueError("use clear() to unassign a cell")
        self._cells[i] = symbol
        self._arr[i] = symbol

    def clear(self, i: int):
        self._check(i)
        self._cells[i] = None
        self._arr[i] = 0

    def is_assigned(self, i: int) -> bool:
        self._check(i)
        return self._cells[i] is not None

    def assigned_count(self) -> int:
        return self.n - self._cells.count(None) + 1

    def is_complete(self) -> bool:
        return self._cells.count(None) == 1

    def smallest_unassigned(self, start: int = 1) -> int | None:
        """Smallest unassigned position >= start, or None."""
        try:
            return self._cells.index(None, max(start, 1))
        except ValueError:
            return None

    @property
    def cells(self) -> list[int | None]:
        """Raw padded cell list (index 0 unused). Read-only by convention."""
        return self._cells

    @property
    def array(self) -> np.ndarray:
        """Padded int64 view with 0 for unassigned. Read-only by convention."""
        return self._arr

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, PartialSequence) and self._cells == other._cells

    def __repr__(self):
        return f"PartialSequence({self.to_text()!r})"


class Alphabet:
    """Bijection between arbitrary hashable labels and canonical symbols 1..q."""

    def __init__(self, labels: Iterable[Hashable]):
        self.labels = list(dict.fromkeys(labels))
        self._index = {lab: s for s, lab in enumerate(self.labels, start=1)}

    def __len__(self):
        return len(self.labels)

    def encode(self, label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown label {label!r}") from None

    def decode(self, symbol: int):
        if not 1 <= symbol <= len(self.labels):
            raise InputError(f"symbol {symbol} outside 1..{len(self.labels)}")
        return self.labels[symbol - 1]

    def encode_word(self, word: Iterable) -> PartialSequence:
        return PartialSequence.from_symbols([self.encode(x) for x in word])

    def decode_word(self, seq: PartialSequence) -> list:
        return [None if s is None else self.decode(s) for s in seq.cells[1:]]
