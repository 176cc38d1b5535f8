"""Exhaustive DFS for the longest square-free word over q symbols.

Symbols are tried in ascending order with the first symbol fixed to 1, so
the first word reaching the maximum is the lexicographically least one.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field

from .core import DifferenceSet

DEFAULT_BUDGET = 10**8
DEFAULT_CHECKPOINT_EVERY = 10**7


@dataclass
class SearchResult:
    max_length: int
    witness: list[int] = field(default_factory=list)
    exhausted: bool = False
    nodes: int = 0

    def to_dict(self):
        return asdict(self)


def ends_with_square(word: list[int], K: DifferenceSet) -> bool:
    """True if some square along a difference in K ends at the last letter."""
    p = len(word) - 1
    for d in K:
        h = 1
        while p - (2 * h - 1) * d >= 0:
            step = h * d
            x = p
            stop = p - step
            while x > stop and word[x] == word[x - step]:
                x -= d
            if x <= stop:
                return True
            h += 1
    return False


def _write_checkpoint(path, state):
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fp:
        json.dump(state, fp)
    os.replace(tmp, path)


def longest_sequence(
    q: int,
    K: DifferenceSet,
    length_cap: int,
    budget: int = DEFAULT_BUDGET,
    checkpoint: str | None = None,
    checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY,
    resume: str | None = None,
) -> SearchResult:
    """Search words over 1..q avoiding squares on differences in K.

    ``exhausted`` is True when the answer is certified: either the whole
    tree was explored, or a word of length ``length_cap`` was found (nothing
    longer is asked for). It is False when the node budget ran out first.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    word: list[int] = []
    nxt = 1
    best, witness, nodes = 0, [], 0
    if resume:
        with open(resume) as fp:
            state = json.load(fp)
        if state["q"] != q or state["diffs"] != K.to_list() or state["cap"] != length_cap:
            raise ValueError(f"checkpoint {resume} was made for different parameters")
        word, nxt = state["word"], state["next"]
        best, witness, nodes = state["best"], state["witness"], state["nodes"]

    def state():
        return {"q": q, "diffs": K.to_list(), "cap": length_cap, "word": word,
                "next": nxt, "best": best, "witness": witness, "nodes": nodes}

    exhausted = False
    while True:
        if len(word) >= length_cap:
            exhausted = True
            break
        limit = 1 if not word else q
        if nxt > limit:
            if not word:
                exhausted = True
                break
            nxt = word.pop() + 1
            continue
        if nodes >= budget:
            break
        nodes += 1
        word.append(nxt)
        if ends_with_square(word, K):
            word.pop()
            nxt += 1
        else:
            if len(word) > best:
                best, witness = len(word), word.copy()
            nxt = 1
        if checkpoint and nodes % checkpoint_every == 0:
            _write_checkpoint(checkpoint, state())
    if checkpoint:
        _write_checkpoint(checkpoint, state())
    return SearchResult(best, witness, exhausted, nodes)
