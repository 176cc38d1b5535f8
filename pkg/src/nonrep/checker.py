"""Square detection on arithmetic progressions.

Three entry points:

* ``is_nonrepetitive`` scans whole progressions (fast or exhaustive mode);
* ``find_canonical_repetition`` only looks at squares through a just-assigned
  cell and applies the generator's tie-breaking order;
* ``oracle_all_repetitions`` is a deliberately naive triple loop used to
  cross-check the other two.

A square only counts when all 2h of its cells are assigned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .core import DifferenceSet, PartialSequence, Repetition


@dataclass
class CheckReport:
    nonrepetitive: bool
    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return self.nonrepetitive


def _assigned_segments(cells, d) -> Iterator[tuple[int, int, list[int]]]:
    """Yield (residue, start index within class, word) for every maximal
    assigned run of every residue class mod d."""
    for r in range(1, min(d, len(cells) - 1) + 1):
        cls = cells[r::d]
        j, end = 0, len(cls)
        while j < end:
            try:
                stop = cls.index(None, j)
            except ValueError:
                stop = end
            if stop - j >= 2:
                yield r, j, cls[j:stop]
            j = stop + 1


def _squares_in_word(w: list[int], first_only: bool) -> Iterator[tuple[int, int]]:
    """Yield (start, half) of squares in w, grouped by half-length."""
    L = len(w)
    for h in range(1, L // 2 + 1):
        run = 0
        for x in range(L - h):
            if w[x] == w[x + h]:
                run += 1
                if run >= h:
                    yield x - h + 1, h
                    if first_only:
                        return
            else:
                run = 0


def _extend_match(w, h, x0, lo, hi):
    a = x0
    while a > lo and w[a - 1] == w[a - 1 + h]:
        a -= 1
    b = x0
    while b < hi and w[b + 1] == w[b + 1 + h]:
        b += 1
    return a, b


# below this word length plain list scanning beats numpy call overhead
_VECTOR_MIN_LEN = 512


def best_square_through(w, t: int) -> tuple[int, int] | None:
    """Longest square in w covering index t, ties to the largest start.

    Returns (half, start) or None. Every candidate half h is anchored at an
    index x0 with w[x0] == w[x0 + h] and t in {x0, x0 + h}, so candidates
    come from the other occurrences of w[t]. For h >= 2 a neighbour of x0
    must match too; long words apply that filter vectorized.
    """
    if len(w) >= _VECTOR_MIN_LEN:
        cands = _anchors_vector(np.asarray(w), t)
    else:
        w = list(w)
        cands = _anchors_scalar(w, t)
    L = len(w)
    best_h = best_s = None
    for h, x0 in cands:
        if best_h is not None and h < best_h:
            break
        lo = max(0, x0 - h + 1)
        top = min(x0, L - 2 * h)
        if lo > top:
            continue
        a, b = _extend_match(w, h, x0, lo, top + h - 1)
        if b - a + 1 >= h:
            s = min(x0, b - h + 1)
            if best_h is None or s > best_s:
                best_h, best_s = h, s
    return None if best_h is None else (best_h, best_s)


def _anchors_scalar(w: list, t: int) -> list[tuple[int, int]]:
    v = w[t]
    L = len(w)
    out = []
    u = t + 1
    while u < L:
        try:
            u = w.index(v, u)
        except ValueError:
            break
        out.append((u - t, t))
        u += 1
    u = 0
    while u < t:
        try:
            u = w.index(v, u, t)
        except ValueError:
            break
        out.append((t - u, u))
        u += 1
    out.sort(reverse=True)
    return out


def _anchors_vector(w: np.ndarray, t: int) -> list[tuple[int, int]]:
    L = len(w)
    occ = np.flatnonzero(w == w[t])
    right = occ[occ > t] - t
    left = t - occ[occ < t]
    h = np.concatenate([right, left])
    x0 = np.concatenate([np.full(len(right), t), t - left])
    lo = np.maximum(0, x0 - h + 1)
    top = np.minimum(x0, L - 2 * h)
    ok = lo <= top
    h, x0, lo, top = h[ok], x0[ok], lo[ok], top[ok]
    if len(h) == 0:
        return []
    hi = top + h - 1
    nb = x0 - 1
    before = (nb >= lo) & (w[np.maximum(nb, 0)] == w[np.clip(nb + h, 0, L - 1)])
    na = x0 + 1
    after = (na <= hi) & (w[np.minimum(na, L - 1)] == w[np.minimum(na + h, L - 1)])
    keep = (h == 1) | before | after
    h, x0 = h[keep], x0[keep]
    order = np.lexsort((-x0, -h))
    return list(zip(h[order].tolist(), x0[order].tolist()))


def is_nonrepetitive(
    seq: PartialSequence, K: DifferenceSet, exhaustive: bool = False
) -> CheckReport:
    """Check every progression with difference in K for squares.

    In fast mode at most one witness is reported; exhaustive mode lists
    every square in (first, d, h) order.
    """
    cells = seq.cells
    witnesses = []
    for d in K:
        for r, j0, word in _assigned_segments(cells, d):
            for s, h in _squares_in_word(word, first_only=not exhaustive):
                witnesses.append(Repetition(r + (j0 + s) * d, d, h))
                if not exhaustive:
                    return CheckReport(False, witnesses)
    witnesses.sort()
    return CheckReport(not witnesses, witnesses)


def canonical_key(rep: Repetition):
    """Ordering used to pick among repetitions: larger is preferred."""
    return (rep.h, rep.first, -rep.d)


def find_canonical_repetition(
    seq: PartialSequence, K: DifferenceSet, just_set: int
) -> Repetition | None:
    """Longest square through position ``just_set``.

    Ties go to the largest first index, then to the smallest difference.
    Squares avoiding ``just_set`` are not seen; the caller guarantees there
    are none (the sequence was square-free before the assignment).
    """
    arr = seq.array
    if arr[just_set] == 0:
        raise ValueError(f"position {just_set} is not assigned")
    best = None
    for d in K:
        r = (just_set - 1) % d + 1
        cls = arr[r::d]
        t = (just_set - r) // d
        holes = np.flatnonzero(cls[t:] == 0)
        right = t + int(holes[0]) if len(holes) else len(cls)
        holes = np.flatnonzero(cls[:t] == 0)
        left = int(holes[-1]) + 1 if len(holes) else 0
        if right - left < 2:
            continue
        found = best_square_through(cls[left:right], t - left)
        if found is None:
            continue
        h, s = found
        rep = Repetition(r + (left + s) * d, d, h)
        if best is None or canonical_key(rep) > canonical_key(best):
            best = rep
    return best


def oracle_all_repetitions(seq: PartialSequence, K: DifferenceSet) -> list[Repetition]:
    """Every fully assigned square, by brute force, in (first, d, h) order."""
    n = seq.n
    s = [None] + [seq[i] for i in range(1, n + 1)]
    found = []
    for first in range(1, n + 1):
        for d in K:
            h = 1
            while first + (2 * h - 1) * d <= n:
                ok = True
                for x in range(h):
                    a = s[first + x * d]
                    b = s[first + (x + h) * d]
                    if a is None or b is None or a != b:
                        ok = False
                        break
                if ok:
                    found.append(Repetition(first, d, h))
                h += 1
    return found


def oracle_canonical(seq: PartialSequence, K: DifferenceSet) -> Repetition | None:
    """Brute-force counterpart of find_canonical_repetition (no just_set filter)."""
    reps = oracle_all_repetitions(seq, K)
    return max(reps, key=canonical_key) if reps else None
