"""Termination statistics for the generator over many seeded trials."""

from __future__ import annotations

import csv
import hashlib
import json
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .core import DifferenceSet, ListAssignment
from .generator import BudgetExceeded, GeneratorConfig, generate


def trial_seed(seed: int, index: int) -> int:
    """64-bit seed for trial ``index``; reproducible in isolation."""
    digest = hashlib.blake2b(f"{seed}:{index}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


@dataclass
class TrialResult:
    trial: int
    seed: int
    M: int
    success: bool


def run_trial(n: int, K: DifferenceSet, q: int, seed: int, index: int) -> TrialResult:
    s = trial_seed(seed, index)
    cfg = GeneratorConfig(n, K, ListAssignment.uniform(n, q), seed=s,
                          max_choices=1000 * n, record_trace=False)
    try:
        _, trace = generate(cfg)
        return TrialResult(index, s, trace.M, True)
    except BudgetExceeded as exc:
        return TrialResult(index, s, exc.trace.M, False)


def _run(args):
    return run_trial(*args)


def summarize(results: list[TrialResult]) -> dict:
    Ms = [r.M for r in results]
    return {
        "trials": len(results),
        "mean_M": statistics.fmean(Ms),
        "max_M": max(Ms),
        "std_M": statistics.pstdev(Ms),
        "success_rate": sum(r.success for r in results) / len(results),
    }


def run_trials(n: int, K: DifferenceSet, q: int, trials: int, seed: int,
               workers: int = 1) -> tuple[dict, list[TrialResult]]:
    """Run ``trials`` independent generations; return (summary, per-trial rows)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    jobs = [(n, K, q, seed, i) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run, jobs))
    else:
        results = [_run(j) for j in jobs]
    return summarize(results), results


def write_report(out_dir: str, summary: dict, results: list[TrialResult]):
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "trials.csv"), "w", newline="") as fp:
        writer = csv.DictWriter(fp, fieldnames=["trial", "seed", "M", "success"])
        writer.writeheader()
        for r in results:
            writer.writerow(asdict(r))
    with open(os.path.join(out_dir, "summary.json"), "w") as fp:
        json.dump(summary, fp, indent=2)
