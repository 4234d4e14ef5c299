#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times end-to-end mining (where the bitmap extension step dominates) and raw
edit-distance calls on a seeded synthetic dataset, then prints a table.

    python benchmarks/bench_kernels.py [--sequences 400] [--repeat 3]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from seqcomp import kernels
from seqcomp.dataset import Dataset, Event, Sequence
from seqcomp.mining import MiningConfig, mine


def synthetic_dataset(rng: random.Random, n_sequences: int) -> Dataset:
    alphabet = list("abcdefghij")
    motifs = [["a", "b", "c"], ["d", "e"], ["f", "g", "h"], ["a", "e", "i"]]
    sequences = []
    for i in range(n_sequences):
        events: list[str] = []
        for _ in range(rng.randint(2, 4)):
            events.extend(rng.choice(motifs))
            events.extend(rng.choice(alphabet) for _ in range(rng.randint(0, 3)))
        sequences.append(Sequence(id=f"s{i}", events=tuple(Event(t) for t in events)))
    return Dataset.from_sequences(sequences)


def time_mining(d: Dataset, repeat: int) -> float:
    cfg = MiningConfig(min_support_pct=20.0, max_pattern_length=8, mode="maximal")
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        mine(d, cfg)
        best = min(best, time.perf_counter() - start)
    return best


def time_levenshtein(rng: random.Random, repeat: int) -> float:
    pairs = [
        (
            np.asarray([rng.randint(0, 9) for _ in range(rng.randint(5, 60))], np.int32),
            np.asarray([rng.randint(0, 9) for _ in range(rng.randint(5, 60))], np.int32),
        )
        for _ in range(2000)
    ]
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for a, b in pairs:
            kernels.levenshtein(a, b)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sequences", type=int, default=400)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    rng = random.Random(2024)
    d = synthetic_dataset(rng, args.sequences)
    print(f"dataset: {len(d)} sequences, alphabet {len(d.alphabet)}, "
          f"max length {max(len(s) for s in d.sequences)}")

    results: dict[str, dict[str, float]] = {}
    for backend in kernels.available_backends():
        kernels.use_backend(backend)
        results[backend] = {
            "mine": time_mining(d, args.repeat),
            "levenshtein x2000": time_levenshtein(random.Random(7), args.repeat),
        }

    tasks = list(next(iter(results.values())))
    print(f"\n{'task':<20}" + "".join(f"{b:>14}" for b in results) + f"{'speedup':>10}")
    for task in tasks:
        row = f"{task:<20}"
        times = [results[b][task] for b in results]
        for t in times:
            row += f"{t * 1000:>12.1f}ms"
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
