#!/usr/bin/env python3
"""Regenerate data/sample.csv, the bundled synthetic clickstream-style log.

Seeded, so the checked-in file is reproducible. Sequences follow a few
behavioral archetypes to give the matrix a readable level-1 structure and
the miner a healthy band of shared patterns.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

ALPHABET = ["landing", "search", "browse", "product", "cart", "checkout", "help", "exit"]


def make_sequence(rng: random.Random) -> list[str]:
    roll = rng.random()
    start = "landing" if rng.random() < 0.7 else "search"
    if roll < 0.30:  # buyer
        body = [rng.choice(["search", "browse"])]
        for _ in range(rng.randint(1, 3)):
            body += ["product"]
            if rng.random() < 0.35:
                body += [rng.choice(["search", "browse"])]
        return [start] + body + ["cart", "checkout"]
    if roll < 0.55:  # browser: wanders, leaves
        body = []
        for _ in range(rng.randint(1, 4)):
            body += ["browse", "product"]
        return [start] + body + ["exit"]
    if roll < 0.75:  # searcher: query loops, leaves
        body = []
        for _ in range(rng.randint(1, 4)):
            body += ["search", "product"]
        return [start] + body + ["exit"]
    if roll < 0.90:  # cart abandoner
        body = [rng.choice(["search", "browse"]), "product"]
        if rng.random() < 0.5:
            body += ["product"]
        return [start] + body + ["cart", "exit"]
    # support seeker
    body = ["help"]
    if rng.random() < 0.6:
        body += ["search", "product"]
    return [start] + body + [rng.choice(["exit", "help"])]


def main() -> None:
    rng = random.Random(7342)
    out = Path(__file__).resolve().parent.parent / "data" / "sample.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["visitor", "step", "action"])
        for i in range(320):
            visitor = f"v{i:03d}"
            for step, action in enumerate(make_sequence(rng)):
                assert action in ALPHABET
                writer.writerow([visitor, step * 1000, action])
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
