from __future__ import annotations

import random
from pathlib import Path

import pytest

from seqcomp.dataset import Dataset, Event, Sequence

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"


def make_seq(sid: str, types: list[str] | str, timestamps: list[float] | None = None) -> Sequence:
    if isinstance(types, str):
        types = list(types)
    if timestamps is None:
        events = tuple(Event(t) for t in types)
    else:
        events = tuple(Event(t, ts) for t, ts in zip(types, timestamps))
    return Sequence(id=sid, events=events)


def make_dataset(spec: dict[str, list[str] | str]) -> Dataset:
    return Dataset.from_sequences(make_seq(sid, types) for sid, types in spec.items())


def random_dataset(
    rng: random.Random,
    max_sequences: int = 20,
    alphabet_size: int = 5,
    max_len: int = 8,
    min_sequences: int = 1,
) -> Dataset:
    letters = "abcdef"[:alphabet_size]
    n = rng.randint(min_sequences, max_sequences)
    return Dataset.from_sequences(
        make_seq(f"s{i}", [rng.choice(letters) for _ in range(rng.randint(1, max_len))])
        for i in range(n)
    )


@pytest.fixture
def worked_dataset() -> Dataset:
    # Four sequences with distinct level-1 prefix/suffix groups.
    return make_dataset({"s1": "abc", "s2": "abd", "s3": "ac", "s4": "bc"})


@pytest.fixture
def sample_data_dir() -> Path:
    return DATA_DIR
