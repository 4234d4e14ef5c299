"""Manual replication checks against externally supplied datasets.

These run only when the corresponding environment variable points at a
prepared CSV (see data/case_studies/README.md); CI skips them.
"""

from __future__ import annotations

import os
from pathlib import Path

import pytest

from seqcomp.dataset import ingest, load_manifest, stats

from .conftest import DATA_DIR

CASES = {
    "football": ("SEQCOMP_FOOTBALL_CSV", 355, 3.85, 0.01),
    "deeds": ("SEQCOMP_DEEDS_CSV", 977, 5.04, 0.01),
    "ecommerce": ("SEQCOMP_ECOMMERCE_CSV", 820, 7.65, 0.01),
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_case_study_stats(name):
    env_var, expected_count, expected_avg, tol = CASES[name]
    csv_path = os.environ.get(env_var)
    if not csv_path:
        pytest.skip(f"{env_var} not set; supply the prepared dataset to run this check")
    manifest = load_manifest(DATA_DIR / "case_studies" / f"{name}.json")
    with open(Path(csv_path), "rb") as fh:
        d = ingest(fh, manifest.ingest_config)
    count, avg = stats(d)
    assert count == expected_count
    assert abs(avg - expected_avg) <= tol
