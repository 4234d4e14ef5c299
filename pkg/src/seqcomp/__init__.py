"""seqcomp: explore an event-sequence dataset through a prefix/suffix matrix,
mine maximal patterns over two selected sequence sets, and lay both out as
unit visualizations for comparison."""

from .dataset import (
    Dataset,
    DatasetStats,
    Event,
    IngestConfig,
    Sequence,
    filter_by_length,
    ingest,
    stats,
)
from .mining import MiningConfig, Pattern, brute_force_mine, is_subsequence, mine, tag_support

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "DatasetStats",
    "Event",
    "IngestConfig",
    "MiningConfig",
    "Pattern",
    "Sequence",
    "brute_force_mine",
    "filter_by_length",
    "ingest",
    "is_subsequence",
    "mine",
    "stats",
    "tag_support",
    "__version__",
]
