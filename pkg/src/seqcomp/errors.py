"""Exception hierarchy shared across the engine."""


class SeqcompError(Exception):
    """Base class for all engine errors."""


class ConfigError(SeqcompError):
    """Bad ingestion or manifest configuration (unknown column, bad manifest)."""


class IngestError(SeqcompError):
    """Malformed input data; the message names the offending row."""


class StateError(SeqcompError):
    """Invalid matrix-state transition, e.g. a path that is not in the tree."""


class ConsistencyError(SeqcompError):
    """Cross-module invariant violated (orphan support id, missing key event)."""


class SizeGuardError(SeqcompError):
    """Brute-force oracle refused an instance exceeding its size guard."""
