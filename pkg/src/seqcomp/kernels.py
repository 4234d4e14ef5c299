"""Backend selection for the hot kernels.

The compiled extension is preferred when importable; the pure-Python module
is the fallback. ``SEQCOMP_KERNELS=python|cython`` forces a backend, and
``use_backend`` switches at runtime (used by the benchmark and tests).
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _kernels_py

try:
    from . import _kernels  # type: ignore[attr-defined]
except ImportError:
    _kernels = None  # extension not built; pure Python remains

_BACKENDS: dict[str, ModuleType | None] = {
    "python": _kernels_py,
    "cython": _kernels,
}


def available_backends() -> list[str]:
    return [name for name, mod in _BACKENDS.items() if mod is not None]


def _select(name: str) -> ModuleType:
    mod = _BACKENDS.get(name)
    if mod is None:
        raise RuntimeError(
            f"kernel backend {name!r} unavailable (available: {available_backends()})"
        )
    return mod


_forced = os.environ.get("SEQCOMP_KERNELS", "").strip().lower()
if _forced:
    _active = _select(_forced)
else:
    _active = _kernels if _kernels is not None else _kernels_py


def backend_name() -> str:
    return "cython" if _active is _kernels and _kernels is not None else "python"


def use_backend(name: str) -> None:
    global _active
    _active = _select(name)


def sstep_and(pattern_bm, event_bm, out) -> int:
    return _active.sstep_and(pattern_bm, event_bm, out)


def occupied_rows(bm, mask_out) -> int:
    return _active.occupied_rows(bm, mask_out)


def levenshtein(a, b) -> int:
    return _active.levenshtein(a, b)
