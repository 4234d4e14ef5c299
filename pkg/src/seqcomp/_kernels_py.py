"""Pure-Python kernels; same signatures as the compiled ``_kernels`` module.

Bitmaps are (n_sequences, n_words) uint64 arrays; word j of row i covers
positions [64*j, 64*j+63] of sequence i. Rows are widened to Python ints
here because arbitrary-precision bit tricks beat per-word Python loops.
"""

from __future__ import annotations

_WORD_MASK = (1 << 64) - 1


def _row_to_int(row) -> int:
    x = 0
    for j in range(len(row) - 1, -1, -1):
        x = (x << 64) | int(row[j])
    return x


def sstep_and(pattern_bm, event_bm, out) -> int:
    """Sequence-extension step over all rows.

    For each row: take every position strictly after the first set bit of
    the pattern bitmap, intersect with the event bitmap, store the result.
    Returns the number of rows left non-empty (the extension's support).
    """
    n, n_words = pattern_bm.shape
    support = 0
    for i in range(n):
        x = _row_to_int(pattern_bm[i])
        if x == 0:
            for j in range(n_words):
                out[i, j] = 0
            continue
        first = (x & -x).bit_length() - 1
        z = _row_to_int(event_bm[i]) & (-1 << (first + 1))
        if z:
            support += 1
        for j in range(n_words):
            out[i, j] = z & _WORD_MASK
            z >>= 64
    return support


def occupied_rows(bm, mask_out) -> int:
    """Mark rows that contain any set bit; returns how many."""
    n, n_words = bm.shape
    count = 0
    for i in range(n):
        occupied = 0
        for j in range(n_words):
            if bm[i, j]:
                occupied = 1
                break
        mask_out[i] = occupied
        count += occupied
    return count


def levenshtein(a, b) -> int:
    """Edit distance (insert/delete/substitute, unit cost) over token ids."""
    n, m = len(a), len(b)
    if n == 0:
        return m
    if m == 0:
        return n
    prev = list(range(m + 1))
    cur = [0] * (m + 1)
    for i in range(1, n + 1):
        cur[0] = i
        ai = a[i - 1]
        for j in range(1, m + 1):
            cost = 0 if ai == b[j - 1] else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev, cur = cur, prev
    return prev[m]
