# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the bitmap mining step and token edit distance."""

from libc.stdint cimport int32_t, int64_t, uint8_t, uint64_t
from libc.stdlib cimport free, malloc

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline uint64_t _tail_mask(int bit) nogil:
    # Bits strictly above `bit` within one word; bit in [0, 63].
    if bit >= 63:
        return 0
    return (<uint64_t>0xFFFFFFFFFFFFFFFF) << (bit + 1)


def sstep_and(uint64_t[:, ::1] pattern_bm, uint64_t[:, ::1] event_bm,
              uint64_t[:, ::1] out):
    """Sequence-extension step over all rows.

    For each row: take every position strictly after the first set bit of
    the pattern bitmap, intersect with the event bitmap, store the result.
    Returns the number of rows left non-empty (the extension's support).
    """
    cdef Py_ssize_t n = pattern_bm.shape[0]
    cdef Py_ssize_t n_words = pattern_bm.shape[1]
    cdef Py_ssize_t i, j, first_word
    cdef int bit, support = 0
    cdef uint64_t word, value
    cdef bint nonzero
    with nogil:
        for i in range(n):
            first_word = -1
            for j in range(n_words):
                if pattern_bm[i, j] != 0:
                    first_word = j
                    break
            if first_word < 0:
                for j in range(n_words):
                    out[i, j] = 0
                continue
            bit = __builtin_ctzll(pattern_bm[i, first_word])
            nonzero = False
            for j in range(n_words):
                if j < first_word:
                    value = 0
                elif j == first_word:
                    value = _tail_mask(bit) & event_bm[i, j]
                else:
                    value = event_bm[i, j]
                out[i, j] = value
                if value != 0:
                    nonzero = True
            if nonzero:
                support += 1
    return support


def occupied_rows(uint64_t[:, ::1] bm, uint8_t[::1] mask_out):
    """Mark rows that contain any set bit; returns how many."""
    cdef Py_ssize_t n = bm.shape[0]
    cdef Py_ssize_t n_words = bm.shape[1]
    cdef Py_ssize_t i, j
    cdef int count = 0
    cdef uint8_t occupied
    with nogil:
        for i in range(n):
            occupied = 0
            for j in range(n_words):
                if bm[i, j] != 0:
                    occupied = 1
                    break
            mask_out[i] = occupied
            count += occupied
    return count


def levenshtein(int32_t[::1] a, int32_t[::1] b):
    """Edit distance (insert/delete/substitute, unit cost) over token ids."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t m = b.shape[0]
    if n == 0:
        return m
    if m == 0:
        return n
    cdef int64_t *prev = <int64_t *>malloc((m + 1) * sizeof(int64_t))
    cdef int64_t *cur = <int64_t *>malloc((m + 1) * sizeof(int64_t))
    if prev == NULL or cur == NULL:
        free(prev)
        free(cur)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef int64_t cost, best, candidate, result
    cdef int64_t *swap
    with nogil:
        for j in range(m + 1):
            prev[j] = j
        for i in range(1, n + 1):
            cur[0] = i
            for j in range(1, m + 1):
                cost = 0 if a[i - 1] == b[j - 1] else 1
                best = prev[j] + 1
                candidate = cur[j - 1] + 1
                if candidate < best:
                    best = candidate
                candidate = prev[j - 1] + cost
                if candidate < best:
                    best = candidate
                cur[j] = best
            swap = prev
            prev = cur
            cur = swap
        result = prev[m]
    free(prev)
    free(cur)
    return result
