# cython: language_level=3
"""Compiled in-place Walsh-Hadamard butterflies.

Operates on C-contiguous 2-D buffers, one transform per row.
"""

ctypedef fused scalar_t:
    long long
    double
    double complex


def fwht_rows(scalar_t[:, ::1] buf):
    """Unnormalized in-place transform of every row of ``buf``."""
    cdef Py_ssize_t rows = buf.shape[0]
    cdef Py_ssize_t n = buf.shape[1]
    cdef Py_ssize_t r, h, i, j
    cdef scalar_t x, y
    with nogil:
        for r in range(rows):
            h = 1
            while h < n:
                i = 0
                while i < n:
                    for j in range(i, i + h):
                        x = buf[r, j]
                        y = buf[r, j + h]
                        buf[r, j] = x + y
                        buf[r, j + h] = x - y
                    i += 2 * h
                h *= 2
