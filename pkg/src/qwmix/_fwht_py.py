"""Pure-numpy in-place Walsh-Hadamard butterflies (fallback kernel)."""

import numpy as np


def fwht_rows(buf: np.ndarray) -> None:
    """Unnormalized in-place transform of every row of a C-contiguous 2-D buffer."""
    rows, n = buf.shape
    tmp = np.empty((rows, n // 2), dtype=buf.dtype)
    h = 1
    while h < n:
        view = buf.reshape(rows, n // (2 * h), 2, h)
        lo = view[:, :, 0, :]
        hi = view[:, :, 1, :]
        t = tmp.reshape(rows, n // (2 * h), h)
        np.copyto(t, lo)
        lo += hi
        np.subtract(t, hi, out=hi)
        h *= 2
