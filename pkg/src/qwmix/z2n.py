"""Group arithmetic, characters and the Walsh-Hadamard transform on Z_2^n.

Group elements are plain non-negative integers; bit ``j`` of the integer is
coordinate ``j + 1`` of the binary vector. :class:`GroupElement` attaches a
dimension to an integer when that needs to be checked or printed.

The transform pair is asymmetric::

    fwht(v)[a]         = sum_x v[x] * (-1)**(a . x)
    inverse_fwht(w)[x] = 2**-n * sum_a w[a] * (-1)**(a . x)

so the transform of a {0,1}-valued function stays integral.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

import numpy as np

from . import _fwht_py

try:
    from . import _fwht_ext
except ImportError:  # extension not built
    _fwht_ext = None


def _select_backend():
    choice = os.environ.get("QWMIX_FWHT_BACKEND", "auto").lower()
    if choice == "python" or _fwht_ext is None:
        if choice == "ext":
            raise ImportError("QWMIX_FWHT_BACKEND=ext but qwmix._fwht_ext is not built")
        return "python", _fwht_py.fwht_rows
    return "ext", _fwht_ext.fwht_rows


BACKEND, _fwht_rows = _select_backend()

KERNELS = {"python": _fwht_py.fwht_rows}
if _fwht_ext is not None:
    KERNELS["ext"] = _fwht_ext.fwht_rows


class GroupElement(NamedTuple):
    """An element of Z_2^n with an explicit dimension."""

    bits: int
    n: int

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        """Parse a bit string; the leftmost character is coordinate n."""
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2), len(text))

    def check(self) -> "GroupElement":
        if self.n < 0 or not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"{self.bits} is not an element of Z_2^{self.n}")
        return self

    def __xor__(self, other):
        n = _common_dim(self, other)
        return GroupElement(int(self) ^ int(other), n)

    def __int__(self):
        return self.bits

    def __index__(self):
        return self.bits

    @property
    def weight(self) -> int:
        return hamming_weight(self.bits)

    def __str__(self):
        return format(self.bits, f"0{self.n}b") if self.n else ""


Element = Union[int, GroupElement]


def _common_dim(a, b):
    na = a.n if isinstance(a, GroupElement) else None
    nb = b.n if isinstance(b, GroupElement) else None
    if na is not None and nb is not None and na != nb:
        raise ValueError(f"dimension mismatch: Z_2^{na} vs Z_2^{nb}")
    return na if na is not None else nb


def to_bits(x: int, n: int) -> str:
    """Bit string of ``x`` with coordinate n leftmost."""
    return format(int(x), f"0{n}b")


def unit_vector(j: int, n: int) -> int:
    """e_j for 1 <= j <= n."""
    if not 1 <= j <= n:
        raise ValueError(f"e_{j} is not defined in Z_2^{n}")
    return 1 << (j - 1)


def hamming_weight(x: Element) -> int:
    return int(x).bit_count()


def dot_mod2(a: Element, b: Element) -> int:
    """Inner product a . b modulo 2."""
    _common_dim(a, b)
    return hamming_weight(int(a) & int(b)) & 1


def character(a: Element, x: Element) -> int:
    """chi_a(x) = (-1)**(a . x)."""
    return -1 if dot_mod2(a, x) else 1


def popcount_array(x: np.ndarray) -> np.ndarray:
    """Vectorized Hamming weight of a non-negative integer array."""
    x = np.asarray(x, dtype=np.int64)
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(x).astype(np.int64)
    out = np.zeros_like(x)
    y = x.copy()
    while np.any(y):
        out += y & 1
        y >>= 1
    return out


def weights(n: int) -> np.ndarray:
    """|a| for every a in Z_2^n, in index order."""
    return popcount_array(np.arange(1 << n))


def character_table(n: int) -> np.ndarray:
    """Dense 2^n x 2^n matrix H[a, x] = chi_a(x). Intended for small n."""
    idx = np.arange(1 << n)
    return 1 - 2 * (popcount_array(idx[:, None] & idx[None, :]) & 1)


def dimension_of(length: int) -> int:
    """n such that length == 2**n; raises for other lengths."""
    length = int(length)
    if length < 1 or length & (length - 1):
        raise ValueError(f"length {length} is not a power of two")
    return length.bit_length() - 1


def _as_buffer(v) -> np.ndarray:
    arr = np.asarray(v)
    if arr.dtype == np.bool_ or np.issubdtype(arr.dtype, np.integer):
        dtype = np.int64
    elif np.iscomplexobj(arr):
        dtype = np.complex128
    else:
        dtype = np.float64
    return np.array(arr, dtype=dtype, order="C", copy=True)


def fwht_inplace(buf: np.ndarray, kernel=None) -> np.ndarray:
    """Transform ``buf`` in place along its last axis and return it.

    ``buf`` must be C-contiguous with dtype int64, float64 or complex128.
    """
    dimension_of(buf.shape[-1])
    if not buf.flags.c_contiguous:
        raise ValueError("buffer must be C-contiguous")
    if buf.dtype not in (np.int64, np.float64, np.complex128):
        raise TypeError(f"unsupported dtype {buf.dtype}")
    rows = buf.reshape(-1, buf.shape[-1])
    (kernel or _fwht_rows)(rows)
    return buf


def fwht(v, kernel=None) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along the last axis.

    Integer and boolean input is transformed exactly in int64.

    >>> fwht([1, 0, 0, 0]).tolist()
    [1, 1, 1, 1]
    """
    return fwht_inplace(_as_buffer(v), kernel)


def inverse_fwht(v, kernel=None) -> np.ndarray:
    """Inverse transform: ``fwht`` followed by division by 2^n."""
    buf = _as_buffer(v)
    if buf.dtype == np.int64:
        buf = buf.astype(np.float64)
    fwht_inplace(buf, kernel)
    buf /= buf.shape[-1]
    return buf


@dataclass(frozen=True)
class BooleanFunction:
    """A {0,1}-valued function on Z_2^n, stored by its support."""

    n: int
    support: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dimension must be non-negative")
        supp = tuple(sorted({int(x) for x in self.support}))
        for x in supp:
            if not 0 <= x < (1 << self.n):
                raise ValueError(f"support element {x} outside Z_2^{self.n}")
        object.__setattr__(self, "support", supp)

    @classmethod
    def from_indicator(cls, values) -> "BooleanFunction":
        values = np.asarray(values)
        n = dimension_of(values.size)
        if not np.all((values == 0) | (values == 1)):
            raise ValueError("indicator must be {0,1}-valued")
        return cls(n, tuple(np.flatnonzero(values).tolist()))

    @classmethod
    def delta0(cls, n: int) -> "BooleanFunction":
        return cls(n, (0,))

    @classmethod
    def all_ones(cls, n: int) -> "BooleanFunction":
        return cls(n, tuple(range(1 << n)))

    @classmethod
    def weight_one(cls, n: int) -> "BooleanFunction":
        """The hypercube generator set {e_1, ..., e_n}."""
        return cls(n, tuple(1 << j for j in range(n)))

    @classmethod
    def matching(cls, eta: int, n: int) -> "BooleanFunction":
        """Support {0_n, eta}."""
        return cls(n, (0, int(eta)))

    def __call__(self, x: Element) -> int:
        return int(int(x) in self.support)

    def __len__(self):
        return len(self.support)

    @property
    def size(self) -> int:
        return 1 << self.n

    def indicator(self) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.int64)
        out[list(self.support)] = 1
        return out

    def fourier(self) -> np.ndarray:
        """Exact integer transform f^(a) for every a."""
        return fwht(self.indicator())

    def fourier_support(self) -> np.ndarray:
        return np.flatnonzero(self.fourier())

    def fourier_support_size(self) -> int:
        return int(np.count_nonzero(self.fourier()))

    def with_point(self, x: int) -> "BooleanFunction":
        return BooleanFunction(self.n, self.support + (int(x),))


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a Z_2^n-circulant indexed by group element."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        if len(self.values) != 1 << self.n:
            raise ValueError("spectrum length must be 2^n")

    def rows(self) -> Iterable[tuple]:
        w = weights(self.n)
        for a, lam in enumerate(self.values):
            yield a, int(w[a]), lam


def fourier_support_size(values) -> int:
    """Exact count of nonzero entries of an integer-valued transform."""
    values = np.asarray(values)
    if not np.issubdtype(values.dtype, np.integer):
        raise TypeError("exact support counting needs integer input")
    return int(np.count_nonzero(values))
