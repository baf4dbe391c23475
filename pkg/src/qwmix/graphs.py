"""Graph specifications for the hypercube families and their dense export.

A spec is an immutable description of a walk graph plus a scaling
convention. Z_2-structured specs (:class:`Circulant`, :class:`Bunkbed`)
reduce to a single first-row function on Z_2^m, which is all the fast walk
path needs. :class:`Complete` and :class:`Product` cover the Hamming graphs;
product vertices are mixed-radix integers with factor 0 in the least
significant digit.
"""

from __future__ import annotations

import dataclasses
import io
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .z2n import BooleanFunction, Spectrum, hamming_weight

ORACLE_CAP = 4096


@dataclass(frozen=True)
class Scaling:
    """Global multiplier applied to a spec's adjacency matrix.

    ``kind`` is ``"unnormalized"``, ``"degree"`` (divide by the degree) or
    ``"explicit"`` (multiply by ``factor``).
    """

    kind: str = "unnormalized"
    factor: float = 1.0

    def __post_init__(self):
        if self.kind not in ("unnormalized", "degree", "explicit"):
            raise ValueError(f"unknown scaling kind {self.kind!r}")

    @classmethod
    def explicit(cls, factor: float) -> "Scaling":
        return cls("explicit", float(factor))

    def resolve(self, degree: float) -> float:
        if self.kind == "unnormalized":
            return 1.0
        if self.kind == "degree":
            if degree == 0:
                raise ValueError("cannot degree-normalize a graph with no edges")
            return 1.0 / degree
        return self.factor

    def label(self) -> str:
        return f"explicit({self.factor!r})" if self.kind == "explicit" else self.kind


UNNORMALIZED = Scaling()
DEGREE_NORMALIZED = Scaling("degree")


class _Spec:
    scaling: Scaling

    @property
    def scale(self) -> float:
        """Resolved multiplier s of the adjacency matrix."""
        return self.scaling.resolve(self.degree)

    def with_scaling(self, scaling: Scaling):
        return dataclasses.replace(self, scaling=scaling)


@dataclass(frozen=True)
class Circulant(_Spec):
    """Z_2^n-circulant with first row ``f``: A[s, t] = f(s xor t)."""

    n: int
    f: BooleanFunction
    scaling: Scaling = UNNORMALIZED
    name: str = field(default="circulant", compare=False)

    def __post_init__(self):
        if self.f.n != self.n:
            raise ValueError(f"first-row function has dimension {self.f.n}, expected {self.n}")

    @property
    def num_vertices(self) -> int:
        return 1 << self.n

    @property
    def degree(self) -> int:
        return len(self.f)

    @property
    def has_self_loops(self) -> bool:
        return self.f(0) == 1


@dataclass(frozen=True)
class Bunkbed(_Spec):
    """Two copies of Q_n joined by the circulant of ``connection``.

    Vertex a1.a~ has the layer bit a1 at bit position n.
    """

    n: int
    connection: BooleanFunction
    scaling: Scaling = UNNORMALIZED
    name: str = field(default="bunkbed", compare=False)

    def __post_init__(self):
        if self.connection.n != self.n:
            raise ValueError(f"connection has dimension {self.connection.n}, expected {self.n}")

    @property
    def num_vertices(self) -> int:
        return 2 << self.n

    @property
    def degree(self) -> int:
        return self.n + len(self.connection)

    @property
    def has_self_loops(self) -> bool:
        return False

    def first_row(self) -> BooleanFunction:
        """The composed function F(a1.a~) = [a1=0][|a~|=1] + [a1=1] f(a~)."""
        top = 1 << self.n
        supp = [1 << j for j in range(self.n)]
        supp += [top | x for x in self.connection.support]
        return BooleanFunction(self.n + 1, tuple(supp))


@dataclass(frozen=True)
class Complete(_Spec):
    """The complete graph K_q."""

    q: int
    scaling: Scaling = UNNORMALIZED
    name: str = field(default="complete", compare=False)

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("K_q needs q >= 1")

    @property
    def num_vertices(self) -> int:
        return self.q

    @property
    def degree(self) -> int:
        return self.q - 1

    @property
    def has_self_loops(self) -> bool:
        return False


@dataclass(frozen=True)
class Product(_Spec):
    """Cartesian product of ``factors``; each factor keeps its own scaling."""

    factors: tuple
    scaling: Scaling = UNNORMALIZED
    name: str = field(default="product", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a product needs at least one factor")

    @property
    def radices(self) -> tuple:
        return tuple(f.num_vertices for f in self.factors)

    @property
    def num_vertices(self) -> int:
        return int(np.prod(self.radices))

    @property
    def degree(self) -> float:
        return sum(f.scale * f.degree for f in self.factors)

    @property
    def has_self_loops(self) -> bool:
        return any(f.has_self_loops for f in self.factors)

    def digits(self, vertex: int) -> list:
        """Mixed-radix digits of ``vertex``, factor 0 first."""
        out = []
        for r in self.radices:
            vertex, d = divmod(int(vertex), r)
            out.append(d)
        return out

    def index(self, digits) -> int:
        idx, mult = 0, 1
        for d, r in zip(digits, self.radices):
            idx += int(d) * mult
            mult *= r
        return idx


GraphSpec = Union[Circulant, Bunkbed, Complete, Product]


def circulant_spec(f: BooleanFunction, scaling: Scaling = UNNORMALIZED) -> Circulant:
    return Circulant(f.n, f, scaling)


def hypercube_spec(n: int, scaling: Scaling = UNNORMALIZED) -> Circulant:
    """Q_n as the circulant of f(x) = [|x| = 1]."""
    if n < 1:
        raise ValueError("hypercube needs n >= 1")
    return Circulant(n, BooleanFunction.weight_one(n), scaling, name="hypercube")


def eta_cube_spec(n: int, eta: int, scaling: Scaling | None = None) -> Circulant:
    """Q_n plus the matching a <-> a xor eta, scaled by 1/(n+1) by default.

    ``eta = 0`` is accepted and yields the self-loop variant
    (``spec.has_self_loops``). ``eta = e_j`` would duplicate an edge and is
    rejected.
    """
    if n < 1:
        raise ValueError("eta-cube needs n >= 1")
    eta = int(eta)
    if not 0 <= eta < (1 << n):
        raise ValueError(f"eta={eta} is not an element of Z_2^{n}")
    if hamming_weight(eta) == 1:
        raise ValueError("eta = e_j duplicates a hypercube edge")
    f = BooleanFunction(n, tuple(1 << j for j in range(n)) + (eta,))
    if scaling is None:
        scaling = Scaling.explicit(1.0 / (n + 1))
    return Circulant(n, f, scaling, name="eta-cube")


def bunkbed_spec(n: int, connection: BooleanFunction,
                 scaling: Scaling = UNNORMALIZED) -> Bunkbed:
    if n < 1:
        raise ValueError("bunkbed needs n >= 1")
    return Bunkbed(n, connection, scaling)


def complete_spec(q: int, scaling: Scaling = UNNORMALIZED) -> Complete:
    return Complete(q, scaling)


def hamming_spec(n: int, q: int, scaling: Scaling = UNNORMALIZED) -> Product:
    """H(n, q) as the product of n copies of K_q."""
    if n < 1 or q < 2:
        raise ValueError("Hamming graph needs n >= 1 and q >= 2")
    return Product(tuple(Complete(q) for _ in range(n)), scaling, name="hamming")


def as_circulant(spec) -> tuple | None:
    """Reduce a Z_2-structured spec to (m, F, s), or None if it does not reduce."""
    if isinstance(spec, Circulant):
        return spec.n, spec.f, spec.scale
    if isinstance(spec, Bunkbed):
        return spec.n + 1, spec.first_row(), spec.scale
    return None


def _complete_eigenvalues(q: int) -> np.ndarray:
    lam = np.full(q, -1, dtype=np.int64)
    lam[0] = q - 1
    return lam


def eigenvalues(spec) -> np.ndarray:
    """Eigenvalues indexed by character.

    For Z_2-structured specs entry a is s * F^(a). For complete and product
    specs entry a is the eigenvalue of the Z_q-character with index a
    (mixed-radix for products). Integer dtype is kept when s == 1.
    """
    red = as_circulant(spec)
    if red is not None:
        m, f, s = red
        lam = f.fourier()
    elif isinstance(spec, Complete):
        s = spec.scale
        lam = _complete_eigenvalues(spec.q)
    elif isinstance(spec, Product):
        s = spec.scale
        lam = np.zeros(1, dtype=np.float64)
        for factor in spec.factors:
            # factor 0 is least significant, so it varies along the last axis
            lam = np.add.outer(eigenvalues(factor), lam).ravel()
        if np.all(lam == np.round(lam)):
            lam = np.round(lam).astype(np.int64)
    else:
        raise TypeError(f"not a graph spec: {spec!r}")
    if s == 1:
        return lam
    return lam * s


def spectrum(spec) -> Spectrum:
    red = as_circulant(spec)
    if red is None:
        raise TypeError("spectrum table is indexed by Z_2^m; spec does not reduce")
    return Spectrum(red[0], eigenvalues(spec))


def dense_adjacency(spec, cap: int = ORACLE_CAP) -> np.ndarray:
    """Dense symmetric adjacency matrix including the spec's scaling."""
    N = spec.num_vertices
    if N > cap:
        raise ValueError(f"{N} vertices exceeds the dense oracle cap of {cap}")
    s = spec.scale
    if isinstance(spec, Circulant):
        ind = spec.f.indicator().astype(np.float64)
        idx = np.arange(N)
        A = ind[idx[:, None] ^ idx[None, :]]
    elif isinstance(spec, Bunkbed):
        Q = dense_adjacency(hypercube_spec(spec.n), cap)
        C = dense_adjacency(Circulant(spec.n, spec.connection), cap)
        A = np.block([[Q, C], [C, Q]])
    elif isinstance(spec, Complete):
        A = np.ones((N, N)) - np.eye(N)
    elif isinstance(spec, Product):
        A = np.zeros((N, N))
        k = len(spec.factors)
        for i, factor in enumerate(spec.factors):
            term = np.ones((1, 1))
            for j in reversed(range(k)):
                block = dense_adjacency(factor, cap) if j == i else np.eye(spec.factors[j].num_vertices)
                term = np.kron(term, block)
            A += term
    else:
        raise TypeError(f"not a graph spec: {spec!r}")
    return A * s if s != 1 else A


def adjacency_to_csv(A: np.ndarray) -> str:
    """N on the first line, then N comma-separated rows."""
    buf = io.StringIO()
    buf.write(f"{A.shape[0]}\n")
    for row in A:
        buf.write(",".join(_fmt(x) for x in row))
        buf.write("\n")
    return buf.getvalue()


def adjacency_from_csv(text: str) -> np.ndarray:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    N = int(lines[0])
    A = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
    if A.shape != (N, N):
        raise ValueError(f"expected {N}x{N} matrix, got {A.shape}")
    return A


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def describe(spec) -> str:
    if isinstance(spec, Product):
        inner = " x ".join(describe(f) for f in spec.factors)
        return f"{spec.name}[{inner}] ({spec.scaling.label()})"
    if isinstance(spec, Complete):
        return f"K_{spec.q} ({spec.scaling.label()})"
    return f"{spec.name} n={spec.n} ({spec.scaling.label()})"
