"""Continuous-time quantum walk evolution psi(t) = exp(-i t A) psi(0).

Four routes, all exact up to rounding:

* Z_2-structured specs: diagonalize with the Walsh-Hadamard transform,
  O(m 2^m) per time point.
* Complete graphs: closed form from the spectrum {q-1, -1 (q-1 times)}.
* Products: tensor product of factor walks.
* Dense oracle: full symmetric eigendecomposition, the trusted reference.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

from .graphs import ORACLE_CAP, Complete, Product, as_circulant
from .z2n import fwht, inverse_fwht

UNIT_TOL = 1e-10


@dataclass(frozen=True)
class AmplitudeVector:
    amplitudes: np.ndarray
    t: float

    def __len__(self):
        return len(self.amplitudes)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        a = self.amplitudes
        return a.real ** 2 + a.imag ** 2

    def check_unit(self, tol: float = UNIT_TOL) -> "AmplitudeVector":
        if abs(self.norm - 1.0) > tol:
            raise ValueError(f"amplitude vector has norm {self.norm!r}")
        return self


@dataclass(frozen=True)
class InitialState:
    """Sparse start vector as (vertex, amplitude) pairs."""

    terms: tuple = ((0, 1.0),)

    def __post_init__(self):
        terms = tuple((int(v), complex(a)) for v, a in self.terms)
        if not terms:
            raise ValueError("initial state is empty")
        if len({v for v, _ in terms}) != len(terms):
            raise ValueError("repeated vertex in initial state")
        norm2 = sum(abs(a) ** 2 for _, a in terms)
        if abs(norm2 - 1.0) > UNIT_TOL:
            raise ValueError(f"initial state has squared norm {norm2!r}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def point(cls, vertex: int = 0) -> "InitialState":
        return cls(((vertex, 1.0),))

    @classmethod
    def superposition(cls, vertices: Sequence[int]) -> "InitialState":
        """Equal-weight superposition, e.g. (|0> + |eta>)/sqrt(2)."""
        amp = 1.0 / np.sqrt(len(vertices))
        return cls(tuple((v, amp) for v in vertices))

    def to_vector(self, N: int) -> np.ndarray:
        psi = np.zeros(N, dtype=np.complex128)
        for v, a in self.terms:
            if not 0 <= v < N:
                raise ValueError(f"start vertex {v} outside 0..{N - 1}")
            psi[v] = a
        return psi


DEFAULT_START = InitialState()


def _phases(lam: np.ndarray, theta_scale) -> np.ndarray:
    return np.exp(-1j * np.multiply.outer(theta_scale, lam))


def circulant_walk(spec, init: InitialState = DEFAULT_START, t: float = 0.0) -> AmplitudeVector:
    """Fast spectral evolution of a Z_2-structured spec.

    psi_t = inverse_fwht(exp(-i t s F^(a)) * fwht(psi_0)).
    """
    red = as_circulant(spec)
    if red is None:
        raise TypeError(f"{type(spec).__name__} spec does not reduce to a Z_2^m circulant")
    m, f, s = red
    psi_hat = fwht(init.to_vector(1 << m))
    psi_hat *= np.exp(-1j * (t * s) * f.fourier())
    return AmplitudeVector(inverse_fwht(psi_hat), float(t))


def circulant_walk_batch(spec, init: InitialState, times) -> np.ndarray:
    """Amplitudes at every time in ``times``; shape (len(times), 2^m)."""
    red = as_circulant(spec)
    if red is None:
        raise TypeError(f"{type(spec).__name__} spec does not reduce to a Z_2^m circulant")
    m, f, s = red
    psi_hat = fwht(init.to_vector(1 << m))
    buf = _phases(f.fourier(), np.asarray(times, dtype=np.float64) * s)
    buf *= psi_hat
    return inverse_fwht(buf)


def complete_graph_walk(q: int, t: float, init: InitialState = DEFAULT_START,
                        scale: float = 1.0) -> AmplitudeVector:
    """Walk on K_q with adjacency ``scale * (J - I)``.

    exp(-i t (J - I)) = e^{it} (I + (e^{-itq} - 1)/q J), so a point start gives
    (e^{-it(q-1)} + (q-1) e^{it})/q on the start vertex and
    (e^{-it(q-1)} - e^{it})/q elsewhere.
    """
    if q < 1:
        raise ValueError("K_q needs q >= 1")
    psi0 = init.to_vector(q)
    return AmplitudeVector(_complete_apply(q, psi0, np.float64(t) * scale), float(t))


def _complete_apply(q, psi0, tau):
    tau = np.asarray(tau, dtype=np.float64)
    glob = np.exp(1j * tau)[..., None]
    coef = ((np.exp(-1j * q * tau) - 1.0) / q)[..., None]
    return glob * (psi0 + coef * psi0.sum())


def complete_walk_batch(q: int, init: InitialState, times, scale: float = 1.0) -> np.ndarray:
    return _complete_apply(q, init.to_vector(q), np.atleast_1d(np.asarray(times, float)) * scale)


def product_walk(factors: Sequence[AmplitudeVector], atol: float = 0.0) -> AmplitudeVector:
    """Tensor product of factor walks, factor 0 in the least significant digit."""
    if not factors:
        raise ValueError("no factors")
    t0 = factors[0].t
    for fac in factors[1:]:
        if abs(fac.t - t0) > atol:
            raise ValueError(f"mismatched time stamps {t0!r} and {fac.t!r}")
    out = np.ones(1, dtype=np.complex128)
    for fac in factors:
        out = np.kron(fac.amplitudes, out)
    return AmplitudeVector(out, t0)


def _factor_walk(spec, vertex: int, t: float) -> AmplitudeVector:
    return evolve(spec, t, InitialState.point(vertex))


def evolve(spec, t: float, init: InitialState = DEFAULT_START) -> AmplitudeVector:
    """Evolve ``init`` to time ``t`` on the fastest exact route for ``spec``."""
    if as_circulant(spec) is not None:
        return circulant_walk(spec, init, t)
    if isinstance(spec, Complete):
        return complete_graph_walk(spec.q, t, init, spec.scale)
    if isinstance(spec, Product):
        # factors run on their own clocks; the product scale multiplies time
        tau = spec.scale * t
        total = np.zeros(spec.num_vertices, dtype=np.complex128)
        for vertex, amp in init.terms:
            parts = [_factor_walk(f, d, tau) for f, d in zip(spec.factors, spec.digits(vertex))]
            total += amp * product_walk(parts).amplitudes
        return AmplitudeVector(total, float(t))
    raise TypeError(f"not a graph spec: {spec!r}")


def evolve_batch(spec, init: InitialState, times) -> np.ndarray:
    """Amplitudes at many times; shape (len(times), N)."""
    times = np.asarray(times, dtype=np.float64)
    if as_circulant(spec) is not None:
        return circulant_walk_batch(spec, init, times)
    if isinstance(spec, Complete):
        return complete_walk_batch(spec.q, init, times, spec.scale)
    return np.array([evolve(spec, float(t), init).amplitudes for t in times])


def dense_walk_oracle(adj: np.ndarray, init: InitialState = DEFAULT_START,
                      t: float = 0.0, cap: int = ORACLE_CAP) -> AmplitudeVector:
    """exp(-i t A) psi_0 via the symmetric eigendecomposition A = V diag(w) V^T."""
    A = np.asarray(adj, dtype=np.float64)
    N = A.shape[0]
    if N > cap:
        raise ValueError(f"{N} vertices exceeds the dense oracle cap of {cap}")
    if not np.allclose(A, A.T, rtol=0, atol=1e-12):
        raise ValueError("adjacency matrix is not symmetric")
    psi0 = init.to_vector(N)
    if t == 0:
        return AmplitudeVector(psi0, 0.0)
    w, V = _eigh(A)
    out = V @ (np.exp(-1j * t * w) * (V.T @ psi0))
    return AmplitudeVector(out, float(t))


def dense_walk_oracle_batch(adj: np.ndarray, init: InitialState, times) -> np.ndarray:
    A = np.asarray(adj, dtype=np.float64)
    psi0 = init.to_vector(A.shape[0])
    w, V = _eigh(A)
    coeffs = V.T @ psi0
    return (np.exp(-1j * np.multiply.outer(np.asarray(times, float), w)) * coeffs) @ V.T


def _eigh(A):
    try:
        return scipy.linalg.eigh(A)
    except scipy.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigensolver did not converge: {exc}") from exc
