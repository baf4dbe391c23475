"""Vertex distributions, their Fourier transforms, and uniformity detection.

A distribution P is uniform exactly when every nontrivial Fourier
coefficient vanishes, for any abelian group structure on the vertex set.
Z_2-structured specs use the Walsh-Hadamard transform; complete and product
specs use the DFT over Z_q (mixed radix for products). Coefficients are
normalized so that P^(0) = sum(P) = 1.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .graphs import Bunkbed, Complete, Product, as_circulant, eigenvalues
from .walk import DEFAULT_START, AmplitudeVector, InitialState, evolve, evolve_batch
from .z2n import dimension_of, dot_mod2, fwht, hamming_weight, popcount_array

CLOSED_FORM_TOL = 1e-9
GRID_TOL = 1e-6
REFINE_XTOL = 1e-12
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def default_threads() -> int:
    env = os.environ.get("QWM_THREADS")
    if env:
        return max(1, int(env))
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:  # not on Linux
        return os.cpu_count() or 1


def distribution(psi) -> np.ndarray:
    """p_v = |psi_v|^2."""
    a = psi.amplitudes if isinstance(psi, AmplitudeVector) else np.asarray(psi)
    return a.real ** 2 + a.imag ** 2


def k_eta(a: int, eta: int) -> int:
    """|a| + [a . eta = 1]."""
    return hamming_weight(a) + dot_mod2(a, eta)


def phat(P) -> np.ndarray:
    """Walsh-Hadamard transform of a distribution over 2^m vertices."""
    P = np.asarray(P, dtype=np.float64)
    dimension_of(P.shape[-1])
    return fwht(P)


def fourier_coefficients(P, spec) -> np.ndarray:
    """Group-matched Fourier transform of P (last axis) for ``spec``.

    Returns real values for Z_2-structured specs and complex values for
    complete and product specs.
    """
    P = np.asarray(P, dtype=np.float64)
    if as_circulant(spec) is not None:
        return phat(P)
    if isinstance(spec, Complete):
        return np.fft.fft(P, axis=-1)
    if isinstance(spec, Product):
        lead = P.shape[:-1]
        shape = lead + tuple(reversed(spec.radices))
        axes = tuple(range(len(lead), len(shape)))
        return np.fft.fftn(P.reshape(shape), axes=axes).reshape(P.shape)
    raise TypeError(f"not a graph spec: {spec!r}")


def max_offzero(coeffs) -> np.ndarray:
    """max over a != 0 of |coeffs[a]| along the last axis."""
    coeffs = np.asarray(coeffs)
    if coeffs.shape[-1] == 1:
        return np.zeros(coeffs.shape[:-1])
    return np.abs(coeffs[..., 1:]).max(axis=-1)


def tv_distance(P) -> np.ndarray | float:
    """Total variation distance to the uniform distribution (last axis)."""
    P = np.asarray(P, dtype=np.float64)
    out = 0.5 * np.abs(P - 1.0 / P.shape[-1]).sum(axis=-1)
    return float(out) if out.ndim == 0 else out


def tv_bound_from_phat(eps: float, N: int) -> float:
    """tv <= sqrt(N) * max_{a != 0} |P^(a)| / 2 (Cauchy-Schwarz plus Parseval)."""
    return math.sqrt(N) * eps / 2.0


def phat_direct(spec, t: float, a: int, max_dim: int = 14) -> complex:
    """P^_t(a) = 2^-m sum_b exp(-i t (lambda_b - lambda_{a xor b})) for a point start at 0."""
    red = as_circulant(spec)
    if red is None:
        raise TypeError("phat_direct needs a Z_2-structured spec")
    m = red[0]
    if m > max_dim:
        raise ValueError(f"dimension {m} exceeds phat_direct cap {max_dim}")
    lam = np.asarray(eigenvalues(spec), dtype=np.float64)
    b = np.arange(1 << m)
    return complex(np.exp(-1j * t * (lam[b] - lam[b ^ int(a)])).mean())


@dataclass(frozen=True)
class MixingReport:
    t: float
    tv_distance: float
    max_offzero_phat: float
    uniform: bool


def mixing_report(spec, t: float, init: InitialState = DEFAULT_START,
                  eps: float = CLOSED_FORM_TOL) -> MixingReport:
    P = distribution(evolve(spec, t, init))
    g = float(max_offzero(fourier_coefficients(P, spec)))
    return MixingReport(float(t), tv_distance(P), g, g <= eps)


def spectral_radius(spec) -> float:
    return float(np.abs(np.asarray(eigenvalues(spec), dtype=np.float64)).max())


@dataclass
class ScanResult:
    """Grid scan output plus refined uniform times.

    ``tv_lower_bound`` is a certified lower bound on the TV distance over the
    whole interval: TV is Lipschitz in t with constant at most the spectral
    radius, and every t lies within dt/2 of a grid point.
    """

    reports: list
    min_tv: float
    argmin_t: float
    uniform_times: list
    uniform_values: list
    tv_lower_bound: float
    dt: float
    extra: dict = field(default_factory=dict)

    @property
    def earliest_uniform_time(self):
        return self.uniform_times[0] if self.uniform_times else None

    def summary(self) -> dict:
        out = {
            "points": len(self.reports),
            "min_tv": self.min_tv,
            "argmin_t": self.argmin_t,
            "tv_lower_bound": self.tv_lower_bound,
            "uniform_time": self.earliest_uniform_time,
            "uniform_times": list(self.uniform_times),
        }
        out.update(self.extra)
        return out


def _chunk_size(N: int) -> int:
    # depends only on N so results do not depend on the thread count
    return max(1, min(256, (1 << 21) // N))


def _evaluate(spec, init, times):
    P = distribution(evolve_batch(spec, init, times))
    coeffs = fourier_coefficients(P, spec)
    return tv_distance(P), max_offzero(coeffs), coeffs


def evaluate_grid(spec, init: InitialState, times, threads: int | None = None,
                  keep_index: int | None = None):
    """tv and max off-zero |P^| at every time; optionally one coefficient column."""
    times = np.asarray(times, dtype=np.float64)
    size = _chunk_size(spec.num_vertices)
    chunks = [times[i:i + size] for i in range(0, len(times), size)]

    def work(chunk):
        tv, g, coeffs = _evaluate(spec, init, chunk)
        col = coeffs[:, keep_index].real.copy() if keep_index is not None else None
        return np.atleast_1d(tv), g, col

    threads = threads or default_threads()
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]
    tv = np.concatenate([p[0] for p in parts])
    g = np.concatenate([p[1] for p in parts])
    col = np.concatenate([p[2] for p in parts]) if keep_index is not None else None
    return tv, g, col


def offzero_at(spec, t: float, init: InitialState = DEFAULT_START) -> float:
    P = distribution(evolve(spec, t, init))
    return float(max_offzero(fourier_coefficients(P, spec)))


def refine_minimum(func, lo: float, hi: float, xtol: float = REFINE_XTOL):
    """Golden-section search for the minimum of a unimodal ``func`` on [lo, hi]."""
    a, b = float(lo), float(hi)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = func(c), func(d)
    while b - a > xtol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = func(d)
        if c >= d:  # interval below float resolution
            break
    t = 0.5 * (a + b)
    return t, func(t)


def scan(spec, init: InitialState = DEFAULT_START, t_max: float = math.pi,
         steps: int = 1000, eps: float = GRID_TOL, threads: int | None = None,
         refine: bool = True) -> ScanResult:
    """Evaluate the walk on ``steps`` equally spaced times in [0, t_max].

    Uniform times are located from grid local minima of max |P^(a)|, a != 0,
    that are close enough to zero for a root to lie within one grid step
    (the coefficients are 2*rho-Lipschitz), then refined by golden-section
    search to 1e-12 and accepted if the refined value is <= eps.
    """
    if steps < 2:
        raise ValueError("a scan needs at least 2 grid points")
    if not t_max > 0:
        raise ValueError("t_max must be positive")
    times = np.linspace(0.0, float(t_max), int(steps))
    dt = float(times[1] - times[0])
    keep = (1 << spec.n) if isinstance(spec, Bunkbed) else None
    tv, g, layer = evaluate_grid(spec, init, times, threads, keep)
    rho = spectral_radius(spec)

    uniform_times, uniform_values = [], []
    if refine:
        slack = 2.0 * rho * dt + eps
        for i in range(len(times)):
            left = g[i - 1] if i > 0 else np.inf
            right = g[i + 1] if i + 1 < len(times) else np.inf
            if g[i] > left or g[i] > right or g[i] > slack:
                continue
            lo, hi = times[max(i - 1, 0)], times[min(i + 1, len(times) - 1)]
            t_star, val = refine_minimum(lambda t: offzero_at(spec, t, init), lo, hi)
            if val <= eps and not (uniform_times and abs(t_star - uniform_times[-1]) < dt):
                uniform_times.append(t_star)
                uniform_values.append(val)

    j = int(np.argmin(tv))
    reports = [MixingReport(float(t), float(v), float(x), bool(x <= eps))
               for t, v, x in zip(times, tv, g)]
    extra = {}
    if layer is not None:
        extra["layer_phat_min"] = float(layer.min())
    return ScanResult(reports, float(tv[j]), float(times[j]), uniform_times,
                      uniform_values, float(tv[j]) - rho * dt / 2.0, dt, extra)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "tv_distance", "max_offzero_phat", "uniform"])
    for r in reports:
        w.writerow([repr(r.t), repr(r.tv_distance), repr(r.max_offzero_phat),
                    "true" if r.uniform else "false"])
    return buf.getvalue()


@dataclass(frozen=True)
class EtaClassification:
    """Predicted behaviour of the eta-cube walk from |eta| alone."""

    n: int
    eta: int
    weight: int
    parity: int
    residue: int
    mixing: bool
    half: str | None  # "A0" or "A1": where the point-start mass sits for odd |eta|

    def in_half(self, x: int) -> bool:
        return dot_mod2(x, self.eta) == (0 if self.half == "A0" else 1)


def classify_eta(n: int, eta: int) -> EtaClassification:
    w = hamming_weight(eta)
    half = None
    if w % 2:
        half = "A0" if w % 4 == 3 else "A1"
    return EtaClassification(n, int(eta), w, w % 2, w % 4, w % 2 == 0, half)


def eta_times(n: int) -> tuple:
    """The two candidate uniform times (n+1)pi/4 and 3(n+1)pi/4 of the scaled eta-cube."""
    return (n + 1) * math.pi / 4, 3 * (n + 1) * math.pi / 4


def half_uniform_pattern(n: int, eta: int) -> np.ndarray:
    """2^(1-n) on the predicted half of Z_2^n, zero elsewhere (odd |eta| only)."""
    cls = classify_eta(n, eta)
    if cls.half is None:
        raise ValueError("half-uniform pattern needs odd |eta|")
    x = np.arange(1 << n)
    on = (popcount_array(x & eta) & 1) == (0 if cls.half == "A0" else 1)
    return np.where(on, 2.0 ** (1 - n), 0.0)
