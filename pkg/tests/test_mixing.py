import math

import numpy as np
import pytest

from qwmix.graphs import (
    DEGREE_NORMALIZED,
    Product,
    Scaling,
    bunkbed_spec,
    complete_spec,
    eta_cube_spec,
    hamming_spec,
    hypercube_spec,
)
from qwmix.mixing import (
    classify_eta,
    distribution,
    eta_times,
    fourier_coefficients,
    half_uniform_pattern,
    k_eta,
    max_offzero,
    mixing_report,
    phat,
    phat_direct,
    refine_minimum,
    reports_to_csv,
    scan,
    spectral_radius,
    tv_bound_from_phat,
    tv_distance,
)
from qwmix.walk import AmplitudeVector, InitialState, evolve, evolve_batch
from qwmix.z2n import BooleanFunction, weights


def test_distribution_basics():
    np.testing.assert_array_equal(distribution(np.eye(4)[2]), np.eye(4)[2])
    psi = evolve(hypercube_spec(1), math.pi / 4)
    np.testing.assert_allclose(distribution(psi), [0.5, 0.5], atol=1e-15)
    assert isinstance(psi, AmplitudeVector)


def test_eta_111_half_on_a0():
    P = distribution(evolve(eta_cube_spec(3, 0b111), math.pi))
    a0 = [x for x in range(8) if bin(x & 0b111).count("1") % 2 == 0]
    np.testing.assert_allclose(P[a0], 0.25, atol=1e-12)
    np.testing.assert_allclose(np.delete(P, a0), 0.0, atol=1e-12)
    np.testing.assert_allclose(P, half_uniform_pattern(3, 0b111), atol=1e-12)


def test_k_eta():
    assert k_eta(0, 0b111) == 0
    assert k_eta(0b110, 0b111) == 2
    assert k_eta(0b100, 0b111) == 2
    assert k_eta(0b101, 0b011) == 3


def test_phat_examples():
    np.testing.assert_allclose(phat(np.full(16, 1 / 16)), np.eye(16)[0], atol=1e-15)
    with pytest.raises(ValueError):
        phat(np.ones(6) / 6)


def test_phat_zero_is_one(rng):
    for spec in (hypercube_spec(4), eta_cube_spec(4, 0b0110), complete_spec(5), hamming_spec(2, 3),
                 bunkbed_spec(3, BooleanFunction.all_ones(3))):
        P = distribution(evolve(spec, rng.uniform(0, 5)))
        assert abs(P.sum() - 1) < 1e-10
        assert fourier_coefficients(P, spec)[0] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("n", range(1, 11))
def test_hypercube_closed_form(n, rng):
    spec = hypercube_spec(n)
    ts = rng.uniform(0, 2 * math.pi, 100)
    a = rng.integers(0, 1 << n, 100)
    G = phat(distribution(evolve_batch(spec, InitialState(), ts)))
    got = G[np.arange(100), a]
    np.testing.assert_allclose(got, np.cos(2 * ts) ** weights(n)[a], rtol=0, atol=1e-10)


def test_eta_phat_sign_at_t1():
    for n, eta in ((3, 0b111), (4, 0b0111), (5, 0b11111), (5, 0b00111)):
        w = bin(eta).count("1")
        G = phat(distribution(evolve(eta_cube_spec(n, eta), eta_times(n)[0])))
        assert G[eta] == pytest.approx((-1) ** ((w + 1) // 2), abs=1e-9)
        others = np.delete(G, [0, eta])
        assert np.abs(others).max() < 1e-9


def test_phat_direct_matches_walk(rng):
    specs = [hypercube_spec(5), eta_cube_spec(4, 0b1011), bunkbed_spec(3, BooleanFunction.all_ones(3)),
             bunkbed_spec(2, BooleanFunction.matching(0b01, 2))]
    for spec in specs:
        N = spec.num_vertices
        for _ in range(10):
            t = rng.uniform(0, 10)
            a = int(rng.integers(N))
            direct = phat_direct(spec, t, a)
            assert abs(direct.imag) < 1e-10
            walk = phat(distribution(evolve(spec, t)))[a]
            assert direct.real == pytest.approx(walk, abs=1e-9)
        assert phat_direct(spec, 1.234, 0) == pytest.approx(1.0, abs=1e-15)


def test_phat_direct_join_formula(rng):
    n = 3
    f = BooleanFunction.all_ones(n)
    fhat = f.fourier()
    for t in rng.uniform(0, 10, 10):
        want = np.cos(2 * fhat * t).mean()
        assert phat_direct(bunkbed_spec(n, f), t, 1 << n).real == pytest.approx(want, abs=1e-12)


def test_phat_direct_errors():
    with pytest.raises(TypeError):
        phat_direct(complete_spec(3), 1.0, 1)
    with pytest.raises(ValueError):
        phat_direct(hypercube_spec(15), 1.0, 1)


def test_tv_examples():
    assert tv_distance(np.full(8, 1 / 8)) == pytest.approx(0.0, abs=1e-16)
    assert tv_distance(np.eye(8)[3]) == pytest.approx(1 - 1 / 8)
    half = np.array([0.25, 0, 0.25, 0, 0.25, 0, 0.25, 0])
    assert tv_distance(half) == pytest.approx(0.5)
    np.testing.assert_allclose(tv_distance(np.stack([half, np.eye(8)[0]])), [0.5, 7 / 8])


def test_uniformity_equivalence_bounds(rng):
    """tv <= 2^(m/2) max|P^|/2 and max|P^| <= 2 tv, on random distributions."""
    for m in range(1, 9):
        N = 1 << m
        for scale in (1e-9, 1e-4, 1.0):
            P = 1 / N + scale * rng.standard_normal(N) / N
            P = np.abs(P)
            P /= P.sum()
            g = float(max_offzero(phat(P)))
            tv = tv_distance(P)
            assert tv <= tv_bound_from_phat(g, N) * (1 + 1e-12) + 1e-15
            assert g <= 2 * tv * (1 + 1e-12) + 1e-15


def test_mixing_report_verdicts():
    r = mixing_report(hypercube_spec(3), math.pi / 4)
    assert r.uniform and r.tv_distance < 1e-12 and r.max_offzero_phat < 1e-12
    r = mixing_report(eta_cube_spec(3, 0b111), math.pi)
    assert not r.uniform and r.tv_distance == pytest.approx(0.5, abs=1e-9)


@pytest.mark.parametrize("n,eta", [(3, 0b110), (4, 0b0111), (5, 0b11011), (6, 0b101101)])
def test_eta_a0_component_matches_hypercube(n, eta, rng):
    spec = eta_cube_spec(n, eta)
    x = np.arange(1 << n)
    a0 = x[np.array([bin(v & eta).count("1") % 2 for v in x]) == 0]
    for t in rng.uniform(0, 20, 10):
        G = phat(distribution(evolve(spec, t)))
        want = np.cos(2 * t / (n + 1)) ** weights(n)[a0]
        np.testing.assert_allclose(G[a0], want, atol=1e-10)


@pytest.mark.parametrize("n,eta", [(3, 0b111), (4, 0b0110), (5, 0b10101)])
def test_eta_periodicity(n, eta, rng):
    spec = eta_cube_spec(n, eta)
    ts = np.linspace(0, (n + 1) * math.pi, 200)
    A = phat(distribution(evolve_batch(spec, InitialState(), ts)))
    B = phat(distribution(evolve_batch(spec, InitialState(), ts + (n + 1) * math.pi)))
    np.testing.assert_allclose(A, B, atol=1e-9)


@pytest.mark.parametrize("q", [2, 3, 5, 6, 7])
def test_complete_periodicity(q):
    spec = complete_spec(q)
    ts = np.linspace(0, 2 * math.pi / q, 300)
    A = distribution(evolve_batch(spec, InitialState(), ts))
    B = distribution(evolve_batch(spec, InitialState(), ts + 2 * math.pi / q))
    np.testing.assert_allclose(A, B, atol=1e-12)


def test_product_fourier_factorizes(rng):
    g, h = complete_spec(3), complete_spec(4)
    spec = Product((g, h))
    for t in rng.uniform(0, 4, 5):
        G = fourier_coefficients(distribution(evolve(spec, t)), spec)
        Fg = fourier_coefficients(distribution(evolve(g, t)), g)
        Fh = fourier_coefficients(distribution(evolve(h, t)), h)
        np.testing.assert_allclose(G, np.kron(Fh, Fg), atol=1e-12)


def test_refine_minimum_parabola():
    t, v = refine_minimum(lambda x: (x - 0.3) ** 2, 0.0, 1.0)
    assert abs(t - 0.3) < 1e-6 and v < 1e-12


def test_scan_q2_times():
    res = scan(hypercube_spec(2), t_max=math.pi, steps=10_000)
    np.testing.assert_allclose(res.uniform_times, [math.pi / 4, 3 * math.pi / 4], atol=1e-9)
    assert len(res.reports) == 10_000
    assert res.reports[0].t == 0.0 and res.reports[-1].t == math.pi


def test_scan_eta_110_earliest():
    res = scan(eta_cube_spec(3, 0b110), t_max=4 * math.pi, steps=4000)
    assert res.earliest_uniform_time == pytest.approx(math.pi, abs=1e-6)
    assert res.uniform_times[1] == pytest.approx(3 * math.pi, abs=1e-6)


def test_scan_degree_normalized_ordering():
    q3 = scan(hypercube_spec(3, DEGREE_NORMALIZED), t_max=2 * math.pi, steps=2000)
    eta = scan(eta_cube_spec(3, 0b110, DEGREE_NORMALIZED), t_max=2 * math.pi, steps=2000)
    assert q3.earliest_uniform_time == pytest.approx(3 * math.pi / 4, abs=1e-6)
    assert eta.earliest_uniform_time == pytest.approx(math.pi, abs=1e-6)
    assert q3.earliest_uniform_time < eta.earliest_uniform_time


def test_scan_k5_never_uniform():
    res = scan(complete_spec(5), t_max=2 * math.pi / 5, steps=10_000)
    assert res.uniform_times == []
    assert res.tv_lower_bound > 0.15
    assert res.min_tv == pytest.approx(0.16, abs=1e-6)


def test_scan_bunkbed_layer_bound():
    res = scan(bunkbed_spec(3, BooleanFunction.all_ones(3)), t_max=4 * math.pi, steps=2000)
    assert res.extra["layer_phat_min"] >= 0.75 - 1e-9
    assert res.uniform_times == []
    assert "layer_phat_min" in res.summary()


def test_scan_thread_count_does_not_change_results():
    spec = eta_cube_spec(4, 0b0110)
    a = scan(spec, t_max=10.0, steps=3000, threads=1)
    b = scan(spec, t_max=10.0, steps=3000, threads=4)
    assert reports_to_csv(a.reports) == reports_to_csv(b.reports)
    assert a.summary() == b.summary()


def test_scan_rejects_bad_grid():
    with pytest.raises(ValueError):
        scan(hypercube_spec(2), steps=1)
    with pytest.raises(ValueError):
        scan(hypercube_spec(2), t_max=0.0)


def test_spectral_radius():
    assert spectral_radius(hypercube_spec(4)) == 4
    assert spectral_radius(eta_cube_spec(3, 0b110)) == pytest.approx(1.0)
    assert spectral_radius(hamming_spec(2, 3, Scaling.explicit(0.5))) == pytest.approx(2.0)


def test_reports_csv_format():
    res = scan(hypercube_spec(1), t_max=math.pi / 2, steps=3)
    lines = reports_to_csv(res.reports).splitlines()
    assert lines[0] == "t,tv_distance,max_offzero_phat,uniform"
    assert len(lines) == 4
    t, tv, g, u = lines[2].split(",")
    assert float(t) == pytest.approx(math.pi / 4)
    assert u == "true" and float(tv) < 1e-12
    assert lines[1].endswith(",false")


def test_classify_eta():
    c = classify_eta(3, 0b111)
    assert (c.weight, c.parity, c.residue, c.mixing, c.half) == (3, 1, 3, False, "A0")
    c = classify_eta(5, 0b10101)
    assert c.half == "A0" and not c.mixing
    c = classify_eta(4, 0b0001 | 0b1000)
    assert c.mixing and c.half is None
    c = classify_eta(5, 0b11111)
    assert c.residue == 1 and c.half == "A1"
    assert c.in_half(0b00011) is False and c.in_half(0b00001) is True
    with pytest.raises(ValueError):
        half_uniform_pattern(4, 0b0110)


def test_half_partition_sizes():
    for n in range(2, 7):
        for eta in range(1, 1 << n):
            x = np.arange(1 << n)
            ones = sum(bin(v & eta).count("1") % 2 for v in x)
            assert ones == 1 << (n - 1)
