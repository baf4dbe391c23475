import numpy as np
import pytest

from qwmix.graphs import (
    DEGREE_NORMALIZED,
    Bunkbed,
    Circulant,
    Product,
    Scaling,
    adjacency_from_csv,
    adjacency_to_csv,
    as_circulant,
    bunkbed_spec,
    complete_spec,
    dense_adjacency,
    eigenvalues,
    eta_cube_spec,
    hamming_spec,
    hypercube_spec,
    spectrum,
)
from qwmix.z2n import BooleanFunction, dot_mod2, weights


def test_hypercube_builder():
    q1 = hypercube_spec(1)
    assert q1.f.support == (1,)
    np.testing.assert_array_equal(dense_adjacency(q1), [[0, 1], [1, 0]])
    q3 = hypercube_spec(3)
    assert q3.f.support == (0b001, 0b010, 0b100)
    np.testing.assert_array_equal(eigenvalues(q3), 3 - 2 * weights(3))
    A = dense_adjacency(q3)
    assert A.shape == (8, 8)
    np.testing.assert_array_equal(A.sum(axis=1), 3)
    with pytest.raises(ValueError):
        hypercube_spec(0)


def test_hypercube_matches_figure_pattern():
    # first row (a,b,c,d,e,f,g,h) = (0,1,1,0,1,0,0,0); later rows permute by xor
    A = dense_adjacency(hypercube_spec(3))
    np.testing.assert_array_equal(A[0], [0, 1, 1, 0, 1, 0, 0, 0])
    np.testing.assert_array_equal(A[1], [1, 0, 0, 1, 0, 1, 0, 0])
    for s in range(8):
        for t in range(8):
            assert A[s, t] == A[0, s ^ t]


def test_eta_cube_builder():
    spec = eta_cube_spec(3, 0b111)
    A = dense_adjacency(spec.with_scaling(Scaling()))
    np.testing.assert_array_equal(A.sum(axis=1), 4)
    assert np.all(np.diag(A) == 0)
    assert spec.scale == pytest.approx(0.25)
    np.testing.assert_allclose(dense_adjacency(spec).sum(axis=1), 1.0)

    for n in (3, 4):
        for eta in (0b011, 0b110, 0b111):
            lam = eigenvalues(eta_cube_spec(n, eta))
            want = [(n - 2 * bin(a).count("1") + (-1) ** dot_mod2(a, eta)) / (n + 1)
                    for a in range(1 << n)]
            np.testing.assert_allclose(lam, want, rtol=0, atol=1e-15)
    assert eigenvalues(eta_cube_spec(3, 0b110))[0b010] == 0


def test_eta_cube_rejections_and_self_loop():
    with pytest.raises(ValueError):
        eta_cube_spec(3, 0b010)
    with pytest.raises(ValueError):
        eta_cube_spec(3, 8)
    loop = eta_cube_spec(3, 0)
    assert loop.has_self_loops
    assert np.all(np.diag(dense_adjacency(loop)) == pytest.approx(0.25))


def test_bunkbed_special_cases():
    n = 2
    q3 = dense_adjacency(hypercube_spec(3))
    np.testing.assert_array_equal(dense_adjacency(bunkbed_spec(n, BooleanFunction.delta0(n))), q3)

    join = dense_adjacency(bunkbed_spec(n, BooleanFunction.all_ones(n)))
    Q = dense_adjacency(hypercube_spec(n))
    np.testing.assert_array_equal(join, np.block([[Q, np.ones((4, 4))], [np.ones((4, 4)), Q]]))

    eta_t = 0b01
    m = dense_adjacency(bunkbed_spec(n, BooleanFunction.matching(eta_t, n)))
    cube = dense_adjacency(eta_cube_spec(n + 1, (1 << n) | eta_t, Scaling()))
    np.testing.assert_array_equal(m, cube)


@pytest.mark.parametrize("n", range(1, 6))
def test_bunkbed_reduces_to_circulant(n, rng):
    for _ in range(4):
        f = BooleanFunction.from_indicator(rng.integers(0, 2, 1 << n))
        spec = bunkbed_spec(n, f)
        m, F, s = as_circulant(spec)
        np.testing.assert_array_equal(dense_adjacency(spec), dense_adjacency(Circulant(m, F)))


def test_bunkbed_eigenvalue_formula(rng):
    n = 4
    f = BooleanFunction.from_indicator(rng.integers(0, 2, 1 << n))
    lam = eigenvalues(bunkbed_spec(n, f))
    fh = f.fourier()
    w = weights(n)
    for a1 in (0, 1):
        for at in range(1 << n):
            assert lam[(a1 << n) | at] == (n - 2 * w[at]) + (-1) ** a1 * fh[at]


@pytest.mark.parametrize("n", range(1, 7))
def test_spectral_consistency(n, rng):
    """Dense eigensolver vs the transform of the first row."""
    for _ in range(3):
        f = BooleanFunction.from_indicator(rng.integers(0, 2, 1 << n))
        for scaling in (Scaling(), Scaling.explicit(0.37)):
            spec = Circulant(n, f, scaling)
            dense = np.linalg.eigvalsh(dense_adjacency(spec))
            fast = np.sort(np.asarray(eigenvalues(spec), float))
            np.testing.assert_allclose(dense, fast, rtol=0, atol=1e-8)


def test_circulant_regular_and_symmetric(rng):
    f = BooleanFunction.from_indicator(rng.integers(0, 2, 32))
    spec = Circulant(5, f, Scaling.explicit(0.5))
    A = dense_adjacency(spec)
    np.testing.assert_array_equal(A, A.T)
    np.testing.assert_allclose(A.sum(axis=1), 0.5 * len(f))
    assert set(np.unique(A)) <= {0.0, 0.5}


def test_hamming_builder():
    k5 = hamming_spec(1, 5)
    np.testing.assert_array_equal(dense_adjacency(k5), dense_adjacency(complete_spec(5)))
    # base-2 mixed radix with factor 0 least significant is the bit order of Q_n
    for n in range(1, 5):
        np.testing.assert_array_equal(dense_adjacency(hamming_spec(n, 2)),
                                      dense_adjacency(hypercube_spec(n)))
    h23 = dense_adjacency(hamming_spec(2, 3))
    assert h23.shape == (9, 9)
    np.testing.assert_array_equal(h23.sum(axis=1), 4)
    for u in range(9):
        for v in range(9):
            differ = (u % 3 != v % 3) + (u // 3 != v // 3)
            assert h23[u, v] == (differ == 1)
    with pytest.raises(ValueError):
        hamming_spec(0, 3)
    with pytest.raises(ValueError):
        hamming_spec(2, 1)


def test_product_eigenvalues_match_dense():
    spec = Product((complete_spec(3), hypercube_spec(2), complete_spec(4)))
    dense = np.linalg.eigvalsh(dense_adjacency(spec))
    np.testing.assert_allclose(dense, np.sort(eigenvalues(spec)), atol=1e-9)
    h = hamming_spec(3, 3)
    lam = eigenvalues(h)
    for a in range(27):
        nonzero = sum(d != 0 for d in h.digits(a))
        assert lam[a] == 3 * 2 - 3 * nonzero


def test_degree_normalized_scales():
    assert hypercube_spec(4, DEGREE_NORMALIZED).scale == pytest.approx(0.25)
    assert bunkbed_spec(3, BooleanFunction.all_ones(3), DEGREE_NORMALIZED).scale == pytest.approx(1 / 11)
    h = hamming_spec(2, 4, DEGREE_NORMALIZED)
    assert h.degree == 6 and h.scale == pytest.approx(1 / 6)


def test_dense_cap():
    with pytest.raises(ValueError):
        dense_adjacency(hypercube_spec(13))
    dense_adjacency(hypercube_spec(4), cap=16)
    with pytest.raises(ValueError):
        dense_adjacency(hypercube_spec(5), cap=16)


def test_csv_roundtrip():
    A = dense_adjacency(eta_cube_spec(3, 0b111))
    text = adjacency_to_csv(A)
    lines = text.strip().split("\n")
    assert lines[0] == "8"
    assert len(lines) == 9
    assert all(len(ln.split(",")) == 8 for ln in lines[1:])
    np.testing.assert_array_equal(adjacency_from_csv(text), A)


def test_spectrum_type():
    sp = spectrum(hypercube_spec(3))
    rows = list(sp.rows())
    assert rows[7] == (7, 3, -3)
    with pytest.raises(TypeError):
        spectrum(hamming_spec(2, 3))


def test_bunkbed_vertex_layout():
    spec = bunkbed_spec(2, BooleanFunction.delta0(2))
    assert isinstance(spec, Bunkbed)
    assert spec.num_vertices == 8
    # layer bit in position n connects a~ to 1.a~
    A = dense_adjacency(spec)
    for at in range(4):
        assert A[at, 4 | at] == 1
