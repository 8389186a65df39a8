import numpy as np
import pytest

from padic_mra import dft

CASES = [(2, 0), (2, 1), (2, 7), (3, 1), (3, 5), (5, 3), (7, 2)]


@pytest.mark.parametrize("p,L", CASES)
@pytest.mark.parametrize("sign", [1, -1])
def test_fast_matches_naive(rng, p, L, sign):
    x = rng.standard_normal(p ** L) + 1j * rng.standard_normal(p ** L)
    np.testing.assert_allclose(dft.dft(x, p, sign), dft.dft_naive(x, sign), atol=1e-10)


@pytest.mark.parametrize("p,L", CASES)
def test_matches_numpy(rng, p, L):
    # numpy uses the negative exponent
    x = rng.standard_normal(p ** L) + 1j * rng.standard_normal(p ** L)
    np.testing.assert_allclose(dft.dft(x, p, sign=-1), np.fft.fft(x), atol=1e-10)


@pytest.mark.parametrize("p,L", CASES)
def test_inverse(rng, p, L):
    x = rng.standard_normal(p ** L) + 1j * rng.standard_normal(p ** L)
    np.testing.assert_allclose(dft.idft(dft.dft(x, p), p), x, atol=1e-12)


def test_batched_rows_transform_independently(rng):
    x = rng.standard_normal((4, 27)) + 0j
    out = dft.dft(x, 3)
    for row, res in zip(x, out):
        np.testing.assert_allclose(res, dft.dft_naive(row), atol=1e-10)


def test_rejects_wrong_length():
    with pytest.raises(ValueError):
        dft.dft(np.ones(6), 2)


def test_plan_is_cached_and_read_only():
    a = dft.plan(3, 4)
    assert dft.plan(3, 4) is a
    with pytest.raises(ValueError):
        a._twiddles[0][0, 0] = 0


@pytest.mark.parametrize("p,L", [(2, 4), (3, 3), (5, 2)])
def test_cyclic_correlation_and_convolution(rng, p, L):
    n = p ** L
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    h = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    m = np.arange(n)
    corr = np.array([np.sum(f * np.conj(h[(m - k) % n])) for k in range(n)])
    conv = np.array([np.sum(f * h[(k - m) % n]) for k in range(n)])
    np.testing.assert_allclose(dft.cyclic_correlation(f, h, p), corr, atol=1e-10)
    np.testing.assert_allclose(dft.cyclic_convolution(f, h, p), conv, atol=1e-10)


def test_roots_of_unity_exact_quarter_turns():
    r = dft.roots_of_unity(8)
    assert r[2] == 1j and r[4] == -1 and r[6] == -1j
