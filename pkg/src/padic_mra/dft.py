"""Radix-p discrete Fourier transforms of length p^L.

The forward transform uses the positive exponent, matching the additive
character of Q_p:

    X[k] = sum_m x[m] * exp(+2 pi i m k / n)

:func:`dft` is a recursive decimation-in-time split into p interleaved
subsequences, vectorised over a batch axis.  :func:`dft_naive` is the
O(n^2) matrix product kept as a reference.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np


def _exponent(n: int, p: int) -> int:
    L, m = 0, n
    while m % p == 0 and m > 1:
        m //= p
        L += 1
    if m != 1:
        raise ValueError(f"length {n} is not a power of {p}")
    return L


def roots_of_unity(n: int, sign: int = 1) -> np.ndarray:
    """exp(sign * 2 pi i t / n) for t = 0..n-1, with exact symmetry at quarter turns."""
    t = np.arange(n)
    out = np.exp(sign * 2j * np.pi * t / n)
    if n % 4 == 0:
        q = n // 4
        out[0], out[q], out[2 * q], out[3 * q] = 1, sign * 1j, -1, -sign * 1j
    elif n % 2 == 0:
        out[n // 2] = -1
    return out


class DFTPlan:
    """Twiddle tables for length-p^L transforms; read-only once built."""

    def __init__(self, p: int, L: int, sign: int = 1):
        self.p, self.L, self.sign = p, L, sign
        self.n = p ** L
        roots = roots_of_unity(self.n, sign) if self.n > 1 else np.ones(1, complex)
        self._twiddles = []
        r = np.arange(p)[:, None]
        for level in range(1, L + 1):
            size = p ** level
            k = np.arange(size)[None, :]
            # exp(sign 2 pi i r k / size) read off the full-length table
            idx = (r * k * (self.n // size)) % self.n
            tw = roots[idx]
            tw.setflags(write=False)
            self._twiddles.append(tw)
        roots.setflags(write=False)

    def __call__(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape[-1] != self.n:
            raise ValueError(f"expected length {self.n}, got {x.shape[-1]}")
        batch = x.reshape(-1, self.n)
        return self._run(batch, self.L).reshape(x.shape)

    def _run(self, x: np.ndarray, level: int) -> np.ndarray:
        if level == 0:
            return x.copy()
        b, n = x.shape
        p = self.p
        m = n // p
        # sub[:, r, :] = x[:, r::p]
        sub = x.reshape(b, m, p).transpose(0, 2, 1).reshape(b * p, m)
        y = self._run(sub, level - 1).reshape(b, p, m)
        k = np.arange(n) % m
        tw = self._twiddles[level - 1]
        return np.einsum("rk,brk->bk", tw, y[:, :, k])


@lru_cache(maxsize=64)
def plan(p: int, L: int, sign: int = 1) -> DFTPlan:
    return DFTPlan(p, L, sign)


def dft(x: np.ndarray, p: int, sign: int = 1) -> np.ndarray:
    """Unnormalised length-p^L DFT along the last axis."""
    x = np.asarray(x, dtype=complex)
    return plan(p, _exponent(x.shape[-1], p), sign)(x)


def idft(x: np.ndarray, p: int) -> np.ndarray:
    """Inverse of :func:`dft` (negative exponent, 1/n factor)."""
    x = np.asarray(x, dtype=complex)
    return dft(x, p, sign=-1) / x.shape[-1]


def dft_naive(x: np.ndarray, sign: int = 1) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    n = x.shape[-1]
    t = np.arange(n)
    kernel = np.exp(sign * 2j * np.pi * ((np.outer(t, t) % n) / n))
    return x @ kernel.T


def cyclic_correlation(f: np.ndarray, h: np.ndarray, p: int) -> np.ndarray:
    """c[n] = sum_m f[m] * conj(h[m - n]) with indices mod len(f)."""
    F = dft(f, p)
    H = dft(h, p)
    return idft(F * np.conj(H), p)


def cyclic_convolution(c: np.ndarray, h: np.ndarray, p: int) -> np.ndarray:
    """g[m] = sum_n c[n] * h[m - n] with indices mod len(c)."""
    return idft(dft(c, p) * dft(h, p), p)
