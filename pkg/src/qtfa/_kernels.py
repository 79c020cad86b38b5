"""Hot loops on double phase space.

Each kernel has two implementations with identical results:

* ``*_numba``: explicit loops compiled with numba, parallelised over output
  blocks, with the DFT stages done as products with DFT matrices;
* ``*_numpy``: FFT-factorised versions that work without numba.

The public entry points dispatch on :func:`qtfa._accel.backend`.
"""

from __future__ import annotations

import numpy as np

from . import _accel
from ._accel import njit, prange
from .phase_space import modulus


# ---------------------------------------------------------------------------
# polarised Cohen table: Q[w1, w2, z1, z2] = <T, pi(z) S pi(w)*>_HS
#   = sum_{a,b} T[a, b] conj(S[a - z1, b - w1]) zeta**(-z2 a + w2 b)


@njit(cache=True)
def _dft_matrix(powers, sign):
    # W[x, k] = zeta**(sign k x)
    N = powers.shape[0]
    W = np.empty((N, N), dtype=np.complex128)
    for x in range(N):
        for k in range(N):
            W[x, k] = powers[(sign * k * x) % N]
    return W


@njit(parallel=True, cache=True)
def _cohen_table_numba(S, T, powers):
    # P[z1, w1, a, b] = T[a, b] conj(S[a - z1, b - w1]); the sums over b and a
    # are then two DFT stages done as matrix products
    N = S.shape[0]
    Sc = np.conj(S)
    P = np.empty((N, N, N, N), dtype=np.complex128)
    for idx in prange(N * N):
        z1 = idx // N
        w1 = idx % N
        for a in range(N):
            ra = (a - z1) % N
            for b in range(N):
                P[z1, w1, a, b] = T[a, b] * Sc[ra, (b - w1) % N]
    B = np.dot(P.reshape(N * N * N, N), _dft_matrix(powers, 1)).reshape(N, N, N, N)  # [z1, w1, a, w2]
    Bt = np.ascontiguousarray(B.transpose(0, 1, 3, 2))  # [z1, w1, w2, a]
    X = np.dot(Bt.reshape(N * N * N, N), _dft_matrix(powers, -1)).reshape(N, N, N, N)  # [z1, w1, w2, z2]
    return np.ascontiguousarray(X.transpose(1, 2, 0, 3))


def _rolled_stack(S: np.ndarray) -> np.ndarray:
    """R[z1, w1, a, b] = S[a - z1, b - w1]."""
    N = S.shape[0]
    i = np.arange(N)
    rows = (i[None, :] - i[:, None]) % N  # [z1, a]
    return S[rows[:, None, :, None], rows[None, :, None, :]]


def _cohen_table_numpy(S, T):
    N = S.shape[0]
    P = T[None, None] * np.conj(_rolled_stack(S))  # [z1, w1, a, b]
    X = np.fft.fft(P, axis=2)  # a -> z2 with zeta**(-z2 a)
    X = np.fft.ifft(X, axis=3) * N  # b -> w2 with zeta**(+w2 b)
    return np.ascontiguousarray(X.transpose(1, 3, 0, 2))


def cohen_table(S: np.ndarray, T: np.ndarray) -> np.ndarray:
    S = np.ascontiguousarray(S, dtype=np.complex128)
    T = np.ascontiguousarray(T, dtype=np.complex128)
    if _accel.HAVE_NUMBA:
        return _cohen_table_numba(S, T, modulus(S.shape[0]).powers)
    return _cohen_table_numpy(S, T)


# ---------------------------------------------------------------------------
# synthesis: (1/N^2) sum_{w,z} F[w, z] pi(z) S pi(w)*
#   entry (a, b) = (1/N^2) sum F[w1,w2,z1,z2] S[a - z1, b - w1] zeta**(z2 a - w2 b)


@njit(parallel=True, cache=True)
def _cohen_synthesis_numba(S, F, powers):
    N = S.shape[0]
    # G[w1, z1, a, b] = sum_{w2, z2} F[w1, w2, z1, z2] zeta**(z2 a - w2 b), by two DFT stages
    H = np.dot(F.reshape(N * N * N, N), _dft_matrix(powers, 1)).reshape(N, N, N, N)  # [w1, w2, z1, a]
    Ht = np.ascontiguousarray(H.transpose(0, 2, 3, 1))  # [w1, z1, a, w2]
    G = np.dot(Ht.reshape(N * N * N, N), _dft_matrix(powers, -1)).reshape(N, N, N, N)  # [w1, z1, a, b]
    out = np.empty((N, N), dtype=np.complex128)
    for idx in prange(N * N):
        a = idx // N
        b = idx % N
        acc = 0j
        for z1 in range(N):
            for w1 in range(N):
                acc += S[(a - z1) % N, (b - w1) % N] * G[w1, z1, a, b]
        out[a, b] = acc / (N * N)
    return out


def _cohen_synthesis_numpy(S, F):
    N = S.shape[0]
    G = np.fft.ifft(F, axis=3) * N  # z2 -> a, zeta**(+z2 a)
    G = np.fft.fft(G, axis=1)  # w2 -> b, zeta**(-w2 b)
    # G[w1, b, z1, a] -> [z1, w1, a, b]
    G = G.transpose(2, 0, 3, 1)
    return np.einsum("zwab,zwab->ab", _rolled_stack(S), G) / N**2


def cohen_synthesis(S: np.ndarray, F: np.ndarray) -> np.ndarray:
    S = np.ascontiguousarray(S, dtype=np.complex128)
    F = np.ascontiguousarray(F, dtype=np.complex128)
    if _accel.HAVE_NUMBA:
        return _cohen_synthesis_numba(S, F, modulus(S.shape[0]).powers)
    return _cohen_synthesis_numpy(S, F)


# ---------------------------------------------------------------------------
# twisted convolution on Z_N^4:
#   (F # G)(w, z) = (1/N^2) sum F(w', z') G(w - w', z - z')
#                   * zeta**(-(z1'(z2 - z2') - w1'(w2 - w2')))


# After the pre-twist F' = F zeta**(z1' z2' - w1' w2') the sum over the second
# coordinates is a plain cyclic convolution and the leftover factor
# zeta**(v1 w2 - u1 z2) becomes an index shift after a DFT over axes 1 and 3:
#   out^[w1, k, z1, l] = sum_{v1,u1} F'^[v1, k-v1, u1, l+u1] G^[w1-v1, k-v1, z1-u1, l+u1]


def _pretwist(F, m):
    i = np.arange(F.shape[0])
    return F * m.zeta(i[None, None, :, None] * i[None, None, None, :] - i[:, None, None, None] * i[None, :, None, None])


@njit(cache=True)
def _dft13_numba(X, powers, sign):
    N = X.shape[0]
    W = _dft_matrix(powers, sign)
    Y = np.dot(X.reshape(N * N * N, N), W).reshape(N, N, N, N)  # [a, x, c, l]
    Yt = np.ascontiguousarray(Y.transpose(0, 2, 3, 1))  # [a, c, l, x]
    Z = np.dot(Yt.reshape(N * N * N, N), W).reshape(N, N, N, N)  # [a, c, l, k]
    return np.ascontiguousarray(Z.transpose(0, 3, 1, 2))


@njit(parallel=True, cache=True)
def _twisted_numba(Ft, G, powers):
    N = Ft.shape[0]
    Fh = _dft13_numba(Ft, powers, -1)
    Gh = _dft13_numba(G, powers, -1)
    wrap = np.arange(3 * N) % N  # wrap[x + N] = x mod N for -N <= x < 2N
    Oh = np.zeros((N, N, N, N), dtype=np.complex128)
    for w1 in prange(N):
        for v1 in range(N):
            d1 = wrap[w1 - v1 + N]
            for u1 in range(N):
                for k in range(N):
                    kk = wrap[k - v1 + N]
                    for z1 in range(N):
                        e1 = wrap[z1 - u1 + N]
                        for l in range(N):
                            ll = wrap[l + u1]
                            Oh[w1, k, z1, l] += Fh[v1, kk, u1, ll] * Gh[d1, kk, e1, ll]
    return _dft13_numba(Oh, powers, 1) / N**4


def _twisted_numpy(F, G):
    N = F.shape[0]
    m = modulus(N)
    Fh = np.fft.fft2(_pretwist(F, m), axes=(1, 3))
    Gh = np.fft.fft2(G, axes=(1, 3))
    Oh = np.zeros((N, N, N, N), dtype=np.complex128)
    for v1 in range(N):
        for u1 in range(N):
            # shift both frequency axes so index k reads k - v1 and l reads l + u1
            Fs = np.roll(Fh[v1, :, u1, :], (v1, -u1), axis=(0, 1))
            Gs = np.roll(Gh, (v1, v1, u1, -u1), axis=(0, 1, 2, 3))
            Oh += Fs[None, :, None, :] * Gs
    return np.fft.ifft2(Oh, axes=(1, 3)) / N**2


def twisted_convolution(F: np.ndarray, G: np.ndarray) -> np.ndarray:
    F = np.ascontiguousarray(F, dtype=np.complex128)
    G = np.ascontiguousarray(G, dtype=np.complex128)
    if _accel.HAVE_NUMBA:
        m = modulus(F.shape[0])
        return _twisted_numba(_pretwist(F, m), G, m.powers)
    return _twisted_numpy(F, G)
