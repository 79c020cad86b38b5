"""Time-frequency analysis of signals on Z_N."""

from __future__ import annotations

import numpy as np

from .phase_space import as_phase_function, as_signal, half_phase, modulus


def gaussian_window(N: int, K: int = 3, width: float = 1.0) -> np.ndarray:
    """l2-normalised periodised Gaussian exp(-pi t**2 / (width N)) on Z_N.

    ``t`` runs over centered representatives in [-(N-1)/2, (N-1)/2]; the
    periodisation sums 2K+1 aliases.  ``width=1`` is the self-dual window.
    """
    modulus(N)
    t = np.arange(N)
    t = np.where(t > N // 2, t - N, t).astype(float)
    k = np.arange(-K, K + 1)
    g = np.exp(-np.pi * (t[:, None] + k[None, :] * N) ** 2 / (width * N)).sum(axis=1)
    return (g / np.linalg.norm(g)).astype(complex)


def tf_shift(z, f) -> np.ndarray:
    """``pi(z) f (t) = zeta**(omega t) f(t - x)``."""
    f = as_signal(f)
    N = f.shape[0]
    m = modulus(N)
    return m.zeta(z[1] * np.arange(N)) * np.roll(f, z[0] % N)


def tf_shift_matrix(z, N: int) -> np.ndarray:
    m = modulus(N)
    t = np.arange(N)
    M = np.zeros((N, N), dtype=complex)
    M[t, (t - z[0]) % N] = m.zeta(z[1] * t)
    return M


def stft(f, g) -> np.ndarray:
    """``V_g f(x, omega) = <f, pi(x, omega) g>``, returned as an N x N array."""
    f = as_signal(f)
    g = as_signal(g, f.shape[0])
    N = f.shape[0]
    t = np.arange(N)
    P = f[None, :] * np.conj(g[(t[None, :] - t[:, None]) % N])  # [x, t]
    return np.fft.fft(P, axis=1)


def stft_adjoint(F, g) -> np.ndarray:
    """``(1/N) sum_z F(z) pi(z) g``."""
    F = as_phase_function(F)
    N = F.shape[0]
    g = as_signal(g, N)
    t = np.arange(N)
    A = np.fft.ifft(F, axis=1)  # (1/N) sum_omega F[x, omega] zeta**(omega t)
    return (g[(t[None, :] - t[:, None]) % N] * A).sum(axis=0)


def wigner(f, g) -> np.ndarray:
    """Cross-Wigner distribution ``sum_t f(x + t/2) conj(g(x - t/2)) zeta**(-omega t)``."""
    f = as_signal(f)
    g = as_signal(g, f.shape[0])
    N = f.shape[0]
    h = modulus(N).half
    x = np.arange(N)[:, None]
    t = np.arange(N)[None, :]
    P = f[(x + h * t) % N] * np.conj(g[(x - h * t) % N])
    return np.fft.fft(P, axis=1)


def rank_one_spreading(f, g) -> np.ndarray:
    """Spreading function of ``f (x) g`` from the ambiguity function.

    In this finite model ``eta(z) = zeta**(x omega / 2) V_g f(z)``, which is
    what makes ``eta = F_Omega W(f, g)`` hold exactly.
    """
    V = stft(f, g)
    N = V.shape[0]
    x = np.arange(N)
    return half_phase(x[:, None] * x[None, :], N) * V
