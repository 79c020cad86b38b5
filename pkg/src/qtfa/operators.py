"""Hilbert-Schmidt operators on C^N and their phase-space representations.

An operator is stored as its kernel matrix ``K`` with ``(Sf)(x) = sum_t K[x, t] f(t)``.
Three correspondences connect it to phase space:

* Weyl symbol ``sigma_S(x, omega) = sum_t K(x + t/2, x - t/2) zeta**(-omega t)``,
* spreading function ``eta_S = F_Omega sigma_S``,
* Fourier-Wigner transform ``F_W(S)(z) = zeta**(-x omega / 2) tr(pi(-z) S)``, equal to ``eta_S``.

The spreading synthesis uses the symmetric shifts ``zeta**(-x omega / 2) pi(z)``:
``S = (1/N) sum_z eta_S(z) zeta**(-x omega / 2) pi(z)``.  That phase is what
makes ``eta = F_Omega sigma`` and ``F_W = eta`` hold simultaneously.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DecompositionError
from .phase_space import (
    as_operator,
    as_phase_function,
    as_signal,
    half_phase,
    modulus,
    symplectic_dft,
)
from .tfa import tf_shift_matrix


def rank_one(f, g) -> np.ndarray:
    """``f (x) g = <., g> f``; kernel ``f(x) conj(g(t))``."""
    f = as_signal(f)
    g = as_signal(g, f.shape[0])
    return np.outer(f, np.conj(g))


def hs_inner(S, T) -> complex:
    """``tr(S T*)``."""
    return complex(np.vdot(as_operator(T), as_operator(S)))


def hs_norm(S) -> float:
    return float(np.linalg.norm(as_operator(S)))


def _symmetric_index(N: int):
    h = modulus(N).half
    x = np.arange(N)[:, None]
    t = np.arange(N)[None, :]
    return (x + h * t) % N, (x - h * t) % N


def kernel_to_symbol(S) -> np.ndarray:
    S = as_operator(S)
    rows, cols = _symmetric_index(S.shape[0])
    return np.fft.fft(S[rows, cols], axis=1)


def symbol_to_operator(sigma) -> np.ndarray:
    sigma = as_phase_function(sigma)
    rows, cols = _symmetric_index(sigma.shape[0])
    K = np.empty_like(sigma)
    K[rows, cols] = np.fft.ifft(sigma, axis=1)
    return K


def spreading(S) -> np.ndarray:
    return symplectic_dft(kernel_to_symbol(S))


def spreading_to_operator(eta) -> np.ndarray:
    """``(1/N) sum_z eta(z) zeta**(-x omega / 2) pi(z)``, evaluated row by row."""
    eta = as_phase_function(eta)
    N = eta.shape[0]
    x = np.arange(N)
    A = np.fft.ifft(eta * half_phase(-x[:, None] * x[None, :], N), axis=1)  # [x, t]
    K = np.empty_like(eta)
    K[x[None, :], (x[None, :] - x[:, None]) % N] = A
    return K


def fourier_wigner(S) -> np.ndarray:
    """``zeta**(-x omega / 2) tr(pi(-z) S)`` from the trace directly."""
    S = as_operator(S)
    N = S.shape[0]
    a = np.arange(N)
    # tr(pi(-z) S) = sum_a zeta**(-omega a) K[a + x, a]
    D = S[(a[None, :] + a[:, None]) % N, a[None, :]]  # [x, a]
    return half_phase(-a[:, None] * a[None, :], N) * np.fft.fft(D, axis=1)


def parity_matrix(N: int) -> np.ndarray:
    P = np.zeros((N, N))
    t = np.arange(N)
    P[t, (-t) % N] = 1.0
    return P


def parity_check(S) -> np.ndarray:
    """``P S P`` with ``(P f)(t) = f(-t)``."""
    S = as_operator(S)
    r = (-np.arange(S.shape[0])) % S.shape[0]
    return S[np.ix_(r, r)]


def shift_kernel(S, z, w) -> np.ndarray:
    """Kernel of ``pi(z) S pi(w)*``: ``zeta**(z2 a - w2 b) K[a - z1, b - w1]``."""
    S = as_operator(S)
    N = S.shape[0]
    m = modulus(N)
    a = np.arange(N)
    moved = np.roll(S, (z[0] % N, w[0] % N), axis=(0, 1))
    return m.zeta(z[1] * a[:, None] - w[1] * a[None, :]) * moved


def alpha_shift(z, S) -> np.ndarray:
    """``pi(z) S pi(z)*``; translates the Weyl symbol by ``z``."""
    return shift_kernel(S, z, z)


def alpha_stack(S) -> np.ndarray:
    """All ``alpha_z(S)`` at once, shape (N, N, N, N) indexed ``[x, omega, a, b]``."""
    S = as_operator(S)
    N = S.shape[0]
    m = modulus(N)
    i = np.arange(N)
    idx = (i[None, :] - i[:, None]) % N  # [x, a] -> a - x
    moved = S[idx[:, :, None], idx[:, None, :]]  # [x, a, b]
    char = m.zeta(i[:, None, None] * (i[None, :, None] - i[None, None, :]))  # [omega, a, b]
    return moved[:, None] * char[None]


def fn_op_convolve(f, S) -> np.ndarray:
    """``f * S = (1/N) sum_z f(z) alpha_z(S)``."""
    f = as_phase_function(f)
    S = as_operator(S, f.shape[0])
    return np.tensordot(f, alpha_stack(S), axes=([0, 1], [0, 1])) / f.shape[0]


def op_op_convolve(S, T) -> np.ndarray:
    """``(S * T)(z) = tr(S alpha_z(P T P))``."""
    S = as_operator(S)
    A = alpha_stack(parity_check(as_operator(T, S.shape[0])))
    return np.einsum("ab,xyba->xy", S, A)


@dataclass(frozen=True)
class SpectralDecomposition:
    """``S = sum_n s_n psi_n (x) phi_n`` with orthonormal ``psi_n`` (left) and ``phi_n`` (right).

    ``left`` and ``right`` hold the vectors as columns.
    """

    singular_values: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def __len__(self):
        return self.singular_values.shape[0]

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.singular_values) @ self.right.conj().T


def svd(S, rtol: float = 1e-14) -> SpectralDecomposition:
    """Singular value decomposition, dropping singular values below ``rtol * ||S||``."""
    S = as_operator(S)
    try:
        U, s, Vh = np.linalg.svd(S)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise DecompositionError(str(exc)) from exc
    keep = s > rtol * max(np.linalg.norm(S), np.finfo(float).tiny)
    return SpectralDecomposition(s[keep], U[:, keep], Vh[keep].conj().T)


__all__ = [
    "SpectralDecomposition",
    "alpha_shift",
    "alpha_stack",
    "fn_op_convolve",
    "fourier_wigner",
    "hs_inner",
    "hs_norm",
    "kernel_to_symbol",
    "op_op_convolve",
    "parity_check",
    "parity_matrix",
    "rank_one",
    "shift_kernel",
    "spreading",
    "spreading_to_operator",
    "svd",
    "symbol_to_operator",
    "tf_shift_matrix",
]
