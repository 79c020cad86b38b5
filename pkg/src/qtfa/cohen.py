"""Polarised Cohen's class on double phase space.

``Q_S T(w, z) = <T, pi(z) S pi(w)*>_HS`` is stored as an N**4 table indexed
``[w1, w2, z1, z2]``.  With the measure (1/N**2) * counting on Z_N^4:

* ``<Q_R S, Q_T W> = <S, W> conj(<R, T>)``  (Moyal),
* ``Q_S* Q_S = ||S||**2 Id``,
* ``Q_S T # Q_R W = <W, S> Q_R T``  (twisted convolution),
* ``F_Phi(Q_S T conj(Q_R W)) = Q_W T conj(Q_R S)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InvalidWindowError
from .operators import alpha_stack, fourier_wigner, hs_inner, hs_norm, shift_kernel
from .tfa import tf_shift_matrix
from .phase_space import (
    as_double_phase_function,
    as_operator,
    as_signal,
    double_symplectic_dft,
    half_phase,
    modulus,
    reflect,
)


def _window(S, N=None) -> np.ndarray:
    S = as_operator(S, N)
    if not np.any(S):
        raise InvalidWindowError("window operator is zero")
    return S


def cohen(S, T) -> np.ndarray:
    S = _window(S)
    T = as_operator(T, S.shape[0])
    return _kernels.cohen_table(S, T)


def cohen_point(S, T, w, z) -> complex:
    """Single value ``Q_S T(w, z)`` without building the table."""
    S = _window(S)
    return hs_inner(T, shift_kernel(S, z, w))


def cohen_adjoint(S, F) -> np.ndarray:
    """``Q_S* F = (1/N**2) sum_{w,z} F(w, z) pi(z) S pi(w)*``."""
    S = _window(S)
    F = as_double_phase_function(F, S.shape[0])
    return _kernels.cohen_synthesis(S, F)


def reproduce(S, T) -> np.ndarray:
    """``Q_S* Q_S T / ||S||**2``; returns ``T`` for every nonzero window."""
    S = _window(S)
    return cohen_adjoint(S, cohen(S, T)) / hs_norm(S) ** 2


def projection(S, F) -> np.ndarray:
    """Orthogonal projection of ``F`` onto the range of ``Q_S``."""
    S = _window(S)
    return cohen(S, cohen_adjoint(S, F)) / hs_norm(S) ** 2


def reproducing_kernel(S, p, q) -> complex:
    """``k_p(q) = <gamma_q S, gamma_p S>`` with points ``(w1, w2, z1, z2)``."""
    S = _window(S)
    return hs_inner(shift_kernel(S, q[2:], q[:2]), shift_kernel(S, p[2:], p[:2]))


def reproducing_kernel_table(S, p) -> np.ndarray:
    """``q -> k_p(q)`` on all of Z_N^4."""
    S = _window(S)
    return np.conj(cohen(S, shift_kernel(S, p[2:], p[:2])))


def twisted_convolution(F, G) -> np.ndarray:
    """``(F # G)(w, z) = (1/N**2) sum F(w', z') G(w - w', z - z') zeta**(-(z1'(z2 - z2') - w1'(w2 - w2')))``."""
    F = as_double_phase_function(F)
    G = as_double_phase_function(G, F.shape[0])
    return _kernels.twisted_convolution(F, G)


def localisation_operator(F, S, T) -> np.ndarray:
    """``A_F^S T = Q_S*(F Q_S T)``."""
    S = _window(S)
    F = as_double_phase_function(F, S.shape[0])
    return cohen_adjoint(S, F * cohen(S, T))


def toeplitz(F, S, G) -> np.ndarray:
    """``T_F G = Q_S Q_S*(F G)`` on double phase space."""
    S = _window(S)
    return cohen(S, cohen_adjoint(S, as_double_phase_function(F) * G))


def operator_stft(S, T, z) -> np.ndarray:
    """``S* pi(z)* T``."""
    S = as_operator(S)
    T = as_operator(T, S.shape[0])
    P = tf_shift_matrix(z, S.shape[0])
    return S.conj().T @ P.conj().T @ T


def operator_stft_link(S, T, z):
    """Return ``(S* pi(z)* T, w -> zeta**(w1 w2 / 2) F_W(S* pi(z)* T)(-w))``.

    The slice equals ``Q_S T(., z)``.
    """
    V = operator_stft(S, T, z)
    N = V.shape[0]
    x = np.arange(N)
    fw = reflect(fourier_wigner(V))
    return V, half_phase(x[:, None] * x[None, :], N) * fw


@dataclass(frozen=True)
class IdentityReport:
    identity: str
    lhs: np.ndarray
    rhs: np.ndarray

    @property
    def max_error(self) -> float:
        return float(np.max(np.abs(self.lhs - self.rhs), initial=0.0))


def fphi_product_identity(S, T, R, W) -> IdentityReport:
    """``F_Phi(Q_S T conj(Q_R W)) = Q_W T conj(Q_R S)``."""
    lhs = double_symplectic_dft(cohen(S, T) * np.conj(cohen(R, W)))
    rhs = cohen(W, T) * np.conj(cohen(R, S))
    return IdentityReport("fphi-product", lhs, rhs)


def unitary_kernel_dft(K) -> np.ndarray:
    """``F K F*`` with the unitary DFT."""
    K = as_operator(K)
    return np.fft.ifft(np.fft.fft(K, axis=0, norm="ortho"), axis=1, norm="ortho")


def fphi_kernel_identity(S, T) -> IdentityReport:
    """``F_Phi(Q_S T)(w, z) = N K_T(z1, w1) conj(Khat_S(z2, w2)) zeta**(-(z1 z2 - w1 w2))``."""
    S = _window(S)
    T = as_operator(T, S.shape[0])
    N = S.shape[0]
    m = modulus(N)
    lhs = double_symplectic_dft(cohen(S, T))
    Kh = np.conj(unitary_kernel_dft(S))
    i = np.arange(N)
    w1, w2, z1, z2 = np.ix_(i, i, i, i)
    rhs = N * T[z1, w1] * Kh[z2, w2] * m.zeta(-(z1 * z2 - w1 * w2))
    return IdentityReport("fphi-kernel", lhs, rhs)


def cohen_class_diagonal(S, f) -> np.ndarray:
    """``z -> Q_S(f (x) f)(z, z)``; the spectrogram ``|V_g f|**2`` when ``S = g (x) g``."""
    S = _window(S)
    f = as_signal(f, S.shape[0])
    A = alpha_stack(S)
    return np.einsum("a,b,xyab->xy", f, np.conj(f), np.conj(A))


def gamma_stack(S, points=None) -> np.ndarray:
    """Rows ``vec(gamma_{w,z} S)`` for the given ``(w1, w2, z1, z2)`` points (default all)."""
    S = as_operator(S)
    N = S.shape[0]
    if points is None:
        i = np.arange(N)
        points = np.stack(np.meshgrid(i, i, i, i, indexing="ij"), -1).reshape(-1, 4)
    return np.stack([shift_kernel(S, p[2:], p[:2]).ravel() for p in points])


def span_rank(S, points=None, rtol: float = 1e-10) -> int:
    G = gamma_stack(S, points)
    if not np.any(G):
        return 0
    s = np.linalg.svd(G, compute_uv=False)
    return int(np.sum(s > rtol * s[0]))


@dataclass(frozen=True)
class CohenTransform:
    """A window together with the table ``Q_S T``."""

    window: np.ndarray
    table: np.ndarray

    @classmethod
    def of(cls, S, T) -> "CohenTransform":
        return cls(_window(S), cohen(S, T))

    def l2_norm(self) -> float:
        N = self.window.shape[0]
        return float(np.linalg.norm(self.table) / N)

    def invert(self) -> np.ndarray:
        return cohen_adjoint(self.window, self.table) / hs_norm(self.window) ** 2


__all__ = [
    "CohenTransform",
    "IdentityReport",
    "cohen",
    "cohen_adjoint",
    "cohen_class_diagonal",
    "cohen_point",
    "fphi_kernel_identity",
    "fphi_product_identity",
    "gamma_stack",
    "localisation_operator",
    "operator_stft",
    "operator_stft_link",
    "projection",
    "reproduce",
    "reproducing_kernel",
    "reproducing_kernel_table",
    "span_rank",
    "toeplitz",
    "twisted_convolution",
    "unitary_kernel_dft",
]
