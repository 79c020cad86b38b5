"""Operator time-frequency shifts and the coordinate maps that tie them to symbols.

``gamma_{w,z}(S) = pi(z) S pi(w)*`` is the operator analogue of ``pi(z)``; on the
diagonal it is the quantum translation ``alpha_z``.  Its action on Weyl symbols is
a time-frequency shift of the symbol at the point ``U(w, z)``:

    sigma_{gamma_{w,z} S} = zeta**(U2 U4) * Pi(U(w, z)) sigma_S

with ``Pi`` from :func:`qtfa.phase_space.phase_space_shift`.  This is the
form that holds exactly on Z_N (checked exhaustively); the phase is
``zeta**((w2 + z2)(z1 - w1) / 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .phase_space import as_operator, modulus, phase_space_shift
from .operators import kernel_to_symbol, shift_kernel
from .tfa import stft, wigner


def beta_shift(w, S) -> np.ndarray:
    """Operator modulation ``zeta**(-w1 w2 / 4) pi(w/2) S pi(w/2)``.

    Equal to ``pi(w/2) S pi(-w/2)*``.  Multiplies the Weyl symbol by
    ``zeta**Omega(w, z)``.
    """
    S = as_operator(S)
    N = S.shape[0]
    h = modulus(N).half
    hw = (h * w[0] % N, h * w[1] % N)
    mhw = (-hw[0] % N, -hw[1] % N)
    # pi(-hw)* = zeta**(-x omega) pi(hw) cancels the leading phase exactly
    return shift_kernel(S, hw, mhw)


def gamma_shift(w, z, S) -> np.ndarray:
    """``pi(z) S pi(w)*``."""
    return shift_kernel(S, z, w)


def cocycle_phase(w, z, wp, zp, N: int) -> complex:
    """``c`` in ``gamma_{w',z'} gamma_{w,z} = c * gamma_{w+w', z+z'}``.

    ``c = zeta**(-(z2 z1' - w2 w1'))``.
    """
    return complex(modulus(N).zeta(-(z[1] * zp[0] - w[1] * wp[0])))


def gamma_factorisation_phase(w, z, N: int) -> complex:
    """``c`` in ``gamma_{w,z} = c * beta_{z-w} alpha_{(w+z)/2}``; equals ``zeta**(U2 U4)``."""
    u = map_U((w[0], w[1], z[0], z[1]), N)
    return complex(modulus(N).zeta(u[1] * u[3]))


# ---------------------------------------------------------------------------
# coordinate maps on Z_N^4, points written (w1, w2, z1, z2)


def map_U(p, N: int) -> tuple[int, int, int, int]:
    """``U(w, z) = ((w1 + z1)/2, (w2 + z2)/2, w2 - z2, z1 - w1)``."""
    h = modulus(N).half
    w1, w2, z1, z2 = p
    return (h * (w1 + z1) % N, h * (w2 + z2) % N, (w2 - z2) % N, (z1 - w1) % N)


def map_U_inv(p, N: int) -> tuple[int, int, int, int]:
    """``U^-1(w, z) = (w - Jz/2, w + Jz/2)``."""
    h = modulus(N).half
    w1, w2, z1, z2 = p
    jz = map_J((z1, z2), N)
    return ((w1 - h * jz[0]) % N, (w2 - h * jz[1]) % N, (w1 + h * jz[0]) % N, (w2 + h * jz[1]) % N)


def map_J(z, N: int) -> tuple[int, int]:
    """``J(x, omega) = (omega, -x)``."""
    return (z[1] % N, -z[0] % N)


def map_c2(p, N: int) -> tuple[int, int, int, int]:
    """``c2(w, z) = (z1, w1, z2, w2)``."""
    w1, w2, z1, z2 = p
    return (z1 % N, w1 % N, z2 % N, w2 % N)


@dataclass(frozen=True)
class CoordinateMap:
    name: str
    matrix: np.ndarray
    N: int

    def __call__(self, p):
        return tuple(int(v) for v in (self.matrix @ np.asarray(p)) % self.N)

    def compose(self, other: "CoordinateMap") -> "CoordinateMap":
        return CoordinateMap(f"{self.name}*{other.name}", (self.matrix @ other.matrix) % self.N, self.N)


def coordinate_map(name: str, N: int) -> CoordinateMap:
    h = modulus(N).half
    mats = {
        "U": [[h, 0, h, 0], [0, h, 0, h], [0, 1, 0, -1], [-1, 0, 1, 0]],
        "U_inv": [[1, 0, 0, -h], [0, 1, h, 0], [1, 0, 0, h], [0, 1, -h, 0]],
        "J": [[0, 1], [-1, 0]],
        "c2": [[0, 0, 1, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0]],
    }
    if name not in mats:
        raise KeyError(name)
    return CoordinateMap(name, np.asarray(mats[name], dtype=np.int64) % N, N)


def standard_form() -> np.ndarray:
    """Symplectic form on Z_N^4 with positions (u1, u2) and frequencies (u3, u4)."""
    Z = np.zeros((2, 2), dtype=np.int64)
    I = np.eye(2, dtype=np.int64)
    return np.block([[Z, I], [-I, Z]])


def double_form() -> np.ndarray:
    """``Omega(z, z') - Omega(w, w')`` as a matrix in (w1, w2, z1, z2)."""
    J = np.array([[0, 1], [-1, 0]], dtype=np.int64)
    Z = np.zeros((2, 2), dtype=np.int64)
    return np.block([[J, Z], [Z, -J]])


def pulls_back(M, source_form, target_form, N: int) -> bool:
    """``M^T target M == source mod N``."""
    M = np.asarray(M, dtype=np.int64)
    return bool(np.all((M.T @ target_form @ M - source_form) % N == 0))


# ---------------------------------------------------------------------------
# covariance predictions


def gamma_symbol_covariance(w, z, S):
    """Predicted phase and point with ``sigma_{gamma_{w,z} S} = phase * Pi(U) sigma_S``."""
    N = as_operator(S).shape[0]
    u = map_U((w[0], w[1], z[0], z[1]), N)
    return complex(modulus(N).zeta(u[1] * u[3])), u


def predicted_gamma_symbol(w, z, S) -> np.ndarray:
    phase, u = gamma_symbol_covariance(w, z, S)
    return phase * phase_space_shift(u, kernel_to_symbol(S))


def kernel_covariance(w, z, S) -> np.ndarray:
    """Kernel of ``pi(w) S pi(z)*`` predicted from ``K_S`` viewed as a function on Z_N^2.

    ``K(a, b) -> zeta**(w2 a - z2 b) K(a - w1, b - z1)``: a translation by
    ``(w1, z1)`` and a character ``(w2, -z2)``, i.e. the ``c2``-reordered
    point with the sign of the last frequency flipped.
    """
    K = as_operator(S)
    N = K.shape[0]
    m = modulus(N)
    a = np.arange(N)
    moved = np.roll(K, (w[0] % N, z[0] % N), axis=(0, 1))
    return m.zeta(w[1] * a[:, None] - z[1] * a[None, :]) * moved


def magic_identity_rhs(f, g, psi, phi) -> np.ndarray:
    """``zeta**(w2 z2) V_psi f(w + Jz/2) conj(V_phi g(w - Jz/2))`` on Z_N^4.

    Equals the phase-space STFT ``V_{W(psi, phi)} W(f, g)(w, z)`` of
    :func:`qtfa.norms.phase_space_stft`.
    """
    A = stft(f, psi)
    B = stft(g, phi)
    N = A.shape[0]
    m = modulus(N)
    h = m.half
    i = np.arange(N)
    w1, w2, z1, z2 = np.ix_(i, i, i, i)
    # J z / 2 = (h z2, -h z1)
    p1 = (w1 + h * z2) % N
    p2 = (w2 - h * z1) % N
    q1 = (w1 - h * z2) % N
    q2 = (w2 + h * z1) % N
    return m.zeta(w2 * z2) * A[p1, p2] * np.conj(B[q1, q2])


def magic_identity_lhs(f, g, psi, phi) -> np.ndarray:
    from .norms import phase_space_stft

    return phase_space_stft(wigner(f, g), wigner(psi, phi))


def gamma_table(S) -> np.ndarray:
    """All ``gamma_{w,z} S`` at once, indexed ``[w1, w2, z1, z2, a, b]``."""
    S = as_operator(S)
    N = S.shape[0]
    m = modulus(N)
    i = np.arange(N)
    idx = (i[None, :] - i[:, None]) % N  # [shift, a] -> a - shift
    moved = S[idx[:, None, :, None], idx[None, :, None, :]]  # [z1, w1, a, b]
    za = m.zeta(i[:, None] * i[None, :])  # [z2, a]
    wb = m.zeta(-i[:, None] * i[None, :])  # [w2, b]
    out = moved.transpose(1, 0, 2, 3)[:, None, :, None] * za[None, None, None, :, :, None] * wb[None, :, None, None, None, :]
    return out


__all__ = [
    "CoordinateMap",
    "beta_shift",
    "cocycle_phase",
    "coordinate_map",
    "double_form",
    "gamma_factorisation_phase",
    "gamma_shift",
    "gamma_table",
    "gamma_symbol_covariance",
    "kernel_covariance",
    "magic_identity_lhs",
    "magic_identity_rhs",
    "map_J",
    "map_U",
    "map_U_inv",
    "map_c2",
    "predicted_gamma_symbol",
    "pulls_back",
    "standard_form",
]
