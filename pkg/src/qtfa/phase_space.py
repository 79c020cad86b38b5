"""Arithmetic on the finite phase space Z_N x Z_N and its Fourier transforms.

Everything is built on an odd modulus N, so that 2 is invertible mod N and the
"half shifts" w/2 are honest group elements.  Phases are looked up in a table
of N-th roots of unity indexed by an exponent reduced mod N, which keeps every
identity periodic in all of its integer arguments.

Array conventions used throughout the package:

* signal            -- complex vector of length N
* operator          -- complex N x N kernel ``K`` acting as ``(Sf)(x) = sum_t K[x, t] f(t)``
* phase function    -- complex N x N array indexed ``[x, omega]``
* double phase fn   -- complex N x N x N x N array indexed ``[w1, w2, z1, z2]``

Phase space carries the measure (1/N) * counting, double phase space
(1/N**2) * counting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, ParameterError


@dataclass(frozen=True)
class Modulus:
    N: int
    half: int = field(init=False)
    powers: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        N = self.N
        if not isinstance(N, (int, np.integer)) or N < 3 or N % 2 == 0:
            raise ParameterError(f"modulus must be an odd integer >= 3, got {N!r}")
        object.__setattr__(self, "half", (N + 1) // 2)
        powers = np.exp(2j * np.pi * np.arange(N) / N)
        powers.setflags(write=False)
        object.__setattr__(self, "powers", powers)

    def zeta(self, k):
        """zeta**k with zeta = exp(2 pi i / N); ``k`` may be an integer array."""
        return self.powers[np.mod(k, self.N)]


@lru_cache(maxsize=None)
def modulus(N: int) -> Modulus:
    return Modulus(int(N))


class PhasePoint(NamedTuple):
    x: int
    omega: int

    def canonical(self, N: int) -> "PhasePoint":
        return PhasePoint(self.x % N, self.omega % N)


class DoublePhasePoint(NamedTuple):
    w: PhasePoint
    z: PhasePoint

    def canonical(self, N: int) -> "DoublePhasePoint":
        return DoublePhasePoint(PhasePoint(*self.w).canonical(N), PhasePoint(*self.z).canonical(N))

    def flat(self) -> tuple[int, int, int, int]:
        return (self.w[0], self.w[1], self.z[0], self.z[1])


def point(x: int, omega: int, N: int) -> PhasePoint:
    return PhasePoint(x % N, omega % N)


def as_signal(f, N: int | None = None) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    if f.ndim != 1 or (N is not None and f.shape[0] != N):
        raise DimensionError(f"expected a signal of length {N}, got shape {f.shape}")
    modulus(f.shape[0])
    return f


def as_operator(S, N: int | None = None) -> np.ndarray:
    S = np.asarray(S, dtype=complex)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or (N is not None and S.shape[0] != N):
        raise DimensionError(f"expected an {N or 'N'}x{N or 'N'} operator, got shape {S.shape}")
    modulus(S.shape[0])
    return S


def as_phase_function(F, N: int | None = None) -> np.ndarray:
    F = np.asarray(F, dtype=complex)
    if F.ndim != 2 or F.shape[0] != F.shape[1] or (N is not None and F.shape[0] != N):
        raise DimensionError(f"expected an N x N phase-space function, got shape {F.shape}")
    modulus(F.shape[0])
    return F


def as_double_phase_function(F, N: int | None = None) -> np.ndarray:
    F = np.asarray(F, dtype=complex)
    if F.ndim != 4 or len(set(F.shape)) != 1 or (N is not None and F.shape[0] != N):
        raise DimensionError(f"expected an N^4 double phase-space function, got shape {F.shape}")
    modulus(F.shape[0])
    return F


def half_phase(a, N: int):
    """Realise exp(i pi a / N)-type half phases as zeta**(a/2 mod N).

    The square of the result is zeta**a exactly in exponent arithmetic.
    """
    m = modulus(N)
    return m.zeta(m.half * np.asarray(a))[()]


def symplectic_form(z, zp, N: int) -> int:
    """Omega(z, z') = x' omega - x omega' (mod N)."""
    return (zp[0] * z[1] - z[0] * zp[1]) % N


def dft(f) -> np.ndarray:
    """Unitary DFT, ``F f(omega) = N**-0.5 sum_t f(t) zeta**(-t omega)``."""
    return np.fft.fft(as_signal(f), norm="ortho")


def idft(f) -> np.ndarray:
    return np.fft.ifft(as_signal(f), norm="ortho")


def _symplectic_axes(F: np.ndarray, ax0: int, ax1: int, inverse: bool) -> np.ndarray:
    # kernel zeta**(-(x' omega - x omega')) / N, or its conjugate when inverse;
    # the 1/N comes from the single ifft
    if not inverse:
        A = np.fft.ifft(np.fft.fft(F, axis=ax0), axis=ax1)
    else:
        A = np.fft.fft(np.fft.ifft(F, axis=ax0), axis=ax1)
    return np.swapaxes(A, ax0, ax1)


def symplectic_dft(F) -> np.ndarray:
    """``F_Omega F(z) = (1/N) sum_z' F(z') zeta**(-Omega(z, z'))``; an involution."""
    F = as_phase_function(F)
    return _symplectic_axes(F, 0, 1, inverse=False)


def inverse_symplectic_dft(F) -> np.ndarray:
    """Transform with the conjugate kernel, equal to ``F_Omega F(-z)``."""
    F = as_phase_function(F)
    return _symplectic_axes(F, 0, 1, inverse=True)


def double_symplectic_dft(F) -> np.ndarray:
    """``F_Phi F(w, z) = N**-2 sum F(w', z') zeta**(-(Omega(z, z') - Omega(w, w')))``.

    Factorises as the conjugate-kernel symplectic transform in ``w`` and the
    ordinary one in ``z``; it is its own inverse.
    """
    F = as_double_phase_function(F)
    G = _symplectic_axes(F, 2, 3, inverse=False)
    return _symplectic_axes(G, 0, 1, inverse=True)


def reflect(F: np.ndarray) -> np.ndarray:
    """F(-u) on every axis."""
    idx = np.ix_(*[(-np.arange(n)) % n for n in F.shape])
    return F[idx]


def phase_space_shift(u, F) -> np.ndarray:
    """Time-frequency shift of a phase-space function by ``u = (u1, u2, u3, u4)``.

    Translates by (u1, u2), then multiplies by the character
    ``zeta**(-(u3 x + u4 omega))``.  The sign of the character is the one for
    which the symbol of an operator time-frequency shift is a shifted symbol
    (see :func:`qtfa.shifts.gamma_symbol_covariance`).
    """
    F = as_phase_function(F)
    N = F.shape[0]
    m = modulus(N)
    t = np.roll(F, (u[0] % N, u[1] % N), axis=(0, 1))
    x = np.arange(N)
    return t * m.zeta(-(u[2] * x[:, None] + u[3] * x[None, :]))


def phase_inner(F, G) -> complex:
    """``(1/N) sum F conj(G)`` on Z_N^2, ``(1/N**2) sum`` on Z_N^4."""
    F = np.asarray(F)
    G = np.asarray(G)
    if F.shape != G.shape:
        raise DimensionError(f"shape mismatch {F.shape} vs {G.shape}")
    scale = F.shape[0] ** (F.ndim // 2)
    return complex(np.vdot(G, F) / scale)


def phase_norm(F) -> float:
    return float(np.sqrt(phase_inner(F, F).real))
