"""Gabor frames for signals and for the Hilbert-Schmidt operators.

Lattices are subgroups ``aZ_N x bZ_N`` with ``a, b | N``.  Every lattice sum
carries the cell measure of the lattice (``ab/N`` on Z_N^2), so the full lattice
reproduces the continuous resolution of the identity:

    S_g = (ab/N) sum_lambda pi(lambda) g (x) pi(lambda) g,        = ||g||**2 Id on the full lattice
    E_{S,T} X = nu sum_{(lambda, mu)} <X, gamma_{lambda,mu} S> gamma_{lambda,mu} T

with ``nu`` the product of the two cell measures.  Frame operators on operator
space are materialised as dense ``N**2 x N**2`` matrices acting on row-major
``vec(X)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cohen import cohen, gamma_stack
from .errors import DimensionError, NotAFrameError, ParameterError
from .operators import kernel_to_symbol, rank_one, shift_kernel, symbol_to_operator
from .phase_space import as_operator, as_phase_function, as_signal, modulus, phase_space_shift
from .shifts import map_U, map_U_inv
from .tfa import stft, tf_shift

#: frame operators with smallest eigenvalue below this fraction of the largest are singular
FRAME_RTOL = 1e-10


@dataclass(frozen=True)
class Lattice:
    """Subgroup ``aZ_N x bZ_N`` of phase space."""

    N: int
    a: int
    b: int

    def __post_init__(self):
        modulus(self.N)
        for step in (self.a, self.b):
            if step < 1 or self.N % step:
                raise ParameterError(f"lattice step {step} does not divide N={self.N}")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.N // self.a, self.N // self.b)

    @property
    def cell(self) -> float:
        """Measure of one lattice cell, ``ab/N``."""
        return self.a * self.b / self.N

    @property
    def points(self) -> np.ndarray:
        j, k = np.meshgrid(np.arange(0, self.N, self.a), np.arange(0, self.N, self.b), indexing="ij")
        return np.stack([j.ravel(), k.ravel()], axis=1)

    def __len__(self):
        return self.shape[0] * self.shape[1]


def lattice_pair_points(L_w: Lattice, L_z: Lattice) -> np.ndarray:
    """Points ``(lambda, mu)`` as rows ``(w1, w2, z1, z2)`` in the order of :func:`operator_analysis`."""
    pw = L_w.points
    pz = L_z.points
    return np.concatenate([np.repeat(pw, len(pz), axis=0), np.tile(pz, (len(pw), 1))], axis=1)


# ---------------------------------------------------------------------------
# signals


def gabor_analysis(g, L: Lattice, f) -> np.ndarray:
    """``<f, pi(lambda) g>`` on the lattice, shape ``L.shape``."""
    return stft(f, as_signal(g, L.N))[:: L.a, :: L.b]


def gabor_synthesis(g, L: Lattice, c) -> np.ndarray:
    g = as_signal(g, L.N)
    c = np.asarray(c, dtype=complex)
    if c.shape != L.shape:
        raise DimensionError(f"expected coefficients of shape {L.shape}, got {c.shape}")
    out = np.zeros(L.N, dtype=complex)
    for (x, w), v in zip(L.points, c.ravel()):
        out += v * tf_shift((x, w), g)
    return L.cell * out


def gabor_frame_operator(g, L: Lattice) -> np.ndarray:
    g = as_signal(g, L.N)
    G = np.stack([tf_shift(p, g) for p in L.points])  # rows pi(lambda) g
    return L.cell * G.T @ G.conj()


def _bounds(E: np.ndarray) -> tuple[float, float]:
    ev = np.linalg.eigvalsh((E + E.conj().T) / 2)
    return float(ev[0]), float(ev[-1])


def gabor_frame_bounds(g, L: Lattice) -> tuple[float, float]:
    return _bounds(gabor_frame_operator(g, L))


def _check_frame(E: np.ndarray) -> tuple[float, float]:
    A, B = _bounds(E)
    if B <= 0 or A <= FRAME_RTOL * B:
        raise NotAFrameError(f"frame operator is singular (smallest eigenvalue {A:.3e}, largest {B:.3e})", A)
    return A, B


def gabor_dual_window(g, L: Lattice) -> np.ndarray:
    E = gabor_frame_operator(g, L)
    _check_frame(E)
    return np.linalg.solve(E, as_signal(g, L.N))


# ---------------------------------------------------------------------------
# operators


def operator_analysis(S, L_w: Lattice, L_z: Lattice, T) -> np.ndarray:
    """``C_S T = Q_S T`` sampled on ``Lambda x M``, shape ``L_w.shape + L_z.shape``."""
    _same_N(L_w, L_z)
    Q = cohen(as_operator(S, L_w.N), T)
    return Q[:: L_w.a, :: L_w.b, :: L_z.a, :: L_z.b]


def operator_synthesis(S, L_w: Lattice, L_z: Lattice, c) -> np.ndarray:
    """``D_S c = nu sum c(lambda, mu) gamma_{lambda,mu} S``."""
    from .cohen import cohen_adjoint

    _same_N(L_w, L_z)
    N = L_w.N
    c = np.asarray(c, dtype=complex)
    if c.shape != L_w.shape + L_z.shape:
        raise DimensionError(f"expected coefficients of shape {L_w.shape + L_z.shape}, got {c.shape}")
    F = np.zeros((N,) * 4, dtype=complex)
    F[:: L_w.a, :: L_w.b, :: L_z.a, :: L_z.b] = c * (L_w.cell * L_z.cell * N**2)
    return cohen_adjoint(S, F)


def _same_N(L_w: Lattice, L_z: Lattice):
    if L_w.N != L_z.N:
        raise ParameterError("lattices live on different groups")


@dataclass(frozen=True)
class OperatorGaborSystem:
    """``{gamma_{w,z} S}`` over an explicit point set with a common cell measure."""

    window: np.ndarray
    points: np.ndarray  # rows (w1, w2, z1, z2)
    measure: float
    _stack: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "window", as_operator(self.window))
        object.__setattr__(self, "points", np.asarray(self.points, dtype=np.int64).reshape(-1, 4))
        object.__setattr__(self, "_stack", gamma_stack(self.window, self.points))

    @classmethod
    def on_lattices(cls, S, L_w: Lattice, L_z: Lattice) -> "OperatorGaborSystem":
        _same_N(L_w, L_z)
        return cls(S, lattice_pair_points(L_w, L_z), L_w.cell * L_z.cell)

    @property
    def N(self) -> int:
        return self.window.shape[0]

    def frame_operator(self, other: "OperatorGaborSystem | None" = None) -> np.ndarray:
        """Matrix of ``X -> nu sum <X, gamma_i S> gamma_i T`` on ``vec(X)``; ``T`` from ``other``."""
        Gt = self._stack if other is None else other._stack
        return self.measure * Gt.T @ self._stack.conj()

    def bounds(self) -> tuple[float, float]:
        return _bounds(self.frame_operator())

    def is_frame(self) -> bool:
        A, B = self.bounds()
        return B > 0 and A > FRAME_RTOL * B

    def rank(self, rtol: float = 1e-10) -> int:
        if not np.any(self._stack):
            return 0
        s = np.linalg.svd(self._stack, compute_uv=False)
        return int(np.sum(s > rtol * s[0]))

    def analysis(self, T) -> np.ndarray:
        return self._stack.conj() @ as_operator(T, self.N).ravel()

    def synthesis(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=complex).ravel()
        if c.shape[0] != self.points.shape[0]:
            raise DimensionError(f"expected {self.points.shape[0]} coefficients, got {c.shape[0]}")
        return (self.measure * c @ self._stack).reshape(self.N, self.N)

    def dual_window(self) -> np.ndarray:
        E = self.frame_operator()
        _check_frame(E)
        return np.linalg.solve(E, self.window.ravel()).reshape(self.N, self.N)

    def dual(self) -> "OperatorGaborSystem":
        return OperatorGaborSystem(self.dual_window(), self.points, self.measure)

    def reconstruct(self, T, dual: "OperatorGaborSystem | None" = None) -> np.ndarray:
        """``nu sum Q_S T(lambda, mu) gamma_{lambda,mu}(S~)``."""
        dual = self.dual() if dual is None else dual
        return dual.synthesis(self.analysis(T))


def frame_operator(S, T, L_w: Lattice, L_z: Lattice) -> np.ndarray:
    """``E_{S,T} = D_T C_S`` as an ``N**2 x N**2`` matrix."""
    sys_S = OperatorGaborSystem.on_lattices(S, L_w, L_z)
    sys_T = OperatorGaborSystem.on_lattices(T, L_w, L_z)
    return sys_S.frame_operator(sys_T)


def frame_bounds(S, L_w: Lattice, L_z: Lattice) -> tuple[float, float]:
    return OperatorGaborSystem.on_lattices(S, L_w, L_z).bounds()


def dual_window(S, L_w: Lattice, L_z: Lattice) -> np.ndarray:
    return OperatorGaborSystem.on_lattices(S, L_w, L_z).dual_window()


def reconstruct(T, S, L_w: Lattice, L_z: Lattice) -> np.ndarray:
    return OperatorGaborSystem.on_lattices(S, L_w, L_z).reconstruct(T)


def span_rank_test(S, L_w: Lattice, L_z: Lattice) -> dict:
    sys_ = OperatorGaborSystem.on_lattices(S, L_w, L_z)
    r = sys_.rank()
    return {"rank": r, "dimension": sys_.N**2, "frame": r == sys_.N**2}


def superoperator(w, z, N: int) -> np.ndarray:
    """Matrix of ``X -> gamma_{w,z} X`` on ``vec(X)``."""
    I = np.eye(N * N, dtype=complex).reshape(N * N, N, N)
    return np.stack([shift_kernel(E, z, w).ravel() for E in I], axis=1)


# ---------------------------------------------------------------------------
# phase-space functions and the Weyl lift


def phase_gabor_frame_operator(G, points, measure: float) -> np.ndarray:
    """Frame operator of ``{Pi(u) G}`` on Z_N^2 with the (1/N) inner product."""
    G = as_phase_function(G)
    N = G.shape[0]
    V = np.stack([phase_space_shift(u, G).ravel() for u in np.asarray(points).reshape(-1, 4)])
    return measure / N * V.T @ V.conj()


def weyl_lifted_frame(G, points, measure: float) -> OperatorGaborSystem:
    """Operator system ``{gamma_{w,z} L_G : (w, z) in U^-1(points)}``.

    The Weyl quantisation carries ``Pi(u) G`` to ``gamma_{U^-1 u} L_G`` up to a
    unimodular phase, so both systems share their frame bounds.
    """
    G = as_phase_function(G)
    N = G.shape[0]
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 4)
    E = phase_gabor_frame_operator(G, pts, measure)
    _check_frame(E)
    lifted = np.array([map_U_inv(tuple(p), N) for p in pts])
    return OperatorGaborSystem(symbol_to_operator(G), lifted, measure)


def tensor_symbol_system(f, g, L_w: Lattice, L_z: Lattice):
    """Points ``U(Lambda x M)`` and the window ``W(f, g)`` for the converse statement."""
    N = L_w.N
    pts = np.array([map_U(tuple(p), N) for p in lattice_pair_points(L_w, L_z)])
    return kernel_to_symbol(rank_one(f, g)), pts, L_w.cell * L_z.cell


__all__ = [
    "FRAME_RTOL",
    "Lattice",
    "OperatorGaborSystem",
    "dual_window",
    "frame_bounds",
    "frame_operator",
    "gabor_analysis",
    "gabor_dual_window",
    "gabor_frame_bounds",
    "gabor_frame_operator",
    "gabor_synthesis",
    "lattice_pair_points",
    "operator_analysis",
    "operator_synthesis",
    "phase_gabor_frame_operator",
    "reconstruct",
    "span_rank_test",
    "superoperator",
    "tensor_symbol_system",
    "weyl_lifted_frame",
]
