"""Mixed norms, weights and modulation norms of operators and symbols.

Measures.  Every phase-space pair carries total mass ``1/N``; when a pair is
split into coordinates, the position coordinate uses counting measure and the
frequency coordinate ``1/N``.  A scalar mixed norm of ``F`` on Z_N^4 is

    ||F||_{p,q,m} = ( (1/N) sum_z ( (1/N) sum_w |F(w, z) m(w, z)|**p )**(q/p) )**(1/q)

so that ``||Q_S T||_{2,2} = ||S||_HS ||T||_HS`` and ``||T||_{M^{2,2}} = ||T||_HS``
for the default window ``S0 = phi0 (x) phi0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cohen import cohen
from .errors import InvalidWindowError, ParameterError
from .frames import Lattice, gabor_dual_window, operator_analysis
from .operators import hs_norm, kernel_to_symbol, rank_one
from .phase_space import as_operator, as_phase_function, as_signal, modulus
from .tfa import gaussian_window, stft, tf_shift

INF = math.inf


def _check_exponent(p) -> float:
    p = float(p)
    if not (p >= 1.0):
        raise ParameterError(f"exponent must lie in [1, inf], got {p}")
    return p


@dataclass(frozen=True)
class MixedNormParams:
    """Scalar exponents ``p`` (inner, over ``w``) and ``q`` (outer, over ``z``).

    ``four`` optionally holds ``(p1, p2, q1, q2)`` for a separate exponent on
    each coordinate ``w1, w2, z1, z2``.
    """

    p: float = 2.0
    q: float = 2.0
    four: tuple[float, float, float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "p", _check_exponent(self.p))
        object.__setattr__(self, "q", _check_exponent(self.q))
        if self.four is not None:
            if len(self.four) != 4:
                raise ParameterError("four-exponent variant needs exactly four exponents")
            object.__setattr__(self, "four", tuple(_check_exponent(e) for e in self.four))

    def swapped(self) -> "MixedNormParams":
        return MixedNormParams(self.q, self.p)


def parse_exponent(text: str) -> float:
    t = str(text).strip().lower()
    return INF if t in ("inf", "infinity", "oo") else _check_exponent(t)


def _lp(a: np.ndarray, p: float, axis, measure: float) -> np.ndarray:
    if p == INF:
        return np.max(a, axis=axis)
    return (measure * np.sum(a**p, axis=axis)) ** (1.0 / p)


def _centered(N: int) -> np.ndarray:
    i = np.arange(N)
    return np.where(i > N // 2, i - N, i).astype(float)


@dataclass(frozen=True)
class Weight:
    """Positive weight ``m`` on Z_N^dim with a submultiplicative companion ``v``.

    ``moderation_constant`` is the smallest ``C`` with ``m(a + b) <= C v(a) m(b)``
    when computed exhaustively (``method == "exact"``), or the Peetre bound
    ``2**(|s|/2)`` for large grids (``method == "peetre"``).
    """

    m: np.ndarray
    v: np.ndarray
    spec: str = "one"
    moderation_constant: float = 1.0
    method: str = "exact"

    @classmethod
    def one(cls, N: int, dim: int = 4) -> "Weight":
        ones = np.ones((N,) * dim)
        return cls(ones, ones, "one", 1.0, "exact")

    @classmethod
    def poly(cls, N: int, s: float, dim: int = 4, exhaustive_limit: int = 10**4) -> "Weight":
        c = _centered(N)
        r2 = sum(np.ix_(*([c**2] * dim)))
        m = (1.0 + r2) ** (s / 2.0)
        v = (1.0 + r2) ** (abs(s) / 2.0)
        if N**dim <= exhaustive_limit:
            C, method = _moderation_exact(m, v), "exact"
        else:
            C, method = 2.0 ** (abs(s) / 2.0), "peetre"
        return cls(m, v, f"poly:{s:g}", C, method)

    @classmethod
    def parse(cls, text: str, N: int, dim: int = 4) -> "Weight":
        t = text.strip().lower()
        if t == "one":
            return cls.one(N, dim)
        if t.startswith("poly:"):
            try:
                s = float(t[5:])
            except ValueError as exc:
                raise ParameterError(f"bad weight exponent in {text!r}") from exc
            return cls.poly(N, s, dim)
        raise ParameterError(f"unknown weight {text!r}; use 'one' or 'poly:s'")

    @property
    def is_trivial(self) -> bool:
        return self.spec == "one"


def _moderation_exact(m: np.ndarray, v: np.ndarray) -> float:
    """``max_{a,b} m(a + b) / (v(a) m(b))`` over the whole group."""
    flat_m = m.ravel()
    best = 0.0
    idx = np.indices(m.shape).reshape(m.ndim, -1)
    for a in range(flat_m.size):
        shifted = np.roll(m, tuple(idx[:, a]), axis=tuple(range(m.ndim))).ravel()  # m(b + a) at b
        best = max(best, float(np.max(shifted / flat_m)) / float(v.ravel()[a]))
    return best


def _weighted(F: np.ndarray, m: Weight | None) -> np.ndarray:
    a = np.abs(F)
    if m is not None and not m.is_trivial:
        a = a * m.m
    return a


def mixed_norm(F, params: MixedNormParams = MixedNormParams(), m: Weight | None = None) -> float:
    """Weighted mixed norm on Z_N^4 (``[w1, w2, z1, z2]``) or Z_N^2 (``[x, omega]``)."""
    F = np.asarray(F)
    N = F.shape[0]
    a = _weighted(F, m)
    if F.ndim == 2:
        inner = _lp(a, params.p, 0, 1.0)
        return float(_lp(inner, params.q, 0, 1.0 / N))
    if F.ndim != 4:
        raise ParameterError("mixed norms are defined on Z_N^2 and Z_N^4")
    if params.four is not None:
        p1, p2, q1, q2 = params.four
        a = _lp(a, p1, 0, 1.0)
        a = _lp(a, p2, 0, 1.0 / N)
        a = _lp(a, q1, 0, 1.0)
        return float(_lp(a, q2, 0, 1.0 / N))
    inner = _lp(a.reshape(N * N, N * N), params.p, 0, 1.0 / N)
    return float(_lp(inner, params.q, 0, 1.0 / N))


def default_window(N: int) -> np.ndarray:
    g = gaussian_window(N)
    return rank_one(g, g)


def operator_modulation_norm(T, window=None, params: MixedNormParams = MixedNormParams(), m: Weight | None = None) -> float:
    T = as_operator(T)
    S = default_window(T.shape[0]) if window is None else as_operator(window, T.shape[0])
    if not np.any(S):
        raise InvalidWindowError("window operator is zero")
    return mixed_norm(cohen(S, T), params, m)


def function_modulation_norm(f, p: float = 2.0, q: float | None = None, window=None) -> float:
    """``||V_g f||_{L^{p,q}}`` over (x counting, omega 1/N); Gaussian window by default."""
    f = as_signal(f)
    g = gaussian_window(f.shape[0]) if window is None else as_signal(window, f.shape[0])
    q = p if q is None else q
    return mixed_norm(stft(f, g), MixedNormParams(p, q))


def bochner_norm(T, params: MixedNormParams = MixedNormParams()) -> float:
    """``|| z -> ||T* pi(z) phi0||_{M^p} ||_{L^q}`` computed signal by signal."""
    T = as_operator(T)
    N = T.shape[0]
    g = gaussian_window(N)
    Ts = T.conj().T
    inner = np.empty((N, N))
    for z1 in range(N):
        for z2 in range(N):
            inner[z1, z2] = function_modulation_norm(Ts @ tf_shift((z1, z2), g), params.p)
    return float(_lp(inner.ravel(), params.q, 0, 1.0 / N))


def window_equivalence_ratio(ensemble, S1, S2, params: MixedNormParams = MixedNormParams(), m: Weight | None = None) -> dict:
    """Range of ``||Q_{S1} T|| / ||Q_{S2} T||`` over ``ensemble`` and the a priori bounds.

    From ``Q_{S1} T = Q_{S2} T # Q_{S1} S2 / ||S2||**2`` and Young's inequality,
    the ratio lies in ``[||S1||**2 / (C ||Q_{S2} S1||_{1,v}), C ||Q_{S1} S2||_{1,v} / ||S2||**2]``.
    """
    S1 = as_operator(S1)
    S2 = as_operator(S2, S1.shape[0])
    C = 1.0 if m is None else m.moderation_constant
    v = None if m is None else Weight(m.v, m.v, m.spec, 1.0, m.method)
    one = MixedNormParams(1, 1)
    ratios = np.array([mixed_norm(cohen(S1, T), params, m) / mixed_norm(cohen(S2, T), params, m) for T in ensemble])
    return {
        "min": float(ratios.min()),
        "max": float(ratios.max()),
        "lower_bound": hs_norm(S1) ** 2 / (C * mixed_norm(cohen(S2, S1), one, v)),
        "upper_bound": C * mixed_norm(cohen(S1, S2), one, v) / hs_norm(S2) ** 2,
    }


def phase_space_stft(F, G) -> np.ndarray:
    """``V_G F(u) = <F, Pi(u) G>`` with the (1/N) inner product, indexed ``[u1, u2, u3, u4]``."""
    F = as_phase_function(F)
    G = as_phase_function(G, F.shape[0])
    N = F.shape[0]
    out = np.empty((N,) * 4, dtype=complex)
    Gc = np.conj(G)
    for u1 in range(N):
        for u2 in range(N):
            # (1/N) sum_y F(y) conj G(y - u) zeta**(u3 y1 + u4 y2)
            out[u1, u2] = np.fft.ifft2(F * np.roll(Gc, (u1, u2), axis=(0, 1))) * N
    return out


def _U_table(N: int):
    i = np.arange(N)
    w1, w2, z1, z2 = np.ix_(i, i, i, i)
    h = modulus(N).half
    return (h * (w1 + z1) % N, h * (w2 + z2) % N, (w2 - z2) % N, (z1 - w1) % N)


def symbol_modulation_norm(sigma, params: MixedNormParams = MixedNormParams(), m: Weight | None = None, window=None) -> float:
    """Mixed norm of ``(w, z) -> V_{W0} sigma(U(w, z))`` with ``W0`` the symbol of the window.

    ``|Q_S T(w, z)| = |V_{sigma_S} sigma_T(U(w, z))|``, so this equals
    :func:`operator_modulation_norm` of the Weyl quantisation of ``sigma``.
    """
    sigma = as_phase_function(sigma)
    N = sigma.shape[0]
    W0 = kernel_to_symbol(default_window(N) if window is None else window)
    V = phase_space_stft(sigma, W0)
    return mixed_norm(V[_U_table(N)], params, m)


def symbol_mpq_norm(sigma, params: MixedNormParams = MixedNormParams(), window=None) -> float:
    """Plain ``M^{p,q}`` norm of a symbol on Z_N^2: inner over position ``u``, outer over frequency."""
    sigma = as_phase_function(sigma)
    N = sigma.shape[0]
    W0 = kernel_to_symbol(default_window(N) if window is None else window)
    return mixed_norm(phase_space_stft(sigma, W0), params)


def phase_twisted_convolution(F, G) -> np.ndarray:
    """``(F ~ G)(z) = (1/N) sum_z' F(z') G(z - z') zeta**(-x'(omega - omega'))`` on Z_N^2."""
    F = as_phase_function(F)
    G = as_phase_function(G, F.shape[0])
    N = F.shape[0]
    m = modulus(N)
    i = np.arange(N)
    out = np.zeros((N, N), dtype=complex)
    Gh = np.fft.fft(G, axis=1)
    for xp in range(N):
        a = F[xp] * m.zeta(xp * i)  # F(x', w') zeta**(x' w')
        conv = np.fft.ifft(np.fft.fft(a)[None, :] * np.roll(Gh, xp, axis=0), axis=1)
        out += conv * m.zeta(-xp * i)[None, :]
    return out / N


def block_max(F, block: int) -> np.ndarray:
    """Replace every entry by the max of ``|F|`` over its ``block``-cube."""
    F = np.abs(np.asarray(F))
    N = F.shape[0]
    if block < 1 or N % block:
        raise ParameterError(f"block size {block} does not divide N={N}")
    n = N // block
    shape = []
    for _ in range(F.ndim):
        shape += [n, block]
    M = F.reshape(shape).max(axis=tuple(range(1, 2 * F.ndim, 2)))
    for ax in range(F.ndim):
        M = np.repeat(M, block, axis=ax)
    return M


def wiener_amalgam_norm(F, block: int, params: MixedNormParams = MixedNormParams(1, 1), m: Weight | None = None) -> float:
    """Mixed norm of the block-wise maximum of ``|F|`` (each cube weighted by its measure)."""
    return mixed_norm(block_max(F, block), params, m)


def schatten_norm(T, p) -> float:
    s = np.linalg.svd(as_operator(T), compute_uv=False)
    p = _check_exponent(p)
    return float(s.max(initial=0.0) if p == INF else np.sum(s**p) ** (1.0 / p))


# ---------------------------------------------------------------------------
# lattice norms and decompositions


def lattice_mixed_norm(c, L_w: Lattice, L_z: Lattice, params: MixedNormParams = MixedNormParams(), m: Weight | None = None) -> float:
    """``l^{p,q}`` norm of lattice coefficients with cell measures ``ab/N``."""
    a = np.abs(np.asarray(c))
    if m is not None and not m.is_trivial:
        a = a * m.m[:: L_w.a, :: L_w.b, :: L_z.a, :: L_z.b]
    nw = a.shape[0] * a.shape[1]
    inner = _lp(a.reshape(nw, -1), params.p, 0, L_w.cell)
    return float(_lp(inner, params.q, 0, L_z.cell))


def discrete_characterisation(ensemble, S, L_w: Lattice, L_z: Lattice, params, m: Weight | None = None):
    """Range of ``||C_S T||_{l^{p,q}} / ||Q_S T||_{L^{p,q}}`` over ``ensemble``.

    ``params`` may be a single :class:`MixedNormParams` or a sequence; each
    Cohen table is computed once and shared by all exponent pairs.
    """
    many = not isinstance(params, MixedNormParams)
    plist = list(params) if many else [params]
    ratios = np.empty((len(plist), 0)).tolist()
    for T in ensemble:
        Q = cohen(S, T)
        C = Q[:: L_w.a, :: L_w.b, :: L_z.a, :: L_z.b]
        for k, P in enumerate(plist):
            ratios[k].append(lattice_mixed_norm(C, L_w, L_z, P, m) / mixed_norm(Q, P, m))
    out = [{"p": P.p, "q": P.q, "min": float(min(r)), "max": float(max(r))} for P, r in zip(plist, ratios)]
    return out if many else out[0]


@dataclass(frozen=True)
class OperatorDecomposition:
    """``T = sum_n s_n phi_n (x) psi_n`` with ``||phi_n||_{M^1} = ||psi_n||_{M^p} = 1``."""

    s: np.ndarray
    phis: np.ndarray
    psis: np.ndarray
    row_norms: np.ndarray = field(default=None)

    def __len__(self):
        return self.s.shape[0]

    def reconstruct(self) -> np.ndarray:
        N = self.phis.shape[1] if self.phis.ndim == 2 and self.phis.shape[0] else 0
        if not len(self):
            return np.zeros((N, N), dtype=complex)
        return np.einsum("n,na,nb->ab", self.s, self.phis, np.conj(self.psis))


def mp_decomposition(T, g, L: Lattice, params: MixedNormParams = MixedNormParams(), tol: float = 1e-14) -> OperatorDecomposition:
    """Decompose ``T`` through the tensor frame ``{gamma_{lambda,mu}(g (x) g)}`` on ``L x L``.

    With ``g~`` the dual Gabor window, ``T = sum_mu pi(mu) g~ (x) psi'_mu`` where
    ``psi'_mu = nu sum_lambda conj(Q(lambda, mu)) pi(lambda) g~``; each term is
    rescaled to unit ``M^1`` / ``M^p`` norms and the scales go into ``s``.
    """
    T = as_operator(T, L.N)
    g = as_signal(g, L.N)
    gd = gabor_dual_window(g, L)
    S = rank_one(g, g)
    C = operator_analysis(S, L, L, T).reshape(len(L), len(L))  # [lambda, mu]
    nu = L.cell * L.cell
    shifts = np.stack([tf_shift(p, gd) for p in L.points])
    s, phis, psis, rows = [], [], [], []
    scale = max(float(np.abs(C).max(initial=0.0)), np.finfo(float).tiny)
    for j, mu in enumerate(L.points):
        col = C[:, j]
        if np.abs(col).max() <= tol * scale:
            continue
        psi = nu * (np.conj(col) @ shifts)
        phi = tf_shift(mu, gd)
        a = function_modulation_norm(phi, 1.0)
        b = function_modulation_norm(psi, params.p)
        s.append(a * b)
        phis.append(phi / a)
        psis.append(psi / b)
        rows.append(float(_lp(np.abs(col), params.p, 0, L.cell)))
    N = L.N
    if not s:
        empty = np.zeros((0, N), dtype=complex)
        return OperatorDecomposition(np.zeros(0), empty, empty, np.zeros(0))
    return OperatorDecomposition(np.array(s), np.array(phis), np.array(psis), np.array(rows))


def random_operator(rng: np.random.Generator, N: int) -> np.ndarray:
    return (rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))) / np.sqrt(2 * N)


def inclusion_experiment(N: int, p: float, q: float, draws: int = 100, seed: int = 0) -> dict:
    """Ratios ``||sigma_T||_{M^{p,q}} / ||T||_{M^{q,p}}`` over random and rank-one operators.

    Reports the ensemble range, the converse direction
    ``||T||_{M^{q,p}} / ||sigma_T||_{M^{p,q}}`` and the rank-one tensor products
    of shifted Gaussians and point masses with the extreme ratios.
    """
    rng = np.random.default_rng(seed)
    fwd = MixedNormParams(p, q)
    op = MixedNormParams(q, p)

    def ratio(T):
        return symbol_mpq_norm(kernel_to_symbol(T), fwd) / operator_modulation_norm(T, params=op)

    r = np.array([ratio(random_operator(rng, N)) for _ in range(draws)])
    g = gaussian_window(N)
    delta = np.zeros(N, dtype=complex)
    delta[0] = 1.0
    flat = np.ones(N, dtype=complex) / np.sqrt(N)
    atoms = {"gauss": g, "delta": delta, "flat": flat, "shifted": tf_shift((N // 3, N // 2), g)}
    witnesses = {f"{a}(x){b}": ratio(rank_one(fa, fb)) for a, fa in atoms.items() for b, fb in atoms.items()}
    lo = min(witnesses, key=witnesses.get)
    hi = max(witnesses, key=witnesses.get)
    return {
        "N": N,
        "p": p,
        "q": q,
        "min": float(r.min()),
        "max": float(r.max()),
        "converse_min": float(1.0 / r.max()),
        "converse_max": float(1.0 / r.min()),
        "witness_min": (lo, witnesses[lo]),
        "witness_max": (hi, witnesses[hi]),
    }


__all__ = [
    "INF",
    "MixedNormParams",
    "OperatorDecomposition",
    "Weight",
    "block_max",
    "bochner_norm",
    "default_window",
    "discrete_characterisation",
    "function_modulation_norm",
    "inclusion_experiment",
    "lattice_mixed_norm",
    "mixed_norm",
    "mp_decomposition",
    "operator_modulation_norm",
    "parse_exponent",
    "phase_space_stft",
    "phase_twisted_convolution",
    "random_operator",
    "schatten_norm",
    "symbol_modulation_norm",
    "symbol_mpq_norm",
    "wiener_amalgam_norm",
    "window_equivalence_ratio",
]
