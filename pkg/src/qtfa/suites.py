"""Named identity suites with JSON reports.

Each check draws its own data from a seeded ``numpy.random.Generator`` (PCG64),
computes a maximum error and compares it with a fixed tolerance.  Reports are
plain dicts whose JSON serialisation is byte-identical for identical inputs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import frames as fr
from . import norms as nm
from . import operators as op
from . import shifts as sh
from . import tfa
from .cohen import (
    cohen,
    fphi_kernel_identity,
    fphi_product_identity,
    projection,
    reproduce,
    reproducing_kernel_table,
    span_rank,
    twisted_convolution,
)
from .phase_space import double_symplectic_dft, modulus, phase_inner, symplectic_dft

RNG_ALGORITHM = "numpy.random.PCG64"
EXHAUSTIVE_LIMIT = 7


def _cvec(rng, *shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _rel(a, b) -> float:
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.max(np.abs(a - b), initial=0.0) / max(1.0, float(np.max(np.abs(b), initial=0.0))))


def _abs(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)), initial=0.0))


@dataclass(frozen=True)
class Check:
    identity: str
    topic: str
    tolerance: float
    run: Callable[[int, np.random.Generator], float]


def _points(N: int, rng, count: int = 60):
    if N <= EXHAUSTIVE_LIMIT:
        return list(itertools.product(range(N), repeat=4))
    return [tuple(int(v) for v in rng.integers(0, N, 4)) for _ in range(count)]


# -- cocycle ----------------------------------------------------------------


def _cocycle(N, rng, operators: int = 1):
    err = 0.0
    m = modulus(N)
    i = np.arange(N)
    for _ in range(operators):
        S = _cvec(rng, N, N)
        G = sh.gamma_table(S)
        for p in _points(N, rng, 10):
            w1, w2, z1, z2 = p
            GX = sh.gamma_table(G[p])
            target = np.roll(G, (-w1, -w2, -z1, -z2), axis=(0, 1, 2, 3))
            # zeta**(-(z2 z1' - w2 w1')) over the primed point
            phase = m.zeta(w2 * i)[:, None, None, None] * m.zeta(-z2 * i)[None, None, :, None]
            err = max(err, _abs(GX, phase[..., None, None] * target))
    return err


def _gamma_diagonal(N, rng):
    S = _cvec(rng, N, N)
    return max(_abs(sh.gamma_shift(z, z, S), op.alpha_shift(z, S)) for z in itertools.product(range(N), repeat=2))


def _gamma_rank_one(N, rng):
    f, g = _cvec(rng, N), _cvec(rng, N)
    w, z = (1, 2), (N - 1, 3)
    return _abs(sh.gamma_shift(w, z, op.rank_one(f, g)), op.rank_one(tfa.tf_shift(z, f), tfa.tf_shift(w, g)))


# -- moyal ------------------------------------------------------------------


def _moyal(N, rng, draws: int = 10):
    err = 0.0
    for _ in range(draws):
        R, S, T, W = (_cvec(rng, N, N) for _ in range(4))
        lhs = phase_inner(cohen(R, S), cohen(T, W))
        rhs = op.hs_inner(S, W) * np.conj(op.hs_inner(R, T))
        err = max(err, abs(lhs - rhs) / max(abs(rhs), 1e-300))
    return err


def _isometry(N, rng):
    S, T = _cvec(rng, N, N), _cvec(rng, N, N)
    S /= np.linalg.norm(S)
    Q = cohen(S, T)
    return abs(np.sum(np.abs(Q) ** 2) / N**2 - np.linalg.norm(T) ** 2) / np.linalg.norm(T) ** 2


def _stft_moyal(N, rng):
    f, g = _cvec(rng, N), _cvec(rng, N)
    V = tfa.stft(f, g)
    ref = (np.linalg.norm(f) * np.linalg.norm(g)) ** 2
    return abs(np.sum(np.abs(V) ** 2) / N - ref) / ref


def _rank_one_factorisation(N, rng):
    f, g, psi, phi = (_cvec(rng, N) for _ in range(4))
    Q = cohen(op.rank_one(f, g), op.rank_one(psi, phi))
    rhs = tfa.stft(psi, f)[None, None] * np.conj(tfa.stft(phi, g))[:, :, None, None]
    return _rel(Q, rhs)


# -- reproduce --------------------------------------------------------------


def _reproduction(N, rng):
    S, T = _cvec(rng, N, N), _cvec(rng, N, N)
    return _rel(reproduce(S, T), T)


def _reproducing_kernel(N, rng):
    S, T = _cvec(rng, N, N), _cvec(rng, N, N)
    S /= np.linalg.norm(S)
    Q = cohen(S, T)
    err = 0.0
    pts = _points(N, rng, 20) if N <= 5 else [tuple(int(v) for v in rng.integers(0, N, 4)) for _ in range(20)]
    for p in pts:
        k = reproducing_kernel_table(S, p)
        err = max(err, abs(Q[p] - np.sum(Q * k) / N**2))
    return err / max(1.0, float(np.abs(Q).max()))


def _stft_reconstruction(N, rng):
    f = _cvec(rng, N)
    g = tfa.gaussian_window(N)
    return _rel(tfa.stft_adjoint(tfa.stft(f, g), g), f)


def _projection(N, rng):
    S = _cvec(rng, N, N)
    F = _cvec(rng, *(N,) * 4)
    P1 = projection(S, F)
    return _rel(projection(S, P1), P1)


# -- twisted ----------------------------------------------------------------


def _twisted(N, rng, draws: int = 3):
    err = 0.0
    for _ in range(draws):
        S, T, R, W = (_cvec(rng, N, N) for _ in range(4))
        lhs = twisted_convolution(cohen(S, T), cohen(R, W))
        err = max(err, _rel(lhs, op.hs_inner(W, S) * cohen(R, T)))
    return err


def _twisted_idempotent(N, rng):
    S, T = _cvec(rng, N, N), _cvec(rng, N, N)
    S /= np.linalg.norm(S)
    Q = cohen(S, T)
    return _rel(twisted_convolution(Q, cohen(S, S)), Q)


# -- fphi -------------------------------------------------------------------


def _fphi_involution(N, rng):
    F = _cvec(rng, *(N,) * 4)
    return _rel(double_symplectic_dft(double_symplectic_dft(F)), F)


def _fphi_product(N, rng):
    S, T, R, W = (_cvec(rng, N, N) for _ in range(4))
    rep = fphi_product_identity(S, T, R, W)
    return _rel(rep.lhs, rep.rhs)


def _fphi_kernel(N, rng):
    S, T = _cvec(rng, N, N), _cvec(rng, N, N)
    rep = fphi_kernel_identity(S, T)
    return _rel(rep.lhs, rep.rhs)


# -- covariance -------------------------------------------------------------


def _symbol_covariance(N, rng):
    S = _cvec(rng, N, N)
    err = 0.0
    G = sh.gamma_table(S)
    for p in _points(N, rng):
        w, z = p[:2], p[2:]
        err = max(err, _rel(op.kernel_to_symbol(G[p]), sh.predicted_gamma_symbol(w, z, S)))
    return err


def _magic(N, rng):
    f, g, psi, phi = (_cvec(rng, N) for _ in range(4))
    return _rel(sh.magic_identity_lhs(f, g, psi, phi), sh.magic_identity_rhs(f, g, psi, phi))


def _beta_modulation(N, rng):
    S = _cvec(rng, N, N)
    sigma = op.kernel_to_symbol(S)
    m = modulus(N)
    x = np.arange(N)
    err = 0.0
    for w in itertools.product(range(N), repeat=2):
        # zeta**Omega(w, z) with Omega(w, z) = x w2 - w1 omega
        M = m.zeta(w[1] * x[:, None] - w[0] * x[None, :])
        err = max(err, _rel(op.kernel_to_symbol(sh.beta_shift(w, S)), M * sigma))
    return err


def _fw_translation(N, rng):
    S = _cvec(rng, N, N)
    eta = op.fourier_wigner(S)
    return max(_rel(op.fourier_wigner(sh.beta_shift(w, S)), np.roll(eta, w, axis=(0, 1))) for w in itertools.product(range(N), repeat=2))


def _kernel_covariance(N, rng):
    S = _cvec(rng, N, N)
    err = 0.0
    for p in _points(N, rng):
        w, z = p[:2], p[2:]
        direct = tfa.tf_shift_matrix(w, N) @ S @ tfa.tf_shift_matrix(z, N).conj().T
        err = max(err, _rel(sh.kernel_covariance(w, z, S), direct))
    return err


def _factorisation(N, rng):
    S = _cvec(rng, N, N)
    h = modulus(N).half
    err = 0.0
    for p in _points(N, rng):
        w, z = p[:2], p[2:]
        c = sh.gamma_factorisation_phase(w, z, N)
        rhs = c * sh.beta_shift((z[0] - w[0], z[1] - w[1]), op.alpha_shift((h * (w[0] + z[0]), h * (w[1] + z[1])), S))
        err = max(err, _rel(sh.gamma_shift(w, z, S), rhs))
    return err


def _coordinate_maps(N, rng):
    bad = sum(sh.map_U_inv(sh.map_U(p, N), N) != p for p in _points(N, rng))
    U = sh.coordinate_map("U", N).matrix
    bad += not sh.pulls_back(U, sh.double_form(), sh.standard_form(), N)
    return float(bad)


# -- qha --------------------------------------------------------------------


def _roundtrips(N, rng):
    S = _cvec(rng, N, N)
    return max(
        _rel(op.symbol_to_operator(op.kernel_to_symbol(S)), S),
        _rel(op.spreading_to_operator(op.spreading(S)), S),
        _rel(op.fourier_wigner(S), op.spreading(S)),
    )


def _rank_one_symbols(N, rng):
    f, g = _cvec(rng, N), _cvec(rng, N)
    R = op.rank_one(f, g)
    return max(_rel(op.kernel_to_symbol(R), tfa.wigner(f, g)), _rel(op.spreading(R), tfa.rank_one_spreading(f, g)))


def _weyl_unitarity(N, rng):
    S, T = _cvec(rng, N, N), _cvec(rng, N, N)
    a = phase_inner(op.kernel_to_symbol(S), op.kernel_to_symbol(T))
    b = op.hs_inner(S, T)
    return abs(a - b) / abs(b)


def _weak_weyl(N, rng):
    sigma, f, g = _cvec(rng, N, N), _cvec(rng, N), _cvec(rng, N)
    lhs = np.vdot(g, op.symbol_to_operator(sigma) @ f)
    rhs = phase_inner(sigma, tfa.wigner(g, f))
    return abs(lhs - rhs) / max(1.0, abs(rhs))


def _convolution_theorems(N, rng):
    F, S, T = _cvec(rng, N, N), _cvec(rng, N, N), _cvec(rng, N, N)
    a = _rel(op.fourier_wigner(op.fn_op_convolve(F, S)), symplectic_dft(F) * op.fourier_wigner(S))
    b = _rel(symplectic_dft(op.op_op_convolve(T, S)), op.fourier_wigner(T) * op.fourier_wigner(S))
    return max(a, b)


def _alpha_translation(N, rng):
    S = _cvec(rng, N, N)
    sigma = op.kernel_to_symbol(S)
    return max(
        _rel(op.kernel_to_symbol(op.alpha_shift(z, S)), np.roll(sigma, z, axis=(0, 1)))
        for z in itertools.product(range(N), repeat=2)
    )


# -- frames -----------------------------------------------------------------


def _smallest_divisor(N: int) -> int:
    for d in range(3, N, 2):
        if N % d == 0:
            return d
    return 1


def _tight_frame(N, rng):
    S = _cvec(rng, N, N)
    S /= np.linalg.norm(S)
    L = fr.Lattice(N, 1, 1)
    A, B = fr.frame_bounds(S, L, L)
    return max(abs(A - 1), abs(B - 1))


def _dual_reconstruction(N, rng):
    d = _smallest_divisor(N)
    L = fr.Lattice(N, d, d)
    g = tfa.gaussian_window(N)
    T = _cvec(rng, N, N)
    return _rel(fr.reconstruct(T, op.rank_one(g, g), L, L), T)


def _span_rank(N, rng):
    if N > EXHAUSTIVE_LIMIT:
        return 0.0
    S = _cvec(rng, N, N)
    return float(abs(span_rank(S) - N * N))


def _tensor_bounds(N, rng):
    d = _smallest_divisor(N)
    L = fr.Lattice(N, d, d)
    g = tfa.gaussian_window(N)
    A1, B1 = fr.gabor_frame_bounds(g, L)
    A, B = fr.frame_bounds(op.rank_one(g, g), L, L)
    return max(abs(A - A1 * A1), abs(B - B1 * B1))


# -- norms ------------------------------------------------------------------


def _m22(N, rng):
    T = _cvec(rng, N, N)
    return abs(nm.operator_modulation_norm(T) - np.linalg.norm(T)) / np.linalg.norm(T)


def _bochner(N, rng):
    T = _cvec(rng, N, N)
    err = 0.0
    for p, q in [(1, 2), (2, 1), (1, nm.INF)]:
        P = nm.MixedNormParams(p, q)
        a, b = nm.operator_modulation_norm(T, params=P), nm.bochner_norm(T, P)
        err = max(err, abs(a - b) / b)
    return err


def _symbol_route(N, rng):
    T = _cvec(rng, N, N)
    sigma = op.kernel_to_symbol(T)
    err = 0.0
    for p, q in [(1, 2), (2, 2), (nm.INF, 1)]:
        P = nm.MixedNormParams(p, q)
        a, b = nm.symbol_modulation_norm(sigma, P), nm.operator_modulation_norm(T, params=P)
        err = max(err, abs(a - b) / b)
    return err


def _inclusion_diagonal(N, rng):
    T = _cvec(rng, N, N)
    err = 0.0
    for p in (1, 2, nm.INF):
        P = nm.MixedNormParams(p, p)
        a, b = nm.symbol_mpq_norm(op.kernel_to_symbol(T), P), nm.operator_modulation_norm(T, params=P)
        err = max(err, abs(a / b - 1))
    return err


SUITES: dict[str, list[Check]] = {
    "cocycle": [
        Check("gamma projective cocycle", "operator time-frequency shifts", 1e-12, _cocycle),
        Check("gamma diagonal equals alpha", "operator time-frequency shifts", 1e-13, _gamma_diagonal),
        Check("gamma on rank-one operators", "operator time-frequency shifts", 1e-12, _gamma_rank_one),
    ],
    "moyal": [
        Check("polarised Moyal identity", "polarised Cohen class", 1e-10, _moyal),
        Check("Cohen isometry", "polarised Cohen class", 1e-10, _isometry),
        Check("STFT Moyal identity", "time-frequency analysis", 1e-11, _stft_moyal),
        Check("rank-one Cohen factorisation", "polarised Cohen class", 1e-11, _rank_one_factorisation),
    ],
    "reproduce": [
        Check("reproducing formula", "polarised Cohen class", 1e-10, _reproduction),
        Check("reproducing kernel", "polarised Cohen class", 1e-10, _reproducing_kernel),
        Check("projection idempotent", "polarised Cohen class", 1e-10, _projection),
        Check("STFT reconstruction", "time-frequency analysis", 1e-11, _stft_reconstruction),
    ],
    "twisted": [
        Check("twisted convolution relation", "twisted convolution", 1e-10, _twisted),
        Check("twisted idempotent window", "twisted convolution", 1e-10, _twisted_idempotent),
    ],
    "fphi": [
        Check("double symplectic involution", "double phase-space Fourier transform", 1e-10, _fphi_involution),
        Check("double symplectic product identity", "double phase-space Fourier transform", 1e-10, _fphi_product),
        Check("double symplectic kernel identity", "double phase-space Fourier transform", 1e-10, _fphi_kernel),
    ],
    "covariance": [
        Check("symbol covariance of gamma", "operator time-frequency shifts", 1e-11, _symbol_covariance),
        Check("rank-one magic identity", "operator time-frequency shifts", 1e-11, _magic),
        Check("beta modulates the symbol", "operator time-frequency shifts", 1e-11, _beta_modulation),
        Check("Fourier-Wigner translation under beta", "operator time-frequency shifts", 1e-11, _fw_translation),
        Check("kernel covariance", "operator time-frequency shifts", 1e-11, _kernel_covariance),
        Check("gamma equals beta after alpha", "operator time-frequency shifts", 1e-11, _factorisation),
        Check("U inverse and symplectic pull-back", "operator time-frequency shifts", 0.0, _coordinate_maps),
    ],
    "qha": [
        Check("quantisation round trips", "Weyl quantisation", 1e-10, _roundtrips),
        Check("rank-one symbol and spreading", "Weyl quantisation", 1e-10, _rank_one_symbols),
        Check("Weyl unitarity", "Weyl quantisation", 1e-10, _weyl_unitarity),
        Check("weak Weyl pairing", "Weyl quantisation", 1e-10, _weak_weyl),
        Check("convolution theorems", "quantum harmonic analysis", 1e-10, _convolution_theorems),
        Check("alpha translates the symbol", "quantum harmonic analysis", 1e-11, _alpha_translation),
    ],
    "frames": [
        Check("full lattice is tight", "operator Gabor frames", 1e-10, _tight_frame),
        Check("dual window reconstruction", "operator Gabor frames", 1e-9, _dual_reconstruction),
        Check("span rank of gamma shifts", "operator Gabor frames", 0.0, _span_rank),
        Check("tensor window frame bounds", "operator Gabor frames", 1e-10, _tensor_bounds),
    ],
    "norms": [
        Check("M22 norm equals Hilbert-Schmidt norm", "operator modulation spaces", 1e-10, _m22),
        Check("mixed norm equals Bochner route", "operator modulation spaces", 1e-10, _bochner),
        Check("symbol route equals operator route", "operator modulation spaces", 1e-10, _symbol_route),
        Check("diagonal inclusion ratio is one", "operator modulation spaces", 1e-9, _inclusion_diagonal),
    ],
}

SUITE_NAMES = tuple(SUITES) + ("all",)


def listing() -> dict[str, list[dict]]:
    return {name: [{"identity": c.identity, "topic": c.topic, "tolerance": c.tolerance} for c in checks] for name, checks in SUITES.items()}


def run_suite(name: str, N: int, seed: int = 0) -> dict:
    """Run one suite (or ``"all"``) and return the report."""
    modulus(N)
    if name not in SUITE_NAMES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
    names = list(SUITES) if name == "all" else [name]
    results = []
    for k, suite in enumerate(names):
        for j, check in enumerate(SUITES[suite]):
            # every check gets its own stream so adding checks never shifts others
            rng = np.random.Generator(np.random.PCG64([seed, k, j]))
            err = float(check.run(N, rng))
            results.append(
                {
                    "suite": suite,
                    "identity": check.identity,
                    "topic": check.topic,
                    "N": N,
                    "max_error": err,
                    "tolerance": check.tolerance,
                    "pass": bool(err <= check.tolerance),
                }
            )
    return {
        "suite": name,
        "N": N,
        "seed": seed,
        "rng": RNG_ALGORITHM,
        "results": results,
        "pass": all(r["pass"] for r in results),
    }


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


__all__ = ["RNG_ALGORITHM", "SUITES", "SUITE_NAMES", "listing", "run_suite", "dumps_report"]
