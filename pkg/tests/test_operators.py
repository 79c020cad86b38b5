import itertools

import numpy as np
import pytest

import oracles
from qtfa.errors import DimensionError
from qtfa.operators import (
    alpha_shift,
    alpha_stack,
    fn_op_convolve,
    fourier_wigner,
    hs_inner,
    hs_norm,
    kernel_to_symbol,
    op_op_convolve,
    parity_check,
    parity_matrix,
    rank_one,
    shift_kernel,
    spreading,
    spreading_to_operator,
    svd,
    symbol_to_operator,
)
from qtfa.phase_space import half_phase, phase_inner, symplectic_dft
from qtfa.tfa import rank_one_spreading, stft, tf_shift, tf_shift_matrix, wigner


def test_rank_one_action(cvec):
    f, g, h = cvec(7), cvec(7), cvec(7)
    assert np.abs(rank_one(f, g) @ h - np.vdot(g, h) * f).max() < 1e-12


def test_rank_one_norm_and_inner(cvec):
    f, g, psi, phi = (cvec(5) for _ in range(4))
    assert abs(hs_norm(rank_one(f, g)) - np.linalg.norm(f) * np.linalg.norm(g)) < 1e-12
    lhs = hs_inner(rank_one(f, g), rank_one(psi, phi))
    assert abs(lhs - np.vdot(psi, f) * np.conj(np.vdot(phi, g))) < 1e-12


def test_symbol_matches_definition(cvec):
    S = cvec(7, 7)
    assert np.abs(kernel_to_symbol(S) - oracles.symbol(S)).max() < 1e-12


def test_symbol_of_identity_is_one():
    assert np.abs(kernel_to_symbol(np.eye(7)) - 1).max() < 1e-14


def test_symbol_of_rank_one_is_wigner(cvec):
    f, g = cvec(7), cvec(7)
    assert np.abs(kernel_to_symbol(rank_one(f, g)) - wigner(f, g)).max() < 1e-12


@pytest.mark.parametrize("N", [5, 7, 9])
def test_round_trips(N, cvec):
    S = cvec(N, N)
    assert np.abs(symbol_to_operator(kernel_to_symbol(S)) - S).max() < 1e-12
    assert np.abs(spreading_to_operator(spreading(S)) - S).max() < 1e-12


def test_weyl_unitarity(cvec):
    S, T = cvec(7, 7), cvec(7, 7)
    assert abs(phase_inner(kernel_to_symbol(S), kernel_to_symbol(T)) - hs_inner(S, T)) < 1e-11


def test_spreading_of_identity():
    N = 7
    expected = np.zeros((N, N))
    expected[0, 0] = N
    assert np.abs(spreading(np.eye(N)) - expected).max() < 1e-12
    assert np.abs(fourier_wigner(np.eye(N)) - expected).max() < 1e-12


def test_spreading_is_symplectic_transform_of_symbol(cvec):
    S = cvec(7, 7)
    assert np.abs(spreading(S) - symplectic_dft(kernel_to_symbol(S))).max() < 1e-11


def test_spreading_of_rank_one(cvec):
    f, g = cvec(5), cvec(5)
    assert np.abs(spreading(rank_one(f, g)) - rank_one_spreading(f, g)).max() < 1e-12
    N = 5
    x = np.arange(N)
    assert np.abs(rank_one_spreading(f, g) - half_phase(x[:, None] * x[None, :], N) * stft(f, g)).max() < 1e-12


def test_fourier_wigner_matches_trace_definition(cvec):
    S = cvec(7, 7)
    assert np.abs(fourier_wigner(S) - oracles.fourier_wigner(S)).max() < 1e-11
    assert np.abs(fourier_wigner(S) - spreading(S)).max() < 1e-11


def test_spreading_synthesis_uses_symmetric_phase(cvec):
    N = 7
    S = cvec(N, N)
    eta = spreading(S)
    D = sum(
        eta[x, w] * half_phase(-x * w, N) * tf_shift_matrix((x, w), N) for x, w in itertools.product(range(N), repeat=2)
    )
    assert np.abs(D / N - S).max() < 1e-11


def test_parity(cvec):
    N = 5
    P = parity_matrix(N)
    f, g = cvec(N), cvec(N)
    assert np.abs(P @ P - np.eye(N)).max() == 0
    assert np.abs(parity_check(rank_one(f, g)) - rank_one(P @ f, P @ g)).max() < 1e-13


def test_alpha_shift(cvec):
    N = 5
    S = cvec(N, N)
    f, g = cvec(N), cvec(N)
    sigma = kernel_to_symbol(S)
    A = alpha_stack(S)
    for z in itertools.product(range(N), repeat=2):
        assert np.abs(kernel_to_symbol(alpha_shift(z, S)) - np.roll(sigma, z, axis=(0, 1))).max() < 1e-12
        assert np.abs(A[z] - alpha_shift(z, S)).max() < 1e-13
    z = (2, 3)
    assert np.abs(alpha_shift(z, rank_one(f, g)) - rank_one(tf_shift(z, f), tf_shift(z, g))).max() < 1e-12


def test_shift_kernel_is_two_sided_shift(cvec):
    N = 5
    S = cvec(N, N)
    z, w = (1, 4), (3, 2)
    assert np.abs(shift_kernel(S, z, w) - oracles.gamma(w, z, S)).max() < 1e-12


def test_convolution_theorems(cvec):
    N = 7
    F, S, T = cvec(N, N), cvec(N, N), cvec(N, N)
    assert np.abs(fourier_wigner(fn_op_convolve(F, S)) - symplectic_dft(F) * fourier_wigner(S)).max() < 1e-10
    assert np.abs(symplectic_dft(op_op_convolve(T, S)) - fourier_wigner(T) * fourier_wigner(S)).max() < 1e-10
    assert np.abs(op_op_convolve(T, S) - op_op_convolve(S, T)).max() < 1e-11


def test_function_operator_convolution_definition(cvec):
    N = 5
    F, S = cvec(N, N), cvec(N, N)
    ref = sum(F[z] * alpha_shift(z, S) for z in itertools.product(range(N), repeat=2)) / N
    assert np.abs(fn_op_convolve(F, S) - ref).max() < 1e-12


def test_rank_one_convolution_is_spectrogram(cvec):
    N = 5
    f, g = cvec(N), cvec(N)
    P = parity_matrix(N)
    C = op_op_convolve(rank_one(f, f), rank_one(g, g))
    assert np.abs(C - np.abs(stft(f, P @ g)) ** 2).max() < 1e-11


def test_svd_reconstructs(cvec):
    S = cvec(7, 7)
    d = svd(S)
    assert abs(np.sum(d.singular_values**2) - hs_norm(S) ** 2) < 1e-10
    assert np.abs(d.reconstruct() - S).max() < 1e-12
    f, g = cvec(7), cvec(7)
    assert len(svd(rank_one(f, g))) == 1


def test_bad_shapes():
    with pytest.raises(DimensionError):
        kernel_to_symbol(np.zeros((5, 7)))
    with pytest.raises(DimensionError):
        rank_one(np.zeros(5), np.zeros(7))
