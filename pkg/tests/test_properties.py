import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from qtfa.cohen import cohen, cohen_adjoint, twisted_convolution
from qtfa.io import dumps_bin, dumps_csv, loads_bin, loads_csv
from qtfa.operators import (
    fourier_wigner,
    hs_inner,
    kernel_to_symbol,
    parity_matrix,
    spreading,
    spreading_to_operator,
    symbol_to_operator,
)
from qtfa.phase_space import double_symplectic_dft, phase_inner, symplectic_dft
from qtfa.shifts import cocycle_phase, gamma_shift
from qtfa.tfa import stft, stft_adjoint

moduli = st.sampled_from([3, 5, 7])
unit = st.floats(-1, 1, allow_nan=False, width=64)


def carray(shape):
    return st.tuples(hnp.arrays(float, shape, elements=unit), hnp.arrays(float, shape, elements=unit)).map(
        lambda t: t[0] + 1j * t[1]
    )


def nonzero(A):
    return np.linalg.norm(A) > 1e-3


@st.composite
def operators(draw, count=1, N=None):
    N = N or draw(moduli)
    out = [draw(carray((N, N)).filter(nonzero)) for _ in range(count)]
    return out


def points(N):
    return st.tuples(*[st.integers(0, N - 1)] * 4)


@given(operators(count=2))
def test_symbol_is_unitary(ops):
    S, T = ops
    assert abs(phase_inner(kernel_to_symbol(S), kernel_to_symbol(T)) - hs_inner(S, T)) < 1e-10


@given(operators())
def test_symbol_and_spreading_round_trips(ops):
    (S,) = ops
    assert np.abs(symbol_to_operator(kernel_to_symbol(S)) - S).max() < 1e-11
    assert np.abs(spreading_to_operator(spreading(S)) - S).max() < 1e-11
    assert np.abs(fourier_wigner(S) - symplectic_dft(kernel_to_symbol(S))).max() < 1e-10


@given(moduli.flatmap(lambda N: carray((N, N))))
def test_symplectic_dft_is_an_involution(F):
    assert np.abs(symplectic_dft(symplectic_dft(F)) - F).max() < 1e-11


@given(st.sampled_from([3, 5]).flatmap(lambda N: carray((N,) * 4)))
def test_double_symplectic_dft_is_an_involution(F):
    assert np.abs(double_symplectic_dft(double_symplectic_dft(F)) - F).max() < 1e-11


@given(moduli)
def test_parity_is_an_involution(N):
    P = parity_matrix(N)
    assert np.array_equal(P @ P, np.eye(N))


@given(st.sampled_from([3, 5]).flatmap(lambda N: operators(count=4, N=N)))
def test_moyal(ops):
    R, S, T, W = ops
    lhs = phase_inner(cohen(R, S), cohen(T, W))
    rhs = hs_inner(S, W) * np.conj(hs_inner(R, T))
    assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs)) + 1e-10 * np.prod([np.linalg.norm(A) for A in ops])


@given(st.sampled_from([3, 5]).flatmap(lambda N: operators(count=2, N=N)))
def test_cohen_inversion(ops):
    S, T = ops
    Sn = S / np.linalg.norm(S)
    assert np.abs(cohen_adjoint(Sn, cohen(Sn, T)) - T).max() < 1e-10


@given(st.sampled_from([3, 5]).flatmap(lambda N: operators(count=4, N=N)))
def test_twisted_relation(ops):
    S, T, R, W = ops
    lhs = twisted_convolution(cohen(S, T), cohen(R, W))
    rhs = hs_inner(W, S) * cohen(R, T)
    scale = np.prod([np.linalg.norm(A) for A in ops])
    assert np.abs(lhs - rhs).max() < 1e-10 * scale


@given(st.data())
def test_cocycle(data):
    N = data.draw(moduli)
    (S,) = data.draw(operators(N=N))
    p, q = data.draw(points(N)), data.draw(points(N))
    lhs = gamma_shift(q[:2], q[2:], gamma_shift(p[:2], p[2:], S))
    s = [(a + b) % N for a, b in zip(p, q)]
    rhs = cocycle_phase(p[:2], p[2:], q[:2], q[2:], N) * gamma_shift(s[:2], s[2:], S)
    assert np.abs(lhs - rhs).max() < 1e-12 * max(1.0, np.abs(S).max())


@given(st.data())
def test_gamma_is_unitary(data):
    N = data.draw(moduli)
    S, T = data.draw(operators(count=2, N=N))
    p = data.draw(points(N))
    a = hs_inner(gamma_shift(p[:2], p[2:], S), gamma_shift(p[:2], p[2:], T))
    assert abs(a - hs_inner(S, T)) < 1e-10


@given(st.data())
def test_stft_inversion(data):
    N = data.draw(moduli)
    f = data.draw(carray((N,)))
    g = data.draw(carray((N,)).filter(nonzero))
    assert np.abs(stft_adjoint(stft(f, g), g) / np.vdot(g, g) - f).max() < 1e-10


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_io_round_trip(r, c, data):
    A = data.draw(
        carray((r, c))
        | hnp.arrays(complex, (r, c), elements=st.complex_numbers(allow_nan=False, allow_infinity=False))
    )
    assert np.array_equal(loads_csv(dumps_csv(A)), A)
    assert np.array_equal(loads_bin(dumps_bin(A)), A)
