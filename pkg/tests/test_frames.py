import itertools

import numpy as np
import pytest

import oracles

from qtfa.errors import NotAFrameError, ParameterError
from qtfa.frames import (
    Lattice,
    OperatorGaborSystem,
    dual_window,
    frame_bounds,
    frame_operator,
    gabor_analysis,
    gabor_dual_window,
    gabor_frame_bounds,
    gabor_frame_operator,
    gabor_synthesis,
    lattice_pair_points,
    operator_analysis,
    operator_synthesis,
    phase_gabor_frame_operator,
    reconstruct,
    span_rank_test,
    superoperator,
    tensor_symbol_system,
    weyl_lifted_frame,
)
from qtfa.norms import INF, MixedNormParams, lattice_mixed_norm, operator_modulation_norm, random_operator
from qtfa.operators import kernel_to_symbol, rank_one
from qtfa.tfa import gaussian_window


def test_lattice_validation():
    L = Lattice(15, 3, 5)
    assert L.shape == (5, 3) and len(L) == 15 and np.isclose(L.cell, 1.0)
    with pytest.raises(ParameterError):
        Lattice(15, 4, 3)
    with pytest.raises(ParameterError):
        Lattice(8, 1, 1)


def test_lattice_pair_points_order():
    L = Lattice(5, 5, 1)
    pts = lattice_pair_points(L, Lattice(5, 1, 5))
    assert pts.shape == (25, 4)
    assert tuple(pts[0]) == (0, 0, 0, 0) and tuple(pts[1]) == (0, 0, 1, 0)


def test_function_frame_full_lattice_tight(cvec):
    g = cvec(7)
    A, B = gabor_frame_bounds(g, Lattice(7, 1, 1))
    assert abs(A - np.linalg.norm(g) ** 2) < 1e-10 and abs(B - A) < 1e-10


def test_function_frame_reconstruction(cvec):
    N = 15
    L = Lattice(N, 3, 3)
    g = gaussian_window(N)
    f = cvec(N)
    gd = gabor_dual_window(g, L)
    assert np.abs(gabor_synthesis(gd, L, gabor_analysis(g, L, f)) - f).max() < 1e-10
    S = gabor_frame_operator(g, L)
    assert np.abs(S - S.conj().T).max() < 1e-12


@pytest.mark.parametrize("step", [1, 3])
def test_gaussian_tensor_frame_bounds(step):
    N = 15
    L = Lattice(N, step, step)
    g = gaussian_window(N)
    A1, B1 = gabor_frame_bounds(g, L)
    A, B = frame_bounds(rank_one(g, g), L, L)
    assert A > 0 and B >= A
    assert abs(A - A1 * A1) < 1e-10 and abs(B - B1 * B1) < 1e-10


def test_gaussian_frame_bounds_frozen():
    N = 15
    g = oracles.gaussian(N)
    rows = [oracles.shift_matrix((x, w), N) @ g for x in range(0, N, 3) for w in range(0, N, 3)]
    ev = np.linalg.eigvalsh(9 / N * sum(np.outer(r, r.conj()) for r in rows))
    A1, B1 = gabor_frame_bounds(gaussian_window(N), Lattice(N, 3, 3))
    assert abs(A1 - ev[0]) < 1e-12 and abs(B1 - ev[-1]) < 1e-12
    assert abs(A1 - 0.8646800) < 1e-6
    assert abs(B1 - 1.2032705) < 1e-6


def test_operator_reconstruction(cvec):
    N = 15
    L = Lattice(N, 3, 3)
    g = gaussian_window(N)
    T = cvec(N, N)
    assert np.abs(reconstruct(T, rank_one(g, g), L, L) - T).max() < 1e-9


def test_tensor_dual_is_tensor_of_duals():
    N = 15
    L = Lattice(N, 3, 3)
    g = gaussian_window(N)
    gd = gabor_dual_window(g, L)
    assert np.abs(dual_window(rank_one(g, g), L, L) - rank_one(gd, gd)).max() < 1e-10


def test_full_lattice_tight(cvec):
    N = 5
    L = Lattice(N, 1, 1)
    S = cvec(N, N)
    A, B = frame_bounds(S, L, L)
    n2 = np.linalg.norm(S) ** 2
    assert abs(A - n2) < 1e-10 * n2 and abs(B - n2) < 1e-10 * n2
    T = cvec(N, N)
    assert np.abs(reconstruct(T, S, L, L) - T).max() < 1e-11


def test_analysis_and_synthesis_agree_with_system(cvec):
    N = 9
    L = Lattice(N, 3, 3)
    S, T = cvec(N, N), cvec(N, N)
    sys_ = OperatorGaborSystem.on_lattices(S, L, L)
    C = operator_analysis(S, L, L, T)
    assert np.abs(sys_.analysis(T).reshape(C.shape) - C).max() < 1e-10
    c = cvec(*C.shape)
    assert np.abs(sys_.synthesis(c) - operator_synthesis(S, L, L, c)).max() < 1e-10


def test_synthesis_after_analysis_is_frame_operator(cvec):
    N = 9
    L = Lattice(N, 3, 3)
    S, T = cvec(N, N), cvec(N, N)
    E = frame_operator(S, S, L, L)
    lhs = operator_synthesis(S, L, L, operator_analysis(S, L, L, T))
    assert np.abs(lhs.ravel() - E @ T.ravel()).max() < 1e-9


def test_frame_operator_commutes_with_lattice_shifts(cvec):
    N = 5
    Lw, Lz = Lattice(N, 1, 5), Lattice(N, 5, 1)
    S = cvec(N, N)
    E = frame_operator(S, S, Lw, Lz)
    for lam in Lw.points:
        for mu in Lz.points:
            G = superoperator(tuple(lam), tuple(mu), N)
            assert np.abs(G @ E - E @ G).max() < 1e-10


def test_superoperator(cvec):
    N = 5
    X = cvec(N, N)
    from qtfa.shifts import gamma_shift

    G = superoperator((1, 2), (3, 4), N)
    assert np.abs(G @ X.ravel() - gamma_shift((1, 2), (3, 4), X).ravel()).max() < 1e-12


def test_undersampled_is_not_a_frame(cvec):
    N = 5
    L = Lattice(N, 5, 5)
    S = cvec(N, N)
    sys_ = OperatorGaborSystem.on_lattices(S, L, L)
    assert not sys_.is_frame()
    with pytest.raises(NotAFrameError) as info:
        dual_window(S, L, L)
    assert abs(info.value.smallest_eigenvalue) < 1e-10


@pytest.mark.parametrize("N", [3, 5, 7])
def test_span_rank_full_lattice(N, cvec):
    L = Lattice(N, 1, 1)
    out = span_rank_test(cvec(N, N), L, L)
    assert out == {"rank": N * N, "dimension": N * N, "frame": True}


def test_span_rank_deficient_lattice(cvec):
    L = Lattice(5, 5, 5)
    assert span_rank_test(cvec(5, 5), L, L)["rank"] == 1


def _all_points(N):
    i = np.arange(N)
    return np.stack(np.meshgrid(i, i, i, i, indexing="ij"), -1).reshape(-1, 4)


def test_weyl_lift_preserves_bounds(cvec):
    N = 5
    S = cvec(N, N)
    G = kernel_to_symbol(S)
    pts = _all_points(N)
    for sel, measure in [(pts, 1 / N**2), (pts[pts[:, 0] % 5 == 0], 5 / N**2)]:
        ev = np.linalg.eigvalsh(phase_gabor_frame_operator(G, sel, measure))
        if ev[0] <= 1e-10 * ev[-1]:
            continue
        A, B = weyl_lifted_frame(G, sel, measure).bounds()
        assert abs(A - ev[0]) < 1e-9 and abs(B - ev[-1]) < 1e-9


def test_full_lattice_bounds_equal_on_both_sides(cvec):
    N = 5
    S = cvec(N, N)
    pts = _all_points(N)
    A_fn = np.linalg.eigvalsh(phase_gabor_frame_operator(kernel_to_symbol(S), pts, 1 / N**2))
    A, B = frame_bounds(S, Lattice(N, 1, 1), Lattice(N, 1, 1))
    assert abs(A - A_fn[0]) < 1e-9 and abs(B - A_fn[-1]) < 1e-9


def test_tensor_symbol_generates_phase_space_frame(cvec):
    N = 5
    f, h = cvec(N), cvec(N)
    Lw, Lz = Lattice(N, 1, 5), Lattice(N, 5, 1)
    W, pts, mu = tensor_symbol_system(f, h, Lw, Lz)
    ev = np.linalg.eigvalsh(phase_gabor_frame_operator(W, pts, mu))
    A, B = OperatorGaborSystem.on_lattices(rank_one(f, h), Lw, Lz).bounds()
    assert abs(ev[0] - A) < 1e-9 and abs(ev[-1] - B) < 1e-9


def test_analysis_bounded_on_modulation_spaces(rng):
    N = 9
    L = Lattice(N, 3, 3)
    g = gaussian_window(N)
    S = rank_one(g, g)
    for p, q in [(1, 1), (2, 2), (1, INF)]:
        P = MixedNormParams(p, q)
        ratios = []
        for _ in range(20):
            T = random_operator(rng, N)
            c = operator_analysis(S, L, L, T)
            ratios.append(lattice_mixed_norm(c, L, L, P) / operator_modulation_norm(T, params=P))
        assert np.isfinite(max(ratios)) and max(ratios) < 10


def test_system_rank_and_zero_window():
    N = 3
    L = Lattice(N, 1, 1)
    assert OperatorGaborSystem.on_lattices(np.zeros((N, N)), L, L).rank() == 0
    assert len(list(itertools.product(L.points, L.points))) == 81
