import os
import subprocess
import sys

import numpy as np
import pytest

import oracles
from qtfa import _kernels as K
from qtfa import backend
from qtfa.phase_space import modulus


@pytest.mark.parametrize("N", [3, 5])
def test_cohen_table_backends(N, cvec):
    S, T = cvec(N, N), cvec(N, N)
    ref = oracles.cohen(S, T)
    assert np.abs(K._cohen_table_numba(S, T, modulus(N).powers) - ref).max() < 1e-11
    assert np.abs(K._cohen_table_numpy(S, T) - ref).max() < 1e-11


@pytest.mark.parametrize("N", [3, 5])
def test_cohen_synthesis_backends(N, cvec):
    S, F = cvec(N, N), cvec(N, N, N, N)
    ref = oracles.cohen_adjoint(S, F)
    assert np.abs(K._cohen_synthesis_numba(S, F, modulus(N).powers) - ref).max() < 1e-11
    assert np.abs(K._cohen_synthesis_numpy(S, F) - ref).max() < 1e-11


def test_twisted_backends(cvec):
    N = 3
    m = modulus(N)
    F, G = cvec(N, N, N, N), cvec(N, N, N, N)
    ref = oracles.twisted(F, G)
    assert np.abs(K._twisted_numba(K._pretwist(F, m), G, m.powers) - ref).max() < 1e-12
    assert np.abs(K._twisted_numpy(F, G) - ref).max() < 1e-12


def test_twisted_backends_agree_at_larger_N(cvec):
    N = 7
    m = modulus(N)
    F, G = cvec(N, N, N, N), cvec(N, N, N, N)
    a = K._twisted_numba(K._pretwist(F, m), G, m.powers)
    assert np.abs(a - K._twisted_numpy(F, G)).max() < 1e-10


def test_dispatch_uses_active_backend(cvec):
    S, T = cvec(5, 5), cvec(5, 5)
    assert np.abs(K.cohen_table(S, T) - K._cohen_table_numpy(S, T)).max() < 1e-11
    assert backend() in ("numba", "numpy")


def test_no_numba_environment_forces_numpy():
    code = "import qtfa, numpy as np; print(qtfa.backend()); print(abs(qtfa.cohen(np.eye(3), np.eye(3))).max())"
    env = dict(os.environ, QTFA_NO_NUMBA="1")
    r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert r.returncode == 0, r.stderr
    name, value = r.stdout.split()
    assert name == "numpy" and abs(float(value) - 3) < 1e-12
