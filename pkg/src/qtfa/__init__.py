"""Quantum time-frequency analysis on the finite group Z_N (N odd).

Signals are length-N complex vectors, operators are N x N kernels, phase-space
functions are N x N arrays indexed ``[x, omega]`` and double phase-space
functions are N**4 arrays indexed ``[w1, w2, z1, z2]``.
"""

__version__ = "0.1.0"

from ._accel import backend
from .cohen import (
    CohenTransform,
    cohen,
    cohen_adjoint,
    cohen_point,
    localisation_operator,
    projection,
    reproduce,
    reproducing_kernel,
    twisted_convolution,
)
from .errors import (
    DecompositionError,
    DimensionError,
    FormatError,
    InvalidWindowError,
    NotAFrameError,
    ParameterError,
    QTFAError,
)
from .frames import Lattice, OperatorGaborSystem, frame_bounds, reconstruct
from .norms import INF, MixedNormParams, Weight, mixed_norm, operator_modulation_norm
from .operators import (
    fourier_wigner,
    hs_inner,
    hs_norm,
    kernel_to_symbol,
    rank_one,
    spreading,
    spreading_to_operator,
    symbol_to_operator,
)
from .phase_space import double_symplectic_dft, modulus, symplectic_dft
from .shifts import beta_shift, gamma_shift, map_U, map_U_inv
from .tfa import gaussian_window, stft, tf_shift, wigner

__all__ = [
    "INF",
    "CohenTransform",
    "DecompositionError",
    "DimensionError",
    "FormatError",
    "InvalidWindowError",
    "Lattice",
    "MixedNormParams",
    "NotAFrameError",
    "OperatorGaborSystem",
    "ParameterError",
    "QTFAError",
    "Weight",
    "__version__",
    "backend",
    "beta_shift",
    "cohen",
    "cohen_adjoint",
    "cohen_point",
    "double_symplectic_dft",
    "fourier_wigner",
    "frame_bounds",
    "gamma_shift",
    "gaussian_window",
    "hs_inner",
    "hs_norm",
    "kernel_to_symbol",
    "localisation_operator",
    "map_U",
    "map_U_inv",
    "mixed_norm",
    "modulus",
    "operator_modulation_norm",
    "projection",
    "rank_one",
    "reconstruct",
    "reproduce",
    "reproducing_kernel",
    "spreading",
    "spreading_to_operator",
    "stft",
    "symbol_to_operator",
    "symplectic_dft",
    "tf_shift",
    "twisted_convolution",
    "wigner",
]
