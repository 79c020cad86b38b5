"""Command-line front end: identity suites, transforms, frame and norm runs.

Exit codes: 0 success, 1 a suite check failed or the system is not a frame,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import io as qio
from . import norms as nm
from . import operators as op
from . import suites
from .cohen import cohen
from .errors import NotAFrameError, QTFAError
from .frames import Lattice, OperatorGaborSystem
from .phase_space import double_symplectic_dft, modulus
from .tfa import gaussian_window, stft, wigner

logger = logging.getLogger("qtfa")

TRANSFORMS = ("stft", "wigner", "symbol", "spreading", "fw", "cohen", "fphi")


class UsageError(Exception):
    pass


# -- argument types ---------------------------------------------------------


def _odd_n(text: str) -> int:
    try:
        N = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"N must be an integer, got {text!r}") from None
    if N < 3 or N % 2 == 0:
        raise argparse.ArgumentTypeError(f"N must be odd and at least 3, got {N}")
    return N


def _seed(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return s


def _lattice(text: str) -> tuple[int, int]:
    try:
        a, b = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"lattice must be 'a,b', got {text!r}") from None
    if a < 1 or b < 1:
        raise argparse.ArgumentTypeError("lattice steps must be positive")
    return a, b


def _exponent(text: str) -> float:
    try:
        return nm.parse_exponent(text)
    except (QTFAError, ValueError):
        raise argparse.ArgumentTypeError(f"exponent must be a number >= 1 or 'inf', got {text!r}") from None


# -- windows ----------------------------------------------------------------


def _signal_window(spec: str, N: int) -> np.ndarray:
    """``gauss``, ``gauss:WIDTH`` or a path to a signal file."""
    if spec == "gauss":
        return gaussian_window(N)
    if spec.startswith("gauss:"):
        try:
            width = float(spec[6:])
        except ValueError:
            raise UsageError(f"bad Gaussian width in {spec!r}") from None
        if width <= 0:
            raise UsageError("Gaussian width must be positive")
        return gaussian_window(N, width=width)
    v = qio.read_signal_or_operator(spec)
    if v.ndim != 1:
        raise UsageError(f"{spec}: expected a signal, got a {v.shape[0]}x{v.shape[1]} matrix")
    if v.shape[0] != N:
        raise UsageError(f"{spec}: signal has length {v.shape[0]}, expected {N}")
    return v


def window_signal(spec: str, N: int) -> np.ndarray:
    if spec.startswith("file:"):
        return _signal_window(spec[5:], N)
    if spec == "gauss" or spec.startswith("gauss:"):
        return _signal_window(spec, N)
    raise UsageError(f"this transform needs a signal window (gauss, gauss:WIDTH or file:PATH), got {spec!r}")


def window_operator(spec: str, N: int) -> np.ndarray:
    """Parse ``gauss[:WIDTH]``, ``file:PATH`` or ``tensor:A,B`` into an N x N window."""
    if spec == "gauss" or spec.startswith("gauss:"):
        g = _signal_window(spec, N)
        return op.rank_one(g, g)
    if spec.startswith("file:"):
        M = qio.read_signal_or_operator(spec[5:])
        if M.ndim == 1:
            if M.shape[0] != N:
                raise UsageError(f"{spec[5:]}: signal has length {M.shape[0]}, expected {N}")
            return op.rank_one(M, M)
        if M.shape != (N, N):
            raise UsageError(f"{spec[5:]}: expected a {N}x{N} operator, got {M.shape[0]}x{M.shape[1]}")
        return M
    if spec.startswith("tensor:"):
        parts = spec[7:].split(",")
        if len(parts) != 2:
            raise UsageError(f"tensor window needs two factors 'tensor:A,B', got {spec!r}")
        f, g = (_signal_window(p.strip(), N) for p in parts)
        return op.rank_one(f, g)
    raise UsageError(f"unknown window {spec!r}; use gauss, gauss:WIDTH, file:PATH or tensor:A,B")


# -- commands ---------------------------------------------------------------


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_json(path: Path, obj) -> None:
    qio.atomic_write(path, (json.dumps(obj, indent=2, sort_keys=True) + "\n").encode())


def cmd_suite(args) -> int:
    if args.n is None:
        args.n = 5
    report = suites.run_suite(args.name, args.n, args.seed)
    path = _out_dir(args) / f"suite-{args.name}-N{args.n}-seed{args.seed}.json"
    qio.atomic_write(path, suites.dumps_report(report).encode())
    for r in report["results"]:
        status = "PASS" if r["pass"] else "FAIL"
        print(f"{status} {r['suite']}: {r['identity']} (max error {r['max_error']:.2e}, tolerance {r['tolerance']:.0e})")
    print(f"report written to {path}")
    return 0 if report["pass"] else 1


def _check_n(args, N: int) -> None:
    if args.n is not None and args.n != N:
        raise UsageError(f"--n {args.n} disagrees with the input size {N}")
    modulus(N)


def _load(path: str) -> np.ndarray:
    return qio.read_signal_or_operator(path)


def _operator_input(path: str) -> np.ndarray:
    M = _load(path)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise UsageError(f"{path}: expected a square operator matrix")
    return M


def _signal_input(path: str) -> np.ndarray:
    v = _load(path)
    if v.ndim != 1:
        raise UsageError(f"{path}: expected a signal (1 x N or N x 1)")
    return v


def cmd_transform(args) -> int:
    name = args.transform
    inputs = args.inputs
    want = {"wigner": (1, 2), "fphi": (1, 1)}.get(name, (1, 1))
    if not want[0] <= len(inputs) <= want[1]:
        raise UsageError(f"{name} takes {want[0]}..{want[1]} input files, got {len(inputs)}")
    if name == "stft":
        f = _signal_input(inputs[0])
        _check_n(args, f.shape[0])
        result = stft(f, window_signal(args.window, f.shape[0]))
    elif name == "wigner":
        f = _signal_input(inputs[0])
        g = _signal_input(inputs[1]) if len(inputs) == 2 else f
        if g.shape != f.shape:
            raise UsageError("wigner inputs have different lengths")
        _check_n(args, f.shape[0])
        result = wigner(f, g)
    elif name in ("symbol", "spreading", "fw", "cohen"):
        S = _operator_input(inputs[0])
        _check_n(args, S.shape[0])
        if name == "symbol":
            result = op.kernel_to_symbol(S)
        elif name == "spreading":
            result = op.spreading(S)
        elif name == "fw":
            result = op.fourier_wigner(S)
        else:
            result = cohen(window_operator(args.window, S.shape[0]), S)
    else:
        F = qio.read_matrix(inputs[0])
        n2 = F.shape[0]
        N = int(round(np.sqrt(n2)))
        if F.shape != (n2, n2) or N * N != n2:
            raise UsageError(f"{inputs[0]}: fphi expects an N^2 x N^2 table, got {F.shape[0]}x{F.shape[1]}")
        _check_n(args, N)
        result = double_symplectic_dft(F.reshape(N, N, N, N))
    out = _out_dir(args)
    stem = args.name or name
    path = qio.write_matrix(out / f"{stem}.{args.format}", result, args.format)
    print(f"wrote {path}")
    if args.ppm:
        ppm = qio.write_heatmap(out / f"{stem}.ppm", result)
        print(f"wrote {ppm}")
    return 0


def cmd_frame(args) -> int:
    N = 15 if args.n is None else args.n
    a, b = args.lattice or (1, 1)
    try:
        L = Lattice(N, a, b)
    except QTFAError as exc:
        raise UsageError(str(exc)) from None
    S = window_operator(args.window, N)
    system = OperatorGaborSystem.on_lattices(S, L, L)
    summary = {"N": N, "lattice": [a, b], "window": args.window, "seed": args.seed, "points": int(system.points.shape[0])}
    out = _out_dir(args)
    path = out / f"frame-N{N}-a{a}-b{b}.json"
    try:
        dual = system.dual()
    except NotAFrameError as exc:
        summary.update(frame=False, smallest_eigenvalue=float(exc.smallest_eigenvalue), message=str(exc))
        _write_json(path, summary)
        print(f"not a frame: smallest eigenvalue {exc.smallest_eigenvalue:.3e}; report written to {path}")
        return 1
    A, B = system.bounds()
    rng = np.random.Generator(np.random.PCG64(args.seed))
    T = nm.random_operator(rng, N)
    err = float(np.max(np.abs(system.reconstruct(T, dual) - T)))
    dual_path = qio.write_matrix(out / f"frame-N{N}-a{a}-b{b}-dual.{args.format}", dual.window, args.format)
    summary.update(
        frame=True,
        lower_bound=A,
        upper_bound=B,
        tight=bool(abs(B - A) <= 1e-10 * B),
        reconstruction_error=err,
        dual_window=dual_path.name,
    )
    _write_json(path, summary)
    print(f"frame bounds A={A:.6g} B={B:.6g}, reconstruction error {err:.2e}; report written to {path}")
    return 0


def cmd_norm(args) -> int:
    T = _operator_input(args.input)
    N = T.shape[0]
    _check_n(args, N)
    params = nm.MixedNormParams(args.p, args.q)
    try:
        weight = nm.Weight.parse(args.weight, N)
    except QTFAError as exc:
        raise UsageError(str(exc)) from None
    window = window_operator(args.window, N)
    value = nm.operator_modulation_norm(T, window, params, None if weight.is_trivial else weight)
    summary = {
        "N": N,
        "p": _json_exponent(params.p),
        "q": _json_exponent(params.q),
        "weight": weight.spec,
        "window": args.window,
        "norm": value,
        "hilbert_schmidt": float(np.linalg.norm(T)),
    }
    text = json.dumps(summary, indent=2, sort_keys=True) + "\n"
    if args.name:
        qio.atomic_write(_out_dir(args) / f"{args.name}.json", text.encode())
    sys.stdout.write(text)
    return 0


def cmd_inclusion(args) -> int:
    N = 9 if args.n is None else args.n
    result = nm.inclusion_experiment(N, args.p, args.q, draws=args.draws, seed=args.seed)
    summary = {k: (_json_exponent(v) if isinstance(v, float) else v) for k, v in result.items() if not isinstance(v, np.ndarray)}
    summary.update(N=N, p=_json_exponent(args.p), q=_json_exponent(args.q), draws=args.draws, seed=args.seed)
    path = _out_dir(args) / f"inclusion-N{N}-p{args.p:g}-q{args.q:g}.json"
    _write_json(path, summary)
    sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return 0


def _json_exponent(v):
    return "inf" if v == float("inf") else v


def print_listing() -> int:
    for name, checks in suites.listing().items():
        for c in checks:
            print(f"{name:<10} {c['identity']}  [{c['topic']}]")
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_odd_n, default=None, help="odd modulus N >= 3")
    common.add_argument("--seed", type=_seed, default=0, help="unsigned 64-bit seed (default 0)")
    common.add_argument("--window", default="gauss", help="gauss, gauss:WIDTH, file:PATH or tensor:A,B")
    common.add_argument("--lattice", type=_lattice, default=None, help="lattice steps a,b dividing N")
    common.add_argument("--p", type=_exponent, default=2.0, help="inner exponent (number >= 1 or inf)")
    common.add_argument("--q", type=_exponent, default=2.0, help="outer exponent (number >= 1 or inf)")
    common.add_argument("--weight", default="one", help="one or poly:s")
    common.add_argument("--out", default=".", help="output directory")
    common.add_argument("--format", choices=("csv", "bin"), default="csv", help="matrix output format")
    common.add_argument("--list", dest="list_sub", action="store_true", help="list suites and the identities they check")

    parser = argparse.ArgumentParser(prog="qtfa", description="Finite quantum time-frequency analysis on Z_N.")
    parser.add_argument("--version", action="version", version=f"qtfa {__version__}")
    parser.add_argument("--list", action="store_true", help="list suites and the identities they check")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("suite", parents=[common], help="run an identity suite and write a JSON report")
    p.add_argument("--name", choices=suites.SUITE_NAMES, default="all")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("transform", parents=[common], help="compute a transform of matrix files")
    p.add_argument("transform", choices=TRANSFORMS)
    p.add_argument("inputs", nargs="+", help="input matrix files (CSV or binary)")
    p.add_argument("--name", default=None, help="output file stem (default: the transform name)")
    p.add_argument("--ppm", action="store_true", help="also write a magnitude heatmap")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("frame", parents=[common], help="operator Gabor frame bounds, dual window and reconstruction")
    p.set_defaults(func=cmd_frame)

    p = sub.add_parser("norm", parents=[common], help="operator modulation norm of a matrix file")
    p.add_argument("input")
    p.add_argument("--name", default=None, help="also write NAME.json to --out")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("inclusion", parents=[common], help="ratio bounds between operator and symbol norms")
    p.add_argument("--draws", type=int, default=100)
    p.set_defaults(func=cmd_inclusion)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.list or getattr(args, "list_sub", False):
        return print_listing()
    if args.command is None:
        parser.print_usage(sys.stderr)
        print("qtfa: error: a command is required (or --list)", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, QTFAError) as exc:
        print(f"qtfa: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"qtfa: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
