"""Backend selection and batched evaluation of j0-weighted sums.

Two interchangeable backends evaluate j0(z) = sin(z)/z tables and weighted
sums: a compiled C extension and a pure NumPy fallback.  The compiled one is
used when importable; ``LCDISC_BACKEND=numpy|compiled`` or :func:`set_backend`
overrides the choice.  Within a backend results are deterministic because
every summation order is fixed.
"""

from __future__ import annotations

import os

import numpy as np

from lcdisc._kernels import _fallback

try:
    from lcdisc._kernels import _core
except ImportError:
    _core = None

_GEMM_CHUNK_ROWS = 256


def _as_vec(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.float64)


class _CompiledBackend:
    name = "compiled"

    @staticmethod
    def j0_sum(r: np.ndarray, k: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            inv_k = np.where(k > 0.0, 1.0 / k, 0.0)
        out_re = np.empty(r.shape[0])
        out_im = np.empty(r.shape[0])
        _core.j0_sum(_as_vec(r), _as_vec(k), inv_k,
                     _as_vec(coeffs.real), _as_vec(coeffs.imag),
                     out_re, out_im)
        return out_re + 1j * out_im

    @staticmethod
    def j0_table(r: np.ndarray, k: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            inv_k = np.where(k > 0.0, 1.0 / k, 0.0)
        out = np.empty((r.shape[0], k.shape[0]))
        _core.j0_table(_as_vec(r), _as_vec(k), inv_k, out)
        return out


class _NumpyBackend:
    name = "numpy"

    @staticmethod
    def j0_sum(r: np.ndarray, k: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
        return _fallback.j0_sum(r, k, np.asarray(coeffs, dtype=np.complex128))

    @staticmethod
    def j0_table(r: np.ndarray, k: np.ndarray) -> np.ndarray:
        return _fallback.j0_table(r, k)


_BACKENDS = {"numpy": _NumpyBackend}
if _core is not None:
    _BACKENDS["compiled"] = _CompiledBackend


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def _initial_backend():
    requested = os.environ.get("LCDISC_BACKEND")
    if requested is not None:
        if requested not in _BACKENDS:
            raise ImportError(
                f"LCDISC_BACKEND={requested!r} is not available; "
                f"choose from {sorted(_BACKENDS)}"
            )
        return _BACKENDS[requested]
    return _BACKENDS.get("compiled", _NumpyBackend)


_ACTIVE = _initial_backend()


def backend_name() -> str:
    return _ACTIVE.name


def set_backend(name: str) -> None:
    global _ACTIVE
    if name not in _BACKENDS:
        raise ValueError(
            f"unknown backend {name!r}; choose from {sorted(_BACKENDS)}"
        )
    _ACTIVE = _BACKENDS[name]


def _check_k(k: np.ndarray) -> np.ndarray:
    k = _as_vec(k)
    if k.size and (k[0] < 0.0 or np.any(np.diff(k) < 0.0)):
        raise ValueError("k nodes must be nonnegative and sorted ascending")
    return k


def weighted_j0_sum(r: np.ndarray, k: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Return out[i] = sum_j coeffs[j] * j0(k[j] * r[i]) as complex128."""
    r = _as_vec(r)
    k = _check_k(k)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.shape != k.shape:
        raise ValueError("coeffs must have one entry per k node")
    return _ACTIVE.j0_sum(r, k, coeffs)


def weighted_j0_gemm(r: np.ndarray, k: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Batched form: out[i, m] = sum_j coeffs[j, m] * j0(k[j] * r[i]).

    The j0 table for a block of radii is built once and reused across all
    columns through a BLAS product, which is what makes time sweeps cheap.
    """
    r = _as_vec(r)
    k = _check_k(k)
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if coeffs.ndim != 2 or coeffs.shape[0] != k.shape[0]:
        raise ValueError("coeffs must have shape (len(k), n_columns)")
    c_re = np.ascontiguousarray(coeffs.real)
    c_im = np.ascontiguousarray(coeffs.imag)
    out = np.empty((r.shape[0], coeffs.shape[1]), dtype=np.complex128)
    for lo in range(0, r.shape[0], _GEMM_CHUNK_ROWS):
        sl = slice(lo, min(lo + _GEMM_CHUNK_ROWS, r.shape[0]))
        table = _ACTIVE.j0_table(r[sl], k)
        out[sl] = table @ c_re + 1j * (table @ c_im)
    return out
