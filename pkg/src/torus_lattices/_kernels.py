"""Vector-enumeration kernels used by the isometry search.

Two interchangeable implementations: numba-compiled loops and a vectorized
numpy path.  ``TORUS_LATTICES_KERNEL=numpy`` forces the numpy path; the
default is numba when it imports.  Both work in int64, so callers must go
through :func:`check_int64_budget` first.
"""
from __future__ import annotations

import os

import numpy as np

_INT64_LIMIT = 2 ** 62

try:
    from numba import njit
    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAS_NUMBA = False


def check_int64_budget(gram: np.ndarray, bound: int) -> None:
    """Abort loudly if ``x^T G y`` could overflow int64 on the search box."""
    n = gram.shape[0]
    worst = n * n * int(np.abs(gram).max(initial=0)) * bound * bound
    if worst >= _INT64_LIMIT:
        raise OverflowError(
            f"Gram entries {int(np.abs(gram).max())} with coefficient bound {bound} "
            "exceed the int64 budget of the search kernels")


def _box(rank: int, bound: int) -> np.ndarray:
    side = np.arange(-bound, bound + 1, dtype=np.int64)
    grids = np.meshgrid(*([side] * rank), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


# -- numpy path ----------------------------------------------------------

def vectors_of_norm_numpy(gram: np.ndarray, bound: int, target: int) -> np.ndarray:
    vecs = _box(gram.shape[0], bound)
    norms = np.einsum("ij,jk,ik->i", vecs, gram, vecs)
    return vecs[norms == target]


def pair_products_numpy(left: np.ndarray, gram: np.ndarray, right: np.ndarray) -> np.ndarray:
    return left @ gram @ right.T


# -- numba path ----------------------------------------------------------

if HAS_NUMBA:

    @njit(cache=True)
    def _vectors_of_norm_nb(gram, bound, target):
        n = gram.shape[0]
        side = 2 * bound + 1
        total = side ** n
        out = np.empty((total, n), dtype=np.int64)
        count = 0
        v = np.empty(n, dtype=np.int64)
        for idx in range(total):
            rest = idx
            for k in range(n - 1, -1, -1):
                v[k] = rest % side - bound
                rest //= side
            acc = 0
            for i in range(n):
                if v[i] == 0:
                    continue
                row = 0
                for j in range(n):
                    row += gram[i, j] * v[j]
                acc += v[i] * row
            if acc == target:
                out[count, :] = v
                count += 1
        return out[:count].copy()

    @njit(cache=True)
    def _pair_products_nb(left, gram, right):
        a = left.shape[0]
        b = right.shape[0]
        n = gram.shape[0]
        tmp = np.zeros((a, n), dtype=np.int64)
        for i in range(a):
            for k in range(n):
                s = 0
                for j in range(n):
                    s += left[i, j] * gram[j, k]
                tmp[i, k] = s
        out = np.empty((a, b), dtype=np.int64)
        for i in range(a):
            for m in range(b):
                s = 0
                for k in range(n):
                    s += tmp[i, k] * right[m, k]
                out[i, m] = s
        return out

    def vectors_of_norm_numba(gram: np.ndarray, bound: int, target: int) -> np.ndarray:
        return _vectors_of_norm_nb(gram, np.int64(bound), np.int64(target))

    def pair_products_numba(left: np.ndarray, gram: np.ndarray, right: np.ndarray) -> np.ndarray:
        return _pair_products_nb(np.ascontiguousarray(left), gram, np.ascontiguousarray(right))


def backend() -> str:
    choice = os.environ.get("TORUS_LATTICES_KERNEL", "").strip().lower()
    if choice == "numpy" or not HAS_NUMBA:
        return "numpy"
    if choice not in ("", "numba"):
        raise ValueError(f"unknown TORUS_LATTICES_KERNEL={choice!r}")
    return "numba"


def vectors_of_norm(gram: np.ndarray, bound: int, target: int) -> np.ndarray:
    """All ``v`` in ``[-bound, bound]^n`` with ``v^T G v == target``.

    Rows come out in lexicographic box order.
    """
    if backend() == "numba":
        return vectors_of_norm_numba(gram, bound, target)
    return vectors_of_norm_numpy(gram, bound, target)


def pair_products(left: np.ndarray, gram: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Matrix of bilinear values ``left[i]^T G right[j]``."""
    if backend() == "numba":
        return pair_products_numba(left, gram, right)
    return pair_products_numpy(left, gram, right)
