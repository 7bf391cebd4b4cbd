"""Dense complex linear algebra on composite Hilbert spaces.

All operators are plain ``numpy`` arrays of dtype complex, stored row-major.
Tensor factors are ordered left to right as they appear in the product,
index 0 first; every module in the package follows this convention.
Target systems are small (at most two copies of two qutrits, side 81),
so everything is dense.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeError, ValidationError

HERMITICITY_TOL = 1e-9

_LETTERS = "abcdefghijklmnopqrstuvwx"


def dag(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def hermiticity_defect(m: np.ndarray) -> float:
    """Max-norm distance of ``m`` from its conjugate transpose."""
    m = np.asarray(m)
    return float(np.abs(m - m.conj().T).max())


def is_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> bool:
    """True if ``m`` is square and Hermitian within ``tol`` (absolute, max-norm)."""
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and hermiticity_defect(m) <= tol


def tensor(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more operators (or vectors), left to right."""
    if not factors:
        raise ShapeError("tensor() needs at least one factor")
    return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))


def _check_square(m: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    side = int(np.prod(dims))
    if m.ndim != 2 or m.shape != (side, side):
        raise ShapeError(
            f"operator shape {m.shape} does not match subsystem dims {tuple(dims)}"
        )
    return m


def partial_trace(
    m: np.ndarray, dims: Sequence[int], traced: Iterable[int]
) -> np.ndarray:
    """Trace out the tensor factors listed in ``traced`` (0-based indices).

    Parameters
    ----------
    m : square operator on the full space described by ``dims``.
    dims : side length of each tensor factor, in order.
    traced : factor indices to trace over.

    Returns
    -------
    Operator on the remaining factors, in their original order. The trace
    of the output equals the trace of the input.
    """
    dims = list(dims)
    n = len(dims)
    m = _check_square(m, dims)
    traced_set = set(int(k) for k in traced)
    if not traced_set.issubset(range(n)):
        raise ShapeError(f"traced indices {sorted(traced_set)} invalid for {n} factors")

    row = [_LETTERS[k] for k in range(n)]
    col = [_LETTERS[n + k] for k in range(n)]
    for k in traced_set:
        col[k] = row[k]
    keep = [k for k in range(n) if k not in traced_set]
    out = "".join(row[k] for k in keep) + "".join(_LETTERS[n + k] for k in keep)
    sub = "".join(row) + "".join(col) + "->" + out
    res = np.einsum(sub, m.reshape(dims + dims))
    side = int(np.prod([dims[k] for k in keep])) if keep else 1
    return res.reshape(side, side)


def permute_subsystems(
    m: np.ndarray, dims: Sequence[int], perm: Sequence[int]
) -> np.ndarray:
    """Reorder tensor factors of a square operator.

    ``perm[k]`` is the index of the input factor that becomes output factor
    ``k``, so ``permute_subsystems(tensor(A, B), (dA, dB), [1, 0])`` equals
    ``tensor(B, A)``. The operation conjugates by a permutation unitary and
    therefore preserves the spectrum and the Frobenius norm.
    """
    dims = list(dims)
    n = len(dims)
    m = _check_square(m, dims)
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        raise ShapeError(f"{perm} is not a permutation of 0..{n - 1}")
    axes = perm + [p + n for p in perm]
    side = int(np.prod(dims))
    return m.reshape(dims + dims).transpose(axes).reshape(side, side)


def eig_hermitian(
    m: np.ndarray, tol: float = HERMITICITY_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian operator.

    Validates Hermiticity within ``tol`` first, then returns
    ``(eigenvalues, eigenvectors)`` with real eigenvalues in ascending order
    and orthonormal eigenvectors in the columns of the second array.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise ValidationError(
            f"matrix is not Hermitian: max |M - M^dag| = {defect:.3e} > tol {tol:.1e}"
        )
    vals, vecs = np.linalg.eigh(m)
    return vals, vecs
