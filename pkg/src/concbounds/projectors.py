"""Copy-pair exchange projectors and the two-copy overlap operator.

The two-copy space is ordered H1 (x) H2 (x) H1' (x) H2': the first copy
occupies factors 0 and 1, the second copy factors 2 and 3. The projectors
onto the antisymmetric and symmetric subspaces of each local copy pair act
on factors (0, 2) for subsystem 1 and (1, 3) for subsystem 2; they are built
on adjacent factors and moved into place with a single subsystem
permutation, the one tested code path for all embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, ValidationError
from .linalg import hermiticity_defect, permute_subsystems, tensor
from .states import BipartiteDims, DensityMatrix, as_dims

OPERATOR_HERM_TOL = 1e-10
IMAG_TOL = 1e-10

#: permutation taking the build ordering H1 H1' H2 H2' to H1 H2 H1' H2'
_EMBED_PERM = (0, 2, 1, 3)

VARIANTS = ("A", "B")


def swap_operator(d: int) -> np.ndarray:
    """Exchange operator S|i>|j> = |j>|i> on two d-level systems."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    s = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            s[j * d + i, i * d + j] = 1.0
    return s


def antisym_projector(d: int) -> np.ndarray:
    """Projector (I - S)/2 onto the antisymmetric subspace of H (x) H."""
    return (np.eye(d * d, dtype=complex) - swap_operator(d)) / 2.0


def sym_projector(d: int) -> np.ndarray:
    """Projector (I + S)/2 onto the symmetric subspace of H (x) H."""
    return (np.eye(d * d, dtype=complex) + swap_operator(d)) / 2.0


@dataclass(frozen=True, eq=False)
class CopyPairOperator:
    """Hermitian operator on the two-copy space (H1 (x) H2)^(x2)."""

    matrix: np.ndarray
    dims: BipartiteDims
    variant: str = "custom"

    def __post_init__(self):
        dims = as_dims(self.dims)
        mat = np.asarray(self.matrix, dtype=complex).copy()
        side = dims.total ** 2
        if mat.shape != (side, side):
            raise ShapeError(
                f"two-copy operator shape {mat.shape}, expected ({side}, {side})"
            )
        defect = hermiticity_defect(mat)
        if defect > OPERATOR_HERM_TOL:
            raise ValidationError(f"two-copy operator not Hermitian: defect {defect:.3e}")
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)


def two_copy_operator(dims, variant: str = "A") -> CopyPairOperator:
    """Two-copy overlap operator generating all bounds in the package.

    Variant "A" is P-(1) (x) (P-(2) - P+(2)), variant "B" the mirror
    (P-(1) - P+(1)) (x) P-(2), where P-/P+ project onto the antisymmetric
    and symmetric subspaces of the copy pair of one subsystem. Either
    variant is invariant under local unitaries applied identically to both
    copies, and its spectrum is contained in {-1, 0, 1}.
    """
    dims = as_dims(dims)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    p1m, p1p = antisym_projector(dims.d1), sym_projector(dims.d1)
    p2m, p2p = antisym_projector(dims.d2), sym_projector(dims.d2)
    if variant == "A":
        raw = tensor(p1m, p2m - p2p)
    else:
        raw = tensor(p1m - p1p, p2m)
    build_dims = (dims.d1, dims.d1, dims.d2, dims.d2)
    mat = permute_subsystems(raw, build_dims, _EMBED_PERM)
    return CopyPairOperator(mat, dims, variant)


def two_copy_expectation(
    rho: DensityMatrix, sigma: DensityMatrix, op: CopyPairOperator
) -> float:
    """Tr((rho (x) sigma) op), real up to numerical noise.

    Symmetric under exchanging ``rho`` and ``sigma`` for either operator
    variant.
    """
    if rho.dims != sigma.dims or rho.dims != op.dims:
        raise ShapeError(
            f"dimension mismatch: rho {rho.dims.as_tuple()}, "
            f"sigma {sigma.dims.as_tuple()}, operator {op.dims.as_tuple()}"
        )
    joint = np.kron(rho.matrix, sigma.matrix)
    val = complex(np.einsum("ij,ji->", joint, op.matrix))
    if abs(val.imag) > IMAG_TOL:
        raise ValidationError(f"two-copy expectation has imaginary part {val.imag:.3e}")
    return float(val.real)
