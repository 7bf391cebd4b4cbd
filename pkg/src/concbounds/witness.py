"""Concurrence witnesses built algebraically from a seed state.

A seed sigma with known concurrence (or a certified upper bound on it)
yields a single-copy observable whose negated expectation value lower-bounds
the concurrence of any measured state. The closed form for variant "A" is
W = 2 (I (x) sigma_2 - sigma) / c, with sigma_2 the reduction of sigma onto
subsystem 2; variant "B" mirrors it with the subsystem-1 reduction. Every
construction is verified on the spot against the defining partial-trace
expression over the second copy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, ValidationError
from .linalg import hermiticity_defect, partial_trace
from .projectors import IMAG_TOL, two_copy_operator
from .states import (
    BipartiteDims,
    DensityMatrix,
    PureState,
    as_dims,
    random_separable,
)
from .concurrence import pure_concurrence

WITNESS_HERM_TOL = 1e-10
CONSTRUCTION_TOL = 1e-8
PURE_SEED_MIN_CONCURRENCE = 1e-12


@dataclass(frozen=True, eq=False)
class Witness:
    """Hermitian single-copy observable with its seed provenance.

    ``c_seed`` is the concurrence value (or certified upper bound) of the
    seed that scales the witness; Tr(rho operator) >= 0 on every separable
    rho, and -Tr(rho operator) lower-bounds the concurrence of rho.
    """

    operator: np.ndarray
    dims: BipartiteDims
    variant: str
    c_seed: float
    seed_descriptor: str = "unspecified seed"
    seed_is_pure: bool = False

    def __post_init__(self):
        dims = as_dims(self.dims)
        op = np.asarray(self.operator, dtype=complex).copy()
        if op.shape != (dims.total, dims.total):
            raise ShapeError(f"witness shape {op.shape} does not match dims {dims.as_tuple()}")
        defect = hermiticity_defect(op)
        if defect > WITNESS_HERM_TOL:
            raise ValidationError(f"witness not Hermitian: defect {defect:.3e}")
        if not self.c_seed > 0.0:
            raise ValueError(f"c_seed must be positive, got {self.c_seed}")
        op.flags.writeable = False
        object.__setattr__(self, "operator", op)
        object.__setattr__(self, "dims", dims)


def _defining_expression(sigma: DensityMatrix, variant: str) -> np.ndarray:
    """-4 Tr_copy2((I (x) sigma) V) without the seed normalization."""
    dims = sigma.dims
    op = two_copy_operator(dims, variant)
    joint = np.kron(np.eye(dims.total, dtype=complex), sigma.matrix) @ op.matrix
    return -4.0 * partial_trace(joint, (dims.d1, dims.d2, dims.d1, dims.d2), {2, 3})


def build_witness(
    sigma: DensityMatrix,
    c_seed: float,
    variant: str = "A",
    seed_descriptor: str | None = None,
    seed_is_pure: bool = False,
) -> Witness:
    """Witness from a seed density matrix and a certified concurrence value.

    Parameters
    ----------
    sigma : seed state; need not describe any physically present system.
    c_seed : the concurrence of sigma, or any upper bound on it. The caller
        certifies this; an over-estimate only weakens the resulting bound.
    variant : "A" reduces the seed onto subsystem 2, "B" onto subsystem 1.

    Raises
    ------
    ValueError : if ``c_seed`` is not positive.
    ValidationError : if the closed form disagrees with the defining
        partial-trace expression beyond 1e-8 (internal consistency).
    """
    if not c_seed > 0.0:
        raise ValueError(f"c_seed must be positive, got {c_seed}")
    dims = sigma.dims
    if variant == "A":
        red = partial_trace(sigma.matrix, (dims.d1, dims.d2), {0})
        closed = 2.0 * (np.kron(np.eye(dims.d1, dtype=complex), red) - sigma.matrix)
    elif variant == "B":
        red = partial_trace(sigma.matrix, (dims.d1, dims.d2), {1})
        closed = 2.0 * (np.kron(red, np.eye(dims.d2, dtype=complex)) - sigma.matrix)
    else:
        raise ValueError(f"variant must be 'A' or 'B', got {variant!r}")
    defect = float(np.abs(closed - _defining_expression(sigma, variant)).max())
    if defect > CONSTRUCTION_TOL:
        raise ValidationError(
            f"witness closed form disagrees with its defining expression by {defect:.3e}"
        )
    if seed_descriptor is None:
        seed_descriptor = f"density matrix on dims {dims.as_tuple()}"
    return Witness(closed / c_seed, dims, variant, float(c_seed), seed_descriptor, seed_is_pure)


def witness_from_pure(
    phi: PureState, variant: str = "A", seed_descriptor: str | None = None
) -> Witness:
    """Fully algebraic witness from a pure seed, no optimization involved.

    The seed concurrence is computed from the pure-state formula and stored
    in the result. Near-product seeds are rejected since the construction
    divides by the seed concurrence.
    """
    c = pure_concurrence(phi).value
    if c <= PURE_SEED_MIN_CONCURRENCE:
        raise ValueError(
            f"seed concurrence {c:.3e} is at or below {PURE_SEED_MIN_CONCURRENCE:.0e}; "
            "a (near-)product state cannot seed a witness"
        )
    normalized = phi.normalized()
    c_norm = pure_concurrence(normalized).value
    sigma = DensityMatrix(normalized.projector(), phi.dims)
    if seed_descriptor is None:
        seed_descriptor = f"pure state on dims {phi.dims.as_tuple()}"
    return build_witness(sigma, c_norm, variant, seed_descriptor, seed_is_pure=True)


def witness_bound(rho: DensityMatrix, witness: Witness) -> float:
    """Lower bound -Tr(rho W) on the concurrence of ``rho``.

    The value may be negative, in which case it carries no information;
    reports keep the raw value and clamp separately.
    """
    if rho.dims != witness.dims:
        raise ShapeError(
            f"state dims {rho.dims.as_tuple()} do not match witness dims "
            f"{witness.dims.as_tuple()}"
        )
    val = -complex(np.einsum("ij,ji->", rho.matrix, witness.operator))
    if abs(val.imag) > IMAG_TOL:
        raise ValidationError(f"witness expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


@dataclass(frozen=True)
class SeparableCheck:
    """Result of probing a witness on random separable states."""

    min_expectation: float
    violations: int
    samples: int


def verify_witness_on_separable(
    witness: Witness,
    samples: int,
    seed=None,
    terms: int = 4,
    threshold: float = -1e-9,
) -> SeparableCheck:
    """Sample separable states and count negative witness expectations.

    A proper witness has Tr(rho W) >= 0 on every separable rho, so the
    expected violation count is zero up to the numerical ``threshold``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    streams = np.random.SeedSequence(seed).spawn(samples)
    lo = np.inf
    violations = 0
    for k in range(samples):
        rho = random_separable(witness.dims, terms, streams[k])
        val = -witness_bound(rho, witness)
        lo = min(lo, val)
        if val < threshold:
            violations += 1
    return SeparableCheck(float(lo), violations, samples)
