"""Finite-shot simulation of expectation-value measurements.

Models the experimentally observable reading of the bounds: a projective
measurement in the observable's eigenbasis, one eigenvalue outcome per shot.
Degenerate eigenvalues need no special handling since outcomes are recorded
as eigenvalues, not eigenvector indices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, ValidationError
from .linalg import eig_hermitian
from .projectors import two_copy_operator
from .states import BipartiteDims, DensityMatrix

PROB_TOL = 1e-9


@dataclass(frozen=True)
class ShotEstimate:
    """Sample mean and standard error of a finite-shot expectation estimate."""

    mean: float
    std_error: float
    shots: int
    observable: str = "observable"

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std_error": self.std_error,
            "shots": self.shots,
            "observable": self.observable,
        }


def simulate_expectation(
    state: DensityMatrix,
    observable: np.ndarray,
    shots: int,
    seed=None,
    descriptor: str = "observable",
) -> ShotEstimate:
    """Estimate Tr(rho O) from ``shots`` projective measurements.

    The observable is eigendecomposed; each shot draws an eigenvalue with
    probability <v_k|rho|v_k>. Probabilities are clamped at zero and
    renormalized, provided their total deviates from one by at most 1e-9.
    The estimator is unbiased and its standard error is the sample standard
    deviation divided by sqrt(shots).
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    observable = np.asarray(observable, dtype=complex)
    if observable.shape != state.matrix.shape:
        raise ShapeError(
            f"observable shape {observable.shape} does not match state "
            f"shape {state.matrix.shape}"
        )
    vals, vecs = eig_hermitian(observable)
    probs = np.einsum("ik,ij,jk->k", vecs.conj(), state.matrix, vecs).real
    probs = np.clip(probs, 0.0, None)
    total = float(probs.sum())
    if abs(total - 1.0) > PROB_TOL:
        raise ValidationError(f"outcome probabilities sum to {total}, expected 1")
    probs /= total
    g = np.random.default_rng(seed)
    outcomes = g.choice(vals, size=shots, p=probs)
    mean = float(outcomes.mean())
    sd = float(outcomes.std(ddof=1)) if shots > 1 else 0.0
    return ShotEstimate(mean, sd / np.sqrt(shots), shots, descriptor)


def estimate_two_copy_bound(
    rho: DensityMatrix, variant: str = "A", shots: int = 10_000, seed=None
) -> ShotEstimate:
    """Finite-shot estimate of the two-copy bound 4 Tr((rho (x) rho) V).

    Simulates a joint projective measurement of the scaled two-copy operator
    on rho (x) rho; the estimator mean converges to the exact bound value.
    """
    op = two_copy_operator(rho.dims, variant)
    total = rho.dims.total
    doubled = DensityMatrix(
        np.kron(rho.matrix, rho.matrix), BipartiteDims(total, total)
    )
    return simulate_expectation(
        doubled,
        4.0 * op.matrix,
        shots,
        seed,
        descriptor=f"two-copy bound (variant {variant})",
    )
