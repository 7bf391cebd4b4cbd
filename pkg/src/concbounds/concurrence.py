"""Concurrence evaluation: pure-state formula, exact two-qubit solution, and
a convex-roof minimizer used as an independent oracle and upper-bound source.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .linalg import permute_subsystems, tensor
from .projectors import antisym_projector
from .states import DensityMatrix, PureState, eigen_ensemble

PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])

ROOF_DEFAULT_RESTARTS = 16
ROOF_DEFAULT_MAX_ITERS = 2000
ROOF_DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class ConcurrenceValue:
    """A concurrence value plus how it was obtained.

    ``method`` is one of "pure-formula", "wootters", or
    "convex-roof-estimate"; the last two fields hold minimizer metadata and
    stay None for the closed-form methods.
    """

    value: float
    method: str
    iterations: int | None = None
    restarts: int | None = None


def _pure_value(amps: np.ndarray, d1: int, d2: int) -> float:
    """Closed-form concurrence of a possibly subnormalized vector."""
    a = amps.reshape(d1, d2)
    r1 = a @ a.conj().T
    w = np.trace(r1).real
    t2 = np.einsum("ij,ji->", r1, r1).real
    return float(np.sqrt(max(0.0, 2.0 * (w * w - t2))))


def _members_value_sum(members: np.ndarray, d1: int, d2: int) -> float:
    """Sum of member concurrences for a batch of vectors (rows)."""
    a = members.reshape(len(members), d1, d2)
    r1 = a @ a.conj().transpose(0, 2, 1)
    w = np.einsum("nii->n", r1).real
    t2 = np.einsum("nij,nji->n", r1, r1).real
    return float(np.sqrt(np.clip(2.0 * (w * w - t2), 0.0, None)).sum())


def pure_concurrence(psi: PureState) -> ConcurrenceValue:
    """Concurrence of a pure state.

    Evaluates the closed form sqrt(2 (w^2 - Tr r1^2)), with w the state's
    weight and r1 its subnormalized reduced matrix, which equals the
    expectation form computed by :func:`pure_concurrence_via_copies`. The
    value is homogeneous of degree two in the vector: scaling the amplitudes
    by sqrt(p) scales the concurrence by p.
    """
    return ConcurrenceValue(
        _pure_value(psi.amplitudes, psi.dims.d1, psi.dims.d2), "pure-formula"
    )


def pure_concurrence_via_copies(psi: PureState) -> ConcurrenceValue:
    """Concurrence of a pure state from the two-copy expectation value.

    Computes sqrt(4 <psi (x) psi| P-(1) (x) P-(2) |psi (x) psi>) by
    materializing the projector product on the two-copy space. Cross-check
    route for :func:`pure_concurrence`; the two agree to about 1e-10.
    """
    d1, d2 = psi.dims.d1, psi.dims.d2
    raw = tensor(antisym_projector(d1), antisym_projector(d2))
    op = permute_subsystems(raw, (d1, d1, d2, d2), (0, 2, 1, 3))
    vv = np.kron(psi.amplitudes, psi.amplitudes)
    val = 4.0 * float(np.real(np.vdot(vv, op @ vv)))
    return ConcurrenceValue(float(np.sqrt(max(0.0, val))), "pure-formula")


def wootters_concurrence(rho: DensityMatrix) -> ConcurrenceValue:
    """Exact concurrence of a two-qubit density matrix.

    Computes max(0, l1 - l2 - l3 - l4) with l_i the decreasing square roots
    of the eigenvalues of rho (Y (x) Y) rho* (Y (x) Y). The eigenvalues are
    obtained through Hermitian steps only: sqrt(rho) from its
    eigendecomposition, then the spectrum of sqrt(rho) rho~ sqrt(rho).
    """
    if rho.dims.as_tuple() != (2, 2):
        raise ValueError(
            f"the exact solution applies to dims (2, 2), got {rho.dims.as_tuple()}"
        )
    yy = np.kron(PAULI_Y, PAULI_Y)
    vals, vecs = np.linalg.eigh(rho.matrix)
    sqrt_rho = (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    flipped = yy @ rho.matrix.conj() @ yy
    core = sqrt_rho @ flipped @ sqrt_rho
    mu = np.clip(np.linalg.eigvalsh(core), 0.0, None)
    lam = np.sort(np.sqrt(mu))[::-1]
    return ConcurrenceValue(max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3])), "wootters")


def convex_roof_estimate(
    rho: DensityMatrix,
    ensemble_size: int | None = None,
    restarts: int = ROOF_DEFAULT_RESTARTS,
    max_iters: int = ROOF_DEFAULT_MAX_ITERS,
    tol: float = ROOF_DEFAULT_TOL,
    seed=None,
) -> ConcurrenceValue:
    """Upper estimate of the convex-roof concurrence of a mixed state.

    Minimizes the summed member concurrence over all pure-state ensembles of
    the given size. Ensembles are parameterized by size x rank isometries
    acting on the eigen-ensemble; the isometry is obtained by
    orthonormalizing an unconstrained complex matrix, and the search runs a
    derivative-free local descent (Powell) from one deterministic start (the
    eigen-ensemble itself) plus random restarts. The best value found is by
    construction an upper bound on the infimum.

    Parameters
    ----------
    rho : state to decompose.
    ensemble_size : number of members; defaults to rank + 2. Must be at
        least the numerical rank.
    restarts, max_iters, tol : search budget; ``tol`` limits the accepted
        objective decrease per restart.
    seed : each restart draws its start from an independent stream derived
        from (seed, restart index), so results do not depend on scheduling.
    """
    vals, vecs = eigen_ensemble(rho)
    rank = len(vals)
    if ensemble_size is None:
        ensemble_size = rank + 2
    if ensemble_size < rank:
        raise ValueError(f"ensemble_size {ensemble_size} below numerical rank {rank}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    n = int(ensemble_size)
    d1, d2 = rho.dims.d1, rho.dims.d2
    base = (vecs * np.sqrt(vals)).T  # row j = sqrt(lam_j) chi_j
    half = n * rank

    def objective(x: np.ndarray) -> float:
        m = (x[:half] + 1j * x[half:]).reshape(n, rank)
        isometry, _ = np.linalg.qr(m)
        return _members_value_sum(isometry @ base, d1, d2)

    streams = np.random.SeedSequence(seed).spawn(restarts)
    best = np.inf
    total_fev = 0
    for k in range(restarts):
        if k == 0:
            x0 = np.concatenate([np.eye(n, rank).ravel(), np.zeros(half)])
        else:
            x0 = np.random.default_rng(streams[k]).standard_normal(2 * half)
        res = minimize(
            objective,
            x0,
            method="Powell",
            options={"maxiter": max_iters, "ftol": tol, "xtol": 1e-8},
        )
        total_fev += int(res.nfev)
        if res.fun < best:
            best = float(res.fun)
    return ConcurrenceValue(best, "convex-roof-estimate", total_fev, restarts)
