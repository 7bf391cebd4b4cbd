"""Search for the pure witness seed that maximizes the single-copy bound.

The witness construction is algebraic, so the bound -Tr(rho W_phi) is a
smooth function of the seed vector away from product seeds and can be
maximized directly. Seeds are unconstrained complex vectors normalized on
evaluation; the search is a derivative-free simplex descent with random
restarts, two of which are pinned to maximally entangled starting points so
the result is never worse than the canonical seed.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize

from .concurrence import _pure_value
from .linalg import partial_trace
from .states import DensityMatrix, PureState, embedded_singlet, maximally_entangled
from .witness import Witness, witness_bound, witness_from_pure

DEFAULT_RESTARTS = 32
DEFAULT_MAX_ITERS = 2000
DEFAULT_TOL = 1e-8
SEED_CONCURRENCE_FLOOR = 1e-6
_PENALTY = 1e9


def optimize_witness(
    rho: DensityMatrix,
    variant: str = "A",
    restarts: int = DEFAULT_RESTARTS,
    max_iters: int = DEFAULT_MAX_ITERS,
    tol: float = DEFAULT_TOL,
    seed=None,
) -> tuple[Witness, float, dict]:
    """Maximize the witness bound over pure seed states.

    Parameters
    ----------
    rho : state whose concurrence is to be bounded.
    variant : witness variant handed to the construction.
    restarts : local searches to run; restart 0 starts from the embedded
        two-level singlet, restart 1 (when available) from the full-rank
        maximally entangled state, the rest from Haar-random vectors drawn
        from streams derived from (seed, restart index).
    max_iters, tol : per-restart simplex budget and objective tolerance.

    Returns
    -------
    (witness, bound, trace) : the best witness found, its bound recomputed
    through :func:`witness_bound` (so the validity chain holds exactly), and
    iteration metadata including the per-restart running best.

    Near-product iterates (seed concurrence below 1e-6) are rejected by a
    penalty value rather than an error, keeping the search well posed while
    guaranteeing the returned seed is usable.
    """
    if variant not in ("A", "B"):
        raise ValueError(f"variant must be 'A' or 'B', got {variant!r}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    d1, d2 = rho.dims.d1, rho.dims.d2
    total = rho.dims.total
    # reduction of rho on the subsystem the witness construction singles out
    if variant == "A":
        rho_red = partial_trace(rho.matrix, (d1, d2), {0})
    else:
        rho_red = partial_trace(rho.matrix, (d1, d2), {1})
    rho_mat = rho.matrix

    def neg_bound(x: np.ndarray) -> float:
        v = x[:total] + 1j * x[total:]
        nrm = np.linalg.norm(v)
        if nrm < 1e-12:
            return _PENALTY
        v = v / nrm
        c = _pure_value(v, d1, d2)
        if c < SEED_CONCURRENCE_FLOOR:
            return _PENALTY
        a = v.reshape(d1, d2)
        if variant == "A":
            seed_red = (a.conj().T @ a).conj()  # reduction on subsystem 2
        else:
            seed_red = a @ a.conj().T  # reduction on subsystem 1
        overlap = float(np.vdot(v, rho_mat @ v).real)
        reduced_term = float(np.einsum("ij,ji->", rho_red, seed_red).real)
        return -(2.0 / c) * (overlap - reduced_term)

    starts: list[np.ndarray] = [embedded_singlet(rho.dims).amplitudes]
    if restarts >= 2:
        starts.append(maximally_entangled(rho.dims).amplitudes)
    streams = np.random.SeedSequence(seed).spawn(restarts)
    while len(starts) < restarts:
        g = np.random.default_rng(streams[len(starts)])
        v0 = g.standard_normal(total) + 1j * g.standard_normal(total)
        starts.append(v0 / np.linalg.norm(v0))

    best_val = np.inf
    best_x: np.ndarray | None = None
    best_restart = 0
    running_best: list[float] = []
    total_fev = 0
    for k, v0 in enumerate(starts):
        x0 = np.concatenate([v0.real, v0.imag])
        res = minimize(
            neg_bound,
            x0,
            method="Nelder-Mead",
            options={"maxiter": max_iters, "fatol": tol, "xatol": 1e-8},
        )
        total_fev += int(res.nfev)
        if res.fun < best_val:
            best_val = float(res.fun)
            best_x = np.asarray(res.x)
            best_restart = k
        running_best.append(-best_val)

    v = best_x[:total] + 1j * best_x[total:]
    phi = PureState(v / np.linalg.norm(v), rho.dims)
    witness = witness_from_pure(
        phi, variant, seed_descriptor=f"optimized pure seed (restart {best_restart})"
    )
    bound = witness_bound(rho, witness)
    trace = {
        "restarts": restarts,
        "fevals": total_fev,
        "best_restart": best_restart,
        "running_best": running_best,
    }
    return witness, bound, trace
