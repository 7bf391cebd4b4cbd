"""Concurrence lower bounds and their aggregation into reports.

Four routes are covered: the two-copy bound on the squared concurrence, the
pure-pair inequality residual, the ensemble summation inequality, and the
cross-state bound against an auxiliary state. Reports normalize everything
to bounds on the concurrence itself (clamped square root for the two-copy
route) while keeping raw signed values, since a negative bound is a valid
but vacuous outcome, not an error.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ShapeError
from .concurrence import (
    convex_roof_estimate,
    pure_concurrence,
    wootters_concurrence,
)
from .projectors import IMAG_TOL, two_copy_operator, two_copy_expectation
from .states import (
    BipartiteDims,
    DensityMatrix,
    PureState,
    random_decomposition,
)
from .witness import witness_bound, witness_from_pure

ENSEMBLE_SLACK = 1e-9
TIGHT_TOL = 1e-6


def two_copy_bound(rho: DensityMatrix, variant: str = "best") -> float:
    """Lower bound 4 Tr((rho (x) rho) V) on the squared concurrence.

    ``variant`` selects the operator variant; "best" returns the larger of
    the two. Negative values are vacuous and returned as is. The bound is
    tight on pure states.
    """
    if variant == "best":
        return max(two_copy_bound(rho, "A"), two_copy_bound(rho, "B"))
    op = two_copy_operator(rho.dims, variant)
    return 4.0 * two_copy_expectation(rho, rho, op)


def pure_pair_residual(psi: PureState, phi: PureState, variant: str = "A") -> float:
    """Slack c(psi) c(phi) - 4 <psi (x) phi|V|psi (x) phi> of the pure-pair
    inequality; nonnegative for every pair up to numerical noise."""
    if psi.dims != phi.dims:
        raise ShapeError(
            f"state dims differ: {psi.dims.as_tuple()} vs {phi.dims.as_tuple()}"
        )
    op = two_copy_operator(psi.dims, variant)
    joint = np.kron(psi.amplitudes, phi.amplitudes)
    val = complex(np.vdot(joint, op.matrix @ joint))
    lhs = pure_concurrence(psi).value * pure_concurrence(phi).value
    return float(lhs - 4.0 * val.real)


@dataclass(frozen=True)
class EnsembleCheck:
    """Outcome of randomized ensemble-inequality checks."""

    min_gap: float
    violations: int
    checks: int


def ensemble_inequality_check(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    sizes,
    seed=None,
    tol: float = ENSEMBLE_SLACK,
) -> EnsembleCheck:
    """Check the ensemble summation inequality on random decompositions.

    For each ``(size_rho, size_sigma)`` pair in ``sizes`` and both operator
    variants, draws random decompositions {psi_i} of rho and {phi_j} of
    sigma and verifies

        (sum_i c(psi_i)) (sum_j c(phi_j)) >= 4 Tr((rho (x) sigma) V) - tol.

    Returns the tightest gap found and the number of violations (expected
    zero).
    """
    if rho.dims != sigma.dims:
        raise ShapeError(
            f"state dims differ: {rho.dims.as_tuple()} vs {sigma.dims.as_tuple()}"
        )
    sizes = [(int(a), int(b)) for a, b in sizes]
    rhs = {
        v: 4.0 * two_copy_expectation(rho, sigma, two_copy_operator(rho.dims, v))
        for v in ("A", "B")
    }
    streams = np.random.SeedSequence(seed).spawn(2 * len(sizes))
    min_gap = np.inf
    violations = 0
    checks = 0
    for k, (size_r, size_s) in enumerate(sizes):
        dec_r = random_decomposition(rho, size_r, streams[2 * k])
        dec_s = random_decomposition(sigma, size_s, streams[2 * k + 1])
        lhs = sum(pure_concurrence(m).value for m in dec_r.members) * sum(
            pure_concurrence(m).value for m in dec_s.members
        )
        for v in ("A", "B"):
            gap = lhs - rhs[v]
            min_gap = min(min_gap, gap)
            if gap < -tol:
                violations += 1
            checks += 1
    return EnsembleCheck(float(min_gap), violations, checks)


def cross_bound(
    rho: DensityMatrix,
    sigma: DensityMatrix,
    c_sigma_upper: float,
    variant: str = "A",
) -> float:
    """Lower bound 4 Tr((rho (x) sigma) V) / c_sigma_upper on c(rho).

    ``c_sigma_upper`` must be a certified upper bound on the concurrence of
    sigma; dividing a nonnegative numerator by an over-estimate only weakens
    the bound. A negative value is vacuous and returned unclamped.
    """
    if not c_sigma_upper > 0.0:
        raise ValueError(f"c_sigma_upper must be positive, got {c_sigma_upper}")
    op = two_copy_operator(rho.dims, variant)
    return 4.0 * two_copy_expectation(rho, sigma, op) / float(c_sigma_upper)


@dataclass(frozen=True)
class BoundReport:
    """All bounds computed for one state, normalized to bounds on c.

    ``two_copy_c_squared`` holds the raw per-variant values; the derived
    ``two_copy_on_c`` entries are clamped square roots. ``best_lower_bound``
    is the maximum over every clamped route and never exceeds the exact
    value when an oracle is available.
    """

    state_descriptor: str
    dims: BipartiteDims
    two_copy_c_squared: dict
    two_copy_on_c: dict
    witness_bounds: list = field(default_factory=list)
    cross_bounds: list = field(default_factory=list)
    wootters: float | None = None
    convex_roof: float | None = None
    best_lower_bound: float = 0.0
    vacuous: bool = False
    tight_within_tol: bool = False

    def to_dict(self) -> dict:
        return {
            "state": self.state_descriptor,
            "dims": list(self.dims.as_tuple()),
            "two_copy_c_squared": dict(self.two_copy_c_squared),
            "two_copy_on_c": dict(self.two_copy_on_c),
            "witness_bounds": [dict(e) for e in self.witness_bounds],
            "cross_bounds": [dict(e) for e in self.cross_bounds],
            "oracles": {"wootters": self.wootters, "convex_roof_estimate": self.convex_roof},
            "best_lower_bound": self.best_lower_bound,
            "flags": {"vacuous": self.vacuous, "tight_within_tol": self.tight_within_tol},
        }


def bound_report(
    rho: DensityMatrix,
    seeds=(),
    *,
    witness_variant: str = "A",
    with_roof: bool = False,
    roof_size: int | None = None,
    roof_restarts: int = 16,
    roof_seed=0,
    tight_tol: float = TIGHT_TOL,
    descriptor: str | None = None,
) -> BoundReport:
    """Evaluate every bound route for one state and aggregate.

    ``seeds`` are pure witness seeds; each contributes a witness bound and
    the equivalent cross-state bound. The exact two-qubit oracle is filled
    in automatically on dims (2, 2); the convex-roof upper estimate only on
    request. Component errors propagate (a product seed is an error).
    """
    if descriptor is None:
        descriptor = f"density matrix on dims {rho.dims.as_tuple()}"
    two_copy_sq = {v: two_copy_bound(rho, v) for v in ("A", "B")}
    two_copy_sq["best"] = max(two_copy_sq["A"], two_copy_sq["B"])
    two_copy_c = {k: float(np.sqrt(max(0.0, v))) for k, v in two_copy_sq.items()}

    witness_entries = []
    cross_entries = []
    for i, seed_state in enumerate(seeds):
        label = f"seed[{i}]"
        w = witness_from_pure(seed_state, witness_variant, seed_descriptor=label)
        val = witness_bound(rho, w)
        witness_entries.append({"seed": label, "value": val, "clamped": max(0.0, val)})
        xval = cross_bound(rho, seed_state.to_density(), w.c_seed, witness_variant)
        cross_entries.append(
            {"seed": label, "value": xval, "clamped": max(0.0, xval), "vacuous": xval <= 0.0}
        )

    oracle_wootters = None
    if rho.dims.as_tuple() == (2, 2):
        oracle_wootters = wootters_concurrence(rho).value
    oracle_roof = None
    if with_roof:
        oracle_roof = convex_roof_estimate(
            rho, ensemble_size=roof_size, restarts=roof_restarts, seed=roof_seed
        ).value

    candidates = [two_copy_c["best"]]
    candidates += [e["clamped"] for e in witness_entries]
    candidates += [e["clamped"] for e in cross_entries]
    best = max(0.0, max(candidates))
    tight = oracle_wootters is not None and best >= oracle_wootters - tight_tol

    return BoundReport(
        state_descriptor=descriptor,
        dims=rho.dims,
        two_copy_c_squared=two_copy_sq,
        two_copy_on_c=two_copy_c,
        witness_bounds=witness_entries,
        cross_bounds=cross_entries,
        wootters=oracle_wootters,
        convex_roof=oracle_roof,
        best_lower_bound=best,
        vacuous=best <= 0.0,
        tight_within_tol=tight,
    )
