"""Bipartite pure and mixed states: construction, validation, and sampling.

Ensemble members are carried subnormalized: a member drawn with weight p is
stored as the vector sqrt(p)|psi>, and its weight is cached in
``norm_squared``. Summing the raw projectors of an ensemble reproduces the
density matrix with no separate weight bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError, ValidationError
from .linalg import eig_hermitian, hermiticity_defect, partial_trace

NORM_TOL = 1e-10
HERM_TOL = 1e-9
PSD_TOL = 1e-9
TRACE_TOL = 1e-9
RANK_TOL = 1e-12


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class BipartiteDims:
    """Local dimensions (d1, d2) of a bipartite Hilbert space H1 (x) H2."""

    d1: int
    d2: int

    def __post_init__(self):
        if self.d1 < 2 or self.d2 < 2:
            raise ValueError(f"local dimensions must be >= 2, got ({self.d1}, {self.d2})")

    @property
    def total(self) -> int:
        return self.d1 * self.d2

    def as_tuple(self) -> tuple[int, int]:
        return (self.d1, self.d2)


def as_dims(dims) -> BipartiteDims:
    """Coerce a (d1, d2) pair into BipartiteDims."""
    if isinstance(dims, BipartiteDims):
        return dims
    d1, d2 = dims
    return BipartiteDims(int(d1), int(d2))


@dataclass(frozen=True, eq=False)
class PureState:
    """State vector on H1 (x) H2, possibly subnormalized (see module note).

    ``norm_squared`` is the squared vector norm, i.e. the ensemble weight of
    the member; it must lie in (0, 1]. Passing an explicit value checks it
    against the amplitudes within 1e-10.
    """

    amplitudes: np.ndarray
    dims: BipartiteDims
    norm_squared: float | None = None

    def __post_init__(self):
        dims = as_dims(self.dims)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1).copy()
        if amps.size != dims.total:
            raise ShapeError(
                f"vector length {amps.size} does not match dims {dims.as_tuple()}"
            )
        ns = float(np.vdot(amps, amps).real)
        if self.norm_squared is not None and abs(ns - float(self.norm_squared)) > NORM_TOL:
            raise ValidationError(
                f"declared norm_squared {self.norm_squared} is off by "
                f"{abs(ns - self.norm_squared):.3e}"
            )
        if not 0.0 < ns <= 1.0 + NORM_TOL:
            raise ValidationError(f"norm_squared {ns} outside (0, 1]")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "norm_squared", ns)

    def projector(self) -> np.ndarray:
        """Raw (subnormalized) projector |psi><psi| as a plain array."""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def normalized(self) -> "PureState":
        """Unit-norm copy of this state."""
        return PureState(self.amplitudes / np.sqrt(self.norm_squared), self.dims)

    def to_density(self) -> "DensityMatrix":
        """Density matrix of the normalized state."""
        return DensityMatrix(self.projector() / self.norm_squared, self.dims)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Positive unit-trace operator on H1 (x) H2. Validated on construction."""

    matrix: np.ndarray
    dims: BipartiteDims

    def __post_init__(self):
        dims = as_dims(self.dims)
        mat = np.asarray(self.matrix, dtype=complex).copy()
        if mat.shape != (dims.total, dims.total):
            raise ShapeError(
                f"matrix shape {mat.shape} does not match dims {dims.as_tuple()}"
            )
        defect = hermiticity_defect(mat)
        if defect > HERM_TOL:
            raise ValidationError(f"density matrix not Hermitian: defect {defect:.3e}")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"density matrix trace {tr} is not 1")
        lo = float(np.linalg.eigvalsh(mat).min())
        if lo < -PSD_TOL:
            raise ValidationError(f"density matrix has negative eigenvalue {lo:.3e}")
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "dims", dims)

    def purity(self) -> float:
        return float(np.einsum("ij,ji->", self.matrix, self.matrix).real)


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Pure-state decomposition of a density matrix; members subnormalized."""

    members: tuple[PureState, ...]
    dims: BipartiteDims

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        object.__setattr__(self, "dims", as_dims(self.dims))

    def assemble(self) -> np.ndarray:
        """Sum of the raw member projectors."""
        out = np.zeros((self.dims.total, self.dims.total), dtype=complex)
        for m in self.members:
            out += m.projector()
        return out

    def weights(self) -> np.ndarray:
        return np.array([m.norm_squared for m in self.members])


_BELL_AMPS = {
    "phi+": [1, 0, 0, 1],
    "phi-": [1, 0, 0, -1],
    "psi+": [0, 1, 1, 0],
    "psi-": [0, 1, -1, 0],
}


def bell_state(kind: str = "psi-") -> PureState:
    """One of the four Bell states of two qubits, by label phi+/phi-/psi+/psi-."""
    key = kind.lower()
    if key not in _BELL_AMPS:
        raise ValueError(f"unknown Bell state {kind!r}, expected one of {sorted(_BELL_AMPS)}")
    amps = np.array(_BELL_AMPS[key], dtype=complex) / np.sqrt(2)
    return PureState(amps, BipartiteDims(2, 2))


def maximally_entangled(dims) -> PureState:
    """Full Schmidt rank maximally entangled state sum_i |ii> / sqrt(m)."""
    dims = as_dims(dims)
    m = min(dims.d1, dims.d2)
    amps = np.zeros(dims.total, dtype=complex)
    for i in range(m):
        amps[i * dims.d2 + i] = 1.0 / np.sqrt(m)
    return PureState(amps, dims)


def embedded_singlet(dims) -> PureState:
    """The two-level singlet (|01> - |10>)/sqrt(2) embedded in arbitrary dims."""
    dims = as_dims(dims)
    amps = np.zeros(dims.total, dtype=complex)
    amps[0 * dims.d2 + 1] = 1.0 / np.sqrt(2)
    amps[1 * dims.d2 + 0] = -1.0 / np.sqrt(2)
    return PureState(amps, dims)


def werner_state(p: float) -> DensityMatrix:
    """Two-qubit Werner state p |psi-><psi-| + (1-p) I/4 for p in [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter p={p} outside [0, 1]")
    singlet = bell_state("psi-").projector()
    mat = p * singlet + (1.0 - p) * np.eye(4) / 4.0
    return DensityMatrix(mat, BipartiteDims(2, 2))


def isotropic_state(p: float, d: int = 2) -> DensityMatrix:
    """Isotropic state p |phi+><phi+| + (1-p) I/d^2 on two d-level systems."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing parameter p={p} outside [0, 1]")
    dims = BipartiteDims(d, d)
    phi = maximally_entangled(dims).projector()
    mat = p * phi + (1.0 - p) * np.eye(dims.total) / dims.total
    return DensityMatrix(mat, dims)


def random_pure(dims, seed=None) -> PureState:
    """Haar-random unit vector on H1 (x) H2 (normalized complex Gaussian)."""
    dims = as_dims(dims)
    g = _rng(seed)
    v = g.standard_normal(dims.total) + 1j * g.standard_normal(dims.total)
    return PureState(v / np.linalg.norm(v), dims)


def random_density(dims, rank: int, seed=None) -> DensityMatrix:
    """Random density matrix of the given rank, normalized G G^dag.

    G is a (d1*d2) x rank matrix of iid complex Gaussian entries, so the
    output follows the induced (Hilbert-Schmidt at full rank) measure.
    """
    dims = as_dims(dims)
    if not 1 <= rank <= dims.total:
        raise ValueError(f"rank {rank} outside 1..{dims.total}")
    g = _rng(seed)
    m = g.standard_normal((dims.total, rank)) + 1j * g.standard_normal((dims.total, rank))
    mat = m @ m.conj().T
    return DensityMatrix(mat / np.trace(mat).real, dims)


def random_separable(dims, terms: int, seed=None) -> DensityMatrix:
    """Random separable state: Dirichlet-weighted mixture of product states."""
    dims = as_dims(dims)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    g = _rng(seed)
    w = g.dirichlet(np.ones(terms))
    mat = np.zeros((dims.total, dims.total), dtype=complex)
    for k in range(terms):
        a = g.standard_normal(dims.d1) + 1j * g.standard_normal(dims.d1)
        b = g.standard_normal(dims.d2) + 1j * g.standard_normal(dims.d2)
        v = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
        mat += w[k] * np.outer(v, v.conj())
    return DensityMatrix(mat, dims)


def haar_unitary(d: int, seed=None) -> np.ndarray:
    """Haar-random d x d unitary (QR of a complex Ginibre matrix, phase fixed)."""
    g = _rng(seed)
    z = (g.standard_normal((d, d)) + 1j * g.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def random_local_unitary(dims, seed=None) -> np.ndarray:
    """Product U1 (x) U2 of independent Haar-random local unitaries."""
    dims = as_dims(dims)
    g = _rng(seed)
    return np.kron(haar_unitary(dims.d1, g), haar_unitary(dims.d2, g))


def reduced_state(state: PureState | DensityMatrix, keep: int) -> np.ndarray:
    """Reduced density matrix on subsystem ``keep`` (1 or 2).

    Accepts pure or mixed input; for a subnormalized pure state the output
    trace equals the member weight.
    """
    if keep not in (1, 2):
        raise ValueError(f"keep must be 1 or 2, got {keep}")
    if isinstance(state, PureState):
        mat = state.projector()
        dims = state.dims
    else:
        mat = state.matrix
        dims = state.dims
    traced = {1} if keep == 1 else {0}
    return partial_trace(mat, (dims.d1, dims.d2), traced)


def eigen_ensemble(rho: DensityMatrix, tol: float = RANK_TOL):
    """Eigendecomposition of ``rho`` restricted to its numerical rank.

    Returns ``(weights, vectors)`` with eigenvalues sorted descending and
    only those above ``tol`` retained. Each eigenvector's global phase is
    fixed by making its first non-negligible component real positive, so the
    output is reproducible for a given input.
    """
    vals, vecs = eig_hermitian(rho.matrix)
    order = np.argsort(-vals, kind="stable")
    vals, vecs = vals[order], vecs[:, order]
    rank = int(np.sum(vals > tol))
    if rank == 0:
        raise ValidationError("density matrix has no eigenvalue above the rank threshold")
    vals, vecs = vals[:rank].copy(), vecs[:, :rank].copy()
    for j in range(rank):
        col = vecs[:, j]
        idx = int(np.argmax(np.abs(col) > 1e-12))
        phase = col[idx] / abs(col[idx])
        vecs[:, j] = col * phase.conjugate()
    return vals, vecs


def random_decomposition(rho: DensityMatrix, size: int, seed=None) -> Ensemble:
    """Random pure-state ensemble realizing ``rho``.

    Members are built as |psi_i> = sum_j M_ij sqrt(lam_j) |chi_j> from the
    eigen-ensemble (lam_j, |chi_j>) and a random ``size`` x rank isometry M
    (orthonormal columns), which parameterizes all ensembles of that size.
    """
    vals, vecs = eigen_ensemble(rho)
    rank = len(vals)
    if size < rank:
        raise ValueError(f"ensemble size {size} below numerical rank {rank}")
    g = _rng(seed)
    x = g.standard_normal((size, rank)) + 1j * g.standard_normal((size, rank))
    isometry, _ = np.linalg.qr(x)
    base = vecs * np.sqrt(vals)  # column j = sqrt(lam_j) chi_j
    members_mat = isometry @ base.T  # row i = member i
    members = [PureState(row, rho.dims) for row in members_mat]
    return Ensemble(tuple(members), rho.dims)
