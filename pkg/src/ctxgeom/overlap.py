"""Overlap matrix of two projector families and its scalar contractions.

The central object is the table of pairwise quantities
Tr[(P_i Q_j)^2] / d, whose sum is the configuration energy E, whose
logarithm gives the per-context bit count, and whose extremal amplitude
overlap is the Maassen-Uffink constant. Principal angles between the
ranges of two projectors provide the geometric decomposition of each
entry, and the commutator identity cross-checks 1 - E against the summed
projector commutator norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    HermitianOperator,
    commutator_hs_norm_sq,
    dagger,
    hermitian_eig,
    jacobi_eigh,
    largest_singular_value,
)
from .projectors import LabeledProjector, ProjectorFamily

ENTRY_CLAMP_TOL = 1e-12
SATURATION_TOL = 1e-9


@dataclass(frozen=True)
class OverlapMatrix:
    """Table of per-pair overlap contributions for a left/right family pair."""

    entries: np.ndarray
    dim: int
    left_labels: tuple
    right_labels: tuple

    def __post_init__(self) -> None:
        e = self.entries
        if e.ndim != 2:
            raise ValueError("entries must be a 2-d table")
        if np.any(e < 0.0) or np.any(e > 1.0 / self.dim):
            raise ValueError("overlap entries outside [0, 1/d]")
        total = float(e.sum())
        if total < 1.0 / self.dim - 1e-9 or total > 1.0 + 1e-9:
            raise ValueError(f"total overlap {total} outside [1/d, 1]")

    @property
    def energy(self) -> float:
        return float(self.entries.sum())


@dataclass(frozen=True)
class ContextInvariants:
    """State-independent scalars of one context's projector geometry."""

    energy: float
    s2_bits: float
    c_mu: float
    saturated: bool
    principal_angles: tuple[float, ...]

    def __post_init__(self) -> None:
        if abs(self.s2_bits + np.log2(self.energy)) > 1e-12:
            raise ValueError("s2_bits inconsistent with energy")
        if self.energy > self.c_mu**2 + 1e-10:
            raise ValueError("energy exceeds the squared extremal overlap")


def _pair_contribution(p: np.ndarray, q: np.ndarray, d: int) -> float:
    m = p @ q
    t = np.trace(m @ m)
    value = float(t.real) / d
    if value < 0.0:
        if value < -ENTRY_CLAMP_TOL:
            raise ValueError(f"overlap contribution {value} below -1e-12")
        value = 0.0
    return min(value, 1.0 / d)


def overlap_matrix(left: ProjectorFamily, right: ProjectorFamily) -> OverlapMatrix:
    """Assemble the overlap table entrywise from two families."""
    if left.dim != right.dim:
        raise ValueError(f"dimension mismatch: {left.dim} vs {right.dim}")
    d = left.dim
    entries = np.empty((len(left), len(right)))
    for i, p in enumerate(left.members):
        for j, q in enumerate(right.members):
            entries[i, j] = _pair_contribution(p.projector.matrix, q.projector.matrix, d)
    entries.setflags(write=False)
    return OverlapMatrix(
        entries,
        d,
        tuple(m.label for m in left.members),
        tuple(m.label for m in right.members),
    )


def range_basis(p: LabeledProjector) -> np.ndarray:
    """Orthonormal basis (columns) of the range of a projector."""
    w, vectors = hermitian_eig(p.projector, name="projector")
    cols = [vectors[k].amplitudes for k in range(p.dim) if w[k] > 0.5]
    if len(cols) != p.rank:
        raise ValueError(f"range dimension {len(cols)} does not match rank {p.rank}")
    if not cols:
        return np.zeros((p.dim, 0), dtype=complex)
    return np.column_stack(cols)


def principal_angles(p: LabeledProjector, q: LabeledProjector) -> tuple[float, ...]:
    """Principal angles between the ranges of two projectors, in radians.

    Returns min(rank P, rank Q) angles in [0, pi/2], ascending. Cosines come
    from the singular values of U^dag V and sines from the residual
    (1 - U U^dag) V; combining them through atan2 keeps full accuracy at
    both endpoints, where arccos alone loses half the significant digits.
    """
    if p.dim != q.dim:
        raise ValueError("projectors act on different spaces")
    if p.rank == 0 or q.rank == 0:
        return ()
    u = range_basis(p)
    v = range_basis(q)
    m = dagger(u) @ v
    count = min(p.rank, q.rank)
    wc, _ = jacobi_eigh(dagger(m) @ m, name="principal-angle cosine matrix")
    cosines = np.sqrt(np.clip(wc[::-1][:count], 0.0, None))  # descending
    resid = v - u @ m
    ws, _ = jacobi_eigh(dagger(resid) @ resid, name="principal-angle sine matrix")
    sines = np.sqrt(np.clip(ws[:count], 0.0, None))  # ascending
    angles = [math.atan2(s, c) for s, c in zip(sines, cosines)]
    return tuple(sorted(angles))


def context_invariants(left: ProjectorFamily, right: ProjectorFamily) -> ContextInvariants:
    """Energy, bit count, extremal overlap, saturation flag, and pooled angles."""
    table = overlap_matrix(left, right)
    energy = table.energy
    c_mu = 0.0
    pooled: list[float] = []
    for p in left.members:
        for q in right.members:
            c_mu = max(c_mu, largest_singular_value(p.projector.matrix @ q.projector.matrix))
            pooled.extend(principal_angles(p, q))
    return ContextInvariants(
        energy=energy,
        s2_bits=float(-np.log2(energy)),
        c_mu=c_mu,
        saturated=abs(energy - c_mu**2) <= SATURATION_TOL,
        principal_angles=tuple(sorted(pooled)),
    )


def commutator_identity_residual(left: ProjectorFamily, right: ProjectorFamily) -> float:
    """|(1 - E) - (2d)^-1 sum ||[P_i, Q_j]||^2|, both sides computed fresh."""
    energy = overlap_matrix(left, right).energy
    d = left.dim
    comm_sum = 0.0
    for p in left.members:
        for q in right.members:
            comm_sum += commutator_hs_norm_sq(p.projector, q.projector)
    return abs((1.0 - energy) - comm_sum / (2.0 * d))
