"""Joint-eigenspace projector families of commuting observable pairs.

A commuting pair (A, B) is simultaneously diagonalized by perturbing one
observable into the other (diagonalize A + lambda*B for a small irrational
lambda), grouping eigenvectors by their (a, b) eigenvalue-pair labels, and
verifying the labels on the assembled projectors. Families are complete,
mutually orthogonal, and drop empty joint eigenspaces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    HermitianOperator,
    commutator,
    hermitian_eig,
    hs_norm,
)

COMMUTATION_TOL = 1e-10
LABEL_TOL = 1e-6
LABEL_VERIFY_TOL = 1e-8
COMPLETENESS_TOL = 1e-10
ORTHOGONALITY_TOL = 1e-10

# Default perturbation weight plus fallbacks, chosen to avoid accidental
# degeneracies of a + lambda*b across distinct label pairs.
PERTURBATION_WEIGHTS = (0.3719, 0.2183, 0.4677, 0.0941)


class JointDiagonalizationError(RuntimeError):
    """Raised when no perturbation weight yields verified joint projectors."""


@dataclass(frozen=True)
class LabeledProjector:
    """Projector onto a joint eigenspace, tagged with its eigenvalue pair.

    After coarse-graining the label is a frozenset of the merged pairs; no
    new eigenvalue is assigned to a merged member.
    """

    projector: HermitianOperator
    label: tuple | frozenset
    rank: int

    def __post_init__(self) -> None:
        m = self.projector.matrix
        idem = hs_norm(m @ m - m)
        if idem > 1e-10:
            raise ValueError(f"projector not idempotent (residual {idem:.3e})")
        tr = float(np.trace(m).real)
        if abs(tr - self.rank) > 1e-8:
            raise ValueError(f"trace {tr} does not match rank {self.rank}")

    @property
    def dim(self) -> int:
        return self.projector.dim


@dataclass(frozen=True)
class ProjectorFamily:
    """Complete, mutually orthogonal collection of labeled projectors."""

    members: tuple[LabeledProjector, ...]
    dim: int

    def __post_init__(self) -> None:
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for m in self.members:
            if m.dim != self.dim:
                raise ValueError("member dimension mismatch")
            total += m.projector.matrix
        if hs_norm(total - np.eye(self.dim)) > COMPLETENESS_TOL:
            raise ValueError("family is not complete (sum of members != identity)")
        for i, a in enumerate(self.members):
            for b in self.members[i + 1 :]:
                if hs_norm(a.projector.matrix @ b.projector.matrix) > ORTHOGONALITY_TOL:
                    raise ValueError("family members are not mutually orthogonal")

    def __len__(self) -> int:
        return len(self.members)

    def matrices(self) -> list[np.ndarray]:
        return [m.projector.matrix for m in self.members]


def _clamp_to_spectrum(value: float, spectrum: np.ndarray) -> float:
    k = int(np.argmin(np.abs(spectrum - value)))
    if abs(spectrum[k] - value) <= LABEL_TOL:
        return float(spectrum[k])
    return float(value)


def _spectral_values(eigenvalues: np.ndarray) -> np.ndarray:
    """Distinct eigenvalues, clustering within the label tolerance."""
    values: list[float] = []
    for w in eigenvalues:
        if not values or abs(w - values[-1]) > LABEL_TOL:
            values.append(float(w))
    return np.asarray(values)


def joint_eigenprojectors(a: HermitianOperator, b: HermitianOperator) -> ProjectorFamily:
    """Joint-eigenspace projector family of a commuting pair (A, B).

    Members are labeled by the eigenvalue pair (a_i, b_i), sorted by label
    in descending lexicographic order; empty joint eigenspaces are omitted.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    comm = hs_norm(commutator(a.matrix, b.matrix))
    if comm > COMMUTATION_TOL:
        raise ValueError(f"observables do not commute (||[A,B]|| = {comm:.3e})")
    d = a.dim
    spec_a = _spectral_values(hermitian_eig(a, name="left observable")[0])
    spec_b = _spectral_values(hermitian_eig(b, name="right observable")[0])

    last_error = ""
    for lam in PERTURBATION_WEIGHTS:
        combo = HermitianOperator(a.matrix + lam * b.matrix)
        _, vectors = hermitian_eig(combo, name="perturbed pair")
        groups: dict[tuple[float, float], np.ndarray] = {}
        for sv in vectors:
            v = sv.amplitudes
            la = _clamp_to_spectrum(float((v.conj() @ a.matrix @ v).real), spec_a)
            lb = _clamp_to_spectrum(float((v.conj() @ b.matrix @ v).real), spec_b)
            key = None
            for existing in groups:
                if abs(existing[0] - la) <= LABEL_TOL and abs(existing[1] - lb) <= LABEL_TOL:
                    key = existing
                    break
            if key is None:
                key = (la, lb)
                groups[key] = np.zeros((d, d), dtype=complex)
            groups[key] += np.outer(v, v.conj())

        members = []
        ok = True
        for (la, lb), p in groups.items():
            resid = max(
                hs_norm(a.matrix @ p - la * p),
                hs_norm(b.matrix @ p - lb * p),
            )
            if resid > LABEL_VERIFY_TOL:
                ok = False
                last_error = f"label residual {resid:.3e} at lambda={lam}"
                break
            rank = int(round(float(np.trace(p).real)))
            members.append(LabeledProjector(HermitianOperator(p), (la, lb), rank))
        if ok:
            members.sort(key=lambda m: m.label, reverse=True)
            return ProjectorFamily(tuple(members), d)
    raise JointDiagonalizationError(
        f"joint diagonalization failed for every perturbation weight ({last_error})"
    )


def _label_set(label) -> frozenset:
    if isinstance(label, frozenset):
        return label
    return frozenset([label])


def coarse_grain(family: ProjectorFamily, i: int, j: int) -> ProjectorFamily:
    """Merge members i and j of a family into their sum.

    The merged member carries the set of both labels; completeness and
    mutual orthogonality are preserved by construction. The merged member
    takes the slot of min(i, j) so repeated merges stay deterministic.
    """
    n = len(family.members)
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"merge indices ({i}, {j}) out of range for {n} members")
    if i == j:
        raise ValueError("cannot merge a member with itself")
    lo, hi = min(i, j), max(i, j)
    a, b = family.members[lo], family.members[hi]
    merged = LabeledProjector(
        HermitianOperator(a.projector.matrix + b.projector.matrix),
        _label_set(a.label) | _label_set(b.label),
        a.rank + b.rank,
    )
    members = list(family.members)
    members[lo] = merged
    del members[hi]
    return ProjectorFamily(tuple(members), family.dim)
