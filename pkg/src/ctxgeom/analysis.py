"""Multi-context composition checks and randomized verification.

Provides the additive bit total over contexts, the ordered-pair exactness
audit (duplicate detection and mechanism classification), a seeded
coarse-graining monotonicity fuzzer over Haar-random families, and the
odd-n-cycle scan with its large-n extrapolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .overlap import overlap_matrix
from .scenarios import Scenario, build_ncycle

DUPLICATE_TOL = 1e-10
ZERO_CONTRIBUTION_TOL = 1e-12
EQUALITY_TOL = 1e-12


@dataclass(frozen=True)
class ExactnessReport:
    """Audit of ordered left/right projector pairs pooled across contexts."""

    total_ordered_pairs: int
    duplicate_count: int
    duplicate_contributions: tuple[float, ...]
    mechanism: str
    s2_total_bits: float

    def __post_init__(self) -> None:
        valid = {"distinct-bases", "cyclic-orthogonality", "inexact"}
        if self.mechanism not in valid:
            raise ValueError(f"unknown mechanism {self.mechanism!r}")


@dataclass(frozen=True)
class MonotonicityReport:
    trials: int
    violations: int
    max_negative_delta: float
    equality_cases: int


@dataclass(frozen=True)
class NCycleRow:
    n: int
    theta_deg: float
    energy: float
    s2_per_context: float
    s2_total: float
    n2_s2_per_context: float


def context_energy(ctx) -> float:
    return overlap_matrix(ctx.left_family, ctx.right_family).energy


def s2_total(scenario: Scenario) -> float:
    """Additive bit total: sum over contexts of -log2 of the context energy."""
    return float(sum(-math.log2(context_energy(ctx)) for ctx in scenario.contexts))


def _hs_dist(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2)))


def verify_exactness(scenario: Scenario) -> ExactnessReport:
    """Classify why the additive composition is (or is not) exact.

    Every ordered (left-member, right-member) pair across all contexts is
    collected; occurrences beyond the first of an identical pair (both
    members within 1e-10 in Hilbert-Schmidt distance) count as duplicates,
    and their overlap contributions decide the mechanism.
    """
    seen: list[tuple[np.ndarray, np.ndarray]] = []
    total = 0
    duplicate_contributions: list[float] = []
    d = scenario.dim
    for ctx in scenario.contexts:
        for p in ctx.left_family.members:
            for q in ctx.right_family.members:
                total += 1
                pm, qm = p.projector.matrix, q.projector.matrix
                is_dup = any(
                    _hs_dist(pm, sp) <= DUPLICATE_TOL and _hs_dist(qm, sq) <= DUPLICATE_TOL
                    for sp, sq in seen
                )
                if is_dup:
                    m = pm @ qm
                    duplicate_contributions.append(float(np.trace(m @ m).real) / d)
                else:
                    seen.append((pm, qm))
    if not duplicate_contributions:
        mechanism = "distinct-bases"
    elif all(c <= ZERO_CONTRIBUTION_TOL for c in duplicate_contributions):
        mechanism = "cyclic-orthogonality"
    else:
        mechanism = "inexact"
    return ExactnessReport(
        total_ordered_pairs=total,
        duplicate_count=len(duplicate_contributions),
        duplicate_contributions=tuple(duplicate_contributions),
        mechanism=mechanism,
        s2_total_bits=s2_total(scenario),
    )


def haar_rank1_family(dim: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Complete rank-1 family from a Haar-random unitary (QR with sign fix)."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    q = q * (np.diag(r).conj() / np.abs(np.diag(r)))
    return [np.outer(q[:, k], q[:, k].conj()) for k in range(dim)]


def _random_partition(dim: int, size: int, rng: np.random.Generator) -> list[list[int]]:
    """Partition range(dim) into `size` nonempty groups, uniformly seeded."""
    indices = rng.permutation(dim)
    groups: list[list[int]] = [[int(indices[k])] for k in range(size)]
    for k in range(size, dim):
        groups[int(rng.integers(size))].append(int(indices[k]))
    return groups


def _family_energy(left: list[np.ndarray], right: list[np.ndarray], d: int) -> float:
    total = 0.0
    for p in left:
        for q in right:
            m = p @ q
            total += float(np.trace(m @ m).real)
    return total / d


def verify_coarse_graining(
    trials: int,
    dims=(3, 4, 5, 6),
    family_sizes=(2, 3, 4, 5, 6),
    seed: int = 0,
) -> MonotonicityReport:
    """Fuzz the merge monotonicity of the energy on random configurations.

    Each trial draws two Haar-random rank-1 complete families, optionally
    pre-merges the left one down to a requested size, merges one random
    left pair, and records the energy change. Trial t is seeded with
    seed XOR t, so results do not depend on execution order. Equality
    cases (|delta| <= 1e-12) are additionally required to satisfy the
    vanishing-sandwich condition max_j ||P_i Q_j P_i'|| <= 1e-8.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    violations = 0
    equality_cases = 0
    max_negative_delta = 0.0
    for t in range(trials):
        rng = np.random.default_rng(seed ^ t)
        d = int(rng.choice(dims))
        size = min(int(rng.choice(family_sizes)), d)
        size = max(size, 2)
        left_rank1 = haar_rank1_family(d, rng)
        left = [
            sum(left_rank1[k] for k in group) for group in _random_partition(d, size, rng)
        ]
        right = haar_rank1_family(d, rng)
        i, ip = rng.choice(size, size=2, replace=False)
        before = _family_energy(left, right, d)
        merged = [left[k] for k in range(size) if k not in (i, ip)]
        merged.append(left[i] + left[ip])
        after = _family_energy(merged, right, d)
        delta = after - before
        if delta < -EQUALITY_TOL:
            violations += 1
            max_negative_delta = min(max_negative_delta, delta)
        elif abs(delta) <= EQUALITY_TOL:
            sandwich = max(
                float(np.sqrt(np.sum(np.abs(left[i] @ q @ left[ip]) ** 2))) for q in right
            )
            if sandwich <= 1e-8:
                equality_cases += 1
            else:
                violations += 1
                max_negative_delta = min(max_negative_delta, delta)
    return MonotonicityReport(
        trials=trials,
        violations=violations,
        max_negative_delta=max_negative_delta,
        equality_cases=equality_cases,
    )


def ncycle_scan(n_values) -> list[NCycleRow]:
    """Per-n cone angle, context energy, and bit totals for odd cycles.

    The context energy is checked to be uniform across contexts, and the
    extremal overlap is verified to equal 1 in every context through the
    rank-1 fast path.
    """
    rows = []
    for n in n_values:
        scenario = build_ncycle(n)
        energies = [context_energy(ctx) for ctx in scenario.contexts]
        spread = max(energies) - min(energies)
        if spread > 1e-10:
            raise ValueError(f"n={n}: context energies not uniform (spread {spread:.3e})")
        for ctx in scenario.contexts:
            if abs(_max_rank1_overlap(ctx) - 1.0) > 1e-10:
                raise ValueError(f"n={n}: extremal overlap differs from 1")
        energy = energies[0]
        s2 = -math.log2(energy)
        rows.append(
            NCycleRow(
                n=n,
                theta_deg=math.degrees(scenario.metadata["theta_rad"]),
                energy=energy,
                s2_per_context=s2,
                s2_total=n * s2,
                n2_s2_per_context=n * n * s2,
            )
        )
    return rows


def _rank1_vector(projector: np.ndarray) -> np.ndarray:
    col = int(np.argmax(np.sum(np.abs(projector) ** 2, axis=0)))
    v = projector[:, col]
    return v / np.sqrt(np.sum(np.abs(v) ** 2))


def _max_rank1_overlap(ctx) -> float:
    """max |<u|v>| over rank-1 members; the extremal overlap, cheaply."""
    best = 0.0
    for p in ctx.left_family.members:
        if p.rank != 1:
            raise ValueError("fast path requires rank-1 members")
        u = _rank1_vector(p.projector.matrix)
        for q in ctx.right_family.members:
            if q.rank != 1:
                raise ValueError("fast path requires rank-1 members")
            v = _rank1_vector(q.projector.matrix)
            best = max(best, abs(complex(u.conj() @ v)))
    return best


def richardson_extrapolate(n_values, values) -> float:
    """Limit of f(n) = L + a/n + b/n^2 fitted through three samples."""
    ns = np.asarray(n_values, dtype=float)
    if ns.shape != (3,):
        raise ValueError("exactly three sample points are required")
    design = np.vstack([np.ones(3), 1.0 / ns, 1.0 / ns**2]).T
    coeffs = np.linalg.solve(design, np.asarray(values, dtype=float))
    return float(coeffs[0])
