"""State-dependent cycle witnesses and the extremal-overlap bound.

Covers the cycle correlator (with the 4-cycle sign flip), the closed-form
contextual fraction for cycles, the Shannon-entropic cycle inequality, the
commutator expectation witness, and the bit bound derived from the
extremal overlap. All entropies are base-2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import HermitianOperator, commutator, hermitian_eig, hs_norm
from .scenarios import Scenario
from .states import DensityMatrix

ENTROPY_CUTOFF = 1e-14
ZERO_REPORT_TOL = 1e-9
PROB_DRIFT_TOL = 1e-10

P_STAR = (3.0 * math.sqrt(5.0) + 5.0) / 20.0


@dataclass(frozen=True)
class OutcomeDistribution:
    """Discrete outcome distribution over eigenvalue tuples."""

    outcomes: tuple[tuple[tuple[float, ...], float], ...]
    arity: int

    def __post_init__(self) -> None:
        total = sum(p for _, p in self.outcomes)
        if any(p < 0.0 for _, p in self.outcomes):
            raise ValueError("negative probability")
        if abs(total - 1.0) > PROB_DRIFT_TOL:
            raise ValueError(f"probabilities sum to {total}, drift beyond 1e-10")

    def probabilities(self) -> list[float]:
        return [p for _, p in self.outcomes]

    def entropy_bits(self) -> float:
        return shannon_bits(self.probabilities())


def shannon_bits(probabilities) -> float:
    """Base-2 Shannon entropy with 0 log 0 = 0 and a 1e-14 noise cutoff."""
    return -sum(p * math.log2(p) for p in probabilities if p > ENTROPY_CUTOFF)


def spectral_projectors(obs: HermitianOperator) -> list[tuple[float, np.ndarray]]:
    """Eigenvalue/projector pairs of an observable, eigenvalues descending."""
    w, vectors = hermitian_eig(obs, name="observable")
    groups: list[tuple[float, np.ndarray]] = []
    for k in range(obs.dim):
        v = vectors[k].amplitudes
        if groups and abs(w[k] - groups[-1][0]) <= 1e-8:
            value, proj = groups[-1]
            groups[-1] = (value, proj + np.outer(v, v.conj()))
        else:
            groups.append((float(w[k]), np.outer(v, v.conj())))
    return sorted(groups, key=lambda g: g[0], reverse=True)


def joint_distribution(
    a: HermitianOperator, b: HermitianOperator, rho: DensityMatrix
) -> OutcomeDistribution:
    """Joint outcome distribution of a commuting pair measured on rho."""
    if a.dim != b.dim or a.dim != rho.dim:
        raise ValueError("dimension mismatch between observables and state")
    c = hs_norm(commutator(a.matrix, b.matrix))
    if c > 1e-10:
        raise ValueError(f"observables do not commute (||[A,B]|| = {c:.3e})")
    outcomes = []
    for va, pa in spectral_projectors(a):
        for vb, pb in spectral_projectors(b):
            prob = float(np.trace(pa @ pb @ rho.matrix).real)
            outcomes.append(((va, vb), max(prob, 0.0)))
    total = sum(p for _, p in outcomes)
    if abs(total - 1.0) > PROB_DRIFT_TOL:
        raise ValueError(f"joint probabilities sum to {total}")
    outcomes = [(v, p / total) for v, p in outcomes]
    return OutcomeDistribution(tuple(outcomes), arity=2)


def marginal_distribution(a: HermitianOperator, rho: DensityMatrix) -> OutcomeDistribution:
    outcomes = []
    for va, pa in spectral_projectors(a):
        prob = float(np.trace(pa @ rho.matrix).real)
        outcomes.append(((va,), max(prob, 0.0)))
    total = sum(p for _, p in outcomes)
    if abs(total - 1.0) > PROB_DRIFT_TOL:
        raise ValueError(f"marginal probabilities sum to {total}")
    return OutcomeDistribution(tuple((v, p / total) for v, p in outcomes), arity=1)


def _require_correlator_cycle(scenario: Scenario) -> None:
    if scenario.n not in (4, 5) or scenario.chi_nc is None or scenario.chi_ns is None:
        raise ValueError(
            f"correlator bounds are defined only for cycles of length 4 or 5, "
            f"got n={scenario.n}"
        )


def cycle_correlator(scenario: Scenario, rho: DensityMatrix) -> float:
    """Signed sum of adjacent-pair correlators around the cycle."""
    _require_correlator_cycle(scenario)
    n = scenario.n
    total = 0.0
    for alpha in range(n):
        sign = -1.0 if alpha == scenario.sign_flip_index else 1.0
        prod = scenario.observables[alpha].matrix @ scenario.observables[(alpha + 1) % n].matrix
        total += sign * float(np.trace(prod @ rho.matrix).real)
    return total


def contextual_fraction(chi: float, chi_nc: float, chi_ns: float) -> float:
    """Closed-form cycle contextual fraction, clamped at zero."""
    if chi_nc == chi_ns:
        raise ValueError("noncontextual and no-signaling bounds coincide")
    return max(0.0, (chi_nc - chi) / (chi_nc - chi_ns))


def chaves_fritz(scenario: Scenario, rho: DensityMatrix, k: int) -> float:
    """Shannon-entropic cycle inequality value at anchor index k, in bits.

    Noncontextual models satisfy a value <= 0; indices are cyclic with
    X_n identified with X_0.
    """
    n = scenario.n
    if not 0 <= k < n:
        raise IndexError(f"anchor index {k} out of range for an n={n} cycle")
    singles = [
        marginal_distribution(scenario.observables[j], rho).entropy_bits() for j in range(n)
    ]
    pairs = [
        joint_distribution(
            scenario.observables[j], scenario.observables[(j + 1) % n], rho
        ).entropy_bits()
        for j in range(n)
    ]
    value = pairs[k]
    for j in range(n):
        if j not in (k, (k + 1) % n):
            value += singles[j]
        if j != k:
            value -= pairs[j]
    return value


def commutator_witness_D(
    scenario: Scenario, rho: DensityMatrix
) -> tuple[list[float], float]:
    """Per-context |<[A_left, A_right]>| and its total over contexts.

    Magnitudes below 1e-9 are reported as exactly zero.
    """
    per_context = []
    for ctx in scenario.contexts:
        c = commutator(ctx.left_obs.matrix, ctx.right_obs.matrix)
        value = abs(complex(np.trace(c @ rho.matrix)))
        per_context.append(0.0 if value < ZERO_REPORT_TOL else value)
    return per_context, float(sum(per_context))


def mu_bound(c_mu: float) -> tuple[float, bool]:
    """Bit bound -2 log2(c) and whether it is trivial (<= 1e-9)."""
    if c_mu <= 0.0:
        raise ValueError(f"extremal overlap must be positive, got {c_mu}")
    if c_mu > 1.0 + 1e-12:
        raise ValueError(f"extremal overlap must not exceed 1, got {c_mu}")
    bits = -2.0 * math.log2(min(c_mu, 1.0))
    return bits, bits <= ZERO_REPORT_TOL


def p_star() -> float:
    """Mixing threshold at which the 5-cycle correlator hits its bound."""
    return P_STAR
