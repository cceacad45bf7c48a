"""Measurement scenarios: spin-1 odd-n cycles and the two-qubit 4-cycle.

The odd-n cycle places n spin-1 dichotomic observables on a cone whose
polar angle makes adjacent axes orthogonal; n = 5 is the pentagon. The
4-cycle alternates Alice/Bob equatorial-plane qubit observables on two
qubits. Both come with their cyclic contexts and, for n in {4, 5}, the
noncontextual and no-signaling correlator bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import HermitianOperator, StateVector, hermitian_eig, hs_norm, commutator
from .projectors import ProjectorFamily, joint_eigenprojectors

# Entropic-optimal 4-cycle angles (radians), kept as literal constants; the
# originating optimization is not re-run here.
BELL_OPTIMAL_ANGLES = (0.0, math.pi / 4, math.pi / 2, -math.pi / 4)
ENTROPIC_OPTIMAL_ANGLES = (0.0, 0.916, 0.524, -2.880)


@dataclass(frozen=True)
class Context:
    """One cyclic context: outer observables sharing a middle observable."""

    left_obs: HermitianOperator
    mid_obs: HermitianOperator
    right_obs: HermitianOperator
    left_family: ProjectorFamily
    right_family: ProjectorFamily
    index: int

    def __post_init__(self) -> None:
        for outer in (self.left_obs, self.right_obs):
            c = hs_norm(commutator(outer.matrix, self.mid_obs.matrix))
            if c > 1e-10:
                raise ValueError(f"context {self.index}: outer/middle commutator {c:.3e}")


@dataclass(frozen=True)
class Scenario:
    observables: tuple[HermitianOperator, ...]
    dim: int
    contexts: tuple[Context, ...]
    n: int
    sign_flip_index: int | None
    chi_nc: float | None
    chi_ns: float | None
    name: str
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class NCycleConfig:
    """Cone geometry of the spin-1 odd-n cycle."""

    n: int
    theta: float
    delta_phi: float
    axes: tuple[tuple[float, float, float], ...]


@dataclass(frozen=True)
class ChshConfig:
    """Measurement angles (a0, b0, a1, b1) of the 4-cycle, in radians."""

    a0: float
    b0: float
    a1: float
    b1: float

    @property
    def angles(self) -> tuple[float, float, float, float]:
        return (self.a0, self.b0, self.a1, self.b1)


def spin1_operators() -> tuple[HermitianOperator, HermitianOperator, HermitianOperator]:
    """Standard spin-1 matrices in the (|+1>, |0>, |-1>) basis."""
    r = 1.0 / math.sqrt(2.0)
    sx = HermitianOperator(r * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=complex))
    sy = HermitianOperator(r * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]], dtype=complex))
    sz = HermitianOperator(np.diag([1.0, 0.0, -1.0]).astype(complex))
    return sx, sy, sz


def ms0_eigenstate(direction) -> StateVector:
    """m_s = 0 eigenstate of spin along a unit 3-vector."""
    d = np.asarray(direction, dtype=float)
    norm = float(np.sqrt(np.sum(d * d)))
    if norm == 0.0:
        raise ValueError("direction must be a nonzero vector")
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"direction norm {norm} deviates from 1 beyond 1e-10")
    sx, sy, sz = spin1_operators()
    h = HermitianOperator(d[0] * sx.matrix + d[1] * sy.matrix + d[2] * sz.matrix)
    w, vectors = hermitian_eig(h, name="spin projection")
    k = int(np.argmin(np.abs(w)))
    if abs(w[k]) > 1e-8:
        raise ValueError("no zero eigenvalue found for the spin projection")
    return vectors[k]


def ncycle_config(n: int) -> NCycleConfig:
    if n < 5 or n % 2 == 0:
        raise ValueError(f"cycle length must be odd and >= 5, got {n}")
    delta_phi = math.pi * (n + 1) / n
    cos2 = -math.cos(delta_phi) / (1.0 - math.cos(delta_phi))
    theta = math.acos(math.sqrt(cos2))
    axes = []
    for alpha in range(n):
        phi = alpha * delta_phi
        axes.append(
            (
                math.sin(theta) * math.cos(phi),
                math.sin(theta) * math.sin(phi),
                math.cos(theta),
            )
        )
    return NCycleConfig(n=n, theta=theta, delta_phi=delta_phi, axes=tuple(axes))


def _cycle_contexts(observables: list[HermitianOperator], n: int) -> tuple[Context, ...]:
    contexts = []
    for alpha in range(n):
        left = observables[(alpha - 1) % n]
        mid = observables[alpha]
        right = observables[(alpha + 1) % n]
        contexts.append(
            Context(
                left_obs=left,
                mid_obs=mid,
                right_obs=right,
                left_family=joint_eigenprojectors(left, mid),
                right_family=joint_eigenprojectors(right, mid),
                index=alpha,
            )
        )
    return tuple(contexts)


def build_ncycle(n: int) -> Scenario:
    """Spin-1 odd-n cycle scenario with its n cyclic contexts.

    Correlator bounds are attached only for n = 5; larger odd cycles carry
    no chi bounds and the cycle-correlator witnesses reject them.
    """
    config = ncycle_config(n)
    eye = np.eye(3, dtype=complex)
    observables = []
    for axis in config.axes:
        zero_state = ms0_eigenstate(axis)
        observables.append(HermitianOperator(eye - 2.0 * zero_state.projector().matrix))
    contexts = _cycle_contexts(observables, n)
    chi_nc, chi_ns = (-3.0, -5.0) if n == 5 else (None, None)
    return Scenario(
        observables=tuple(observables),
        dim=3,
        contexts=contexts,
        n=n,
        sign_flip_index=None,
        chi_nc=chi_nc,
        chi_ns=chi_ns,
        name="kcbs" if n == 5 else f"{n}-cycle",
        metadata={"theta_rad": config.theta, "delta_phi": config.delta_phi},
    )


def _equatorial_qubit(t: float) -> np.ndarray:
    sz = np.diag([1.0, -1.0]).astype(complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    return math.cos(t) * sz + math.sin(t) * sx


def build_chsh(config: ChshConfig) -> Scenario:
    """Two-qubit 4-cycle with alternating Alice/Bob observables.

    The correlator sign flip sits on the (A3, A4) adjacent pair, i.e. the
    cyclic pair starting at 0-based index 2.
    """
    eye = np.eye(2, dtype=complex)
    observables = [
        HermitianOperator(np.kron(_equatorial_qubit(config.a0), eye)),
        HermitianOperator(np.kron(eye, _equatorial_qubit(config.b0))),
        HermitianOperator(np.kron(_equatorial_qubit(config.a1), eye)),
        HermitianOperator(np.kron(eye, _equatorial_qubit(config.b1))),
    ]
    contexts = _cycle_contexts(observables, 4)
    return Scenario(
        observables=tuple(observables),
        dim=4,
        contexts=contexts,
        n=4,
        sign_flip_index=2,
        chi_nc=2.0,
        chi_ns=4.0,
        name="chsh",
        metadata={"angles": config.angles},
    )
