"""Density matrices and the named state families used by the witnesses."""

from __future__ import annotations

import math

import numpy as np

from .linalg import HermitianOperator, StateVector, hermitian_eig, hs_norm
from .scenarios import spin1_operators


class DensityMatrix:
    """Positive unit-trace Hermitian operator."""

    __slots__ = ("operator",)

    def __init__(self, operator: HermitianOperator) -> None:
        tr = float(np.trace(operator.matrix).real)
        if abs(tr - 1.0) > 1e-10:
            raise ValueError(f"trace {tr} deviates from 1 beyond 1e-10")
        w, _ = hermitian_eig(operator, name="density matrix")
        if w[0] < -1e-10:
            raise ValueError(f"negative eigenvalue {w[0]:.3e}")
        self.operator = operator

    @classmethod
    def from_matrix(cls, matrix) -> "DensityMatrix":
        return cls(HermitianOperator(matrix))

    @classmethod
    def pure(cls, state: StateVector) -> "DensityMatrix":
        return cls(state.projector())

    @property
    def dim(self) -> int:
        return self.operator.dim

    @property
    def matrix(self) -> np.ndarray:
        return self.operator.matrix

    def expectation(self, observable: np.ndarray) -> complex:
        return complex(np.trace(observable @ self.matrix))

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def time_reversed(self) -> "DensityMatrix":
        """Antiunitary time reversal of the state.

        Conjugation in a basis where the cycle observables are real. For the
        spin-1 (d = 3) case that basis is the Cartesian one, which in the
        stored |m> basis amounts to conjugation composed with the m -> -m
        flip carrying (-1)^m phases; it sends |+1_z> to |-1_z| and leaves
        |0_z| and |0_x| fixed. In the two-qubit computational basis (d = 4)
        plain conjugation already does the job.
        """
        r = _time_reversal_flip(self.dim)
        return DensityMatrix.from_matrix(r @ self.matrix.conj() @ r.T)

    def is_time_reversal_even(self, tol: float = 1e-12) -> bool:
        r = _time_reversal_flip(self.dim)
        return hs_norm(self.matrix - r @ self.matrix.conj() @ r.T) <= tol


def _time_reversal_flip(dim: int) -> np.ndarray:
    if dim == 3:
        return np.array([[0, 0, -1], [0, 1, 0], [-1, 0, 0]], dtype=float)
    return np.eye(dim)


def _spin_z_basis() -> dict[str, StateVector]:
    return {
        "+1z": StateVector([1, 0, 0]),
        "0z": StateVector([0, 1, 0]),
        "-1z": StateVector([0, 0, 1]),
    }


def _spin_x_states() -> dict[str, StateVector]:
    sx, _, _ = spin1_operators()
    w, vectors = hermitian_eig(sx, name="Sx")
    out = {}
    for target, name in ((1.0, "+1x"), (0.0, "0x"), (-1.0, "-1x")):
        k = int(np.argmin(np.abs(w - target)))
        out[name] = vectors[k]
    return out


def kcbs_mixing_state(p: float) -> DensityMatrix:
    """Mixture p |0_z><0_z| + (1 - p) * identity / 3."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight {p} outside [0, 1]")
    zero_z = _spin_z_basis()["0z"]
    matrix = p * zero_z.projector().matrix + (1.0 - p) * np.eye(3, dtype=complex) / 3.0
    return DensityMatrix.from_matrix(matrix)


def sweep_state(s: float) -> DensityMatrix:
    """Pure state cos(s)|0_z> + sin(s)|+1_z> as a density matrix."""
    basis = _spin_z_basis()
    v = math.cos(s) * basis["0z"].amplitudes + math.sin(s) * basis["+1z"].amplitudes
    return DensityMatrix.pure(StateVector.normalized(v))


NAMED_STATES = ("mixed3", "0z", "0x", "+1z", "-1z", "+1x", "phi_plus")


def named_state(name: str) -> DensityMatrix:
    """Look up one of the named reference states."""
    if name == "mixed3":
        return DensityMatrix.from_matrix(np.eye(3, dtype=complex) / 3.0)
    if name == "phi_plus":
        v = np.zeros(4, dtype=complex)
        v[0] = v[3] = 1.0 / math.sqrt(2.0)
        return DensityMatrix.pure(StateVector(v))
    z_states = _spin_z_basis()
    if name in z_states:
        return DensityMatrix.pure(z_states[name])
    x_states = _spin_x_states()
    if name in x_states and name in NAMED_STATES:
        return DensityMatrix.pure(x_states[name])
    raise ValueError(f"unknown state {name!r}; valid names: {', '.join(NAMED_STATES)}")
