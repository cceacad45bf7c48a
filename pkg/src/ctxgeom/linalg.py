"""Self-contained dense complex linear algebra for small Hermitian problems.

Everything a few-dimensional Hilbert space needs: a cyclic Jacobi
eigensolver for complex Hermitian matrices, singular values through the
normal matrix, Hilbert-Schmidt norms, and projector commutators. Sized
and tuned for d <= 16; robustness is preferred over speed throughout.
"""

from __future__ import annotations

import numpy as np

JACOBI_MAX_SWEEPS = 100
JACOBI_OFF_TOL = 1e-14
DEGENERACY_GAP = 1e-9
HERMITICITY_TOL = 1e-12
PROJECTOR_TOL = 1e-10


class EigensolverError(RuntimeError):
    """Raised when the Jacobi iteration fails to converge."""


def hs_norm(m: np.ndarray) -> float:
    """Hilbert-Schmidt (Frobenius) norm of a matrix or vector."""
    return float(np.sqrt(np.sum(np.abs(np.asarray(m)) ** 2)))


def dagger(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a vector so its largest-magnitude component is real positive.

    Ties are broken by the lowest index (np.argmax convention), making the
    output deterministic for golden tests.
    """
    v = np.asarray(v, dtype=complex)
    k = int(np.argmax(np.abs(v)))
    if abs(v[k]) == 0.0:
        return v.copy()
    return v * (v[k].conjugate() / abs(v[k]))


class HermitianOperator:
    """Dense d x d complex matrix forced Hermitian by symmetrization."""

    __slots__ = ("matrix",)

    def __init__(self, matrix) -> None:
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("matrix has non-finite entries")
        sym = (m + m.conj().T) / 2.0
        sym.setflags(write=False)
        self.matrix = sym

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "HermitianOperator") -> np.ndarray:
        return self.matrix @ other.matrix

    def __repr__(self) -> str:
        return f"HermitianOperator(dim={self.dim})"


class StateVector:
    """Unit vector with a deterministic global-phase convention."""

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes) -> None:
        v = np.asarray(amplitudes, dtype=complex).ravel()
        n = np.sqrt(np.sum(np.abs(v) ** 2))
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"state vector norm {n} deviates from 1 beyond 1e-12")
        v = fix_phase(v)
        v.setflags(write=False)
        self.amplitudes = v

    @classmethod
    def normalized(cls, v) -> "StateVector":
        v = np.asarray(v, dtype=complex).ravel()
        n = np.sqrt(np.sum(np.abs(v) ** 2))
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(v / n)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def projector(self) -> HermitianOperator:
        return HermitianOperator(np.outer(self.amplitudes, self.amplitudes.conj()))


def _off_norm(h: np.ndarray) -> float:
    d = h.shape[0]
    mask = ~np.eye(d, dtype=bool)
    return float(np.sqrt(np.sum(np.abs(h[mask]) ** 2)))


def jacobi_eigh(matrix: np.ndarray, name: str = "matrix"):
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Returns (eigenvalues ascending, unitary V with eigenvectors as columns).
    Raises EigensolverError naming the matrix if the off-diagonal norm has
    not dropped below threshold after the sweep cap.
    """
    h = np.array(matrix, dtype=complex)
    d = h.shape[0]
    v = np.eye(d, dtype=complex)
    scale = max(1.0, hs_norm(h))
    converged = False
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off_norm(h) <= JACOBI_OFF_TOL * scale:
            converged = True
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                c_pq = h[p, q]
                r = abs(c_pq)
                if r <= JACOBI_OFF_TOL * scale / d:
                    continue
                phase = c_pq.conjugate() / r
                a = h[p, p].real
                b = h[q, q].real
                tau = (b - a) / (2.0 * r)
                t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau)) if tau != 0 else 1.0
                cs = 1.0 / np.sqrt(1.0 + t * t)
                sn = t * cs
                # 2x2 unitary absorbing the off-diagonal phase
                j2 = np.array([[cs, sn], [-sn * phase, cs * phase]], dtype=complex)
                h[:, [p, q]] = h[:, [p, q]] @ j2
                h[[p, q], :] = j2.conj().T @ h[[p, q], :]
                v[:, [p, q]] = v[:, [p, q]] @ j2
    else:
        converged = _off_norm(h) <= JACOBI_OFF_TOL * scale
    if not converged:
        raise EigensolverError(
            f"Jacobi iteration on {name} did not converge within "
            f"{JACOBI_MAX_SWEEPS} sweeps (off-norm {_off_norm(h):.3e})"
        )
    w = np.real(np.diag(h))
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def _gram_schmidt_cluster(v: np.ndarray, lo: int, hi: int) -> None:
    """Re-orthonormalize columns lo:hi of v in place."""
    for k in range(lo, hi):
        col = v[:, k]
        for m in range(lo, k):
            col = col - (v[:, m].conj() @ col) * v[:, m]
        n = np.sqrt(np.sum(np.abs(col) ** 2))
        v[:, k] = col / n


def hermitian_eig(h: HermitianOperator, name: str = "matrix"):
    """Eigendecomposition of a HermitianOperator.

    Returns (eigenvalues ascending as a float array, eigenvectors as a list
    of StateVector). Eigenvectors inside a degenerate cluster (gap below
    1e-9) are re-orthonormalized by Gram-Schmidt; every eigenvector gets
    the largest-component-real-positive phase convention.
    """
    w, v = jacobi_eigh(h.matrix, name=name)
    d = h.dim
    v = np.array(v)
    lo = 0
    for k in range(1, d + 1):
        if k == d or w[k] - w[k - 1] >= DEGENERACY_GAP:
            if k - lo > 1:
                _gram_schmidt_cluster(v, lo, k)
            lo = k
    vectors = [StateVector(fix_phase(v[:, k])) for k in range(d)]
    return w, vectors


def largest_singular_value(m: np.ndarray) -> float:
    """sigma_max(M), computed as sqrt of the top eigenvalue of M^dag M."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix has non-finite entries")
    normal = dagger(m) @ m
    w, _ = jacobi_eigh(normal, name="normal matrix")
    return float(np.sqrt(max(w[-1], 0.0)))


def _check_projector(p: HermitianOperator, label: str) -> None:
    resid = hs_norm(p.matrix @ p.matrix - p.matrix)
    if resid > PROJECTOR_TOL:
        raise ValueError(f"{label} is not idempotent (||P^2 - P|| = {resid:.3e})")


def commutator_hs_norm_sq(p: HermitianOperator, q: HermitianOperator) -> float:
    """Squared Hilbert-Schmidt norm of the commutator of two projectors."""
    _check_projector(p, "first argument")
    _check_projector(q, "second argument")
    return hs_norm(commutator(p.matrix, q.matrix)) ** 2
