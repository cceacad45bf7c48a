import numpy as np
import pytest

from ctxgeom.linalg import HermitianOperator, hs_norm
from ctxgeom.overlap import (
    commutator_identity_residual,
    context_invariants,
    overlap_matrix,
    principal_angles,
    range_basis,
)
from ctxgeom.projectors import LabeledProjector, ProjectorFamily


def rank1_family(columns):
    d = columns.shape[0]
    members = []
    for k in range(columns.shape[1]):
        v = columns[:, k]
        members.append(
            LabeledProjector(HermitianOperator(np.outer(v, v.conj())), (float(k),), 1)
        )
    return ProjectorFamily(tuple(members), d)


def haar_unitary(d, rng):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r).conj() / np.abs(np.diag(r)))


class TestOverlapMatrix:
    def test_same_family_has_unit_energy(self):
        rng = np.random.default_rng(3)
        fam = rank1_family(haar_unitary(4, rng))
        table = overlap_matrix(fam, fam)
        assert table.energy == pytest.approx(1.0, abs=1e-12)
        # diagonal carries 1/d per member, off-diagonal is zero
        assert np.allclose(np.diag(table.entries), 0.25, atol=1e-12)

    def test_entries_bounded_and_energy_in_range(self):
        rng = np.random.default_rng(44)
        for _ in range(25):
            d = int(rng.integers(2, 7))
            left = rank1_family(haar_unitary(d, rng))
            right = rank1_family(haar_unitary(d, rng))
            table = overlap_matrix(left, right)
            assert np.all(table.entries >= 0.0)
            assert np.all(table.entries <= 1.0 / d + 1e-15)
            assert 1.0 / d - 1e-9 <= table.energy <= 1.0 + 1e-9

    def test_mutually_unbiased_bases_give_minimal_energy(self):
        d = 3
        f = np.exp(2j * np.pi / d * np.outer(np.arange(d), np.arange(d))) / np.sqrt(d)
        left = rank1_family(np.eye(d, dtype=complex))
        right = rank1_family(f)
        assert overlap_matrix(left, right).energy == pytest.approx(1.0 / d, abs=1e-12)

    def test_labels_carried_through(self):
        fam = rank1_family(np.eye(2, dtype=complex))
        table = overlap_matrix(fam, fam)
        assert table.left_labels == ((0.0,), (1.0,))

    def test_dimension_mismatch_rejected(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ValueError, match="dimension"):
            overlap_matrix(
                rank1_family(haar_unitary(2, rng)), rank1_family(haar_unitary(3, rng))
            )


class TestPrincipalAngles:
    def test_identical_rank1(self):
        fam = rank1_family(np.eye(2, dtype=complex))
        (angle,) = principal_angles(fam.members[0], fam.members[0])
        assert angle == pytest.approx(0.0, abs=1e-7)

    def test_orthogonal_rank1(self):
        fam = rank1_family(np.eye(2, dtype=complex))
        (angle,) = principal_angles(fam.members[0], fam.members[1])
        assert angle == pytest.approx(np.pi / 2, abs=1e-7)

    def test_known_plane_angle(self):
        t = 0.7
        u = np.array([1.0, 0.0, 0.0])
        v = np.array([np.cos(t), np.sin(t), 0.0])
        p = LabeledProjector(HermitianOperator(np.outer(u, u)), (0.0,), 1)
        q = LabeledProjector(HermitianOperator(np.outer(v, v)), (1.0,), 1)
        (angle,) = principal_angles(p, q)
        assert angle == pytest.approx(t, abs=1e-8)

    def test_angle_count_is_min_rank(self):
        cols = np.eye(4, dtype=complex)
        p = LabeledProjector(
            HermitianOperator(cols[:, :2] @ cols[:, :2].conj().T), (0.0,), 2
        )
        q = LabeledProjector(
            HermitianOperator(cols[:, 1:] @ cols[:, 1:].conj().T), (1.0,), 3
        )
        assert len(principal_angles(p, q)) == 2

    def test_entry_decomposition(self):
        # T_ij = d^-1 sum_mu cos^4(theta_mu), checked on random rank-1 pairs
        rng = np.random.default_rng(202)
        for _ in range(10):
            d = 4
            left = rank1_family(haar_unitary(d, rng))
            right = rank1_family(haar_unitary(d, rng))
            table = overlap_matrix(left, right)
            for i, p in enumerate(left.members):
                for j, q in enumerate(right.members):
                    angles = principal_angles(p, q)
                    geom = sum(np.cos(t) ** 4 for t in angles) / d
                    assert table.entries[i, j] == pytest.approx(geom, abs=1e-10)


def test_range_basis_spans_projector():
    rng = np.random.default_rng(9)
    u = haar_unitary(5, rng)[:, :3]
    p = LabeledProjector(HermitianOperator(u @ u.conj().T), (0.0,), 3)
    b = range_basis(p)
    assert b.shape == (5, 3)
    assert hs_norm(b @ b.conj().T - p.projector.matrix) < 1e-10


class TestContextInvariants:
    def test_energy_bounded_by_squared_extremal_overlap(self):
        rng = np.random.default_rng(55)
        for _ in range(20):
            d = int(rng.integers(2, 6))
            inv = context_invariants(
                rank1_family(haar_unitary(d, rng)), rank1_family(haar_unitary(d, rng))
            )
            assert inv.energy <= inv.c_mu**2 + 1e-10
            assert inv.s2_bits == pytest.approx(-np.log2(inv.energy), abs=1e-12)

    def test_unitary_invariance(self):
        rng = np.random.default_rng(66)
        d = 4
        cl, cr = haar_unitary(d, rng), haar_unitary(d, rng)
        w = haar_unitary(d, rng)
        before = overlap_matrix(rank1_family(cl), rank1_family(cr))
        after = overlap_matrix(rank1_family(w @ cl), rank1_family(w @ cr))
        assert hs_norm(before.entries - after.entries) < 1e-10

    def test_saturation_on_identical_rank1_families(self):
        rng = np.random.default_rng(77)
        fam = rank1_family(haar_unitary(3, rng))
        inv = context_invariants(fam, fam)
        assert inv.saturated
        assert inv.c_mu == pytest.approx(1.0, abs=1e-10)

    def test_pooled_angle_count(self):
        rng = np.random.default_rng(88)
        d = 3
        inv = context_invariants(
            rank1_family(haar_unitary(d, rng)), rank1_family(haar_unitary(d, rng))
        )
        assert len(inv.principal_angles) == d * d
        assert inv.principal_angles == tuple(sorted(inv.principal_angles))


def test_commutator_identity_on_random_configurations():
    rng = np.random.default_rng(4242)
    for _ in range(50):
        d = int(rng.integers(2, 7))
        left = rank1_family(haar_unitary(d, rng))
        right = rank1_family(haar_unitary(d, rng))
        assert commutator_identity_residual(left, right) < 1e-12
