import math

import numpy as np
import pytest

from ctxgeom.states import (
    NAMED_STATES,
    DensityMatrix,
    kcbs_mixing_state,
    named_state,
    sweep_state,
)


class TestDensityMatrix:
    def test_rejects_wrong_trace(self):
        with pytest.raises(ValueError, match="trace"):
            DensityMatrix.from_matrix(np.eye(3))

    def test_rejects_negative_eigenvalue(self):
        m = np.diag([1.5, -0.5]).astype(complex)
        with pytest.raises(ValueError, match="negative"):
            DensityMatrix.from_matrix(m)

    def test_purity(self):
        assert named_state("0z").purity() == pytest.approx(1.0, abs=1e-12)
        assert named_state("mixed3").purity() == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_expectation(self):
        rho = named_state("+1z")
        sz = np.diag([1.0, 0.0, -1.0]).astype(complex)
        assert rho.expectation(sz).real == pytest.approx(1.0, abs=1e-12)


class TestMixingFamily:
    def test_endpoints(self):
        assert np.allclose(kcbs_mixing_state(1.0).matrix, np.diag([0, 1, 0]))
        assert np.allclose(kcbs_mixing_state(0.0).matrix, np.eye(3) / 3)

    def test_affine_in_p(self):
        a, b, mid = (kcbs_mixing_state(p).matrix for p in (0.2, 0.8, 0.5))
        assert np.allclose((a + b) / 2, mid, atol=1e-14)

    @pytest.mark.parametrize("p", [-0.1, 1.01, 2.0])
    def test_rejects_out_of_range(self, p):
        with pytest.raises(ValueError, match="mixing"):
            kcbs_mixing_state(p)


class TestSweepState:
    def test_endpoints(self):
        assert np.allclose(sweep_state(0.0).matrix, named_state("0z").matrix)
        assert np.allclose(
            sweep_state(math.pi / 2).matrix, named_state("+1z").matrix, atol=1e-15
        )

    def test_always_pure(self):
        for s in np.linspace(0.0, math.pi / 2, 7):
            assert sweep_state(float(s)).purity() == pytest.approx(1.0, abs=1e-12)


class TestNamedStates:
    @pytest.mark.parametrize("name", NAMED_STATES)
    def test_all_names_resolve(self, name):
        rho = named_state(name)
        assert rho.dim == (4 if name == "phi_plus" else 3)

    def test_unknown_name_lists_valid(self):
        with pytest.raises(ValueError, match="mixed3.*phi_plus"):
            named_state("bogus")

    def test_phi_plus_correlations(self):
        rho = named_state("phi_plus")
        zz = np.kron(np.diag([1.0, -1.0]), np.diag([1.0, -1.0])).astype(complex)
        xx = np.kron(np.array([[0, 1], [1, 0]]), np.array([[0, 1], [1, 0]])).astype(complex)
        assert rho.expectation(zz).real == pytest.approx(1.0, abs=1e-12)
        assert rho.expectation(xx).real == pytest.approx(1.0, abs=1e-12)

    def test_0x_is_ms0_of_sx(self):
        from ctxgeom.scenarios import spin1_operators

        sx, _, _ = spin1_operators()
        rho = named_state("0x")
        assert np.linalg.norm(sx.matrix @ rho.matrix) < 1e-12


class TestTimeReversal:
    def test_mixing_family_is_even(self):
        for p in (0.0, 0.3, 0.585, 1.0):
            assert kcbs_mixing_state(p).is_time_reversal_even()

    def test_spin_flip_on_polarized_states(self):
        flipped = named_state("+1z").time_reversed()
        assert np.allclose(flipped.matrix, named_state("-1z").matrix, atol=1e-14)

    def test_even_odd_classification(self):
        assert named_state("0z").is_time_reversal_even()
        assert named_state("0x").is_time_reversal_even()
        assert named_state("phi_plus").is_time_reversal_even()
        assert not named_state("+1z").is_time_reversal_even()
        assert not named_state("+1x").is_time_reversal_even()

    def test_involution(self):
        for name in ("+1z", "+1x", "0x"):
            rho = named_state(name)
            assert np.allclose(
                rho.time_reversed().time_reversed().matrix, rho.matrix, atol=1e-14
            )
