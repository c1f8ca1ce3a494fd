import math

import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import eval_genlaguerre

from fansqueeze import (
    IonTrap,
    IonTrapDrive,
    LaguerreZeroError,
    PhotonAdded,
    QDeformed,
    UNITY,
    drive_amplitude,
    f_chain,
    f_value,
    laguerre,
)


def explicit_laguerre(alpha, degree, x):
    # closed polynomial forms for degrees 0..3, used as an independent check
    if degree == 0:
        return 1.0
    if degree == 1:
        return 1.0 + alpha - x
    if degree == 2:
        return (x * x - 2 * (alpha + 2) * x + (alpha + 1) * (alpha + 2)) / 2.0
    if degree == 3:
        return (-x ** 3 + 3 * (alpha + 3) * x ** 2
                - 3 * (alpha + 2) * (alpha + 3) * x
                + (alpha + 1) * (alpha + 2) * (alpha + 3)) / 6.0
    raise ValueError(degree)


class TestLaguerre:
    def test_degree_zero_is_one(self):
        assert laguerre(0, 0, 5.0) == 1.0
        assert laguerre(7, 0, 0.3) == 1.0

    def test_degree_one(self):
        assert laguerre(2, 1, 0.05) == pytest.approx(2.95, abs=1e-15)

    def test_degree_two(self):
        assert laguerre(0, 2, 0.05) == pytest.approx(0.90125, abs=1e-15)

    @pytest.mark.parametrize("alpha", [0, 2, 4])
    @pytest.mark.parametrize("degree", [0, 1, 2, 3])
    @pytest.mark.parametrize("x", [0.0, 0.05, 0.7, 2.5, 9.0])
    def test_matches_explicit_low_degrees(self, alpha, degree, x):
        assert laguerre(alpha, degree, x) == pytest.approx(
            explicit_laguerre(alpha, degree, x), rel=1e-12, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0, 2, 4, 6])
    @pytest.mark.parametrize("degree", [5, 17, 40, 60])
    @pytest.mark.parametrize("x", [0.05, 0.5, 2.5])
    def test_matches_scipy(self, alpha, degree, x):
        assert laguerre(alpha, degree, x) == pytest.approx(
            eval_genlaguerre(degree, alpha, x), rel=1e-9, abs=1e-12)

    def test_rejects_negative_inputs(self):
        with pytest.raises(ValueError):
            laguerre(-1, 2, 0.1)
        with pytest.raises(ValueError):
            laguerre(0, -2, 0.1)


class TestFValue:
    def test_unity_is_exactly_one(self):
        assert f_value(UNITY, 17, 3) == 1.0
        assert f_value(UNITY, 0, 1) == 1.0

    def test_iontrap_below_2k_is_one(self):
        model = IonTrap(eta2=0.05)
        assert f_value(model, 0, 1) == 1.0
        assert f_value(model, 1, 1) == 1.0
        assert f_value(model, 3, 2) == 1.0

    def test_iontrap_first_level(self):
        # degree-0 polynomials are both 1, so f(2) = 0!/2! = 1/2
        assert f_value(IonTrap(eta2=0.05), 2, 1) == pytest.approx(0.5, abs=1e-15)

    def test_iontrap_level_four(self):
        expected = 2.0 * 5.80125 / (24.0 * 0.90125)
        assert f_value(IonTrap(eta2=0.05), 4, 1) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize("k", [1, 2])
    def test_iontrap_small_eta_limit(self, k):
        # as eta -> 0 the Laguerre ratio tends to binom(n, 2k) and the whole
        # f collapses to 1/(2k)!
        model = IonTrap(eta2=1e-12)
        for n in range(2 * k, 2 * k + 11):
            assert f_value(model, n, k) == pytest.approx(
                1.0 / math.factorial(2 * k), abs=1e-6)

    def test_iontrap_pole_raises(self):
        # place the Laguerre argument exactly on a root of L^0_5 so the
        # denominator dives under the pole floor
        from scipy.optimize import brentq
        root = brentq(lambda x: eval_genlaguerre(5, 0, x), 0.2, 0.3, xtol=1e-15)
        with pytest.raises(LaguerreZeroError):
            f_value(IonTrap(eta2=root), 7, 1)

    def test_qdeformed_at_zero_and_degenerate_lambda(self):
        assert f_value(QDeformed(lam=0.4), 0, 1) == 1.0
        assert f_value(QDeformed(lam=0.0), 5, 1) == 1.0

    def test_qdeformed_explicit(self):
        expected = math.sqrt(math.sinh(1.2) / (3.0 * math.sinh(0.4)))
        assert f_value(QDeformed(lam=0.4), 3, 1) == pytest.approx(expected, rel=1e-12)

    def test_qdeformed_even_in_lambda(self):
        assert f_value(QDeformed(lam=-0.4), 3, 1) == pytest.approx(
            f_value(QDeformed(lam=0.4), 3, 1), rel=1e-14)

    def test_photon_added(self):
        model = PhotonAdded(m_add=2)
        assert f_value(model, 3, 1) == pytest.approx(1.0 - 2.0 / 4.0, abs=1e-15)
        assert f_value(model, 1, 1) == 0.0
        assert f_value(PhotonAdded(m_add=1), 0, 1) == 0.0

    def test_model_validation(self):
        with pytest.raises(ValueError):
            IonTrap(eta2=0.0)
        with pytest.raises(ValueError):
            IonTrap(eta2=-0.1)
        with pytest.raises(ValueError):
            PhotonAdded(m_add=0)


class TestFChain:
    def test_below_2k_is_one(self):
        assert f_chain(IonTrap(eta2=0.05), 1, 1) == 1.0
        assert f_chain(QDeformed(lam=0.3), 0, 2) == 1.0

    def test_unity_chain_is_one(self):
        assert f_chain(UNITY, 12, 2) == 1.0

    def test_iontrap_chain_example(self):
        model = IonTrap(eta2=0.05)
        expected = f_value(model, 4, 1) * f_value(model, 2, 1) * f_value(model, 0, 1)
        assert f_chain(model, 4, 1) == pytest.approx(expected, rel=1e-13)
        assert f_chain(model, 4, 1) == pytest.approx(0.26820388, abs=1e-7)

    @settings(max_examples=60, deadline=None)
    @given(p=st.integers(min_value=2, max_value=60), k=st.integers(min_value=1, max_value=3),
           pick=st.integers(min_value=0, max_value=2))
    def test_telescoping(self, p, k, pick):
        model = (UNITY, IonTrap(eta2=0.05), QDeformed(lam=0.3))[pick]
        if p < 2 * k:
            assert f_chain(model, p, k) == 1.0
        else:
            assert f_chain(model, p, k) == pytest.approx(
                f_value(model, p, k) * f_chain(model, p - 2 * k, k), rel=1e-11)

    def test_zero_factor_gives_zero_chain(self):
        # f vanishes at n = m_add - 1 = 2, which sits on the k=1 chain lattice
        assert f_chain(PhotonAdded(m_add=3), 4, 1) == 0.0


class TestDriveAmplitude:
    def test_magnitude_examples(self):
        da = drive_amplitude(IonTrapDrive(eta=0.3, omega0=0.09, omega1=1.0, k=1))
        assert da.magnitude == pytest.approx(1.0, rel=1e-12)
        da = drive_amplitude(IonTrapDrive(eta=0.3, omega0=0.36, omega1=1.0, k=1))
        assert da.magnitude == pytest.approx(2.0, rel=1e-12)
        da = drive_amplitude(IonTrapDrive(eta=0.5, omega0=0.0625, omega1=1.0, k=2))
        assert da.magnitude == pytest.approx(1.0, rel=1e-12)

    def test_rotation_brings_xi_real(self):
        for drive in (IonTrapDrive(eta=0.3, omega0=0.2, omega1=1.0, phi0=0.3, phi1=1.1, k=1),
                      IonTrapDrive(eta=0.5, omega0=0.0625, omega1=1.0, k=2),
                      IonTrapDrive(eta=0.4, omega0=0.5, omega1=2.0, phi1=-2.0, k=3)):
            da = drive_amplitude(drive)
            rotated = da.xi * complex(math.cos(da.rotation), math.sin(da.rotation))
            assert abs(rotated.imag) <= 1e-12 * max(1.0, abs(rotated.real))
            assert rotated.real > 0.0
            assert abs(da.xi) == pytest.approx(da.magnitude, rel=1e-12)

    def test_principal_root_reproduces_target(self):
        drive = IonTrapDrive(eta=0.3, omega0=0.2, omega1=1.5, phi0=0.2, phi1=0.9, k=2)
        da = drive_amplitude(drive)
        target = (-1) ** (drive.k + 1) * complex(math.cos(drive.phi1 - drive.phi0),
                                                 math.sin(drive.phi1 - drive.phi0))
        target *= drive.omega0 / (drive.eta ** (2 * drive.k) * drive.omega1)
        assert da.xi ** (2 * drive.k) == pytest.approx(target, rel=1e-10)

    @settings(max_examples=40, deadline=None)
    @given(scale=st.floats(min_value=1e-3, max_value=1e3),
           omega0=st.floats(min_value=1e-3, max_value=10.0),
           omega1=st.floats(min_value=1e-3, max_value=10.0),
           k=st.integers(min_value=1, max_value=3))
    def test_magnitude_invariant_under_common_scaling(self, scale, omega0, omega1, k):
        base = drive_amplitude(IonTrapDrive(eta=0.3, omega0=omega0, omega1=omega1, k=k))
        scaled = drive_amplitude(IonTrapDrive(eta=0.3, omega0=scale * omega0,
                                              omega1=scale * omega1, k=k))
        assert scaled.magnitude == pytest.approx(base.magnitude, rel=1e-9)

    def test_drive_validation(self):
        with pytest.raises(ValueError):
            IonTrapDrive(eta=0.0, omega0=1.0, omega1=1.0)
        with pytest.raises(ValueError):
            IonTrapDrive(eta=0.3, omega0=-1.0, omega1=1.0)
        with pytest.raises(ValueError):
            IonTrapDrive(eta=0.3, omega0=1.0, omega1=1.0, k=0)
