import math

import pytest
from hypothesis import given, settings, strategies as st

from fansqueeze import (
    FanStateSpec,
    IonTrap,
    NonConvergenceError,
    SeriesControl,
    UNITY,
    moment,
    moment_unity,
    norm_constant,
    phase_sum,
)


def closed_d1(x):
    return 2.0 * (math.cosh(x) + math.cos(x))


def closed_d2(x):
    r = x / math.sqrt(2.0)
    return 4.0 * (math.cosh(x) + math.cos(x) + 2.0 * math.cosh(r) * math.cos(r))


class TestPhaseSum:
    def test_examples(self):
        assert phase_sum(1, 2) == 2
        assert phase_sum(2, 3) == 0
        assert phase_sum(3, 0) == 6

    def test_exhaustive_parity(self):
        for k in range(1, 6):
            for m in range(-50, 51):
                assert phase_sum(k, m) == (2 * k if m % 2 == 0 else 0)


class TestNormConstant:
    def test_vacuum(self):
        assert norm_constant(FanStateSpec(k=1, xi=0.0)).value == 4.0
        assert norm_constant(FanStateSpec(k=3, xi=0.0)).value == 36.0

    def test_k1_closed_form(self):
        value = norm_constant(FanStateSpec(k=1, xi=0.8)).value
        assert value == pytest.approx(closed_d1(0.64), rel=1e-14)
        assert value == pytest.approx(4.0280, abs=1e-4)

    def test_k2_closed_form(self):
        value = norm_constant(FanStateSpec(k=2, xi=1.25)).value
        assert value == pytest.approx(closed_d2(1.25 ** 2), rel=1e-14)

    @settings(max_examples=40, deadline=None)
    @given(xi=st.floats(min_value=0.0, max_value=4.0),
           k=st.integers(min_value=1, max_value=3),
           pick=st.integers(min_value=0, max_value=1))
    def test_strictly_positive(self, xi, k, pick):
        model = (UNITY, IonTrap(eta2=0.05))[pick]
        assert norm_constant(FanStateSpec(k=k, xi=xi, model=model)).value > 0.0


class TestMoment:
    def test_identity_moment(self):
        assert moment(FanStateSpec(k=1, xi=0.8), 0, 0).value == pytest.approx(1.0, rel=1e-14)

    def test_quartic_equals_xi_fourth(self):
        mv = moment(FanStateSpec(k=1, xi=0.8), 0, 4)
        assert mv.value == pytest.approx(0.4096, abs=1e-13)
        assert mv.converged

    def test_parity_zero_is_exact(self):
        mv = moment(FanStateSpec(k=1, xi=0.8), 0, 2)
        assert mv.value == 0.0
        assert mv.terms_used == 0

    def test_non_integer_offset_zero(self):
        assert moment(FanStateSpec(k=1, xi=0.8), 0, 3).value == 0.0

    def test_number_moment_closed_form(self):
        x = 0.64
        expected = 2.0 * x * (math.sinh(x) - math.sin(x)) / closed_d1(x)
        mv = moment(FanStateSpec(k=1, xi=0.8), 1, 1)
        assert mv.value == pytest.approx(expected, rel=1e-13)
        assert mv.value == pytest.approx(0.02778, abs=1e-5)

    def test_quadratic_diagonal_closed_form(self):
        x = 0.64
        expected = 2.0 * x * x * (math.cosh(x) - math.cos(x)) / closed_d1(x)
        assert moment(FanStateSpec(k=1, xi=0.8), 2, 2).value == pytest.approx(
            expected, rel=1e-13)

    def test_vacuum_moments(self):
        spec = FanStateSpec(k=2, xi=0.0)
        assert moment(spec, 0, 0).value == 1.0
        assert moment(spec, 0, 4).value == 0.0
        assert moment(spec, 4, 4).value == 0.0

    def test_symmetry_in_l_m(self):
        for spec in (FanStateSpec(k=1, xi=0.8),
                     FanStateSpec(k=2, xi=1.25, model=IonTrap(eta2=0.05))):
            for l, m in ((0, 4), (2, 6), (4, 8), (1, 5)):
                lhs = moment(spec, l, m).value
                rhs = moment(spec, m, l).value
                assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-15)

    def test_parity_theorem(self):
        # powers off the 2k lattice vanish, and so do their doubles; powers
        # at an odd lattice offset vanish through the lobe phase cancellation
        for k in (1, 2, 3):
            spec = FanStateSpec(k=k, xi=0.9)
            for n_power in range(1, 6 * k + 1):
                if n_power % (2 * k) != 0:
                    assert moment(spec, 0, n_power).value == 0.0
                    assert moment(spec, 0, 2 * n_power).value == 0.0
                elif (n_power // (2 * k)) % 2 == 1:
                    assert moment(spec, 0, n_power).value == 0.0

    @settings(max_examples=40, deadline=None)
    @given(xi=st.floats(min_value=0.0, max_value=3.0),
           k=st.integers(min_value=1, max_value=3),
           l=st.integers(min_value=0, max_value=6))
    def test_diagonal_non_negative(self, xi, k, l):
        assert moment(FanStateSpec(k=k, xi=xi), l, l).value >= 0.0

    def test_moments_shrink_with_xi(self):
        values = [abs(moment(FanStateSpec(k=1, xi=xi), 1, 1).value)
                  for xi in (1.0, 0.1, 0.01)]
        assert values[0] > values[1] > values[2]
        assert values[2] < 1e-8

    def test_non_convergence_raises(self):
        ctrl = SeriesControl(n_max=4)
        with pytest.raises(NonConvergenceError):
            moment(FanStateSpec(k=1, xi=2.0), 8, 8, ctrl)

    def test_negative_powers_rejected(self):
        with pytest.raises(ValueError):
            moment(FanStateSpec(k=1, xi=0.8), -1, 0)


class TestUnityFastPath:
    def test_examples(self):
        spec = FanStateSpec(k=1, xi=0.8)
        x = 0.64
        adag = moment_unity(spec, "adag_n_a_n", 2)
        assert adag.value == pytest.approx(
            2.0 * x * x * (math.cosh(x) - math.cos(x)) / closed_d1(x), rel=1e-13)
        assert moment_unity(spec, "a_n", 2).value == 0.0
        assert moment_unity(spec, "a_2n", 2).value == pytest.approx(0.4096, abs=1e-13)

    def test_agreement_with_general_engine(self):
        # absolute 1e-12 equality is meaningful only while the moments remain
        # of order one; at xi = 2 the higher powers reach the thousands where
        # a single ulp already exceeds the tolerance, so the grid stays below
        cases = [(k, xi) for k in (1, 2) for xi in (0.2, 0.8, 1.25)]
        cases += [(1, 2.0)]
        for k, xi in cases:
            spec = FanStateSpec(k=k, xi=xi)
            for n_power in (2 * k, 4 * k):
                pairs = (("a_n", moment(spec, 0, n_power)),
                         ("a_2n", moment(spec, 0, 2 * n_power)),
                         ("adag_n_a_n", moment(spec, n_power, n_power)))
                for kind, general in pairs:
                    fast = moment_unity(spec, kind, n_power)
                    assert abs(fast.value - general.value) <= 1e-12, \
                        (k, xi, n_power, kind)

    def test_requires_unity_model(self):
        spec = FanStateSpec(k=1, xi=0.8, model=IonTrap(eta2=0.05))
        with pytest.raises(ValueError):
            moment_unity(spec, "a_n", 2)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            moment_unity(FanStateSpec(k=1, xi=0.8), "bogus", 2)


class TestSpecsAndControls:
    def test_from_complex_rotates(self):
        spec = FanStateSpec.from_complex(0.5 + 0.5j, k=1)
        assert spec.xi == pytest.approx(math.hypot(0.5, 0.5), rel=1e-15)
        assert spec.phase == pytest.approx(math.pi / 4.0, rel=1e-12)

    def test_from_complex_zero(self):
        spec = FanStateSpec.from_complex(0j, k=2)
        assert spec.xi == 0.0
        assert spec.phase == 0.0

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            FanStateSpec(k=0, xi=0.5)
        with pytest.raises(ValueError):
            FanStateSpec(k=1, xi=-0.5)
        with pytest.raises(ValueError):
            FanStateSpec(k=1, xi=math.inf)

    def test_control_validation(self):
        with pytest.raises(ValueError):
            SeriesControl(n_max=3)
        with pytest.raises(ValueError):
            SeriesControl(rel_tol=1.5)
        with pytest.raises(ValueError):
            SeriesControl(consecutive_small=0)

    def test_converged_metadata(self):
        mv = moment(FanStateSpec(k=1, xi=0.8), 1, 1)
        assert mv.converged
        assert mv.last_term_ratio <= SeriesControl().rel_tol
        assert mv.terms_used > 0
