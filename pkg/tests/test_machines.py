import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from obsim import (
    ElasticApparatus,
    LinePosition,
    PointBreak,
    SawtoothRuler,
    SegmentBreak,
    SequenceStream,
    SpherePoint,
    TrialStream,
    UniformBreak,
    quantum_machine_observe,
    quantum_machine_prob,
    quantum_machine_process,
    sawtooth_observe,
    sawtooth_position_process,
    sphere_point_at,
)
from obsim.checks import segment_prob_oracle
from obsim.core import NO, YES

PI = math.pi
RHO = (0.0, 0.0, 1.0)


def uniform_apparatus():
    return ElasticApparatus(RHO, 1.0, UniformBreak())


class TestClosedForm:
    @pytest.mark.parametrize(
        "gamma,expected",
        [
            (0.0, 1.0),
            (PI / 2, 0.5),
            (PI / 3, 0.75),
            (2 * PI / 3, 0.25),
            (PI, 0.0),
        ],
    )
    def test_uniform_values(self, gamma, expected):
        assert quantum_machine_prob(gamma, UniformBreak()) == pytest.approx(expected, abs=1e-12)

    def test_endpoints_exact(self):
        assert quantum_machine_prob(0.0, UniformBreak()) == 1.0
        assert quantum_machine_prob(PI, UniformBreak()) == 0.0

    def test_uniform_matches_half_angle_form(self):
        for k in range(26):
            gamma = k * PI / 25
            assert quantum_machine_prob(gamma, UniformBreak()) == pytest.approx(
                math.cos(gamma / 2) ** 2, abs=1e-12
            )

    def test_domain_error(self):
        with pytest.raises(ValueError):
            quantum_machine_prob(-0.1, UniformBreak())
        with pytest.raises(ValueError):
            quantum_machine_prob(PI + 0.1, UniformBreak())

    @given(gamma=st.floats(min_value=0.0, max_value=PI))
    @settings(max_examples=200, deadline=None)
    def test_symmetry(self, gamma):
        total = quantum_machine_prob(gamma, UniformBreak()) + quantum_machine_prob(
            PI - gamma, UniformBreak()
        )
        assert total == pytest.approx(1.0, abs=1e-12)


class TestPointProfile:
    def test_break_below_particle_is_certain_yes(self):
        # particle lands 3/4 of the way up at gamma = pi/3; a break fixed at
        # the quarter point is always below it
        assert quantum_machine_prob(PI / 3, PointBreak(0.25)) == 1.0

    def test_break_above_particle_is_certain_no(self):
        assert quantum_machine_prob(2 * PI / 3, PointBreak(0.75)) == 0.0

    def test_exact_tie_resolves_to_no(self):
        # an exactly orthogonal state lands at the midpoint; cos is exact 0
        process = quantum_machine_process(ElasticApparatus(RHO, 1.0, PointBreak(0.5)))
        assert process.analytic(SpherePoint((1.0, 0.0, 0.0))) == 0.0

    def test_no_draws_consumed(self):
        apparatus = ElasticApparatus(RHO, 1.0, PointBreak(0.25))
        outcome, post = quantum_machine_observe(
            sphere_point_at(PI / 3), apparatus, SequenceStream(())
        )
        assert outcome is YES
        assert post == SpherePoint(RHO)


class TestSegmentProfile:
    def test_width_one_equals_uniform_everywhere(self):
        for k in range(26):
            gamma = k * PI / 25
            assert quantum_machine_prob(gamma, SegmentBreak(1.0)) == quantum_machine_prob(
                gamma, UniformBreak()
            )

    def test_width_zero_equals_midpoint_break_off_ties(self):
        for k in range(26):
            gamma = k * PI / 25
            if math.cos(gamma) == 0.0:
                continue
            assert quantum_machine_prob(gamma, SegmentBreak(0.0)) == quantum_machine_prob(
                gamma, PointBreak(0.5)
            )

    def test_width_zero_limit_cases(self):
        assert quantum_machine_prob(PI / 4, SegmentBreak(0.0)) == 1.0
        assert quantum_machine_prob(3 * PI / 4, SegmentBreak(0.0)) == 0.0
        process = quantum_machine_process(ElasticApparatus(RHO, 1.0, SegmentBreak(0.0)))
        assert process.analytic(SpherePoint((1.0, 0.0, 0.0))) == 0.5

    def test_formula_matches_integration_oracle(self):
        # the derived closed form against direct quadrature of the break density
        for width in (0.1, 0.25, 0.5, 0.75, 0.9, 1.0):
            for k in range(26):
                gamma = k * PI / 25
                formula = quantum_machine_prob(gamma, SegmentBreak(width))
                assert abs(formula - segment_prob_oracle(gamma, width)) <= 1e-9

    def test_interior_value_from_oracle(self):
        gamma = math.acos(0.25)
        assert segment_prob_oracle(gamma, 0.5) == pytest.approx(0.75, abs=1e-12)
        assert quantum_machine_prob(gamma, SegmentBreak(0.5)) == pytest.approx(0.75, abs=1e-12)

    def test_interior_value_against_monte_carlo(self):
        gamma = math.acos(0.25)
        process = quantum_machine_process(ElasticApparatus(RHO, 1.0, SegmentBreak(0.5)))
        state = sphere_point_at(gamma)
        trials = 1_000_000
        yes = 0
        for i in range(trials):
            outcome, _ = process.kernel(state, TrialStream(2024, i))
            if outcome is YES:
                yes += 1
        sigma = math.sqrt(0.75 * 0.25 / trials)
        assert abs(yes / trials - 0.75) < 5 * sigma

    def test_deterministic_regime_has_zero_variance(self):
        gamma = math.acos(0.75)
        process = quantum_machine_process(ElasticApparatus(RHO, 1.0, SegmentBreak(0.5)))
        state = sphere_point_at(gamma)
        outcomes = {process.kernel(state, TrialStream(5, i))[0] for i in range(2000)}
        assert outcomes == {YES}


class TestMachineKernel:
    def test_aligned_particle_always_yes(self):
        apparatus = uniform_apparatus()
        state = sphere_point_at(0.0)
        for i in range(200):
            outcome, post = quantum_machine_observe(state, apparatus, TrialStream(9, i))
            assert outcome is YES
            assert post == SpherePoint(RHO)

    def test_antipodal_particle_always_no(self):
        apparatus = uniform_apparatus()
        state = sphere_point_at(PI)
        for i in range(200):
            outcome, post = quantum_machine_observe(state, apparatus, TrialStream(9, i))
            assert outcome is NO
            assert post == SpherePoint((-0.0, -0.0, -1.0))

    def test_post_state_repeat_is_certain(self):
        process = quantum_machine_process(uniform_apparatus())
        _, post = process.kernel(sphere_point_at(1.1), TrialStream(1))
        again = process.analytic(post)
        assert again in (0.0, 1.0)
        outcome2, post2 = process.kernel(post, TrialStream(2))
        assert post2 == post

    def test_validation(self):
        with pytest.raises(ValueError):
            SpherePoint((1.0, 1.0, 0.0))
        with pytest.raises(ValueError):
            ElasticApparatus((0.0, 0.0, 0.5))
        with pytest.raises(ValueError):
            ElasticApparatus(RHO, 0.0)
        with pytest.raises(ValueError):
            PointBreak(1.5)
        with pytest.raises(ValueError):
            SegmentBreak(-0.2)

    def test_sphere_point_at(self):
        for gamma in (0.1, 1.0, 2.3):
            u = sphere_point_at(gamma).direction
            assert u[0] * RHO[0] + u[1] * RHO[1] + u[2] * RHO[2] == pytest.approx(
                math.cos(gamma), abs=1e-12
            )
        with pytest.raises(ValueError):
            sphere_point_at(1.0, rho=RHO, axis=(0.0, 0.0, 2.0))


class TestSawtooth:
    def test_nearest_cavity(self):
        ruler = SawtoothRuler(pitch=1.0, offset=0.0)
        k, post = sawtooth_observe(LinePosition(0.3), ruler, SequenceStream(()))
        assert k == 0
        assert post == LinePosition(0.0)

    def test_at_center_is_fixed_point(self):
        ruler = SawtoothRuler(pitch=1.0, offset=0.0)
        k, post = sawtooth_observe(LinePosition(2.0), ruler, SequenceStream(()))
        assert k == 2
        assert post == LinePosition(2.0)

    def test_offset_and_pitch(self):
        ruler = SawtoothRuler(pitch=0.5, offset=0.2)
        k, post = sawtooth_observe(LinePosition(0.44), ruler, SequenceStream(()))
        assert k == 0
        assert post == LinePosition(0.2)
        k, post = sawtooth_observe(LinePosition(-0.6), ruler, SequenceStream(()))
        assert k == -2
        assert post.x == pytest.approx(-0.8)

    def test_tooth_tip_fair_draw(self):
        ruler = SawtoothRuler(pitch=1.0, offset=0.0)
        counts = {0: 0, 1: 0}
        trials = 10_000
        for i in range(trials):
            k, _ = sawtooth_observe(LinePosition(0.5), ruler, TrialStream(13, i))
            counts[k] += 1
        assert counts[0] + counts[1] == trials
        assert abs(counts[1] - trials / 2) < 4 * math.sqrt(trials / 4)

    def test_tip_consumes_one_draw_else_none(self):
        ruler = SawtoothRuler(pitch=1.0, offset=0.0)
        stream = SequenceStream((0.3,))
        sawtooth_observe(LinePosition(0.5), ruler, stream)
        assert stream.remaining == 0
        sawtooth_observe(LinePosition(0.4), ruler, SequenceStream(()))

    def test_position_process_analytics(self):
        ruler = SawtoothRuler(pitch=1.0, offset=0.0)
        process = sawtooth_position_process(ruler, target=0)
        assert process.analytic(LinePosition(0.3)) == 1.0
        assert process.analytic(LinePosition(1.2)) == 0.0
        assert process.analytic(LinePosition(0.5)) == 0.5
        assert process.analytic(LinePosition(-0.5)) == 0.5
        assert process.analytic(LinePosition(1.5)) == 0.0

    def test_ruler_validation(self):
        with pytest.raises(ValueError):
            SawtoothRuler(pitch=0.0)
        with pytest.raises(ValueError):
            LinePosition(math.inf)
