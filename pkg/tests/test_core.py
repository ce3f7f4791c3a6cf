import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from obsim import (
    ASHES,
    BURNABILITY,
    DRY_INTACT,
    FLOATABILITY,
    FRAGMENTATION,
    INCOMPRESSIBILITY,
    LEFT_HANDEDNESS,
    NON_BURNABILITY,
    NON_FRAGMENTATION,
    WET_INTACT,
    ElasticApparatus,
    ElasticBandState,
    NotDecidableError,
    ObservationProcess,
    Outcome,
    PropertyDef,
    ScenarioMismatchError,
    SolidState,
    TrialStream,
    UniformBreak,
    WoodState,
    is_actual,
    observe,
    quantum_machine_process,
    repeat_yes_certain,
    sphere_point_at,
    verify_replay,
)
from obsim.core import NO, YES

MACHINE = quantum_machine_process(ElasticApparatus((0.0, 0.0, 1.0), 1.0, UniformBreak()))

ALL_PROCESS_STATES = [
    (BURNABILITY, DRY_INTACT),
    (BURNABILITY, WET_INTACT),
    (BURNABILITY, ASHES),
    (NON_BURNABILITY, DRY_INTACT),
    (FLOATABILITY, WET_INTACT),
    (FLOATABILITY, ASHES),
    (INCOMPRESSIBILITY, SolidState(1.0, 0.05)),
    (INCOMPRESSIBILITY, SolidState(2.0, 0.0)),
    (LEFT_HANDEDNESS, ElasticBandState.unbroken(1.0)),
    (LEFT_HANDEDNESS, ElasticBandState((0.7, 0.3), 1.0)),
    (FRAGMENTATION, ElasticBandState((0.7, 0.3), 1.0)),
    (NON_FRAGMENTATION, ElasticBandState((0.4, 0.3, 0.3), 1.0)),
    (MACHINE, sphere_point_at(math.pi / 3)),
]


class TestOutcome:
    def test_exactly_two_values(self):
        assert {o.value for o in Outcome} == {"yes", "no"}

    def test_inverted(self):
        assert YES.inverted() is NO
        assert NO.inverted() is YES
        assert YES.is_yes and not NO.is_yes


class TestObserve:
    def test_burnability_dry_intact(self):
        outcome, post, record = observe(BURNABILITY, DRY_INTACT, TrialStream(0))
        assert outcome is YES
        assert post == ASHES
        assert record.draws == ()

    def test_floatability_on_ashes(self):
        outcome, post, _ = observe(FLOATABILITY, ASHES, TrialStream(0))
        assert outcome is NO
        assert post == ASHES

    def test_scenario_mismatch(self):
        with pytest.raises(ScenarioMismatchError):
            observe(BURNABILITY, SolidState(1.0, 0.0), TrialStream(0))
        with pytest.raises(ScenarioMismatchError):
            observe(MACHINE, DRY_INTACT, TrialStream(0))

    def test_record_indexes_and_draw_counts(self):
        _, _, rec = observe(LEFT_HANDEDNESS, ElasticBandState.unbroken(1.0), TrialStream(3), index=7)
        assert rec.index == 7
        assert len(rec.draws) == 1
        _, _, rec = observe(MACHINE, sphere_point_at(1.0), TrialStream(3))
        assert len(rec.draws) == 1

    @pytest.mark.parametrize("process,state", ALL_PROCESS_STATES, ids=lambda v: str(v))
    def test_variant_closure(self, process, state):
        _, post, _ = observe(process, state, TrialStream(11))
        assert type(post) is type(state)

    @pytest.mark.parametrize("process,state", ALL_PROCESS_STATES, ids=lambda v: str(v))
    @given(seed=st.integers(min_value=0, max_value=2**64 - 1))
    @settings(max_examples=25, deadline=None)
    def test_replay_determinism(self, process, state, seed):
        _, _, record = observe(process, state, TrialStream(seed))
        assert verify_replay(process, record)


class TestActuality:
    def test_burnability_actual_on_dry_intact(self):
        assert is_actual(PropertyDef("burnability", BURNABILITY), DRY_INTACT)

    def test_fragmentation_not_actual_on_unbroken(self):
        prop = PropertyDef("fragmentation", FRAGMENTATION)
        assert not is_actual(prop, ElasticBandState.unbroken(1.0))

    def test_left_handedness_never_actual(self):
        prop = PropertyDef("left-handedness", LEFT_HANDEDNESS)
        for frags in ((1.0,), (0.7, 0.3), (0.25, 0.25, 0.25, 0.25)):
            assert not is_actual(prop, ElasticBandState(frags, 1.0))

    def test_no_analytic_is_not_decidable(self):
        bare = ObservationProcess("bare", WoodState, BURNABILITY.kernel)
        with pytest.raises(NotDecidableError):
            is_actual(PropertyDef("bare", bare), DRY_INTACT)

    @pytest.mark.parametrize("process,state", ALL_PROCESS_STATES, ids=lambda v: str(v))
    def test_actuality_iff_certainty(self, process, state):
        prop = PropertyDef(process.id, process)
        assert is_actual(prop, state) == (process.analytic(state) == 1.0)


class TestRepeatYesCertain:
    def test_compacted_solid_vacuously_certain(self):
        # a solid the press would squeeze beyond 1% cannot answer yes at all,
        # and after the press it passes with certainty
        assert repeat_yes_certain(INCOMPRESSIBILITY, SolidState(1.0, 0.05))

    def test_left_handedness_must_be_recreated(self):
        assert not repeat_yes_certain(LEFT_HANDEDNESS, ElasticBandState.unbroken(1.0))
        assert not repeat_yes_certain(LEFT_HANDEDNESS, ElasticBandState((0.6, 0.4), 1.0))

    def test_floatability_stays_certain(self):
        assert repeat_yes_certain(FLOATABILITY, DRY_INTACT)
        assert repeat_yes_certain(FLOATABILITY, WET_INTACT)

    def test_machine_endpoint_stays_certain(self):
        assert repeat_yes_certain(MACHINE, sphere_point_at(math.pi / 3))

    def test_not_decidable_without_enumeration(self):
        opaque = ObservationProcess(
            "opaque", WoodState, BURNABILITY.kernel, analytic=BURNABILITY.analytic
        )
        with pytest.raises(NotDecidableError):
            repeat_yes_certain(opaque, DRY_INTACT)
        bare = ObservationProcess("bare", WoodState, BURNABILITY.kernel)
        with pytest.raises(NotDecidableError):
            repeat_yes_certain(bare, DRY_INTACT)
