"""Macroscopic exemplar entities and their yes/no observation processes.

Wood: burnability (destroys the entity), non-burnability (same procedure,
outcome inverted), floatability (wets the entity it confirms). Non-elastic
solid: incompressibility under the standard press (compaction is permanent,
so a failed test creates the property it failed to find). Elastic band:
left-handedness (stretch the longest fragment until it breaks; yes when the
longer piece is in the left hand), fragmentation / non-fragmentation (pick
one fragment blindly; yes when it is strictly shorter / longer than half the
original length).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import NO, YES, Branch, ObservationProcess, Outcome
from .randomness import DrawSource


class Integrity(str, Enum):
    INTACT = "intact"
    ASHES = "ashes"


class Moisture(str, Enum):
    DRY = "dry"
    WET = "wet"


@dataclass(frozen=True)
class WoodState:
    """Moisture is irrelevant once the piece is ashes; kernels ignore it there."""

    integrity: Integrity = Integrity.INTACT
    moisture: Moisture = Moisture.DRY

    def __str__(self) -> str:
        if self.integrity is Integrity.ASHES:
            return "wood(ashes)"
        return f"wood(intact,{self.moisture.value})"


DRY_INTACT = WoodState(Integrity.INTACT, Moisture.DRY)
WET_INTACT = WoodState(Integrity.INTACT, Moisture.WET)
ASHES = WoodState(Integrity.ASHES, Moisture.DRY)


@dataclass(frozen=True)
class SolidState:
    """Non-elastic solid: volume and the relative volume loss the standard
    press would cause (compression is permanent)."""

    volume: float
    compaction_ratio: float

    def __post_init__(self):
        if not self.volume > 0.0:
            raise ValueError(f"SolidState.volume must be positive, got {self.volume!r}")
        if not 0.0 <= self.compaction_ratio <= 1.0:
            raise ValueError(
                f"SolidState.compaction_ratio must be in [0, 1], got {self.compaction_ratio!r}"
            )

    def __str__(self) -> str:
        return f"solid(V={self.volume:.6g},r={self.compaction_ratio:.6g})"


@dataclass(frozen=True)
class ElasticBandState:
    """Fragment lengths of an elastic band, in the order breaks produced them.

    Invariants (kept by the kernels, checked by :meth:`validate`): fragments
    are strictly positive and sum to ``original_length`` within 1e-9. The
    constructor only checks cheap structure so long trajectories stay O(n)
    per break.
    """

    fragments: tuple[float, ...]
    original_length: float

    def __post_init__(self):
        if not self.fragments:
            raise ValueError("ElasticBandState.fragments must be nonempty")
        if not self.original_length > 0.0:
            raise ValueError(
                f"ElasticBandState.original_length must be positive, got {self.original_length!r}"
            )

    @staticmethod
    def unbroken(length: float = 1.0) -> "ElasticBandState":
        return ElasticBandState((length,), length)

    def validate(self, tol: float = 1e-9) -> None:
        if any(f <= 0.0 for f in self.fragments):
            raise ValueError("elastic fragments must be strictly positive")
        total = math.fsum(self.fragments)
        if abs(total - self.original_length) > tol:
            raise ValueError(
                f"elastic length not conserved: fragments sum to {total!r}, "
                f"expected {self.original_length!r}"
            )

    def max_fragment(self) -> float:
        return max(self.fragments)

    def subhalf_count(self) -> int:
        half = 0.5 * self.original_length
        return sum(1 for f in self.fragments if f < half)

    def __str__(self) -> str:
        return f"elastic({len(self.fragments)} fragments of {self.original_length:.6g})"


# --- wood -------------------------------------------------------------------

def _burnability_kernel(state: WoodState, rng: DrawSource) -> tuple[Outcome, WoodState]:
    # no draws
    if state.integrity is Integrity.INTACT and state.moisture is Moisture.DRY:
        return YES, WoodState(Integrity.ASHES, state.moisture)
    return NO, state


def _burnability_analytic(state: WoodState) -> float:
    dry_intact = state.integrity is Integrity.INTACT and state.moisture is Moisture.DRY
    return 1.0 if dry_intact else 0.0


def _non_burnability_kernel(state: WoodState, rng: DrawSource) -> tuple[Outcome, WoodState]:
    outcome, post = _burnability_kernel(state, rng)
    return outcome.inverted(), post


def _floatability_kernel(state: WoodState, rng: DrawSource) -> tuple[Outcome, WoodState]:
    # no draws; an intact piece floats and comes out wet, ashes sink
    if state.integrity is Integrity.INTACT:
        return YES, WoodState(Integrity.INTACT, Moisture.WET)
    return NO, state


def _floatability_analytic(state: WoodState) -> float:
    return 1.0 if state.integrity is Integrity.INTACT else 0.0


def _deterministic_branches(kernel):
    class _NoDraws:
        def draw(self) -> float:
            raise AssertionError("deterministic kernel drew from its stream")

    sink = _NoDraws()

    def branches(state) -> tuple[Branch, ...]:
        outcome, post = kernel(state, sink)
        return (Branch(outcome, post, 1.0),)

    return branches


BURNABILITY = ObservationProcess(
    id="burnability",
    scenario=WoodState,
    kernel=_burnability_kernel,
    analytic=_burnability_analytic,
    branches=_deterministic_branches(_burnability_kernel),
    description="flame contact for 30 s; yes when the piece disintegrates to ashes (no draws)",
)

NON_BURNABILITY = ObservationProcess(
    id="non-burnability",
    scenario=WoodState,
    kernel=_non_burnability_kernel,
    analytic=lambda s: 1.0 - _burnability_analytic(s),
    branches=_deterministic_branches(_non_burnability_kernel),
    description="same procedure as burnability with the outcome inverted (no draws)",
)

FLOATABILITY = ObservationProcess(
    id="floatability",
    scenario=WoodState,
    kernel=_floatability_kernel,
    analytic=_floatability_analytic,
    branches=_deterministic_branches(_floatability_kernel),
    description="full immersion; yes when buoyancy wins; the piece comes out wet (no draws)",
)


# --- solid ------------------------------------------------------------------

_INCOMPRESSIBLE_MAX_RATIO = 0.01


def _incompressibility_kernel(state: SolidState, rng: DrawSource) -> tuple[Outcome, SolidState]:
    # no draws; the press always compacts, so the post-state ratio is 0
    outcome = YES if state.compaction_ratio <= _INCOMPRESSIBLE_MAX_RATIO else NO
    return outcome, SolidState(state.volume * (1.0 - state.compaction_ratio), 0.0)


def _incompressibility_analytic(state: SolidState) -> float:
    return 1.0 if state.compaction_ratio <= _INCOMPRESSIBLE_MAX_RATIO else 0.0


INCOMPRESSIBILITY = ObservationProcess(
    id="incompressibility",
    scenario=SolidState,
    kernel=_incompressibility_kernel,
    analytic=_incompressibility_analytic,
    branches=_deterministic_branches(_incompressibility_kernel),
    description="standard press; yes when volume loss is at most 1%; compaction is permanent (no draws)",
)


# --- elastic band -----------------------------------------------------------

def _longest_index(fragments: tuple[float, ...]) -> int:
    # ties broken by lowest index (tuple.index returns the first occurrence)
    return fragments.index(max(fragments))


def _split_longest(state: ElasticBandState, r: float) -> tuple[float, ...]:
    frags = state.fragments
    i = _longest_index(frags)
    longest = frags[i]
    left = r * longest
    return frags[:i] + (left, longest - left) + frags[i + 1 :]


def _left_handedness_kernel(
    state: ElasticBandState, rng: DrawSource
) -> tuple[Outcome, ElasticBandState]:
    # one draw (redrawn on the measure-zero values that would leave a
    # zero-length piece, so the positivity invariant is airtight)
    frags = state.fragments
    i = _longest_index(frags)
    longest = frags[i]
    while True:
        r = rng.draw()
        left = r * longest
        right = longest - left
        if left > 0.0 and right > 0.0:
            break
    outcome = YES if r > 0.5 else NO
    post = ElasticBandState(frags[:i] + (left, right) + frags[i + 1 :], state.original_length)
    return outcome, post


def _left_handedness_branches(state: ElasticBandState) -> tuple[Branch, ...]:
    # representative posts: the break point is a continuum, so one reachable
    # post per outcome branch stands in (posts_exact=False on the process)
    return (
        Branch(YES, ElasticBandState(_split_longest(state, 0.75), state.original_length), 0.5),
        Branch(NO, ElasticBandState(_split_longest(state, 0.25), state.original_length), 0.5),
    )


LEFT_HANDEDNESS = ObservationProcess(
    id="left-handedness",
    scenario=ElasticBandState,
    kernel=_left_handedness_kernel,
    analytic=lambda s: 0.5,  # uniform break point: exactly 1/2 in every state
    branches=_left_handedness_branches,
    posts_exact=False,
    repeat_probs=lambda s: (0.5,),  # every yes-post answers 1/2 again
    description="stretch the longest fragment until it breaks; yes when the longer piece "
    "stays in the left hand (one draw)",
)


def _pick_index(n: int, rng: DrawSource) -> int:
    i = int(rng.draw() * n)
    return n - 1 if i >= n else i


def _fragmentation_kernel(
    state: ElasticBandState, rng: DrawSource
) -> tuple[Outcome, ElasticBandState]:
    # one draw; count-uniform pick; non-invasive
    i = _pick_index(len(state.fragments), rng)
    half = 0.5 * state.original_length
    return (YES if state.fragments[i] < half else NO), state


def _fragmentation_analytic(state: ElasticBandState) -> float:
    return state.subhalf_count() / len(state.fragments)


def _fragmentation_branches(state: ElasticBandState) -> tuple[Branch, ...]:
    n = len(state.fragments)
    k = state.subhalf_count()
    out = []
    if k:
        out.append(Branch(YES, state, k / n))
    if k < n:
        out.append(Branch(NO, state, (n - k) / n))
    return tuple(out)


def _non_fragmentation_kernel(
    state: ElasticBandState, rng: DrawSource
) -> tuple[Outcome, ElasticBandState]:
    # one draw; yes when the picked fragment is strictly longer than half;
    # a fragment of exactly half answers no to both picks
    i = _pick_index(len(state.fragments), rng)
    half = 0.5 * state.original_length
    return (YES if state.fragments[i] > half else NO), state


def _superhalf_count(state: ElasticBandState) -> int:
    half = 0.5 * state.original_length
    return sum(1 for f in state.fragments if f > half)


def _non_fragmentation_analytic(state: ElasticBandState) -> float:
    return _superhalf_count(state) / len(state.fragments)


def _non_fragmentation_branches(state: ElasticBandState) -> tuple[Branch, ...]:
    n = len(state.fragments)
    k = _superhalf_count(state)
    out = []
    if k:
        out.append(Branch(YES, state, k / n))
    if k < n:
        out.append(Branch(NO, state, (n - k) / n))
    return tuple(out)


FRAGMENTATION = ObservationProcess(
    id="fragmentation",
    scenario=ElasticBandState,
    kernel=_fragmentation_kernel,
    analytic=_fragmentation_analytic,
    branches=_fragmentation_branches,
    description="blind count-uniform pick from the box; yes when the fragment is strictly "
    "shorter than half the original length (one draw)",
)

NON_FRAGMENTATION = ObservationProcess(
    id="non-fragmentation",
    scenario=ElasticBandState,
    kernel=_non_fragmentation_kernel,
    analytic=_non_fragmentation_analytic,
    branches=_non_fragmentation_branches,
    description="blind count-uniform pick; yes when the fragment is strictly longer than "
    "half the original length (one draw)",
)
